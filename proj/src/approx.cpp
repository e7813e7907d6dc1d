#include "pbcalc/approx.hpp"

#include "pbcalc/enumerate.hpp"

namespace pbcalc {

namespace {

void check_level(long n) {
  if (n < 1) throw std::invalid_argument("approximation level must be >= 1, got " + std::to_string(n));
}

ScalarPtr shifted(const Scalar& bound, const Env& env, const Rational& delta) {
  return sc::of(eval_number(bound, env) + delta);
}

Atom instantiate_atom(const Atom& a, const Env& env, ScalarPtr bound) {
  Atom out = a;
  if (a.term) out.term = instantiate(*a.term, env);
  for (auto& t : out.args) t = instantiate(*t, env);
  out.bound = std::move(bound);
  return out;
}

AtomKind dual(AtomKind k) {
  switch (k) {
    case AtomKind::NormLE:
      return AtomKind::NormGE;
    case AtomKind::NormGE:
      return AtomKind::NormLE;
    case AtomKind::RelLE:
      return AtomKind::RelGE;
    case AtomKind::RelGE:
      return AtomKind::RelLE;
  }
  return k;
}

bool is_le(AtomKind k) { return k == AtomKind::NormLE || k == AtomKind::RelLE; }

template <class F>
std::vector<PBPtr> instances(const PBFormula& phi, long n, const Env& env, F&& each) {
  std::vector<PBPtr> out;
  for (auto& v : enumerate_prefix(phi.domain, static_cast<std::size_t>(n), env)) {
    out.push_back(each(*phi.body, env.bind(phi.binder, std::move(v))));
  }
  return out;
}

}  // namespace

TermPtr instantiate(const Term& t, const Env& env) {
  switch (t.kind) {
    case TermKind::Var:
      return tm::var(t.var.family, t.var.index);
    case TermKind::Zero:
      return tm::zero();
    case TermKind::Sum:
      return tm::sum(instantiate(*t.args[0], env), instantiate(*t.args[1], env));
    case TermKind::Scale:
      return tm::scale(eval_rational(*t.scalar, env), instantiate(*t.args[0], env));
    case TermKind::Apply: {
      std::vector<TermPtr> args;
      for (const auto& a : t.args) args.push_back(instantiate(*a, env));
      return tm::apply(t.name, std::move(args));
    }
    case TermKind::IndexedVar: {
      long i = eval_integer(*t.scalar, env);
      if (i < 1) throw EvalError("variable index " + std::to_string(i) + " of family " + t.name + " is not positive");
      return tm::var(t.name, static_cast<unsigned long>(i));
    }
    case TermKind::Loop: {
      long lo = eval_integer(*t.scalar, env);
      long hi = eval_integer(*t.upper, env);
      TermPtr acc;
      for (long i = lo; i <= hi; ++i) {
        TermPtr part = instantiate(*t.args[0], env.bind(t.name, IndexValue::num(Rational(i))));
        acc = acc ? tm::sum(acc, part) : part;
      }
      return acc ? acc : tm::zero();
    }
  }
  return tm::zero();
}

PBPtr instantiate(const PBFormula& phi, const Env& env) {
  switch (phi.kind) {
    case PBKind::Atom:
      return pb::atom(instantiate_atom(phi.atom, env, sc::of(eval_number(*phi.atom.bound, env))));
    case PBKind::And:
    case PBKind::Or: {
      std::vector<PBPtr> parts;
      for (const auto& p : phi.parts) parts.push_back(instantiate(*p, env));
      return phi.kind == PBKind::And ? pb::conj(std::move(parts)) : pb::disj(std::move(parts));
    }
    case PBKind::CountableAnd:
      throw EvalError("cannot instantiate a countable conjunction; approximate it first");
    case PBKind::Exists:
    case PBKind::Forall: {
      ScalarPtr b = sc::of(eval_number(*phi.bound, env));
      PBPtr body = instantiate(*phi.body, env);
      return phi.kind == PBKind::Exists ? pb::exists(phi.var, b, body) : pb::forall(phi.var, b, body);
    }
  }
  return nullptr;
}

PBPtr approximate(const PBFormula& phi, long n, const Env& env) {
  check_level(n);
  const Rational step(1, n);
  switch (phi.kind) {
    case PBKind::Atom: {
      const Atom& a = phi.atom;
      return pb::atom(instantiate_atom(a, env, shifted(*a.bound, env, is_le(a.kind) ? step : Rational(-step))));
    }
    case PBKind::And:
    case PBKind::Or: {
      std::vector<PBPtr> parts;
      for (const auto& p : phi.parts) parts.push_back(approximate(*p, n, env));
      return phi.kind == PBKind::And ? pb::conj(std::move(parts)) : pb::disj(std::move(parts));
    }
    case PBKind::CountableAnd:
      return pb::conj(instances(phi, n, env, [n](const PBFormula& body, const Env& e) { return approximate(body, n, e); }));
    case PBKind::Exists:
      return pb::exists(phi.var, shifted(*phi.bound, env, step), approximate(*phi.body, n, env));
    case PBKind::Forall:
      return pb::forall(phi.var, shifted(*phi.bound, env, -step), approximate(*phi.body, n, env));
  }
  return nullptr;
}

PBPtr weak_negation(const PBFormula& phi, long n, const Env& env) {
  check_level(n);
  const Rational step(1, n);
  switch (phi.kind) {
    case PBKind::Atom: {
      Atom a = instantiate_atom(phi.atom, env, shifted(*phi.atom.bound, env, is_le(phi.atom.kind) ? step : Rational(-step)));
      a.kind = dual(a.kind);
      return pb::atom(std::move(a));
    }
    case PBKind::And:
    case PBKind::Or: {
      std::vector<PBPtr> parts;
      for (const auto& p : phi.parts) parts.push_back(weak_negation(*p, n, env));
      return phi.kind == PBKind::And ? pb::disj(std::move(parts)) : pb::conj(std::move(parts));
    }
    case PBKind::CountableAnd:
      return pb::disj(
          instances(phi, n, env, [n](const PBFormula& body, const Env& e) { return weak_negation(body, n, e); }));
    case PBKind::Exists:
      return pb::forall(phi.var, shifted(*phi.bound, env, step), weak_negation(*phi.body, n, env));
    case PBKind::Forall: {
      ExactReal r = eval_number(*phi.bound, env) - step;
      // A bound below zero leaves only the origin: r - 1/n < 0 becomes the ball of radius 0.
      if (compare(r, Rational(0)) == Ordering::Less) r = Rational(0);
      return pb::exists(phi.var, sc::of(r), weak_negation(*phi.body, n, env));
    }
  }
  return nullptr;
}

PBPtr le_abbreviation(const std::string& binder, const std::function<PBPtr(ScalarPtr)>& left,
                      const std::function<PBPtr(ScalarPtr)>& right) {
  ScalarPtr q = sc::ref(binder);
  return pb::countable(binder, IndexDomain::rationals(), pb::disj({left(q), right(q)}));
}

}  // namespace pbcalc
