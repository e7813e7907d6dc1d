#include "pbcalc/syntax.hpp"

#include <algorithm>

namespace pbcalc {

// ---------------------------------------------------------------------------
// Scalar construction

namespace sc {

ScalarPtr lit(const Rational& q) {
  auto s = std::make_shared<Scalar>();
  s->op = ScalarOp::Literal;
  s->value = q;
  return s;
}

ScalarPtr lit(long n) { return lit(Rational(n)); }

ScalarPtr inf() {
  auto s = std::make_shared<Scalar>();
  s->op = ScalarOp::Infinity;
  return s;
}

ScalarPtr ref(std::string name) {
  auto s = std::make_shared<Scalar>();
  s->op = ScalarOp::Ref;
  s->name = std::move(name);
  return s;
}

ScalarPtr op(ScalarOp op, std::vector<ScalarPtr> args) {
  auto s = std::make_shared<Scalar>();
  s->op = op;
  s->args = std::move(args);
  return s;
}

ScalarPtr add(ScalarPtr a, ScalarPtr b) { return op(ScalarOp::Add, {std::move(a), std::move(b)}); }
ScalarPtr sub(ScalarPtr a, ScalarPtr b) { return op(ScalarOp::Sub, {std::move(a), std::move(b)}); }
ScalarPtr mul(ScalarPtr a, ScalarPtr b) { return op(ScalarOp::Mul, {std::move(a), std::move(b)}); }
ScalarPtr div(ScalarPtr a, ScalarPtr b) { return op(ScalarOp::Div, {std::move(a), std::move(b)}); }
ScalarPtr at(ScalarPtr tuple, ScalarPtr index) { return op(ScalarOp::At, {std::move(tuple), std::move(index)}); }
ScalarPtr lp(ScalarPtr p, ScalarPtr tuple) { return op(ScalarOp::Lp, {std::move(p), std::move(tuple)}); }
ScalarPtr tuple(std::vector<ScalarPtr> items) { return op(ScalarOp::Tuple, std::move(items)); }

ScalarPtr root(ScalarPtr base, unsigned long degree) {
  auto s = std::make_shared<Scalar>();
  s->op = ScalarOp::Root;
  s->degree = degree;
  s->args = {std::move(base)};
  return s;
}

ScalarPtr of(const ExactReal& v) {
  if (v.is_rational()) return lit(v.offset());
  ScalarPtr rad = root(lit(v.radical().base), v.radical().root);
  if (v.coeff() < 0) rad = op(ScalarOp::Neg, {rad});
  if (v.offset() == 0) return rad;
  return add(rad, lit(v.offset()));
}

}  // namespace sc

std::string to_string(const IndexValue& v) {
  switch (v.kind) {
    case IndexValue::Kind::Number:
      return to_string(v.number);
    case IndexValue::Kind::Infinity:
      return "inf";
    case IndexValue::Kind::Tuple: {
      std::string out = "(tup";
      for (const auto& q : v.tuple) out += " " + to_string(q);
      return out + ")";
    }
  }
  return {};
}

ScalarPtr to_scalar(const IndexValue& v) {
  switch (v.kind) {
    case IndexValue::Kind::Number:
      return sc::of(v.number);
    case IndexValue::Kind::Infinity:
      return sc::inf();
    case IndexValue::Kind::Tuple: {
      std::vector<ScalarPtr> items;
      for (const auto& q : v.tuple) items.push_back(sc::lit(q));
      return sc::tuple(std::move(items));
    }
  }
  return nullptr;
}

Env Env::bind(const std::string& name, IndexValue value) const {
  Env out = *this;
  out.bindings_.emplace_back(name, std::move(value));
  return out;
}

const IndexValue* Env::find(const std::string& name) const {
  for (auto it = bindings_.rbegin(); it != bindings_.rend(); ++it) {
    if (it->first == name) return &it->second;
  }
  return nullptr;
}

// ---------------------------------------------------------------------------
// Scalar evaluation

namespace {

const ExactReal& as_number(const IndexValue& v, const char* what) {
  if (v.kind != IndexValue::Kind::Number) throw EvalError(std::string(what) + ": expected a number, got " + to_string(v));
  return v.number;
}

const std::vector<Rational>& as_tuple(const IndexValue& v, const char* what) {
  if (v.kind != IndexValue::Kind::Tuple) throw EvalError(std::string(what) + ": expected a tuple, got " + to_string(v));
  return v.tuple;
}

long to_long(const Rational& q, const char* what) {
  if (q.get_den() != 1 || !q.get_num().fits_slong_p()) {
    throw EvalError(std::string(what) + ": expected an integer, got " + to_string(q));
  }
  return q.get_num().get_si();
}

ExactReal lp_norm(const IndexValue& p, const std::vector<Rational>& c) {
  if (p.kind == IndexValue::Kind::Infinity) {
    Rational best = 0;
    for (const auto& x : c) best = std::max(best, abs(x));
    return best;
  }
  const Rational& exponent = as_number(p, "lp exponent").rational();
  if (exponent < 1) throw EvalError("lp exponent below 1: " + to_string(exponent));
  if (exponent.get_den() != 1) {
    throw ArithmeticError("lp with non-integer exponent " + to_string(exponent) + " is not exactly representable");
  }
  unsigned long k = exponent.get_num().get_ui();
  Rational total = 0;
  for (const auto& x : c) total += rational_pow(abs(x), k);
  return ExactReal(RadicalValue{total, k});
}

}  // namespace

IndexValue eval_scalar(const Scalar& s, const Env& env) {
  auto arg = [&](std::size_t i) { return eval_scalar(*s.args.at(i), env); };
  switch (s.op) {
    case ScalarOp::Literal:
      return IndexValue::num(s.value);
    case ScalarOp::Infinity:
      return IndexValue::infinity();
    case ScalarOp::Ref: {
      const IndexValue* v = env.find(s.name);
      if (v == nullptr) throw EvalError("unbound index variable '" + s.name + "'");
      return *v;
    }
    case ScalarOp::Add:
      return IndexValue::num(as_number(arg(0), "add") + as_number(arg(1), "add"));
    case ScalarOp::Sub:
      return IndexValue::num(as_number(arg(0), "sub") - as_number(arg(1), "sub"));
    case ScalarOp::Mul:
      return IndexValue::num(as_number(arg(0), "mul") * as_number(arg(1), "mul"));
    case ScalarOp::Div: {
      const Rational d = as_number(arg(1), "div").rational();
      if (d == 0) throw EvalError("division by zero in scalar expression");
      return IndexValue::num(as_number(arg(0), "div") * Rational(1 / d));
    }
    case ScalarOp::Neg:
      return IndexValue::num(as_number(arg(0), "neg") * Rational(-1));
    case ScalarOp::At: {
      const IndexValue tv = arg(0);
      const auto& t = as_tuple(tv, "at");
      long i = to_long(as_number(arg(1), "at").rational(), "at");
      if (i < 1 || static_cast<std::size_t>(i) > t.size()) {
        throw EvalError("tuple index " + std::to_string(i) + " out of range 1.." + std::to_string(t.size()));
      }
      return IndexValue::num(t[static_cast<std::size_t>(i - 1)]);
    }
    case ScalarOp::Len:
      return IndexValue::num(Rational(static_cast<long>(as_tuple(arg(0), "len").size())));
    case ScalarOp::Lp:
      return IndexValue::num(lp_norm(arg(0), as_tuple(arg(1), "lp")));
    case ScalarOp::Root: {
      const Rational b = as_number(arg(0), "root").rational();
      if (b < 0 || s.degree == 0) throw EvalError("root of a negative base or of degree 0");
      return IndexValue::num(ExactReal(RadicalValue{b, s.degree}));
    }
    case ScalarOp::Tuple: {
      std::vector<Rational> items;
      for (std::size_t i = 0; i < s.args.size(); ++i) items.push_back(as_number(arg(i), "tup").rational());
      return IndexValue::tup(std::move(items));
    }
  }
  throw EvalError("unknown scalar operation");
}

ExactReal eval_number(const Scalar& s, const Env& env) { return as_number(eval_scalar(s, env), "scalar"); }

Rational eval_rational(const Scalar& s, const Env& env) { return eval_number(s, env).rational(); }

long eval_integer(const Scalar& s, const Env& env) { return to_long(eval_rational(s, env), "scalar"); }

bool is_closed(const Scalar& s, const std::set<std::string>& bound) {
  if (s.op == ScalarOp::Ref) return bound.count(s.name) > 0;
  return std::all_of(s.args.begin(), s.args.end(), [&](const ScalarPtr& a) { return is_closed(*a, bound); });
}

// ---------------------------------------------------------------------------
// Term / formula construction

std::string to_string(const VarName& v) {
  return v.index == 0 ? v.family : v.family + std::to_string(v.index);
}

namespace tm {

TermPtr var(std::string family, unsigned long index) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Var;
  t->var = VarName{std::move(family), index};
  return t;
}

TermPtr zero() { return std::make_shared<Term>(); }

TermPtr sum(TermPtr a, TermPtr b) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Sum;
  t->args = {std::move(a), std::move(b)};
  return t;
}

TermPtr scale(ScalarPtr coeff, TermPtr arg) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Scale;
  t->scalar = std::move(coeff);
  t->args = {std::move(arg)};
  return t;
}

TermPtr scale(const Rational& coeff, TermPtr arg) { return scale(sc::lit(coeff), std::move(arg)); }

TermPtr apply(std::string symbol, std::vector<TermPtr> args) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Apply;
  t->name = std::move(symbol);
  t->args = std::move(args);
  return t;
}

TermPtr indexed(std::string family, ScalarPtr index) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::IndexedVar;
  t->name = std::move(family);
  t->scalar = std::move(index);
  return t;
}

TermPtr loop(std::string var, ScalarPtr lo, ScalarPtr hi, TermPtr body) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Loop;
  t->name = std::move(var);
  t->scalar = std::move(lo);
  t->upper = std::move(hi);
  t->args = {std::move(body)};
  return t;
}

TermPtr minus(TermPtr a, TermPtr b) { return sum(std::move(a), scale(Rational(-1), std::move(b))); }

}  // namespace tm

namespace pb {

PBPtr atom(Atom a) {
  auto f = std::make_shared<PBFormula>();
  f->kind = PBKind::Atom;
  f->atom = std::move(a);
  return f;
}

PBPtr norm_le(TermPtr t, ScalarPtr r) { return atom(Atom{AtomKind::NormLE, std::move(t), {}, {}, std::move(r)}); }
PBPtr norm_ge(TermPtr t, ScalarPtr r) { return atom(Atom{AtomKind::NormGE, std::move(t), {}, {}, std::move(r)}); }

PBPtr rel_le(std::string symbol, std::vector<TermPtr> args, ScalarPtr r) {
  return atom(Atom{AtomKind::RelLE, nullptr, std::move(symbol), std::move(args), std::move(r)});
}

PBPtr rel_ge(std::string symbol, std::vector<TermPtr> args, ScalarPtr r) {
  return atom(Atom{AtomKind::RelGE, nullptr, std::move(symbol), std::move(args), std::move(r)});
}

PBPtr conj(std::vector<PBPtr> parts) {
  auto f = std::make_shared<PBFormula>();
  f->kind = PBKind::And;
  f->parts = std::move(parts);
  return f;
}

PBPtr disj(std::vector<PBPtr> parts) {
  auto f = std::make_shared<PBFormula>();
  f->kind = PBKind::Or;
  f->parts = std::move(parts);
  return f;
}

PBPtr countable(std::string binder, IndexDomain domain, PBPtr body) {
  auto f = std::make_shared<PBFormula>();
  f->kind = PBKind::CountableAnd;
  f->binder = std::move(binder);
  f->domain = std::move(domain);
  f->body = std::move(body);
  return f;
}

PBPtr exists(VarName var, ScalarPtr bound, PBPtr body) {
  auto f = std::make_shared<PBFormula>();
  f->kind = PBKind::Exists;
  f->var = std::move(var);
  f->bound = std::move(bound);
  f->body = std::move(body);
  return f;
}

PBPtr forall(VarName var, ScalarPtr bound, PBPtr body) {
  auto f = std::make_shared<PBFormula>();
  f->kind = PBKind::Forall;
  f->var = std::move(var);
  f->bound = std::move(bound);
  f->body = std::move(body);
  return f;
}

}  // namespace pb

namespace la {

LAPtr embed(PBPtr phi) {
  auto f = std::make_shared<LAFormula>();
  f->kind = LAKind::Embed;
  f->pb = std::move(phi);
  return f;
}

LAPtr conj(std::vector<LAPtr> parts) {
  bool all_embedded = std::all_of(parts.begin(), parts.end(), [](const LAPtr& p) { return p->kind == LAKind::Embed; });
  if (all_embedded) {
    std::vector<PBPtr> pbs;
    for (const auto& p : parts) pbs.push_back(p->pb);
    return embed(pb::conj(std::move(pbs)));
  }
  auto f = std::make_shared<LAFormula>();
  f->kind = LAKind::AndN;
  f->parts = std::move(parts);
  return f;
}

LAPtr countable(std::string binder, IndexDomain domain, LAPtr body) {
  if (body->kind == LAKind::Embed) return embed(pb::countable(std::move(binder), std::move(domain), body->pb));
  auto f = std::make_shared<LAFormula>();
  f->kind = LAKind::AndW;
  f->binder = std::move(binder);
  f->domain = std::move(domain);
  f->body = std::move(body);
  return f;
}

LAPtr negate(LAPtr phi) {
  auto f = std::make_shared<LAFormula>();
  f->kind = LAKind::Not;
  f->body = std::move(phi);
  return f;
}

LAPtr exists_seq(std::string family, BoundSequence bounds, LAPtr body) {
  auto f = std::make_shared<LAFormula>();
  f->kind = LAKind::ExistsSeq;
  f->binder = std::move(family);
  f->bounds = std::move(bounds);
  f->body = std::move(body);
  return f;
}

LAPtr implies(LAPtr a, LAPtr b) { return negate(conj({std::move(a), negate(std::move(b))})); }

LAPtr disj(LAPtr a, LAPtr b) { return negate(conj({negate(std::move(a)), negate(std::move(b))})); }

LAPtr forall_seq(std::string family, BoundSequence bounds, LAPtr body) {
  return negate(exists_seq(std::move(family), std::move(bounds), negate(std::move(body))));
}

}  // namespace la

// ---------------------------------------------------------------------------
// Structural equality

namespace {

template <class T>
bool equal_ptrs(const std::shared_ptr<const T>& a, const std::shared_ptr<const T>& b) {
  if (!a || !b) return !a && !b;
  return equal(*a, *b);
}

template <class T>
bool equal_lists(const std::vector<std::shared_ptr<const T>>& a, const std::vector<std::shared_ptr<const T>>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!equal_ptrs(a[i], b[i])) return false;
  }
  return true;
}

bool equal(const IndexDomain& a, const IndexDomain& b) {
  return a.kind == b.kind && equal_ptrs(a.size, b.size) && equal_lists(a.items, b.items);
}

bool equal(const Atom& a, const Atom& b) {
  return a.kind == b.kind && equal_ptrs(a.term, b.term) && a.symbol == b.symbol && equal_lists(a.args, b.args) &&
         equal_ptrs(a.bound, b.bound);
}

}  // namespace

bool equal(const Scalar& a, const Scalar& b) {
  return a.op == b.op && a.value == b.value && a.name == b.name && a.degree == b.degree && equal_lists(a.args, b.args);
}

bool equal(const Term& a, const Term& b) {
  return a.kind == b.kind && a.var == b.var && a.name == b.name && equal_ptrs(a.scalar, b.scalar) &&
         equal_ptrs(a.upper, b.upper) && equal_lists(a.args, b.args);
}

bool equal(const PBFormula& a, const PBFormula& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case PBKind::Atom:
      return equal(a.atom, b.atom);
    case PBKind::And:
    case PBKind::Or:
      return equal_lists(a.parts, b.parts);
    case PBKind::CountableAnd:
      return a.binder == b.binder && equal(a.domain, b.domain) && equal_ptrs(a.body, b.body);
    case PBKind::Exists:
    case PBKind::Forall:
      return a.var == b.var && equal_ptrs(a.bound, b.bound) && equal_ptrs(a.body, b.body);
  }
  return false;
}

bool equal(const LAFormula& a, const LAFormula& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case LAKind::Embed:
      return equal_ptrs(a.pb, b.pb);
    case LAKind::AndN:
      return equal_lists(a.parts, b.parts);
    case LAKind::AndW:
      return a.binder == b.binder && equal(a.domain, b.domain) && equal_ptrs(a.body, b.body);
    case LAKind::Not:
      return equal_ptrs(a.body, b.body);
    case LAKind::ExistsSeq:
      return a.binder == b.binder && a.bounds == b.bounds && equal_ptrs(a.body, b.body);
  }
  return false;
}

bool is_finitary(const PBFormula& phi) {
  switch (phi.kind) {
    case PBKind::Atom:
      return true;
    case PBKind::And:
    case PBKind::Or:
      return std::all_of(phi.parts.begin(), phi.parts.end(), [](const PBPtr& p) { return is_finitary(*p); });
    case PBKind::CountableAnd:
      return false;
    case PBKind::Exists:
    case PBKind::Forall:
      return is_finitary(*phi.body);
  }
  return false;
}

bool has_negation(const LAFormula& phi) {
  switch (phi.kind) {
    case LAKind::Embed:
      return false;
    case LAKind::AndN:
      return std::any_of(phi.parts.begin(), phi.parts.end(), [](const LAPtr& p) { return has_negation(*p); });
    case LAKind::AndW:
    case LAKind::ExistsSeq:
      return has_negation(*phi.body);
    case LAKind::Not:
      return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Free variables

namespace {

struct FreeVarCollector {
  FreeVars out;

  void term(const Term& t, const Env& env) {
    switch (t.kind) {
      case TermKind::Var:
        out.vars.insert(t.var);
        return;
      case TermKind::Zero:
        return;
      case TermKind::IndexedVar:
        try {
          long i = eval_integer(*t.scalar, env);
          out.vars.insert(VarName{t.name, static_cast<unsigned long>(std::max(0L, i))});
        } catch (const EvalError&) {
          out.open_families.insert(t.name);
        }
        return;
      case TermKind::Loop: {
        long lo = 0;
        long hi = 0;
        try {
          lo = eval_integer(*t.scalar, env);
          hi = eval_integer(*t.upper, env);
        } catch (const EvalError&) {
          // Open bounds: scan the body once with the loop variable unbound.
          term(*t.args[0], env);
          return;
        }
        for (long i = lo; i <= hi; ++i) term(*t.args[0], env.bind(t.name, IndexValue::num(Rational(i))));
        return;
      }
      default:
        for (const auto& a : t.args) term(*a, env);
    }
  }

  FreeVars take() {
    for (const auto& v : out.vars) {
      auto& m = out.max_index[v.family];
      m = std::max(m, v.index);
    }
    return std::move(out);
  }
};

void pb_free(const PBFormula& phi, const Env& env, FreeVarCollector& c);

void remove_var(FreeVars& fv, const VarName& v) { fv.vars.erase(v); }

void pb_free(const PBFormula& phi, const Env& env, FreeVarCollector& c) {
  switch (phi.kind) {
    case PBKind::Atom:
      if (phi.atom.term) c.term(*phi.atom.term, env);
      for (const auto& a : phi.atom.args) c.term(*a, env);
      return;
    case PBKind::And:
    case PBKind::Or:
      for (const auto& p : phi.parts) pb_free(*p, env, c);
      return;
    case PBKind::CountableAnd:
      pb_free(*phi.body, env, c);
      return;
    case PBKind::Exists:
    case PBKind::Forall: {
      FreeVarCollector inner;
      pb_free(*phi.body, env, inner);
      remove_var(inner.out, phi.var);
      c.out.vars.insert(inner.out.vars.begin(), inner.out.vars.end());
      c.out.open_families.insert(inner.out.open_families.begin(), inner.out.open_families.end());
      return;
    }
  }
}

void la_free(const LAFormula& phi, FreeVarCollector& c) {
  switch (phi.kind) {
    case LAKind::Embed:
      pb_free(*phi.pb, Env{}, c);
      return;
    case LAKind::AndN:
      for (const auto& p : phi.parts) la_free(*p, c);
      return;
    case LAKind::AndW:
    case LAKind::Not:
      la_free(*phi.body, c);
      return;
    case LAKind::ExistsSeq: {
      FreeVarCollector inner;
      la_free(*phi.body, inner);
      for (auto it = inner.out.vars.begin(); it != inner.out.vars.end();) {
        it = (it->family == phi.binder && it->index >= 1) ? inner.out.vars.erase(it) : std::next(it);
      }
      inner.out.open_families.erase(phi.binder);
      c.out.vars.insert(inner.out.vars.begin(), inner.out.vars.end());
      c.out.open_families.insert(inner.out.open_families.begin(), inner.out.open_families.end());
      return;
    }
  }
}

}  // namespace

FreeVars free_vars(const Term& t) {
  FreeVarCollector c;
  c.term(t, Env{});
  return c.take();
}

FreeVars free_vars(const PBFormula& phi) {
  FreeVarCollector c;
  pb_free(phi, Env{}, c);
  return c.take();
}

FreeVars free_vars(const LAFormula& phi) {
  FreeVarCollector c;
  la_free(phi, c);
  return c.take();
}

}  // namespace pbcalc
