#include "pbcalc/evaluator.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "pbcalc/approx.hpp"
#include "pbcalc/parser.hpp"

namespace pbcalc {

Vector eval_term(const FiniteNormedStructure& e, const Term& t, const Assignment& a, const Env& env) {
  switch (t.kind) {
    case TermKind::Var: {
      auto it = a.find(t.var);
      if (it == a.end()) throw EvalError("variable " + to_string(t.var) + " is not assigned");
      return it->second;
    }
    case TermKind::Zero:
      return e.zero();
    case TermKind::Sum:
      return eval_term(e, *t.args[0], a, env) + eval_term(e, *t.args[1], a, env);
    case TermKind::Scale:
      return eval_rational(*t.scalar, env) * eval_term(e, *t.args[0], a, env);
    case TermKind::Apply: {
      std::vector<Vector> args;
      for (const auto& s : t.args) args.push_back(eval_term(e, *s, a, env));
      try {
        return e.apply(t.name, args);
      } catch (const StructureError& err) {
        throw StructureError(std::string(err.what()) + " (term " + print_term(t) + ")");
      }
    }
    case TermKind::IndexedVar: {
      long i = eval_integer(*t.scalar, env);
      auto it = a.find(VarName{t.name, static_cast<unsigned long>(std::max(i, 0L))});
      if (i < 1 || it == a.end()) throw EvalError("variable " + t.name + std::to_string(i) + " is not assigned");
      return it->second;
    }
    case TermKind::Loop: {
      Vector acc = e.zero();
      long lo = eval_integer(*t.scalar, env);
      long hi = eval_integer(*t.upper, env);
      for (long i = lo; i <= hi; ++i) acc = acc + eval_term(e, *t.args[0], a, env.bind(t.name, IndexValue::num(Rational(i))));
      return acc;
    }
  }
  return e.zero();
}

namespace {

struct AtomValue {
  ExactReal lhs;
  ExactReal bound;
  bool holds;
};

AtomValue eval_atom(const FiniteNormedStructure& e, const Atom& atom, const Assignment& a, const Env& env) {
  ExactReal lhs;
  if (atom.kind == AtomKind::NormLE || atom.kind == AtomKind::NormGE) {
    lhs = e.norm_of(eval_term(e, *atom.term, a, env));
  } else {
    std::vector<Vector> args;
    for (const auto& t : atom.args) args.push_back(eval_term(e, *t, a, env));
    lhs = e.relate(atom.symbol, args);
  }
  ExactReal bound = eval_number(*atom.bound, env);
  bool le = atom.kind == AtomKind::NormLE || atom.kind == AtomKind::RelLE;
  return {lhs, bound, le ? lhs <= bound : lhs >= bound};
}

template <class F>
bool any_in_ball(const FiniteNormedStructure& e, const PBFormula& q, const Assignment& a, const Env& env, F&& test) {
  ExactReal r = eval_number(*q.bound, env);
  Assignment inner = a;
  for (const auto& p : e.carrier) {
    if (!(e.norm_of(p) <= r)) continue;
    inner[q.var] = p;
    if (test(inner)) return true;
  }
  return false;
}

}  // namespace

bool eval(const FiniteNormedStructure& e, const PBFormula& phi, const Assignment& a, const Env& env) {
  switch (phi.kind) {
    case PBKind::Atom:
      return eval_atom(e, phi.atom, a, env).holds;
    case PBKind::And:
      return std::all_of(phi.parts.begin(), phi.parts.end(), [&](const PBPtr& p) { return eval(e, *p, a, env); });
    case PBKind::Or:
      return std::any_of(phi.parts.begin(), phi.parts.end(), [&](const PBPtr& p) { return eval(e, *p, a, env); });
    case PBKind::CountableAnd:
      throw EvalError("countable conjunction over " + phi.binder + " cannot be evaluated exactly; approximate first");
    case PBKind::Exists:
      return any_in_ball(e, phi, a, env, [&](const Assignment& in) { return eval(e, *phi.body, in, env); });
    case PBKind::Forall:
      return !any_in_ball(e, phi, a, env, [&](const Assignment& in) { return !eval(e, *phi.body, in, env); });
  }
  return false;
}

std::optional<std::string> explain_failure(const FiniteNormedStructure& e, const PBFormula& phi, const Assignment& a,
                                           const Env& env) {
  switch (phi.kind) {
    case PBKind::Atom: {
      AtomValue v = eval_atom(e, phi.atom, a, env);
      if (v.holds) return std::nullopt;
      return "atom " + print_pb(phi) + " fails: value " + to_string(v.lhs) + " vs bound " + to_string(v.bound);
    }
    case PBKind::And:
      for (const auto& p : phi.parts) {
        if (auto why = explain_failure(e, *p, a, env)) return why;
      }
      return std::nullopt;
    case PBKind::Or:
      if (eval(e, phi, a, env)) return std::nullopt;
      return "no disjunct holds in " + print_pb(phi);
    case PBKind::CountableAnd:
      throw EvalError("countable conjunction cannot be evaluated exactly; approximate first");
    case PBKind::Exists:
      if (eval(e, phi, a, env)) return std::nullopt;
      return "no carrier point " + to_string(phi.var) + " with norm <= " + print_scalar(*phi.bound) +
             " satisfies the body";
    case PBKind::Forall: {
      std::optional<std::string> out;
      any_in_ball(e, phi, a, env, [&](const Assignment& in) {
        if (auto why = explain_failure(e, *phi.body, in, env)) {
          out = to_string(phi.var) + "=" + to_string(in.at(phi.var)) + ": " + *why;
          return true;
        }
        return false;
      });
      return out;
    }
  }
  return std::nullopt;
}

std::string PrefixVerdict::to_text() const {
  if (holds) return "HoldsToDepth(" + std::to_string(depth) + ")";
  return "FailsAt(" + std::to_string(fail_at) + ")" + (witness.empty() ? "" : ": " + witness);
}

PrefixVerdict eval_ap_prefix(const FiniteNormedStructure& e, const PBFormula& phi, const Assignment& a, std::size_t N) {
  if (N < 1) throw std::invalid_argument("prefix depth must be >= 1");
  PrefixVerdict v;
  v.depth = N;
  for (std::size_t n = 1; n <= N; ++n) {
    PBPtr level = approximate(phi, static_cast<long>(n));
    bool ok = eval(e, *level, a);
    if (!ok && v.holds) {
      v.holds = false;
      v.fail_at = n;
      v.witness = explain_failure(e, *level, a).value_or("");
    } else if (ok && !v.holds) {
      throw std::logic_error("level coherence violated: level " + std::to_string(v.fail_at) + " fails but level " +
                             std::to_string(n) + " holds");
    }
  }
  return v;
}

Assignment parse_assignment(const std::vector<std::string>& items) {
  Assignment out;
  for (const auto& item : items) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw std::invalid_argument("assignment must look like x1=a,b: " + item);
    std::string name = item.substr(0, eq);
    std::size_t cut = name.size();
    while (cut > 1 && std::isdigit(static_cast<unsigned char>(name[cut - 1]))) --cut;
    VarName v{name.substr(0, cut), cut == name.size() ? 0 : std::stoul(name.substr(cut))};
    Vector x;
    std::string comps = item.substr(eq + 1);
    std::replace(comps.begin(), comps.end(), ',', ' ');
    std::istringstream in(comps);
    for (std::string w; in >> w;) x.push_back(parse_rational(w));
    out[v] = std::move(x);
  }
  return out;
}

std::string to_string(const Assignment& a) {
  std::string out;
  for (const auto& [v, x] : a) out += (out.empty() ? "" : " ") + to_string(v) + "=" + to_string(x);
  return out.empty() ? "{}" : out;
}

}  // namespace pbcalc
