#include "pbcalc/la.hpp"

#include <algorithm>
#include <sstream>

#include "pbcalc/approx.hpp"
#include "pbcalc/enumerate.hpp"
#include "pbcalc/parser.hpp"
#include "sexpr.hpp"

namespace pbcalc {

BranchPtr Branch::component(std::size_t i) const {
  if (kind != BranchKind::Tuple) throw BranchError("component requested from a non-tuple branch");
  if (i >= 1 && i <= components.size()) return components[i - 1];
  if (fallback) return fallback;
  throw BranchError("tuple branch has no component " + std::to_string(i));
}

std::pair<long, long> cantor_pair(long s) {
  if (s < 1) throw BranchError("Cantor index is 1-based");
  long d = 1;  // diagonal i + j = d + 1 holds d pairs
  while (s > d) {
    s -= d;
    ++d;
  }
  return {s, d + 1 - s};
}

std::pair<BranchPtr, long> Branch::at(long s) const {
  if (kind != BranchKind::Neg) throw BranchError("negation step requested from a non-negation branch");
  if (s < 1) throw BranchError("negation steps are 1-based");
  switch (certificate) {
    case Certificate::ConstantOnSingleton:
      return {branches[0], levels[0]};
    case Certificate::DiagonalEnumeration: {
      long k = static_cast<long>(branches.size());
      long t = 0;
      for (long idx = 1;; ++idx) {
        auto [i, j] = cantor_pair(idx);
        if (i <= k && ++t == s) return {branches[static_cast<std::size_t>(i - 1)], j};
      }
    }
    case Certificate::Trusted: {
      std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(s), branches.size()) - 1;
      return {branches[i], levels[i]};
    }
  }
  throw BranchError("unknown certificate");
}

namespace br {

BranchPtr empty() { return std::make_shared<Branch>(); }

BranchPtr tuple(std::vector<BranchPtr> components, BranchPtr fallback) {
  auto b = std::make_shared<Branch>();
  b->kind = BranchKind::Tuple;
  b->components = std::move(components);
  b->fallback = std::move(fallback);
  return b;
}

BranchPtr ex(BranchPtr inner) {
  auto b = std::make_shared<Branch>();
  b->kind = BranchKind::Ex;
  b->inner = std::move(inner);
  return b;
}

BranchPtr constant(BranchPtr body, long level) {
  if (level < 1) throw BranchError("negation levels must be >= 1");
  auto b = std::make_shared<Branch>();
  b->kind = BranchKind::Neg;
  b->certificate = Certificate::ConstantOnSingleton;
  b->branches = {std::move(body)};
  b->levels = {level};
  return b;
}

BranchPtr diagonal(std::vector<BranchPtr> enumeration) {
  if (enumeration.empty()) throw BranchError("diagonal branch needs a nonempty enumeration");
  auto b = std::make_shared<Branch>();
  b->kind = BranchKind::Neg;
  b->certificate = Certificate::DiagonalEnumeration;
  b->branches = std::move(enumeration);
  return b;
}

BranchPtr trusted(std::vector<std::pair<BranchPtr, long>> steps) {
  if (steps.empty()) throw BranchError("trusted branch needs at least one step");
  auto b = std::make_shared<Branch>();
  b->kind = BranchKind::Neg;
  b->certificate = Certificate::Trusted;
  for (auto& [h, l] : steps) {
    if (l < 1) throw BranchError("negation levels must be >= 1");
    b->branches.push_back(std::move(h));
    b->levels.push_back(l);
  }
  return b;
}

}  // namespace br

// ---------------------------------------------------------------------------
// Text form

std::string print_branch(const Branch& h) {
  switch (h.kind) {
    case BranchKind::Empty:
      return "empty";
    case BranchKind::Tuple: {
      if (h.components.empty() && h.fallback) return "(tuple-all " + print_branch(*h.fallback) + ")";
      std::string out = "(tuple";
      for (const auto& c : h.components) out += " " + print_branch(*c);
      if (h.fallback) out += " (default " + print_branch(*h.fallback) + ")";
      return out + ")";
    }
    case BranchKind::Ex:
      return "(ex " + print_branch(*h.inner) + ")";
    case BranchKind::Neg:
      switch (h.certificate) {
        case Certificate::ConstantOnSingleton:
          return "(neg-const " + print_branch(*h.branches[0]) + " " + std::to_string(h.levels[0]) + ")";
        case Certificate::DiagonalEnumeration: {
          std::string out = "(neg-diag (";
          for (std::size_t i = 0; i < h.branches.size(); ++i) out += (i ? " " : "") + print_branch(*h.branches[i]);
          return out + "))";
        }
        case Certificate::Trusted: {
          std::string out = "(neg-trusted (";
          for (std::size_t i = 0; i < h.branches.size(); ++i) {
            out += (i ? " (" : "(") + print_branch(*h.branches[i]) + " " + std::to_string(h.levels[i]) + ")";
          }
          return out + "))";
        }
      }
  }
  return {};
}

namespace {

using namespace detail;

long level_of(const SExpr& e) {
  if (e.is_list || !looks_numeric(e.atom)) fail(e, "expected a positive level");
  long v = std::stol(e.atom);
  if (v < 1) fail(e, "levels must be >= 1");
  return v;
}

BranchPtr build_branch(const SExpr& e) {
  if (!e.is_list) {
    if (e.atom == "empty") return br::empty();
    fail(e, "unknown branch '" + e.atom + "'");
  }
  const std::string& h = head_of(e);
  if (h == "tuple") {
    std::vector<BranchPtr> parts;
    BranchPtr fallback;
    for (std::size_t i = 1; i < e.items.size(); ++i) {
      const SExpr& item = e.items[i];
      if (head_of(item) == "default") {
        if (item.items.size() != 2 || i + 1 != e.items.size()) fail(item, "(default b) must close a tuple");
        fallback = build_branch(item.items[1]);
      } else {
        parts.push_back(build_branch(item));
      }
    }
    return br::tuple(std::move(parts), std::move(fallback));
  }
  if (h == "tuple-all" && e.items.size() == 2) return br::tuple({}, build_branch(e.items[1]));
  if (h == "ex" && e.items.size() == 2) return br::ex(build_branch(e.items[1]));
  if (h == "neg-const" && e.items.size() == 3) return br::constant(build_branch(e.items[1]), level_of(e.items[2]));
  if (h == "neg-diag" && e.items.size() == 2 && e.items[1].is_list) {
    std::vector<BranchPtr> bs;
    for (const auto& item : e.items[1].items) bs.push_back(build_branch(item));
    return br::diagonal(std::move(bs));
  }
  if (h == "neg-trusted" && e.items.size() == 2 && e.items[1].is_list) {
    std::vector<std::pair<BranchPtr, long>> steps;
    for (const auto& item : e.items[1].items) {
      if (!item.is_list || item.items.size() != 2) fail(item, "trusted steps look like (branch level)");
      steps.emplace_back(build_branch(item.items[0]), level_of(item.items[1]));
    }
    return br::trusted(std::move(steps));
  }
  fail(e, "malformed branch '" + h + "'");
}

}  // namespace

BranchPtr parse_branch(std::string_view text) { return build_branch(Reader(text).read_all()); }

bool is_trusted(const Branch& h) {
  if (h.kind == BranchKind::Neg && h.certificate == Certificate::Trusted) return true;
  auto any = [](const std::vector<BranchPtr>& bs) {
    return std::any_of(bs.begin(), bs.end(), [](const BranchPtr& b) { return b && is_trusted(*b); });
  };
  return any(h.components) || (h.fallback && is_trusted(*h.fallback)) || any(h.branches) ||
         (h.inner && is_trusted(*h.inner));
}

// ---------------------------------------------------------------------------
// Shapes and constructors

void check_shape(const LAFormula& phi, const Branch& h) {
  auto mismatch = [&](const char* want) {
    throw BranchError(std::string("branch ") + print_branch(h) + " does not index " + print_formula(phi) + " (expected " +
                      want + ")");
  };
  switch (phi.kind) {
    case LAKind::Embed:
      if (h.kind != BranchKind::Empty) mismatch("empty");
      return;
    case LAKind::AndN:
      if (h.kind != BranchKind::Tuple) mismatch("a tuple");
      for (std::size_t i = 0; i < phi.parts.size(); ++i) check_shape(*phi.parts[i], *h.component(i + 1));
      return;
    case LAKind::AndW:
      if (h.kind != BranchKind::Tuple) mismatch("a tuple");
      for (const auto& c : h.components) check_shape(*phi.body, *c);
      if (h.fallback) check_shape(*phi.body, *h.fallback);
      return;
    case LAKind::Not:
      if (h.kind != BranchKind::Neg) mismatch("a negation branch");
      if (h.certificate == Certificate::ConstantOnSingleton && has_negation(*phi.body)) {
        throw BranchError("constant negation branch paired with " + print_formula(phi) +
                          ", whose body has more than one branch");
      }
      for (const auto& b : h.branches) check_shape(*phi.body, *b);
      return;
    case LAKind::ExistsSeq:
      if (h.kind != BranchKind::Ex) mismatch("an existential branch");
      check_shape(*phi.body, *h.inner);
      return;
  }
}

BranchPtr default_branch(const LAFormula& phi) {
  switch (phi.kind) {
    case LAKind::Embed:
      return br::empty();
    case LAKind::AndN: {
      std::vector<BranchPtr> parts;
      for (const auto& p : phi.parts) parts.push_back(default_branch(*p));
      return br::tuple(std::move(parts));
    }
    case LAKind::AndW:
      return br::tuple({}, default_branch(*phi.body));
    case LAKind::Not:
      if (!has_negation(*phi.body)) return br::diagonal({default_branch(*phi.body)});
      return br::trusted({{default_branch(*phi.body), 1}});
    case LAKind::ExistsSeq:
      return br::ex(default_branch(*phi.body));
  }
  return br::empty();
}

BranchPtr constant_neg_branch(const LAFormula& phi, long n) {
  const LAFormula& body = phi.kind == LAKind::Not ? *phi.body : phi;
  if (has_negation(body)) {
    throw BranchError("constant negation branch needs a negation-free body, got " + print_formula(body));
  }
  return br::constant(default_branch(body), n + 1);
}

BranchPtr diagonal_neg_branch(const LAFormula& phi, std::vector<BranchPtr> enumeration) {
  const LAFormula& body = phi.kind == LAKind::Not ? *phi.body : phi;
  for (const auto& b : enumeration) check_shape(body, *b);
  return br::diagonal(std::move(enumeration));
}

// ---------------------------------------------------------------------------
// Approximations

namespace {

void check_level(long n) {
  if (n < 1) throw std::invalid_argument("approximation level must be >= 1, got " + std::to_string(n));
}

/// Nested exists y_1 .. y_k with the given bounds around body.
PBPtr nest_exists(const std::string& family, const std::vector<Rational>& bounds, PBPtr body) {
  for (std::size_t i = bounds.size(); i-- > 0;) {
    body = pb::exists(VarName{family, i + 1}, sc::lit(bounds[i]), body);
  }
  return body;
}

template <class F>
void for_instances(const LAFormula& phi, long count, const Env& env, F&& each) {
  std::size_t i = 0;
  for (auto& v : enumerate_prefix(phi.domain, static_cast<std::size_t>(count), env)) {
    each(++i, env.bind(phi.binder, std::move(v)));
  }
}

}  // namespace

PBPtr branch_approx(const LAFormula& phi, const Branch& h, long n, const Env& env) {
  check_level(n);
  switch (phi.kind) {
    case LAKind::Embed:
      if (h.kind != BranchKind::Empty) check_shape(phi, h);
      return approximate(*phi.pb, n, env);
    case LAKind::AndN: {
      if (h.kind != BranchKind::Tuple) check_shape(phi, h);
      std::vector<PBPtr> parts;
      for (std::size_t i = 0; i < phi.parts.size(); ++i) parts.push_back(branch_approx(*phi.parts[i], *h.component(i + 1), n, env));
      return pb::conj(std::move(parts));
    }
    case LAKind::AndW: {
      if (h.kind != BranchKind::Tuple) check_shape(phi, h);
      std::vector<PBPtr> parts;
      for_instances(phi, n, env, [&](std::size_t i, const Env& inner) {
        parts.push_back(branch_approx(*phi.body, *h.component(i), n, inner));
      });
      return pb::conj(std::move(parts));
    }
    case LAKind::Not: {
      if (h.kind != BranchKind::Neg) check_shape(phi, h);
      std::vector<PBPtr> parts;
      for (long s = 1; s <= n; ++s) {
        auto [b, level] = h.at(s);
        parts.push_back(neg_branch(*phi.body, *b, level, env));
      }
      return approximate(*pb::conj(std::move(parts)), n);
    }
    case LAKind::ExistsSeq: {
      if (h.kind != BranchKind::Ex) check_shape(phi, h);
      PBPtr body = branch_approx(*phi.body, *h.inner, n, env);
      unsigned long ind = free_vars(*body).max_of(phi.binder);
      std::vector<Rational> bounds;
      for (unsigned long i = 1; i <= ind; ++i) bounds.push_back(phi.bounds.at(i) + Rational(1, n));
      return nest_exists(phi.binder, bounds, body);
    }
  }
  return nullptr;
}

PBPtr neg_branch(const LAFormula& phi, const Branch& h, long level, const Env& env) {
  check_level(level);
  switch (phi.kind) {
    case LAKind::Embed:
      if (h.kind != BranchKind::Empty) check_shape(phi, h);
      return weak_negation(*phi.pb, level, env);
    case LAKind::AndN: {
      if (h.kind != BranchKind::Tuple) check_shape(phi, h);
      std::vector<PBPtr> parts;
      for (std::size_t i = 0; i < phi.parts.size(); ++i) parts.push_back(neg_branch(*phi.parts[i], *h.component(i + 1), level, env));
      return pb::disj(std::move(parts));
    }
    case LAKind::AndW: {
      if (h.kind != BranchKind::Tuple) check_shape(phi, h);
      std::vector<PBPtr> parts;
      for_instances(phi, level, env, [&](std::size_t i, const Env& inner) {
        parts.push_back(neg_branch(*phi.body, *h.component(i), level, inner));
      });
      return pb::disj(std::move(parts));
    }
    case LAKind::Not: {
      // [not psi]_h is the conjunction over s of neg([psi]_{f1(s)}, f2(s)).
      if (h.kind != BranchKind::Neg) check_shape(phi, h);
      std::vector<PBPtr> parts;
      for (long s = 1; s <= level; ++s) {
        auto [b, l] = h.at(s);
        parts.push_back(weak_negation(*neg_branch(*phi.body, *b, l, env), level));
      }
      return pb::disj(std::move(parts));
    }
    case LAKind::ExistsSeq: {
      // [exists-seq]_h is the conjunction over k of psi_k: bounds r_i around ([body]_h)_k.
      if (h.kind != BranchKind::Ex) check_shape(phi, h);
      std::vector<PBPtr> parts;
      for (long k = 1; k <= level; ++k) {
        PBPtr body = branch_approx(*phi.body, *h.inner, k, env);
        unsigned long ind = free_vars(*body).max_of(phi.binder);
        std::vector<Rational> bounds;
        for (unsigned long i = 1; i <= ind; ++i) bounds.push_back(phi.bounds.at(i));
        parts.push_back(weak_negation(*nest_exists(phi.binder, bounds, body), level));
      }
      return pb::disj(std::move(parts));
    }
  }
  return nullptr;
}

// ---------------------------------------------------------------------------
// Almost versions

std::string AlmostSchema::to_text() const {
  std::ostringstream out;
  out << "hypothesis: " << print_pb(*hypothesis) << "\n";
  out << "obstruction: " << print_pb(*obstruction) << "\n";
  out << "conclusion: " << print_pb(*conclusion) << "\n";
  out << "trace:\n";
  for (std::size_t i = 0; i < trace.size(); ++i) out << "  " << (i + 1) << ". " << trace[i] << "\n";
  return out.str();
}

AlmostSchema decode_almost(const PBFormula& sigma, const PBFormula& theta, long n, long m) {
  check_level(n);
  check_level(m);
  for (const PBFormula* f : {&sigma, &theta}) {
    FreeVars fv = free_vars(*f);
    if (!fv.vars.empty() || !fv.open_families.empty()) {
      throw std::invalid_argument("decode_almost needs sentences; " + print_pb(*f) + " has free variables");
    }
  }
  LAPtr neg_theta = la::negate(la::embed(std::make_shared<PBFormula>(theta)));
  BranchPtr h = constant_neg_branch(*neg_theta, n);
  AlmostSchema s;
  s.hypothesis = approximate(sigma, m);
  s.obstruction = branch_approx(*neg_theta, *h, m);
  s.conclusion = approximate(theta, n);
  std::string nn = std::to_string(n);
  std::string mm = std::to_string(m);
  std::string n1 = std::to_string(n + 1);
  s.trace = {
      "the theory proves not(sigma and not theta) for the branch h = " + print_branch(*h) +
          " (constant, certified: theta is negation-free)",
      "by uniformity some level m gives: no model satisfies sigma_" + mm + " together with ([not theta]_h)_" + mm,
      "([not theta]_h)_" + mm + " unfolds to (and over s=1.." + mm + " of neg(theta, " + n1 + "))_" + mm +
          " = obstruction",
      "in a model of hypothesis sigma_" + mm + " the obstruction fails, so some conjunct (neg(theta, " + n1 + "))_" +
          mm + " fails",
      "a formula implies its approximations, so neg(theta, " + n1 + ") fails",
      "weak negation: failure of theta_" + nn + " would force neg(theta, " + n1 + "); hence theta_" + nn +
          " = conclusion holds",
  };
  return s;
}

std::string UniformSearchResult::to_text() const {
  std::ostringstream out;
  if (found) {
    out << "uniform index m=" << m << " certified over " << family_size << " structures (searched m=1.." << m_max
        << ")\n";
  } else {
    out << "exhausted m=1.." << m_max << " over " << family_size << " structures without a uniform index\n";
  }
  for (const auto& c : log) out << "  m=" << c.m << " rejected by " << c.structure << ": " << c.witness << "\n";
  return out.str();
}

UniformSearchResult search_uniform_index(const PBFormula& sigma, const PBFormula& theta, long n,
                                         const std::vector<FiniteNormedStructure>& family, long m_max) {
  if (family.empty()) throw std::invalid_argument("uniform-index search needs a nonempty family");
  check_level(n);
  check_level(m_max);
  UniformSearchResult result;
  result.m_max = m_max;
  result.family_size = family.size();
  PBPtr conclusion = approximate(theta, n);
  // Structures where theta_n already holds can never reject any m.
  std::vector<std::size_t> open;
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (!eval(family[i], *conclusion, {})) open.push_back(i);
  }
  for (long m = 1; m <= m_max; ++m) {
    PBPtr hypothesis = approximate(sigma, m);
    bool rejected = false;
    for (std::size_t i : open) {
      if (eval(family[i], *hypothesis, {})) {
        std::string name = family[i].name.empty() ? "structure#" + std::to_string(i + 1) : family[i].name;
        result.log.push_back({m, name, explain_failure(family[i], *conclusion, {}).value_or("conclusion fails")});
        rejected = true;
        break;
      }
    }
    if (!rejected) {
      result.found = true;
      result.m = m;
      return result;
    }
  }
  return result;
}

std::size_t count_uniform_counterexamples(const PBFormula& sigma, const PBFormula& theta, long n, long m,
                                          const std::vector<FiniteNormedStructure>& family) {
  PBPtr hypothesis = approximate(sigma, m);
  PBPtr conclusion = approximate(theta, n);
  return static_cast<std::size_t>(std::count_if(family.begin(), family.end(), [&](const FiniteNormedStructure& e) {
    return eval(e, *hypothesis, {}) && !eval(e, *conclusion, {});
  }));
}

PrefixVerdict eval_la_prefix(const FiniteNormedStructure& e, const LAFormula& phi, const Branch& h, const Assignment& a,
                             std::size_t N) {
  if (N < 1) throw std::invalid_argument("prefix depth must be >= 1");
  check_shape(phi, h);
  PrefixVerdict v;
  v.depth = N;
  for (std::size_t n = 1; n <= N; ++n) {
    PBPtr level = branch_approx(phi, h, static_cast<long>(n));
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
  if (is_trusted(h)) v.witness += (v.witness.empty() ? "" : "; ") + std::string("branch is trusted, not certified");
  return v;
}

}  // namespace pbcalc
