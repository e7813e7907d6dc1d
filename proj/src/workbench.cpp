#include "pbcalc/workbench.hpp"

#include <random>
#include <set>
#include <sstream>

#include "pbcalc/approx.hpp"
#include "pbcalc/enumerate.hpp"
#include "pbcalc/parser.hpp"
#include "builders.hpp"

namespace pbcalc {

using detail::affine;
using detail::combo;
using detail::grid;
using detail::norm_name;

namespace {

/// e * e * ... * e (p factors) as scalar text.
std::string power_text(const std::string& e, long p) {
  std::string out = e;
  for (long i = 1; i < p; ++i) out = "(mul " + e + " " + out + ")";
  return out;
}

SymbolDecl decl(const std::string& name, unsigned arity) { return SymbolDecl{name, arity, {}, {}}; }

SymbolDecl bounded_map(const std::string& name, long k) {
  SymbolDecl d = decl(name, 1);
  d.bound.linear = std::make_pair(Rational(k), Rational(0));
  d.modulus.default_factor = Rational(1, k);
  return d;
}

TermPtr x_at(ScalarPtr i) { return tm::indexed("x", std::move(i)); }

/// sum_{i=lo}^{hi} coeff(i) x_i
TermPtr weighted_block(const std::string& loop, ScalarPtr lo, ScalarPtr hi, const std::string& weights) {
  ScalarPtr i = sc::ref(loop);
  return tm::loop(loop, std::move(lo), std::move(hi), tm::scale(sc::at(sc::ref(weights), i), x_at(i)));
}

}  // namespace

// ---------------------------------------------------------------------------
// Reflexivity

LAPtr build_reflexivity_sentence() {
  ScalarPtr k = sc::ref("k");
  ScalarPtr r = sc::ref("r");
  TermPtr left = weighted_block("i", sc::lit(1), k, "a");
  ScalarPtr j = sc::ref("j");
  TermPtr right = tm::loop("j", sc::lit(1), r, tm::scale(sc::at(sc::ref("b"), j), x_at(sc::add(k, j))));
  PBPtr far = pb::norm_ge(tm::minus(left, right), sc::div(sc::lit(1), sc::ref("n")));
  PBPtr none_close = pb::countable(
      "k", IndexDomain::naturals(),
      pb::countable("r", IndexDomain::naturals(),
                    pb::countable("a", IndexDomain::convex(k), pb::countable("b", IndexDomain::convex(r), far))));
  LAPtr body = la::negate(la::exists_seq("x", BoundSequence{{}, Rational(1)}, la::embed(none_close)));
  return la::countable("n", IndexDomain::naturals(), body);
}

BranchPtr reflexivity_branch(long level) {
  return br::tuple({}, br::constant(br::ex(br::empty()), level));
}

// ---------------------------------------------------------------------------
// Ulam

Encoding build_ulam(long k, UlamConclusion conclusion) {
  if (k < 1) throw std::invalid_argument("Ulam needs k >= 1");
  Encoding out;
  out.signature.add_function(bounded_map("T", k));
  out.signature.add_relation(decl("iso", 2));
  out.signature.add_relation(decl("kbound", 2));
  const Signature& sig = out.signature;
  const std::string K = std::to_string(k);

  out.theory.push_back({"bound", parse_pb("(And n Nat (forall (x n) (le (rel kbound (T x) x) 0)))", sig)});
  out.theory.push_back({"zero", parse_pb("(le (norm (T 0)) 0)", sig)});
  out.theory.push_back(
      {"onto",
       parse_pb("(And n Nat (forall (x n) (exists (y (mul " + K + " n)) (le (norm (+ (T x) (scale -1 y))) 0))))", sig)});

  const std::string iso = "(rel iso (+ (T x) (scale -1 (T y))) (+ x (scale -1 y)))";
  out.sigma = parse_pb("(forall (x 1) (forall (y 1) (and (le " + iso + " 0) (ge " + iso + " 0))))", sig);
  const std::string gap = conclusion == UlamConclusion::Additive ? "(+ (T (+ x y)) (scale -1 (+ (T x) (T y))))"
                                                                 : "(+ (+ (T x) (T y)) (scale -1 (+ x y)))";
  out.theta = parse_pb("(forall (x 1) (forall (y 1) (le (norm " + gap + ") 0)))", sig);
  out.sentence = la::implies(la::embed(out.sigma), la::embed(out.theta));
  return out;
}

// ---------------------------------------------------------------------------
// Behrends

Encoding build_behrends(long k, long p, long q) {
  if (k < 1 || p < 1 || q < 1) throw std::invalid_argument("Behrends needs k, p, q >= 1");
  Encoding out;
  Signature& sig = out.signature;
  sig.add_function(bounded_map("P", k));
  sig.add_function(bounded_map("Q", k));
  sig.add_function(decl("e1", 0));
  sig.add_function(decl("e2", 0));
  sig.add_relation(decl("fp", 1));
  sig.add_relation(decl("fq", 1));
  sig.add_relation(decl("dp", 3));
  sig.add_relation(decl("dq", 3));
  sig.add_relation(decl("dpq", 2));

  auto linear = [&](const std::string& f) {
    return "(And t (Qtuple 3) (forall (x (at t 3)) (forall (y (at t 3)) (le (norm (+ (" + f +
           " (+ (scale (at t 1) x) (scale (at t 2) y))) (scale -1 (+ (scale (at t 1) (" + f +
           " x)) (scale (at t 2) (" + f + " y)))))) 0))))";
  };
  auto idempotent = [&](const std::string& f) {
    return "(And r Q (forall (x r) (le (norm (+ (" + f + " (" + f + " x)) (scale -1 (" + f + " x)))) 0)))";
  };
  auto range = [&](const std::string& rel, long e) {
    const std::string s = "(mul r (at c 1))";
    return "(And r Q (And c (CO 2) (forall (x r) (or (le (norm x) " + s + ") (and (ge (rel " + rel + " x) " +
           power_text(s, e) + ") (le (rel " + rel + " x) " + power_text("r", e) + "))))))";
  };
  out.theory.push_back({"P-linear", parse_pb(linear("P"), sig)});
  out.theory.push_back({"Q-linear", parse_pb(linear("Q"), sig)});
  out.theory.push_back({"P-idempotent", parse_pb(idempotent("P"), sig)});
  out.theory.push_back({"Q-idempotent", parse_pb(idempotent("Q"), sig)});
  out.theory.push_back({"fp-range", parse_pb(range("fp", p), sig)});
  out.theory.push_back({"fq-range", parse_pb(range("fq", q), sig)});
  out.theory.push_back({"riesz", parse_pb("(and (le (norm e1) 1) (ge (norm e1) 1) (le (norm e2) 1) (ge (norm e2) 1) "
                                          "(ge (norm (+ e1 (scale -1 e2))) 1/2))",
                                          sig)});

  auto split = [](const std::string& rel, const std::string& f) {
    const std::string atom = "(rel " + rel + " (" + f + " x) (+ x (scale -1 (" + f + " x))) x)";
    return "(forall (x 1) (and (le " + atom + " 0) (ge " + atom + " 0)))";
  };
  out.sigma = parse_pb("(and " + split("dp", "P") + " " + split("dq", "Q") + ")", sig);
  out.theta = parse_pb(
      "(forall (x 1) (and (le (norm (+ (P (Q x)) (scale -1 (Q (P x))))) 0) (le (rel dpq x x) 0) (ge (rel dpq x x) 0)))",
      sig);
  out.sentence = la::implies(la::embed(out.sigma), la::embed(out.theta));
  return out;
}

// ---------------------------------------------------------------------------
// Krivine

PBPtr krivine_theta(long n, ScalarPtr p, const Rational& eps, const std::vector<TermPtr>& ys,
                    const std::string& binder) {
  if (n < 1 || ys.size() != static_cast<std::size_t>(n)) throw std::invalid_argument("theta needs n block terms");
  if (eps < 0) throw std::invalid_argument("theta needs eps >= 0");
  ScalarPtr c = sc::ref(binder);
  TermPtr combo;
  for (long j = 1; j <= n; ++j) {
    TermPtr part = tm::scale(sc::at(c, sc::lit(j)), ys[static_cast<std::size_t>(j - 1)]);
    combo = combo ? tm::sum(combo, part) : part;
  }
  ScalarPtr lp = sc::lp(std::move(p), c);
  return pb::countable(binder, IndexDomain::rational_tuples(sc::lit(n)),
                       pb::conj({pb::norm_ge(combo, lp), pb::norm_le(combo, sc::mul(sc::lit(Rational(1) + eps), lp))}));
}

PBPtr krivine_base(const Rational& K) {
  if (K < 1) throw std::invalid_argument("BaseK needs K >= 1");
  ScalarPtr i = sc::ref("i");
  PBPtr unit = pb::countable("i", IndexDomain::naturals(),
                             pb::conj({pb::norm_le(x_at(i), sc::lit(1)), pb::norm_ge(x_at(i), sc::lit(1))}));
  ScalarPtr n = sc::ref("n");
  ScalarPtr m = sc::ref("m");
  TermPtr shorter = weighted_block("i", sc::lit(1), n, "a");
  TermPtr longer = weighted_block("i", sc::lit(1), sc::add(n, m), "a");
  // ||shorter|| <= K ||longer||, through the threshold abbreviation.
  PBPtr ineq = le_abbreviation(
      "t", [&](ScalarPtr t) { return pb::norm_le(shorter, t); },
      [&](ScalarPtr t) { return pb::norm_ge(longer, sc::div(t, sc::lit(K))); });
  PBPtr basis = pb::countable(
      "n", IndexDomain::naturals(),
      pb::countable("m", IndexDomain::naturals(),
                    pb::countable("a", IndexDomain::rational_tuples(sc::add(n, m)), ineq)));
  return pb::conj({unit, basis});
}

KrivineFormulas build_krivine_formulas(const Rational& K, long n, const Rational& eps, long truncation,
                                       long theta_p) {
  if (n < 1 || truncation < 1) throw std::invalid_argument("Krivine needs n, truncation >= 1");
  if (eps <= 0) throw std::invalid_argument("Krivine needs eps > 0");
  KrivineFormulas out;
  out.base_k = krivine_base(K);

  std::vector<TermPtr> ys;
  for (long j = 1; j <= n; ++j) ys.push_back(tm::var("y", static_cast<unsigned long>(j)));
  out.theta = krivine_theta(n, sc::lit(theta_p), eps, ys);

  ScalarPtr q = sc::ref("q");
  std::vector<TermPtr> blocks;
  for (long j = 1; j <= n; ++j) {
    blocks.push_back(weighted_block("i", sc::add(sc::at(q, sc::lit(j)), sc::lit(1)), sc::at(q, sc::lit(j + 1)), "b"));
  }
  LAPtr not_theta = la::negate(la::embed(krivine_theta(n, sc::ref("p"), eps, blocks)));
  LAPtr all_fail = la::countable(
      "p", IndexDomain::qsharp(),
      la::countable("q", IndexDomain::increasing(sc::lit(n)),
                    la::countable("b", IndexDomain::rational_tuples(sc::at(q, sc::lit(n + 1))), not_theta)));
  out.negated = la::negate(
      la::exists_seq("x", BoundSequence{{}, Rational(1)}, la::conj({la::embed(out.base_k), all_fail})));
  out.base_k_prefix = truncate(*out.base_k, truncation);
  out.theta_prefix = truncate(*out.theta, truncation);
  return out;
}

PBPtr truncate(const PBFormula& phi, long count, const Env& env) {
  if (count < 1) throw std::invalid_argument("truncation count must be >= 1");
  switch (phi.kind) {
    case PBKind::Atom:
      return instantiate(phi, env);
    case PBKind::And:
    case PBKind::Or: {
      std::vector<PBPtr> parts;
      for (const auto& p : phi.parts) parts.push_back(truncate(*p, count, env));
      return phi.kind == PBKind::And ? pb::conj(std::move(parts)) : pb::disj(std::move(parts));
    }
    case PBKind::CountableAnd: {
      std::vector<PBPtr> parts;
      for (const auto& v : enumerate_prefix(phi.domain, static_cast<std::size_t>(count), env)) {
        parts.push_back(truncate(*phi.body, count, env.bind(phi.binder, v)));
      }
      return pb::conj(std::move(parts));
    }
    case PBKind::Exists:
    case PBKind::Forall: {
      ScalarPtr b = sc::of(eval_number(*phi.bound, env));
      PBPtr body = truncate(*phi.body, count, env);
      return phi.kind == PBKind::Exists ? pb::exists(phi.var, b, body) : pb::forall(phi.var, b, body);
    }
  }
  return nullptr;
}

// ---------------------------------------------------------------------------
// Structures

FiniteNormedStructure line_structure(const std::vector<Rational>& points) {
  std::set<Rational> values{Rational(0)};
  for (const auto& q : points) {
    values.insert(q);
    values.insert(-q);
  }
  FiniteNormedStructure e;
  e.name = std::to_string(values.size()) + "-point line";
  e.dim = 1;
  e.norm = NormSpec{true, 1};
  for (const auto& q : values) e.carrier.push_back(Vector{q});
  e.validate();
  return e;
}

FiniteNormedStructure unit_basis_structure(std::size_t d, NormSpec norm) {
  FiniteNormedStructure e;
  e.name = norm_name(norm) + "^" + std::to_string(d) + " unit basis";
  e.dim = d;
  e.norm = norm;
  e.carrier.push_back(e.zero());
  for (std::size_t i = 0; i < d; ++i) {
    for (long s : {1L, -1L}) {
      Vector v = e.zero();
      v[i] = s;
      e.carrier.push_back(v);
    }
  }
  e.validate();
  return e;
}

namespace {

void add_ulam_relations(FiniteNormedStructure& e, long k) {
  e.relations["iso"] = combo(2, {{Rational(1), 1}, {Rational(-1), 1}});
  e.relations["kbound"] = combo(2, {{Rational(1), 1}, {Rational(-k), 1}});
}

}  // namespace

std::vector<FiniteNormedStructure> ulam_family(long k, std::size_t count, unsigned seed) {
  const std::vector<Rational> values{Rational(-1), Rational(-1, 2), Rational(0), Rational(1, 2), Rational(1)};
  const std::vector<Vector> points = grid(2, values);
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> shift(-3, 3);
  std::uniform_int_distribution<int> how_many(0, 2);
  // Only interior points (norm <= 1/2) move: the isometry hypothesis never
  // constrains the boundary, while the conclusion reaches it through T(x + y).
  std::vector<Vector> interior;
  for (const auto& v : points) {
    if (abs(v[0]) <= Rational(1, 2) && abs(v[1]) <= Rational(1, 2) && (v[0] != 0 || v[1] != 0)) interior.push_back(v);
  }
  std::uniform_int_distribution<std::size_t> pick(0, interior.size() - 1);

  std::vector<FiniteNormedStructure> out;
  for (std::size_t idx = 0; idx < count; ++idx) {
    FiniteNormedStructure e;
    e.name = "ulam#" + std::to_string(idx + 1);
    e.dim = 2;
    e.norm = NormSpec{true, 1};
    e.carrier = points;
    // Signed permutation: bit 0 swaps the axes, bits 1-2 flip signs.
    const std::size_t s = idx % 8;
    auto isometry = [&](const Vector& x) {
      Vector y = (s & 1) ? Vector{x[1], x[0]} : x;
      if (s & 2) y[0] = -y[0];
      if (s & 4) y[1] = -y[1];
      return y;
    };
    std::map<Vector, Vector> delta;
    const int perturbed = how_many(rng);
    for (int t = 0; t < perturbed; ++t) {
      const Vector& at = interior[pick(rng)];
      delta[at] = Vector{fraction(shift(rng), 8), fraction(shift(rng), 8)};
    }
    FunctionInterp f;
    f.kind = FunctionInterp::Kind::Table;
    f.arity = 1;
    for (const auto& x : points) {
      Vector y = isometry(x);
      if (auto it = delta.find(x); it != delta.end()) y = y + it->second;
      f.table[{x}] = y;
    }
    e.functions["T"] = std::move(f);
    add_ulam_relations(e, k);
    e.sync_signature();
    e.validate();
    out.push_back(std::move(e));
  }
  return out;
}

FiniteNormedStructure ulam_identity_structure(long k) {
  FiniteNormedStructure e;
  e.name = "ulam identity";
  e.dim = 2;
  e.norm = NormSpec{true, 1};
  e.carrier = grid(2, {Rational(-1), Rational(0), Rational(1)});
  e.functions["T"] = affine({Vector{1, 0}, Vector{0, 1}}, 2);
  add_ulam_relations(e, k);
  e.sync_signature();
  e.validate();
  return e;
}

FiniteNormedStructure behrends_structure(long p, long q) {
  FiniteNormedStructure e;
  e.name = "behrends l" + std::to_string(p) + "^3";
  e.dim = 3;
  e.norm = NormSpec{false, static_cast<unsigned long>(p)};
  e.carrier = grid(3, {Rational(-1), Rational(0), Rational(1)});
  e.functions["P"] = affine({Vector{1, 0, 0}, Vector{0, 0, 0}, Vector{0, 0, 0}}, 3);
  e.functions["Q"] = affine({Vector{1, 0, 0}, Vector{0, 1, 0}, Vector{0, 0, 0}}, 3);
  e.constants["e1"] = Vector{1, 0, 0};
  e.constants["e2"] = Vector{0, 1, 0};
  const auto up = static_cast<unsigned long>(p);
  const auto uq = static_cast<unsigned long>(q);
  e.relations["fp"] = combo(1, {{Rational(1), up}});
  e.relations["fq"] = combo(1, {{Rational(1), uq}});
  e.relations["dp"] = combo(3, {{Rational(1), up}, {Rational(1), up}, {Rational(-1), up}});
  e.relations["dq"] = combo(3, {{Rational(1), uq}, {Rational(1), uq}, {Rational(-1), uq}});
  e.relations["dpq"] = combo(2, {{Rational(1), up}, {Rational(-1), uq}});
  e.sync_signature();
  e.validate();
  return e;
}

}  // namespace pbcalc
