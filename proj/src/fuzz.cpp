#include "pbcalc/fuzz.hpp"

#include "builders.hpp"

namespace pbcalc {

namespace {

using detail::affine;
using detail::combo;
using detail::grid;

Rational half(long n) { return fraction(n, 2); }

FiniteNormedStructure make(std::string name, std::size_t dim, NormSpec norm, std::vector<Vector> carrier, Vector c,
                           std::vector<Vector> matrix, Vector offset) {
  FiniteNormedStructure e;
  e.name = std::move(name);
  e.dim = dim;
  e.norm = norm;
  e.carrier = std::move(carrier);
  e.constants["c"] = std::move(c);
  FunctionInterp t = affine(std::move(matrix), dim);
  t.offset = std::move(offset);
  e.functions["T"] = std::move(t);
  e.relations["R"] = combo(1, {{Rational(1), norm.infinity ? 1UL : norm.p}});
  e.sync_signature();
  e.validate();
  return e;
}

}  // namespace

Signature fuzz_signature() {
  Signature s;
  s.add_function({"T", 1, {}, {}});
  s.add_function({"c", 0, {}, {}});
  s.add_relation({"R", 1, {}, {}});
  return s;
}

std::vector<FiniteNormedStructure> fuzz_structures() {
  const NormSpec linf{true, 1};
  const NormSpec l1{false, 1};
  const NormSpec l2{false, 2};
  const std::vector<Rational> three{Rational(-1), Rational(0), Rational(1)};
  std::vector<FiniteNormedStructure> out;

  std::vector<Vector> line;
  for (long i = -4; i <= 4; ++i) line.push_back(Vector{half(i)});
  out.push_back(make("linf^1 line", 1, linf, line, Vector{half(1)}, {Vector{half(-1)}}, Vector{Rational(0)}));

  std::vector<Vector> plane = grid(2, three);
  for (long a : {-1L, 1L}) {
    for (long b : {-1L, 1L}) plane.push_back(Vector{half(a), half(b)});
  }
  out.push_back(make("l1^2 plane", 2, l1, plane, Vector{half(1), Rational(0)}, {Vector{0, 1}, Vector{1, 0}},
                     Vector{0, 0}));

  out.push_back(make("l2^2 grid", 2, l2, grid(2, {Rational(-1), half(-1), Rational(0), half(1), Rational(1)}),
                     Vector{0, 1}, {Vector{half(1), 0}, Vector{0, -1}}, Vector{0, 0}));

  out.push_back(make("linf^2 square", 2, linf, grid(2, three), Vector{1, 1}, {Vector{0, -1}, Vector{1, 0}},
                     Vector{0, 0}));

  std::vector<Vector> octa{Vector{0, 0, 0}};
  for (std::size_t i = 0; i < 3; ++i) {
    for (long s : {1L, -1L}) {
      Vector v{0, 0, 0};
      v[i] = s;
      octa.push_back(v);
    }
  }
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      for (long a : {1L, -1L}) {
        for (long b : {1L, -1L}) {
          Vector v{0, 0, 0};
          v[i] = a;
          v[j] = b;
          octa.push_back(v);
        }
      }
    }
  }
  out.push_back(make("l1^3 octahedron", 3, l1, octa, Vector{0, 0, 1},
                     {Vector{1, 0, 0}, Vector{0, half(1), 0}, Vector{0, 0, 0}}, Vector{0, 0, 0}));

  out.push_back(make("l2^3 cube", 3, l2, grid(3, three), Vector{half(1), half(1), 0},
                     {Vector{0, 0, 1}, Vector{1, 0, 0}, Vector{0, 1, 0}}, Vector{0, 0, 0}));
  return out;
}

int Fuzzer::uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

TermPtr Fuzzer::term(int depth, const std::vector<VarName>& vars) {
  const int choice = uniform(0, depth > 0 ? 6 : 2);
  switch (choice) {
    case 0:
    case 1:
      if (!vars.empty()) {
        // Favour bound variables so quantifiers are rarely vacuous.
        const std::size_t lo = vars.size() > 2 && uniform(0, 1) == 0 ? 2 : 0;
        const VarName& v = vars[static_cast<std::size_t>(uniform(static_cast<int>(lo), static_cast<int>(vars.size()) - 1))];
        return tm::var(v.family, v.index);
      }
      return tm::apply("c", {});
    case 2:
      return uniform(0, 3) == 0 ? tm::zero() : tm::apply("c", {});
    case 3:
      return tm::apply("T", {term(depth - 1, vars)});
    case 4:
    case 5:
      return tm::sum(term(depth - 1, vars), term(depth - 1, vars));
    default: {
      static const std::vector<Rational> coeffs{Rational(-1), Rational(2), Rational(1, 2), Rational(-1, 2),
                                                Rational(3, 2)};
      return tm::scale(pick(coeffs), term(depth - 1, vars));
    }
  }
}

ScalarPtr Fuzzer::threshold() {
  static const std::vector<Rational> values{Rational(0),    Rational(1, 4), Rational(1, 3), Rational(1, 2),
                                            Rational(2, 3), Rational(1),    Rational(3, 2), Rational(2),
                                            Rational(5, 2)};
  return sc::lit(pick(values));
}

PBPtr Fuzzer::atom(const std::vector<VarName>& vars) {
  TermPtr t = term(2, vars);
  switch (uniform(0, 5)) {
    case 0:
    case 1:
      return pb::norm_le(t, threshold());
    case 2:
    case 3:
      return pb::norm_ge(t, threshold());
    case 4:
      return pb::rel_le("R", {t}, threshold());
    default:
      return pb::rel_ge("R", {t}, threshold());
  }
}

PBPtr Fuzzer::countable_template(const std::vector<VarName>& vars, int depth, int& quantifiers,
                                 const FuzzConfig& cfg) {
  ScalarPtr r = threshold();
  TermPtr t = term(1, vars);
  ScalarPtr i = sc::ref("i");
  PBPtr indexed;
  std::string binder = "i";
  IndexDomain domain = IndexDomain::naturals();
  switch (uniform(0, 3)) {
    case 0:
      indexed = pb::norm_le(t, sc::add(r, sc::div(sc::lit(1), i)));
      break;
    case 1:
      indexed = pb::norm_ge(t, sc::sub(r, sc::div(sc::lit(1), i)));
      break;
    case 2:
      indexed = pb::norm_le(tm::scale(sc::div(sc::lit(1), i), t), r);
      break;
    default: {
      binder = "q";
      domain = IndexDomain::rationals();
      ScalarPtr q = sc::ref("q");
      indexed = pb::disj({pb::norm_le(t, q), pb::norm_ge(term(1, vars), q)});
      break;
    }
  }
  if (depth > 1 && uniform(0, 1) == 0) {
    int no_more = 0;
    PBPtr rest = formula(depth - 1, vars, quantifiers, no_more, cfg);
    indexed = uniform(0, 1) == 0 ? pb::conj({indexed, rest}) : pb::disj({indexed, rest});
  }
  return pb::countable(binder, domain, indexed);
}

PBPtr Fuzzer::formula(int depth, std::vector<VarName> vars, int& quantifiers, int& countable, const FuzzConfig& cfg) {
  if (depth <= 1) return atom(vars);
  const int choice = uniform(0, 9);
  if (choice <= 1) return atom(vars);
  if (choice <= 3) {
    std::vector<PBPtr> parts;
    const int count = uniform(2, 3);
    for (int k = 0; k < count; ++k) parts.push_back(formula(depth - 1, vars, quantifiers, countable, cfg));
    return pb::conj(std::move(parts));
  }
  if (choice <= 5) {
    return pb::disj({formula(depth - 1, vars, quantifiers, countable, cfg),
                     formula(depth - 1, vars, quantifiers, countable, cfg)});
  }
  if (choice <= 8 && quantifiers < cfg.max_quantifiers) {
    ++quantifiers;
    VarName v{"z", static_cast<unsigned long>(++fresh_)};
    vars.push_back(v);
    ScalarPtr bound = sc::lit(pick(cfg.quantifier_bounds));
    PBPtr body = formula(depth - 1, vars, quantifiers, countable, cfg);
    return choice <= 6 ? pb::exists(v, bound, body) : pb::forall(v, bound, body);
  }
  if (countable < cfg.max_countable) {
    ++countable;
    return countable_template(vars, depth - 1, quantifiers, cfg);
  }
  return atom(vars);
}

PBPtr Fuzzer::pb(const FuzzConfig& cfg) {
  fresh_ = 0;
  int quantifiers = 0;
  int countable = 0;
  return formula(uniform(1, cfg.max_depth), cfg.free, quantifiers, countable, cfg);
}

LAPtr Fuzzer::la(const FuzzConfig& cfg, int depth) {
  FuzzConfig small = cfg;
  small.max_depth = 2;
  small.max_quantifiers = 1;
  const int choice = uniform(0, depth > 0 ? 5 : 1);
  switch (choice) {
    case 0:
      return la::embed(pb(small));
    case 1:
      return la::negate(la::embed(pb(small)));
    case 2:
      return la::conj({la(cfg, depth - 1), la(cfg, depth - 1)});
    case 3:
    case 4: {
      FuzzConfig inner = small;
      inner.free.push_back({"y", 1});
      inner.free.push_back({"y", 2});
      std::vector<Rational> prefix;
      for (int k = uniform(0, 2); k > 0; --k) prefix.push_back(pick(cfg.quantifier_bounds));
      LAPtr ex = la::exists_seq("y", BoundSequence{prefix, pick(cfg.quantifier_bounds)}, la::embed(pb(inner)));
      return choice == 3 ? ex : la::negate(ex);
    }
    default: {
      ScalarPtr i = sc::ref("i");
      TermPtr t = term(1, cfg.free);
      return la::countable("i", IndexDomain::naturals(),
                           la::negate(la::embed(pb::norm_le(t, sc::add(threshold(), sc::div(sc::lit(1), i))))));
    }
  }
}

Assignment Fuzzer::assignment(const FiniteNormedStructure& e, const FuzzConfig& cfg) {
  Assignment a;
  for (const auto& v : cfg.free) a[v] = pick(e.carrier);
  return a;
}

}  // namespace pbcalc
