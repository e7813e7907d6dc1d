#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "pbcalc/approx.hpp"
#include "pbcalc/fuzz.hpp"
#include "pbcalc/parser.hpp"
#include "pbcalc/suite.hpp"
#include "pbcalc/workbench.hpp"

using namespace pbcalc;

namespace {

bool holds_everywhere(const FiniteNormedStructure& e, const PBFormula& phi) { return eval(e, phi, {}); }

PBPtr reparsed(const PBFormula& phi, const Signature& sig) { return parse_pb(print_pb(phi), sig, ParseOptions{true}); }

}  // namespace

TEST_CASE("builders re-parse and re-print identically") {
  for (const Encoding& enc : {build_ulam(2), build_behrends(2, 2, 4)}) {
    for (const auto& ax : enc.theory) {
      CHECK(print_pb(*reparsed(*ax.formula, enc.signature)) == print_pb(*ax.formula));
    }
    CHECK(equal(*reparsed(*enc.sigma, enc.signature), *enc.sigma));
    CHECK(equal(*reparsed(*enc.theta, enc.signature), *enc.theta));
    LAPtr back = parse_formula(print_formula(*enc.sentence), enc.signature);
    CHECK(equal(*back, *enc.sentence));
  }
  CHECK(build_behrends(2, 2, 4).theory.size() == 7);

  LAPtr refl = build_reflexivity_sentence();
  CHECK(equal(*parse_formula(print_formula(*refl), {}), *refl));
  CHECK(free_vars(*refl).vars.empty());
  CHECK(print_branch(*reflexivity_branch()) == "(tuple-all (neg-const (ex empty) 3))");
}

TEST_CASE("reflexivity on a five-point line") {
  FiniteNormedStructure line = line_structure({Rational(1, 2), Rational(1)});
  CHECK(line.carrier.size() == 5);
  LAPtr refl = build_reflexivity_sentence();
  PrefixVerdict v3 = eval_la_prefix(line, *refl, *reflexivity_branch(3), {}, 2);
  CHECK(v3.holds);
  CHECK(v3.depth == 2);
  PrefixVerdict v2 = eval_la_prefix(line, *refl, *reflexivity_branch(2), {}, 2);
  CHECK_FALSE(v2.holds);
  CHECK(v2.fail_at == 2);
}

TEST_CASE("Ulam theory on the identity and on a translate") {
  Encoding u = build_ulam(2);
  FiniteNormedStructure id = ulam_identity_structure(2);
  for (const auto& ax : u.theory) {
    CHECK_MESSAGE(holds_everywhere(id, *approximate(*ax.formula, 3)), ax.name);
  }
  CHECK(holds_everywhere(id, *u.sigma));
  CHECK(holds_everywhere(id, *u.theta));

  // x + c moves 0, so the zero axiom fails.
  FiniteNormedStructure shifted = id;
  shifted.functions["T"].offset = Vector{1, 0};
  const auto zero = std::find_if(u.theory.begin(), u.theory.end(), [](const NamedFormula& f) { return f.name == "zero"; });
  REQUIRE(zero != u.theory.end());
  CHECK_FALSE(holds_everywhere(shifted, *zero->formula));

  // -Id is an isometry; the additive conclusion holds where the literal one fails.
  FiniteNormedStructure flip = id;
  flip.functions["T"].matrix = {Vector{-1, 0}, Vector{0, -1}};
  CHECK(holds_everywhere(flip, *u.theta));
  CHECK_FALSE(holds_everywhere(flip, *build_ulam(2, UlamConclusion::Literal).theta));
}

TEST_CASE("Behrends hypothesis and conclusion on coordinate projections") {
  Encoding b = build_behrends(2, 2, 4);
  FiniteNormedStructure e = behrends_structure(2, 4);
  CHECK(holds_everywhere(e, *b.sigma));
  Signature sig = b.signature;
  CHECK(holds_everywhere(e, *parse_pb("(forall (x 1) (le (norm (+ (P (Q x)) (scale -1 (Q (P x))))) 0))", sig)));
  CHECK(holds_everywhere(e, *parse_pb(
                                "(forall (x 1) (and (le (rel dp (P x) (+ x (scale -1 (P x))) x) 0) "
                                "(ge (rel dp (P x) (+ x (scale -1 (P x))) x) 0)))",
                                sig)));
  CHECK_THROWS(behrends_structure(2, 3));
}

TEST_CASE("Krivine formulas") {
  PBPtr theta = krivine_theta(1, sc::lit(2), Rational(0), {tm::var("y", 1)});
  CHECK(print_pb(*truncate(*theta, 2)) ==
        "(and (and (ge (norm (scale 0 y1)) 0) (le (norm (scale 0 y1)) 0)) "
        "(and (ge (norm (scale 1 y1)) 1) (le (norm (scale 1 y1)) 1)))");

  // n = m = 1, a in {(0,0), (1,0), (0,1)}, t in {0, 1, -1}.
  PBPtr base = truncate(*krivine_base(Rational(2)), 3);
  REQUIRE(base->parts.size() == 2);
  const PBFormula& first = *base->parts[1]->parts[0]->parts[0];
  auto cell = [](const char* a1, const char* a2) {
    std::string out = "(and";
    for (const char* t : {"0", "1", "-1"}) {
      const std::string half = std::string(t) == "0" ? "0" : (std::string(t) == "1" ? "1/2" : "-1/2");
      out += std::string(" (or (le (norm (scale ") + a1 + " x1)) " + t + ") (ge (norm (+ (scale " + a1 +
             " x1) (scale " + a2 + " x2))) " + half + "))";
    }
    return out + ")";
  };
  CHECK(print_pb(first) == "(and " + cell("0", "0") + " " + cell("1", "0") + " " + cell("0", "1") + ")");

  FiniteNormedStructure l1 = unit_basis_structure(4, NormSpec{false, 1});
  Assignment basis;
  for (unsigned long i = 1; i <= 4; ++i) basis[{"x", i}] = l1.carrier[2 * i - 1];
  PBPtr base1 = truncate(*krivine_base(Rational(1)), 2);  // n + m <= 4
  CHECK(eval(l1, *base1, basis));

  KrivineFormulas f = build_krivine_formulas(Rational(1), 2, Rational(1, 2), 2);
  CHECK(is_finitary(*f.base_k_prefix));
  CHECK(is_finitary(*f.theta_prefix));
  CHECK(free_vars(*f.negated).vars.empty());
}

TEST_CASE("Krivine search on unit bases") {
  for (auto [norm, want] : {std::pair{NormSpec{false, 1}, std::string("1")}, std::pair{NormSpec{false, 2}, std::string("2")},
                            std::pair{NormSpec{true, 1}, std::string("inf")}}) {
    FiniteNormedStructure e = unit_basis_structure(4, norm);
    KrivineQuery q;
    for (std::size_t i = 1; i < e.carrier.size(); i += 2) q.vectors.push_back(e.carrier[i]);
    q.p_candidates = {IndexValue::num(Rational(1)), IndexValue::num(Rational(2)), IndexValue::infinity()};
    KrivineResult r = krivine_search(e, q);
    REQUIRE(r.best);
    CHECK(to_string(r.best->p) == want);
    CHECK(compare_radical(r.best->distortion, Rational(1)) == Ordering::Equal);
    CHECK(r.best->partition == std::vector<long>{0, 1, 2});
  }
  KrivineQuery bad;
  bad.p_candidates = {IndexValue::num(Rational(1, 2))};
  bad.vectors = {Vector{1}};
  CHECK_THROWS(bad.validate());
}

TEST_CASE("estimate_w") {
  WEstimate one = estimate_w(1, IndexValue::num(Rational(1)), Rational(1), standard_w_family(1));
  CHECK(one.found);
  CHECK(one.w == 3);
  CHECK(one.log.size() == 2);
  WEstimate two = estimate_w(2, IndexValue::num(Rational(1)), Rational(1, 2), standard_w_family(2));
  CHECK(two.found);
  CHECK(two.w == 6);

  FiniteNormedStructure point;
  point.dim = 1;
  point.carrier = {Vector{0}};
  // The first coefficient tuple is c = 0, so y = 0 satisfies level 1 and w = 1
  // is rejected; from w = 2 on nothing satisfies the approximation.
  WEstimate vacuous = estimate_w(1, IndexValue::num(Rational(2)), Rational(1), {point});
  CHECK(vacuous.found);
  CHECK(vacuous.w == 2);

  // Monotone in the family.
  std::vector<FiniteNormedStructure> smaller = standard_w_family(1);
  smaller.pop_back();
  CHECK(estimate_w(1, IndexValue::num(Rational(1)), Rational(1), smaller).w <= one.w);
}

TEST_CASE("Ulam family and uniform index") {
  const auto family = ulam_family(1, 6);
  CHECK(family.size() == 6);
  for (const auto& e : family) {
    CHECK(e.carrier.size() == 25);
    CHECK(e.apply("T", {e.zero()}) == e.zero());
  }
  Encoding u = build_ulam(1);
  UniformSearchResult r = search_uniform_index(*u.sigma, *u.theta, 2, family, 32);
  CHECK(r.found);
  CHECK(count_uniform_counterexamples(*u.sigma, *u.theta, 2, r.m, family) == 0);
}

TEST_CASE("fuzzer is deterministic and well formed") {
  Fuzzer a(11);
  Fuzzer b(11);
  FuzzConfig cfg;
  Signature sig = fuzz_signature();
  for (int i = 0; i < 50; ++i) {
    PBPtr x = a.pb(cfg);
    PBPtr y = b.pb(cfg);
    CHECK(equal(*x, *y));
    const FreeVars fv = free_vars(*x);
    for (const auto& v : fv.vars) CHECK((v.family == "x" && v.index <= 2));
    CHECK(equal(*parse_pb(print_pb(*x), sig), *x));
  }
  const auto structures = fuzz_structures();
  CHECK(structures.size() == 6);
  for (const auto& e : structures) {
    CHECK(e.dim <= 3);
    CHECK(e.carrier.size() <= 40);
  }
}

TEST_CASE("exactness audit flags approximate numeric types") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "pbcalc-audit-test";
  fs::remove_all(dir);
  fs::create_directories(dir / "src");
  {
    std::ofstream(dir / "src" / "clean.cpp") << "// a double negation\nint f() { return 1; }\nconst char* s = \"float\";\n";
  }
  CHECK(suite_exactness(dir.string(), "same", "same").passed());
  CHECK_FALSE(suite_exactness(dir.string(), "one", "two").passed());
  {
    std::ofstream(dir / "src" / "dirty.cpp") << "double g() { return 0.5; }\n";
  }
  CHECK_FALSE(suite_exactness(dir.string(), "same", "same").passed());
  fs::remove_all(dir);
}

TEST_CASE("transform fixtures and almost-version fixtures") {
  CHECK(suite_transform_fixtures().passed());
  CHECK(suite_almost().passed());
}
