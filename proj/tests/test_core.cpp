#include <doctest.h>

#include "pbcalc/approx.hpp"
#include "pbcalc/enumerate.hpp"
#include "pbcalc/evaluator.hpp"
#include "pbcalc/parser.hpp"
#include "pbcalc/structure.hpp"

using namespace pbcalc;

namespace {

std::vector<std::string> shown(const std::vector<IndexValue>& vs) {
  std::vector<std::string> out;
  for (const auto& v : vs) out.push_back(to_string(v));
  return out;
}

Signature sig_with(std::initializer_list<std::pair<const char*, unsigned>> fns,
                   std::initializer_list<std::pair<const char*, unsigned>> rels = {}) {
  Signature s;
  for (auto [n, a] : fns) s.add_function({n, a, {}, {}});
  for (auto [n, a] : rels) s.add_relation({n, a, {}, {}});
  return s;
}

std::string approx_text(const std::string& in, long n, const Signature& sig = {}) {
  return print_pb(*approximate(*parse_pb(in, sig), n));
}

std::string neg_text(const std::string& in, long n, const Signature& sig = {}) {
  return print_pb(*weak_negation(*parse_pb(in, sig), n));
}

const char* kLine5 = R"([space] dim=1 norm=linf
[carrier]
-2
-1
0
1
2
[const c]
3/2
)";

}  // namespace

TEST_CASE("radical comparison") {
  CHECK(compare_radical(RadicalValue{8, 3}, Rational(2)) == Ordering::Equal);
  CHECK(compare_radical(RadicalValue{2, 2}, Rational(3, 2)) == Ordering::Less);
  CHECK(compare_radical(RadicalValue{5, 1}, Rational(-1)) == Ordering::Greater);
  CHECK(compare_radical(RadicalValue{2, 2}, RadicalValue{3, 3}) == Ordering::Less);  // 8 < 9
  CHECK(compare(ExactReal(RadicalValue{2, 2}) + Rational(1), ExactReal(RadicalValue{3, 3}) + Rational(1)) ==
        Ordering::Less);
  CHECK(compare(ExactReal(RadicalValue{4, 2}), ExactReal(Rational(2))) == Ordering::Equal);
}

TEST_CASE("canonical enumerations") {
  CHECK(calkin_wilf(1) == 1);
  std::vector<std::string> cw;
  for (std::size_t i = 1; i <= 12; ++i) cw.push_back(to_string(calkin_wilf(i)));
  CHECK(cw == std::vector<std::string>{"1", "1/2", "2", "1/3", "3/2", "2/3", "3", "1/4", "4/3", "3/5", "5/2", "2/5"});
  CHECK(shown(enumerate(IndexDomain::naturals(), 3)) == std::vector<std::string>{"1", "2", "3"});
  CHECK(shown(enumerate(IndexDomain::rationals(), 9)) ==
        std::vector<std::string>{"0", "1", "-1", "1/2", "-1/2", "2", "-2", "1/3", "-1/3"});
  CHECK(shown(enumerate(IndexDomain::qsharp(), 7)) ==
        std::vector<std::string>{"inf", "1", "2", "3/2", "3", "4/3", "5/2"});
  CHECK(shown(enumerate(IndexDomain::rational_tuples(sc::lit(2)), 10)) ==
        std::vector<std::string>{"(tup 0 0)", "(tup 1 0)", "(tup 0 1)", "(tup 1 1)", "(tup -1 0)", "(tup -1 1)",
                                 "(tup 0 -1)", "(tup 1 -1)", "(tup -1 -1)", "(tup 1/2 0)"});
  CHECK(shown(enumerate(IndexDomain::convex(sc::lit(2)), 4)) ==
        std::vector<std::string>{"(tup 1 0)", "(tup 0 1)", "(tup 1/2 1/2)", "(tup 2/3 1/3)"});
  CHECK(shown(enumerate(IndexDomain::convex(sc::lit(3)), 5)) ==
        std::vector<std::string>{"(tup 1 0 0)", "(tup 0 1 0)", "(tup 0 0 1)", "(tup 1/2 1/2 0)", "(tup 1/2 0 1/2)"});
  CHECK(shown(enumerate(IndexDomain::increasing(sc::lit(1)), 6)) ==
        std::vector<std::string>{"(tup 0 1)", "(tup 0 2)", "(tup 1 2)", "(tup 0 3)", "(tup 1 3)", "(tup 2 3)"});
  CHECK(shown(enumerate(IndexDomain::increasing(sc::lit(2)), 5)) ==
        std::vector<std::string>{"(tup 0 1 2)", "(tup 0 1 3)", "(tup 0 2 3)", "(tup 1 2 3)", "(tup 0 1 4)"});
  auto longer = enumerate(IndexDomain::rationals(), 40);
  auto shorter = enumerate(IndexDomain::rationals(), 39);
  CHECK(std::equal(shorter.begin(), shorter.end(), longer.begin()));
  CHECK_THROWS_AS(enumerate(IndexDomain::list({sc::lit(1)}), 2), EnumerationError);
}

TEST_CASE("parser round trip and errors") {
  Signature sig = sig_with({{"T", 1}, {"c", 0}}, {{"R", 2}});
  const char* texts[] = {
      "(le (norm x1) 1)",
      "(exists (y 2) (and (le (norm y) 1) (ge (norm (+ y (scale -1 x1))) 1)))",
      "(And i Nat (le (norm (T c)) (add 1 (div 1 i))))",
      "(not (and (le (norm x1) 1) (not (ge (rel R x1 x2) 1/2))))",
      "(existsSeq y (list 1 2 then 3) (le (norm (sum i 1 2 (var y i))) 1))",
      "(forall (y 1) (or (le (norm y) 0) (ge (norm (T y)) 1/3)))",
  };
  for (const char* t : texts) {
    LAPtr phi = parse_formula(t, sig);
    CHECK(print_formula(*phi) == t);
    CHECK(equal(*parse_formula(print_formula(*phi), sig), *phi));
  }
  CHECK_THROWS_AS(parse_formula("(le (norm (U x1)) 1)", sig), ParseError);
  CHECK_THROWS_AS(parse_formula("(le (norm (T x1 x2)) 1)", sig), ParseError);
  CHECK_THROWS_AS(parse_formula("(exists (y -1) (le (norm y) 1))", sig), ParseError);
  CHECK_NOTHROW(parse_formula("(exists (y -1) (le (norm y) 1))", sig, ParseOptions{true}));
  try {
    parse_formula("(and\n  (le (norm x1) 1)\n  (le (nrm x1) 1))", sig);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  // Sugar never survives as an LA node.
  LAPtr imp = parse_formula("(imp (le (norm x1) 1) (le (norm x1) 2))", sig);
  CHECK(imp->kind == LAKind::Not);
  CHECK(print_formula(*imp) == "(not (and (le (norm x1) 1) (not (le (norm x1) 2))))");
  CHECK(free_vars(*parse_formula("(exists (y 1) (le (norm (+ y x1)) 1))", sig)).vars ==
        std::set<VarName>{VarName{"x", 1}});
}

TEST_CASE("approximation clauses") {
  Signature sig = sig_with({}, {{"R", 1}});
  CHECK(approx_text("(le (norm x1) 1)", 4) == "(le (norm x1) 5/4)");
  CHECK(approx_text("(exists (y 2) (ge (norm (+ y (scale -1 x1))) 1))", 2) ==
        "(exists (y 5/2) (ge (norm (+ y (scale -1 x1))) 1/2))");
  CHECK(approx_text("(And i Nat (le (norm x1) (add 1 (div 1 i))))", 3) ==
        "(and (le (norm x1) 7/3) (le (norm x1) 11/6) (le (norm x1) 5/3))");
  CHECK(approx_text("(ge (norm x1) 0)", 2) == "(ge (norm x1) -1/2)");
  CHECK(approx_text("(forall (y 1) (le (rel R y) 0))", 3, sig) == "(forall (y 2/3) (le (rel R y) 1/3))");
  CHECK(neg_text("(le (norm x1) 1)", 4) == "(ge (norm x1) 5/4)");
  CHECK(neg_text("(or (le (norm x1) 1) (ge (norm x2) 2))", 2) == "(and (ge (norm x1) 3/2) (le (norm x2) 3/2))");
  CHECK(neg_text("(exists (y 1) (and (le (norm y) 1) (ge (norm y) 2)))", 2) ==
        "(forall (y 3/2) (or (ge (norm y) 3/2) (le (norm y) 3/2)))");
  CHECK(neg_text("(And i Nat (le (norm x1) i))", 2) == "(or (ge (norm x1) 3/2) (ge (norm x1) 5/2))");
  CHECK(neg_text("(forall (y 1/4) (le (norm y) 1))", 2) == "(exists (y 0) (ge (norm y) 3/2))");
  CHECK(neg_text("(ge (rel R x1) 1)", 2, sig) == "(le (rel R x1) 1/2)");
  CHECK_THROWS(approximate(*parse_pb("(le (norm x1) 1)", sig), 0));
}

TEST_CASE("evaluation over a finite carrier") {
  FiniteNormedStructure e = parse_structure(kLine5);
  Assignment zero{{VarName{"x", 1}, Vector{0}}};
  CHECK(eval(e, *parse_pb("(exists (y 1) (ge (norm (+ y (scale -1 x1))) 1))", e.signature), zero));
  CHECK_FALSE(eval(e, *parse_pb("(forall (y 2) (le (norm y) 1))", e.signature), {}));
  CHECK(eval(e, *parse_pb("(le (norm 0) 0)", e.signature), {}));

  auto v = eval_ap_prefix(e, *parse_pb("(le (norm c) 1)", e.signature), {}, 6);
  CHECK_FALSE(v.holds);
  CHECK(v.fail_at == 3);  // 1 + 1/2 = 3/2 still holds; 1 + 1/3 < 3/2
  e.constants["c"] = Vector{1};
  CHECK(eval_ap_prefix(e, *parse_pb("(le (norm c) 1)", e.signature), {}, 6).holds);
  CHECK(eval_ap_prefix(e, *parse_pb("(And i Nat (le (norm c) (add 1 (div 1 i))))", e.signature), {}, 6).holds);
  CHECK_THROWS_AS(eval(e, *parse_pb("(And i Nat (le (norm c) 1))", e.signature), {}), EvalError);
}

TEST_CASE("lp norms are exact radicals") {
  NormSpec l2{false, 2};
  CHECK(to_string(norm(Vector{1, 1}, l2)) == "(root 2 2)");
  CHECK(compare(norm(Vector{3, 4}, l2), ExactReal(Rational(5))) == Ordering::Equal);
  CHECK(norm_power(Vector{1, 1}, l2, 2) == 2);
  CHECK_THROWS(norm_power(Vector{1, 1}, l2, 3));
}

TEST_CASE("structure file round trip and conformance") {
  const char* text = R"([space] dim=1 norm=linf
[carrier]
-1
-1/2
0
1/2
1
[fn f table]
-1 -> -3
-1/2 -> -1
0 -> 0
1/2 -> 1
1 -> 3
[fn g affine]
2
0
[bounds]
f N=1 K=2
[moduli]
g N=1 eps=1 delta=1
)";
  FiniteNormedStructure e = parse_structure(text);
  CHECK(print_structure(e) == text);
  CHECK(same_structure(parse_structure(print_structure(e)), e));
  ConformanceReport r = check_structure_conformance(e.signature, e);
  std::size_t bound = 0, modulus = 0;
  for (const auto& v : r.violations) {
    bound += v.kind == "bound";
    modulus += v.kind == "modulus";
  }
  CHECK(bound == 2);  // f(1) and f(-1) have norm 3 > 2
  CHECK(modulus >= 1);
  CHECK_THROWS_AS(parse_structure("[space] dim=1 norm=linf\n[carrier]\n1\n"), StructureError);
}
