#include <doctest.h>

#include "pbcalc/approx.hpp"
#include "pbcalc/la.hpp"
#include "pbcalc/parser.hpp"

using namespace pbcalc;

namespace {

FiniteNormedStructure line_with_c(const std::string& c) {
  return parse_structure("[space] dim=1 norm=linf\n[carrier]\n-2\n-1\n0\n1\n2\n[const c]\n" + c + "\n");
}

Signature constants() {
  Signature s;
  s.add_function({"c", 0, {}, {}});
  return s;
}

}  // namespace

TEST_CASE("cantor pairing order") {
  std::vector<std::pair<long, long>> expect{{1, 1}, {1, 2}, {2, 1}, {1, 3}, {2, 2},
                                            {3, 1}, {1, 4}, {2, 3}, {3, 2}, {4, 1}};
  for (long s = 1; s <= 10; ++s) CHECK(cantor_pair(s) == expect[static_cast<std::size_t>(s - 1)]);
  BranchPtr single = br::diagonal({br::empty()});
  for (long s = 1; s <= 5; ++s) CHECK(single->at(s).second == s);
  BranchPtr two = br::diagonal({br::empty(), br::tuple({br::empty()})});
  CHECK(two->at(3).first == two->branches[1]);
  CHECK(two->at(3).second == 1);
}

TEST_CASE("branch text round trip") {
  for (const char* t : {"empty", "(tuple empty (ex empty))", "(tuple-all empty)", "(tuple empty (default empty))",
                        "(neg-const empty 3)", "(neg-diag (empty (tuple empty)))", "(neg-trusted ((empty 1) (empty 4)))"}) {
    CHECK(print_branch(*parse_branch(t)) == t);
  }
  CHECK(is_trusted(*parse_branch("(tuple (neg-trusted ((empty 1))))")));
  CHECK_FALSE(is_trusted(*parse_branch("(neg-diag (empty))")));
}

TEST_CASE("branch approximation clauses") {
  Signature sig;
  LAPtr atom = parse_formula("(le (norm x1) 1)", sig);
  CHECK(print_pb(*branch_approx(*atom, *br::empty(), 3)) == "(le (norm x1) 4/3)");

  LAPtr neg = parse_formula("(not (le (norm x1) 1))", sig);
  BranchPtr h = br::constant(br::empty(), 3);
  CHECK(print_pb(*branch_approx(*neg, *h, 2)) == "(and (ge (norm x1) 5/6) (ge (norm x1) 5/6))");

  LAPtr ex = parse_formula("(existsSeq y (const 1) (ge (norm y1) 1/2))", sig);
  CHECK(print_pb(*branch_approx(*ex, *br::ex(br::empty()), 1)) == "(exists (y1 2) (ge (norm y1) -1/2))");

  // Ind(n) follows the variables free at level n.
  LAPtr grow = parse_formula("(existsSeq y (list 1 2 then 3) (And i Nat (le (norm (var y i)) 1)))", sig);
  BranchPtr hg = br::ex(br::empty());  // the And over an embedded body is itself embedded
  CHECK(print_pb(*branch_approx(*grow, *hg, 2)) ==
        "(exists (y1 3/2) (exists (y2 5/2) (and (le (norm y1) 3/2) (le (norm y2) 3/2))))");

  CHECK_THROWS_AS(branch_approx(*neg, *br::empty(), 1), BranchError);
  CHECK_THROWS_AS(branch_approx(*atom, *h, 1), BranchError);
}

TEST_CASE("not clause: truncate-then-approximate equals componentwise") {
  Signature sig;
  LAPtr neg = parse_formula("(not (And i Nat (le (norm x1) i)))", sig);
  BranchPtr h = default_branch(*neg);
  for (long n = 1; n <= 4; ++n) {
    PBPtr whole = branch_approx(*neg, *h, n);
    std::vector<PBPtr> parts;
    for (long s = 1; s <= n; ++s) {
      auto [b, l] = h->at(s);
      parts.push_back(approximate(*neg_branch(*neg->body, *b, l), n));
    }
    CHECK(equal(*whole, *pb::conj(parts)));
  }
}

TEST_CASE("constant negation branches") {
  Signature sig;
  LAPtr theta = parse_formula("(le (norm x1) 2)", sig);
  CHECK(print_branch(*constant_neg_branch(*la::negate(theta), 1)) == "(neg-const empty 2)");
  LAPtr nested = parse_formula("(not (and (le (norm x1) 1) (not (le (norm x2) 1))))", sig);
  CHECK_THROWS_AS(constant_neg_branch(*nested, 1), BranchError);
  CHECK_THROWS_AS(check_shape(*nested, *br::constant(br::tuple({br::empty(), br::empty()}), 2)), BranchError);
}

TEST_CASE("almost-version decoding") {
  Signature sig = constants();
  PBPtr sigma = parse_pb("(le (norm c) 1)", sig);
  PBPtr theta = parse_pb("(le (norm c) 2)", sig);
  AlmostSchema s = decode_almost(*sigma, *theta, 2, 4);
  CHECK(print_pb(*s.hypothesis) == "(le (norm c) 5/4)");
  CHECK(print_pb(*s.conclusion) == "(le (norm c) 5/2)");
  CHECK(print_pb(*s.obstruction) ==
        "(and (ge (norm c) 25/12) (ge (norm c) 25/12) (ge (norm c) 25/12) (ge (norm c) 25/12))");
  CHECK(s.trace.size() == 6);

  AlmostSchema t = decode_almost(*sigma, *sigma, 1, 1);
  CHECK(print_pb(*t.hypothesis) == "(le (norm c) 2)");
  CHECK(print_pb(*t.conclusion) == "(le (norm c) 2)");
  CHECK_THROWS(decode_almost(*parse_pb("(le (norm x1) 1)", sig), *theta, 1, 1));
}

TEST_CASE("uniform index search") {
  Signature sig = constants();
  PBPtr phi = parse_pb("(le (norm c) 1)", sig);
  std::vector<FiniteNormedStructure> family{line_with_c("1"), line_with_c("7/4"), line_with_c("0")};
  UniformSearchResult r = search_uniform_index(*phi, *phi, 2, family, 10);
  CHECK(r.found);
  CHECK(r.m == 2);
  CHECK(r.log.size() == 1);
  CHECK(count_uniform_counterexamples(*phi, *phi, 2, r.m, family) == 0);

  UniformSearchResult none = search_uniform_index(*phi, *parse_pb("(ge (norm c) 2)", sig), 2, {line_with_c("1")}, 5);
  CHECK_FALSE(none.found);
  CHECK(none.log.size() == 5);
  CHECK_THROWS(search_uniform_index(*phi, *phi, 1, {}, 3));
}

TEST_CASE("prefix truth for infinitary formulas") {
  FiniteNormedStructure big = line_with_c("2");
  FiniteNormedStructure unit = line_with_c("1");
  LAPtr neg = parse_formula("(not (le (norm c) 1))", big.signature);
  BranchPtr h = constant_neg_branch(*neg, 1);
  CHECK(eval_la_prefix(big, *neg, *h, {}, 6).holds);
  PrefixVerdict v = eval_la_prefix(unit, *neg, *h, {}, 6);
  CHECK_FALSE(v.holds);
  CHECK(v.fail_at == 3);
  LAPtr plain = parse_formula("(le (norm c) 1)", big.signature);
  CHECK(eval_la_prefix(unit, *plain, *br::empty(), {}, 5).holds);
}
