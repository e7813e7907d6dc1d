#pragma once

// Seeded random formulas and the fixed structure family used by the
// property suites. Deterministic for a given seed.

#include <random>
#include <vector>

#include "pbcalc/evaluator.hpp"
#include "pbcalc/la.hpp"
#include "pbcalc/structure.hpp"
#include "pbcalc/syntax.hpp"

namespace pbcalc {

struct FuzzConfig {
  int max_depth = 4;
  int max_quantifiers = 2;
  int max_countable = 1;
  /// Candidate quantifier bounds.
  std::vector<Rational> quantifier_bounds{Rational(0), Rational(1, 4), Rational(1, 2), Rational(1), Rational(3, 2),
                                          Rational(2)};
  std::vector<VarName> free{{"x", 1}, {"x", 2}};
};

/// T (unary), c (constant), R (unary relation).
Signature fuzz_signature();

/// Six structures interpreting the fuzz signature: d <= 3, at most 40
/// points, l_1, l_2 and l_inf norms.
std::vector<FiniteNormedStructure> fuzz_structures();

class Fuzzer {
 public:
  explicit Fuzzer(unsigned seed) : rng_(seed) {}

  PBPtr pb(const FuzzConfig& cfg);
  /// Infinitary formulas whose default branches are certified: negations
  /// only over negation-free bodies.
  LAPtr la(const FuzzConfig& cfg, int depth = 2);
  /// Values for cfg.free drawn from the carrier.
  Assignment assignment(const FiniteNormedStructure& e, const FuzzConfig& cfg);

 private:
  int uniform(int lo, int hi);
  template <class T>
  const T& pick(const std::vector<T>& items) {
    return items[static_cast<std::size_t>(uniform(0, static_cast<int>(items.size()) - 1))];
  }

  TermPtr term(int depth, const std::vector<VarName>& vars);
  ScalarPtr threshold();
  PBPtr atom(const std::vector<VarName>& vars);
  PBPtr countable_template(const std::vector<VarName>& vars, int depth, int& quantifiers, const FuzzConfig& cfg);
  PBPtr formula(int depth, std::vector<VarName> vars, int& quantifiers, int& countable, const FuzzConfig& cfg);

  std::mt19937 rng_;
  int fresh_ = 0;
};

}  // namespace pbcalc
