#pragma once

// The n-approximation phi_n and the weak approximate negation neg(phi, n).
// Both instantiate countable conjunction templates and return finitary,
// fully concrete formulas.

#include <functional>

#include "pbcalc/syntax.hpp"

namespace pbcalc {

PBPtr approximate(const PBFormula& phi, long n, const Env& env = {});
PBPtr weak_negation(const PBFormula& phi, long n, const Env& env = {});

/// Replaces binder references, loops and indexed variables by their values.
PBPtr instantiate(const PBFormula& phi, const Env& env);
TermPtr instantiate(const Term& t, const Env& env);

/// R1(x) <= R2(x): the countable conjunction over q in Q of (R1 <= q or R2 >= q).
/// `left`/`right` build the two sides as atoms given the threshold.
PBPtr le_abbreviation(const std::string& binder, const std::function<PBPtr(ScalarPtr)>& left,
                      const std::function<PBPtr(ScalarPtr)>& right);

}  // namespace pbcalc
