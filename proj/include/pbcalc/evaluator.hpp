#pragma once

// Exact evaluation of finitary PB formulas over a finite structure.
// Quantifiers range over the carrier points inside the ball.

#include <map>
#include <optional>
#include <string>

#include "pbcalc/structure.hpp"
#include "pbcalc/syntax.hpp"

namespace pbcalc {

using Assignment = std::map<VarName, Vector>;

Vector eval_term(const FiniteNormedStructure& e, const Term& t, const Assignment& a, const Env& env = {});

/// Throws EvalError on a CountableAnd node, StructureError on undefined tables.
bool eval(const FiniteNormedStructure& e, const PBFormula& phi, const Assignment& a, const Env& env = {});

/// Why phi is false under a, or nothing when it holds.
std::optional<std::string> explain_failure(const FiniteNormedStructure& e, const PBFormula& phi, const Assignment& a,
                                           const Env& env = {});

/// Prefix verdict: levels 1..depth hold, or level fail_at is the first failure.
struct PrefixVerdict {
  bool holds = true;
  std::size_t depth = 0;
  std::size_t fail_at = 0;
  std::string witness;

  std::string to_text() const;
};

/// Checks approximate(phi, n) for n = 1..N; throws if a failure is followed
/// by a holding level (level coherence).
PrefixVerdict eval_ap_prefix(const FiniteNormedStructure& e, const PBFormula& phi, const Assignment& a, std::size_t N);

Assignment parse_assignment(const std::vector<std::string>& items);
std::string to_string(const Assignment& a);

}  // namespace pbcalc
