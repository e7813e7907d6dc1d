#pragma once

// Branches h in I(phi) for infinitary formulas, the branch approximations
// ([phi]_h)_n, almost-version decoding and the uniform-index search.

#include <memory>
#include <string>
#include <vector>

#include "pbcalc/evaluator.hpp"
#include "pbcalc/structure.hpp"
#include "pbcalc/syntax.hpp"

namespace pbcalc {

struct Branch;
using BranchPtr = std::shared_ptr<const Branch>;

enum class BranchKind { Empty, Tuple, Neg, Ex };

/// How the (f1, f2) pair of a negation branch was obtained.
///   ConstantOnSingleton  f(s) = (branches[0], levels[0]) for every s
///   DiagonalEnumeration  f(s) = (branches[i-1], j), (i, j) the s-th Cantor
///                        pair with i <= branches.size()
///   Trusted              f(s) = listed[min(s, size) - 1], unverified
enum class Certificate { ConstantOnSingleton, DiagonalEnumeration, Trusted };

struct Branch {
  BranchKind kind = BranchKind::Empty;
  std::vector<BranchPtr> components;  // Tuple
  BranchPtr fallback;                 // Tuple: components past the listed ones
  Certificate certificate = Certificate::Trusted;
  std::vector<BranchPtr> branches;  // Neg
  std::vector<long> levels;         // Neg (constant / trusted)
  BranchPtr inner;                  // Ex

  /// 1-based tuple component.
  BranchPtr component(std::size_t i) const;
  /// The negation branch at step s >= 1.
  std::pair<BranchPtr, long> at(long s) const;
};

class BranchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace br {
BranchPtr empty();
BranchPtr tuple(std::vector<BranchPtr> components, BranchPtr fallback = nullptr);
BranchPtr ex(BranchPtr inner);
BranchPtr constant(BranchPtr b, long level);
BranchPtr diagonal(std::vector<BranchPtr> enumeration);
BranchPtr trusted(std::vector<std::pair<BranchPtr, long>> steps);
}  // namespace br

/// The s-th pair (1-based) of the Cantor diagonal order (1,1),(1,2),(2,1),...
std::pair<long, long> cantor_pair(long s);

std::string print_branch(const Branch& h);
BranchPtr parse_branch(std::string_view text);
bool is_trusted(const Branch& h);

/// Throws BranchError when h does not index phi.
void check_shape(const LAFormula& phi, const Branch& h);

/// The unique branch of a negation-free phi; negations get a diagonal branch
/// over the body's branch when it is unique, else a trusted one.
BranchPtr default_branch(const LAFormula& phi);

/// NegBranch(const b, const n+1) for Not(phi) with I(phi) a singleton.
BranchPtr constant_neg_branch(const LAFormula& phi, long n);
BranchPtr diagonal_neg_branch(const LAFormula& phi, std::vector<BranchPtr> enumeration);

PBPtr branch_approx(const LAFormula& phi, const Branch& h, long n, const Env& env = {});
/// neg([phi]_h, level) without materializing [phi]_h.
PBPtr neg_branch(const LAFormula& phi, const Branch& h, long level, const Env& env = {});

struct AlmostSchema {
  PBPtr hypothesis;
  PBPtr obstruction;
  PBPtr conclusion;
  std::vector<std::string> trace;

  std::string to_text() const;
};

AlmostSchema decode_almost(const PBFormula& sigma, const PBFormula& theta, long n, long m);

struct UniformCounterexample {
  long m = 0;
  std::string structure;
  std::string witness;
};

struct UniformSearchResult {
  bool found = false;
  long m = 0;
  long m_max = 0;
  std::size_t family_size = 0;
  std::vector<UniformCounterexample> log;  // one per rejected m

  std::string to_text() const;
};

UniformSearchResult search_uniform_index(const PBFormula& sigma, const PBFormula& theta, long n,
                                         const std::vector<FiniteNormedStructure>& family, long m_max);
/// Number of family members satisfying sigma_m but not theta_n.
std::size_t count_uniform_counterexamples(const PBFormula& sigma, const PBFormula& theta, long n, long m,
                                          const std::vector<FiniteNormedStructure>& family);

PrefixVerdict eval_la_prefix(const FiniteNormedStructure& e, const LAFormula& phi, const Branch& h, const Assignment& a,
                             std::size_t N);

}  // namespace pbcalc
