#pragma once

// Encodings of the worked examples (reflexivity, Ulam, Behrends, Krivine),
// structure-family generators and the finitary Krivine block-basis search.

#include <optional>
#include <string>
#include <vector>

#include "pbcalc/la.hpp"
#include "pbcalc/signature.hpp"
#include "pbcalc/structure.hpp"
#include "pbcalc/syntax.hpp"

namespace pbcalc {

/// AndW over n of: not exists x (||x|| <= 1) of the conjunction over k, r,
/// a in CO(k), b in CO(r) of ||sum a_i x_i - sum b_j x_{k+j}|| >= 1/n.
LAPtr build_reflexivity_sentence();
/// A certified branch for the reflexivity sentence (constant negation
/// branches at the given level).
BranchPtr reflexivity_branch(long level = 3);

struct NamedFormula {
  std::string name;
  PBPtr formula;
};

struct Encoding {
  Signature signature;
  std::vector<NamedFormula> theory;
  PBPtr sigma;   // hypothesis of the implication
  PBPtr theta;   // conclusion
  LAPtr sentence;  // not (sigma and not theta)
};

enum class UlamConclusion {
  Additive,  // ||T(x + y) - T(x) - T(y)|| = 0
  Literal,   // ||T(x) + T(y) - x - y|| = 0
};

/// Relations: iso(u, v) = ||u|| - ||v||, kbound(u, v) = ||u|| - k||v||.
Encoding build_ulam(long k, UlamConclusion conclusion = UlamConclusion::Additive);

/// Relations: fp, fq (||x||^p, ||x||^q), dp(u, v, w) = ||u||^p + ||v||^p - ||w||^p,
/// dq likewise, dpq(u, v) = ||u||^p - ||v||^q.
Encoding build_behrends(long k, long p, long q);

struct KrivineFormulas {
  PBPtr base_k;        // free family x
  PBPtr theta;         // theta^{n,p,eps}(y1..yn) with p a literal exponent
  LAPtr negated;       // not exists x (||x|| <= 1) (BaseK and ... not theta(blocks))
  PBPtr base_k_prefix;   // base_k with every countable conjunction cut to `truncation` members
  PBPtr theta_prefix;
};

/// theta^{n,p,eps}(ys): the conjunction over c in Q^n of
/// lp(p, c) <= ||sum c_j y_j|| <= (1 + eps) lp(p, c). `p` may be a binder ref.
PBPtr krivine_theta(long n, ScalarPtr p, const Rational& eps, const std::vector<TermPtr>& ys,
                    const std::string& binder = "c");
PBPtr krivine_base(const Rational& K);
/// theta_p is used for the prefix of theta; defaults to p = 2.
KrivineFormulas build_krivine_formulas(const Rational& K, long n, const Rational& eps, long truncation,
                                       long theta_p = 2);

/// Countable conjunctions replaced by their first `count` members, without margins.
PBPtr truncate(const PBFormula& phi, long count, const Env& env = {});

// ---------------------------------------------------------------------------
// Structures used by the examples.

/// The points of a one-dimensional space (0 and negatives are added).
FiniteNormedStructure line_structure(const std::vector<Rational>& points);
/// Unit vectors +-e_i and 0 in dimension d.
FiniteNormedStructure unit_basis_structure(std::size_t d, NormSpec norm);
/// {-1, -1/2, 0, 1/2, 1}^2 under l_inf with T a signed permutation plus a
/// perturbation by multiples of 1/8 at a few points of norm 1/2, T(0) = 0.
std::vector<FiniteNormedStructure> ulam_family(long k, std::size_t count, unsigned seed = 20240611);
/// The identity map on a small l_inf grid with the Ulam relations for k.
FiniteNormedStructure ulam_identity_structure(long k);
/// l_p^3 grid with coordinate projections P onto axis 1 and Q onto axes 1..2.
FiniteNormedStructure behrends_structure(long p, long q);

// ---------------------------------------------------------------------------
// Krivine block-basis search.

struct KrivineQuery {
  std::vector<Vector> vectors;
  long n = 2;
  std::vector<IndexValue> p_candidates;  // numbers >= 1 or inf
  Rational epsilon = 1;
  long coeff_depth = 25;
  long block_depth = 6;   // partitions q in V_n
  long weight_depth = 16;  // block coefficient tuples b per partition

  void validate() const;
};

struct KrivineCandidate {
  IndexValue p;
  std::vector<long> partition;  // q_1 < ... < q_{n+1}
  std::vector<Rational> weights;  // b_1..b_{q_{n+1}}
  std::vector<Vector> blocks;
  /// max over c of ||sum c_j y_j|| / lp(c), and the min.
  RadicalValue max_ratio;
  RadicalValue min_ratio;
  RadicalValue distortion;  // max_ratio / min_ratio
  bool theta_holds = false;   // unscaled theta^{n,p,eps} on every checked c
  std::size_t checked = 0;

  std::string to_text() const;
};

struct KrivineResult {
  std::optional<KrivineCandidate> best;
  std::size_t candidates = 0;
  std::vector<std::string> notes;

  std::string to_text() const;
};

KrivineResult krivine_search(const FiniteNormedStructure& e, const KrivineQuery& query);
/// Re-evaluates one candidate over the first coeff_depth coefficient tuples.
KrivineCandidate evaluate_krivine_candidate(const FiniteNormedStructure& e, const KrivineQuery& query,
                                            const IndexValue& p, const std::vector<long>& partition,
                                            const std::vector<Rational>& weights);

struct WEstimate {
  bool found = false;
  long w = 0;
  long w_max = 0;
  long depth = 0;
  std::size_t family_size = 0;
  std::vector<std::string> log;  // one counterexample per rejected w
  long analytic_fallback = 0;    // ceil(constant / eps)
  Rational analytic_constant = 2;

  std::string to_text() const;
};

/// Least w <= w_max such that every assignment of y1..yn from a family
/// carrier satisfying approximate(theta^{n,p,eps}, w) satisfies the first
/// `depth` members of theta^{n,p,2 eps}.
WEstimate estimate_w(long n, const IndexValue& p, const Rational& eps, const std::vector<FiniteNormedStructure>& family,
                     long w_max = 64, long depth = 25);

/// The l_1, l_2 and l_inf unit-basis and grid structures used by estimate_w by default.
std::vector<FiniteNormedStructure> standard_w_family(long n);

}  // namespace pbcalc
