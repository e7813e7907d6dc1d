#include <sstream>

#include "pbcalc/approx.hpp"
#include "pbcalc/enumerate.hpp"
#include "pbcalc/evaluator.hpp"
#include "pbcalc/parser.hpp"
#include "pbcalc/workbench.hpp"

namespace pbcalc {

namespace {

RadicalValue simplified(const RadicalValue& v) {
  if (auto q = v.as_rational()) return RadicalValue{*q, 1};
  return v;
}

RadicalValue as_radical(const ExactReal& x) {
  if (x.is_rational()) return RadicalValue::of(x.rational());
  if (x.offset() != 0 || x.coeff() < 0) throw ArithmeticError("not a plain radical: " + to_string(x));
  const RadicalValue& r = x.radical();
  return RadicalValue{rational_pow(x.coeff(), r.root) * r.base, r.root};
}

/// lp(p, c) as a radical; p is inf or a positive integer.
RadicalValue coefficient_norm(const IndexValue& p, const std::vector<Rational>& c) {
  if (p.kind == IndexValue::Kind::Infinity) {
    Rational best = 0;
    for (const auto& x : c) best = std::max(best, abs(x));
    return RadicalValue::of(best);
  }
  const Rational& e = p.number.rational();
  const unsigned long k = e.get_num().get_ui();
  Rational total = 0;
  for (const auto& x : c) total += rational_pow(abs(x), k);
  return RadicalValue{total, k};
}

bool integral_exponent(const IndexValue& p) {
  if (p.kind == IndexValue::Kind::Infinity) return true;
  if (p.kind != IndexValue::Kind::Number || !p.number.is_rational()) return false;
  const Rational& e = p.number.rational();
  return e >= 1 && e.get_den() == 1;
}

std::string shown(const RadicalValue& v) {
  RadicalValue s = simplified(v);
  return s.root == 1 ? to_string(s.base) : to_string(s);
}

std::string join(const std::vector<long>& xs) {
  std::string out = "(";
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? " " : "") + std::to_string(xs[i]);
  return out + ")";
}

std::string join(const std::vector<Rational>& xs) {
  std::string out = "(";
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? " " : "") + to_string(xs[i]);
  return out + ")";
}

}  // namespace

void KrivineQuery::validate() const {
  if (n < 1) throw std::invalid_argument("krivine query needs n >= 1");
  if (vectors.size() < static_cast<std::size_t>(n)) throw std::invalid_argument("krivine query needs m >= n vectors");
  if (epsilon <= 0) throw std::invalid_argument("krivine query needs eps > 0");
  if (coeff_depth < 1 || block_depth < 1 || weight_depth < 1) throw std::invalid_argument("depths must be >= 1");
  if (p_candidates.empty()) throw std::invalid_argument("krivine query needs at least one p candidate");
  for (const auto& v : vectors) {
    if (std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; })) {
      throw std::invalid_argument("krivine query vectors must be nonzero");
    }
  }
  for (const auto& p : p_candidates) {
    if (p.kind == IndexValue::Kind::Tuple) throw std::invalid_argument("p candidates must be numbers or inf");
    if (p.kind == IndexValue::Kind::Number && compare(p.number, ExactReal(Rational(1))) == Ordering::Less) {
      throw std::invalid_argument("p candidates must be >= 1");
    }
  }
}

std::string KrivineCandidate::to_text() const {
  std::ostringstream out;
  out << "p=" << to_string(p) << " q=" << join(partition) << " b=" << join(weights) << "\n";
  for (std::size_t j = 0; j < blocks.size(); ++j) out << "  y" << j + 1 << " = " << to_string(blocks[j]) << "\n";
  out << "  ratio range [" << shown(min_ratio) << ", " << shown(max_ratio) << "], distortion " << shown(distortion)
      << "\n";
  out << "  theta holds unscaled on the " << checked << " checked coefficient tuples: " << (theta_holds ? "yes" : "no")
      << "\n";
  return out.str();
}

std::string KrivineResult::to_text() const {
  std::ostringstream out;
  if (best) {
    out << "best of " << candidates << " candidates:\n" << best->to_text();
  } else {
    out << "no candidate among " << candidates << " within the configured depths\n";
  }
  for (const auto& n : notes) out << "note: " << n << "\n";
  return out.str();
}

KrivineCandidate evaluate_krivine_candidate(const FiniteNormedStructure& e, const KrivineQuery& query,
                                            const IndexValue& p, const std::vector<long>& partition,
                                            const std::vector<Rational>& weights) {
  if (!integral_exponent(p)) throw ArithmeticError("p=" + to_string(p) + " is not exactly representable");
  if (partition.size() != static_cast<std::size_t>(query.n + 1)) throw std::invalid_argument("partition size");
  KrivineCandidate c;
  c.p = p;
  c.partition = partition;
  c.weights = weights;
  for (long j = 0; j < query.n; ++j) {
    Vector y = e.zero();
    for (long i = partition[static_cast<std::size_t>(j)] + 1; i <= partition[static_cast<std::size_t>(j + 1)]; ++i) {
      y = y + weights.at(static_cast<std::size_t>(i - 1)) * query.vectors.at(static_cast<std::size_t>(i - 1));
    }
    c.blocks.push_back(std::move(y));
  }
  const Rational stretch = Rational(1) + query.epsilon;
  bool have_ratio = false;
  c.theta_holds = true;
  for (const auto& tv : enumerate(IndexDomain::rational_tuples(sc::lit(query.n)),
                                  static_cast<std::size_t>(query.coeff_depth))) {
    const std::vector<Rational>& coeffs = tv.tuple;
    Vector sum = e.zero();
    for (std::size_t j = 0; j < coeffs.size(); ++j) sum = sum + coeffs[j] * c.blocks[j];
    const RadicalValue lhs = as_radical(e.norm_of(sum));
    const RadicalValue lp = coefficient_norm(p, coeffs);
    const RadicalValue upper{rational_pow(stretch, lp.root) * lp.base, lp.root};
    ++c.checked;
    if (compare_radical(lhs, lp) == Ordering::Less || compare_radical(lhs, upper) == Ordering::Greater) {
      c.theta_holds = false;
    }
    if (lp.base == 0) continue;
    const RadicalValue ratio = simplified(lhs / lp);
    if (!have_ratio) {
      c.max_ratio = c.min_ratio = ratio;
      have_ratio = true;
      continue;
    }
    if (compare_radical(ratio, c.max_ratio) == Ordering::Greater) c.max_ratio = ratio;
    if (compare_radical(ratio, c.min_ratio) == Ordering::Less) c.min_ratio = ratio;
  }
  if (!have_ratio) throw std::invalid_argument("coeff_depth too small: no nonzero coefficient tuple checked");
  if (c.min_ratio.base == 0) {
    c.distortion = RadicalValue{0, 1};  // a block vanishes on some combination; rejected by the caller
  } else {
    c.distortion = simplified(c.max_ratio / c.min_ratio);
  }
  return c;
}

KrivineResult krivine_search(const FiniteNormedStructure& e, const KrivineQuery& query) {
  query.validate();
  for (const auto& v : query.vectors) {
    if (v.size() != e.dim) throw std::invalid_argument("vector " + to_string(v) + " is not in the structure's space");
  }
  KrivineResult result;
  const long m = static_cast<long>(query.vectors.size());
  std::ostringstream depths;
  depths << "depths: partitions " << query.block_depth << " (q_{n+1} <= " << m << "), weights " << query.weight_depth
         << ", coefficients " << query.coeff_depth << "; verdicts cover these prefixes only";
  result.notes.push_back(depths.str());

  std::vector<std::vector<long>> partitions;
  Enumerator parts(IndexDomain::increasing(sc::lit(query.n)), {});
  while (partitions.size() < static_cast<std::size_t>(query.block_depth)) {
    IndexValue q = parts.next();
    if (q.tuple.back() > m) break;  // later entries only grow q_{n+1}
    std::vector<long> qs;
    for (const auto& x : q.tuple) qs.push_back(x.get_num().get_si());
    partitions.push_back(std::move(qs));
  }

  for (const auto& p : query.p_candidates) {
    if (!integral_exponent(p)) {
      result.notes.push_back("p=" + to_string(p) + " skipped: l_p with a non-integer exponent is not exact");
      continue;
    }
    for (const auto& q : partitions) {
      const auto width = sc::lit(q.back());
      for (const auto& b : enumerate(IndexDomain::rational_tuples(width), static_cast<std::size_t>(query.weight_depth))) {
        bool zero_block = false;
        for (long j = 0; j < query.n && !zero_block; ++j) {
          bool all_zero = true;
          for (long i = q[static_cast<std::size_t>(j)] + 1; i <= q[static_cast<std::size_t>(j + 1)]; ++i) {
            all_zero = all_zero && b.tuple[static_cast<std::size_t>(i - 1)] == 0;
          }
          zero_block = all_zero;
        }
        if (zero_block) continue;
        KrivineCandidate c = evaluate_krivine_candidate(e, query, p, q, b.tuple);
        ++result.candidates;
        if (c.distortion.base == 0) continue;
        if (!result.best || compare_radical(c.distortion, result.best->distortion) == Ordering::Less) {
          result.best = std::move(c);
        }
      }
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// w(n, p, eps)

std::string WEstimate::to_text() const {
  std::ostringstream out;
  if (found) {
    out << "w=" << w << " certified over " << family_size << " structures (theta prefix depth " << depth << ")\n";
  } else {
    out << "no w <= " << w_max << " certified over " << family_size << " structures\n";
  }
  for (const auto& l : log) out << "  " << l << "\n";
  out << "analytic fallback ceil(" << to_string(analytic_constant) << "/eps) = " << analytic_fallback
      << " (heuristic, not a proof)\n";
  out << "the empirical w is certified for this family and depth only, not a proof of the bound\n";
  return out.str();
}

std::vector<FiniteNormedStructure> standard_w_family(long n) {
  std::vector<FiniteNormedStructure> out;
  for (NormSpec s : {NormSpec{false, 1}, NormSpec{false, 2}, NormSpec{true, 1}}) {
    out.push_back(unit_basis_structure(static_cast<std::size_t>(std::max(2L, n)), s));
  }
  FiniteNormedStructure line;
  line.name = "linf^1 half-grid";
  line.dim = 1;
  line.norm = NormSpec{true, 1};
  for (long i = -4; i <= 4; ++i) line.carrier.push_back(Vector{fraction(i, 2)});
  line.validate();
  out.push_back(std::move(line));
  return out;
}

WEstimate estimate_w(long n, const IndexValue& p, const Rational& eps, const std::vector<FiniteNormedStructure>& family,
                     long w_max, long depth) {
  if (n < 1 || w_max < 1 || depth < 1) throw std::invalid_argument("estimate_w needs n, w_max, depth >= 1");
  if (eps <= 0) throw std::invalid_argument("estimate_w needs eps > 0");
  if (!integral_exponent(p)) throw ArithmeticError("p=" + to_string(p) + " is not exactly representable");
  WEstimate out;
  out.w_max = w_max;
  out.depth = depth;
  out.family_size = family.size();
  {
    Rational q = out.analytic_constant / eps;
    Integer c = q.get_num() / q.get_den();
    if (c * q.get_den() != q.get_num()) c += 1;
    out.analytic_fallback = c.get_si();
  }

  std::vector<TermPtr> ys;
  for (long j = 1; j <= n; ++j) ys.push_back(tm::var("y", static_cast<unsigned long>(j)));
  PBPtr theta = krivine_theta(n, to_scalar(p), eps, ys);
  PBPtr wide = truncate(*krivine_theta(n, to_scalar(p), eps * 2, ys), depth);

  // Assignments that break the wider prefix; only these can reject a w.
  struct Bad {
    std::size_t structure;
    Assignment a;
  };
  std::vector<Bad> bad;
  for (std::size_t s = 0; s < family.size(); ++s) {
    const auto& carrier = family[s].carrier;
    std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
    while (true) {
      Assignment a;
      for (long j = 0; j < n; ++j) a[VarName{"y", static_cast<unsigned long>(j + 1)}] = carrier[idx[static_cast<std::size_t>(j)]];
      if (!eval(family[s], *wide, a)) bad.push_back({s, std::move(a)});
      std::size_t j = 0;
      while (j < idx.size() && ++idx[j] == carrier.size()) idx[j++] = 0;
      if (j == idx.size()) break;
    }
  }
  for (long w = 1; w <= w_max; ++w) {
    PBPtr relaxed = approximate(*theta, w);
    const Bad* hit = nullptr;
    for (const auto& b : bad) {
      if (eval(family[b.structure], *relaxed, b.a)) {
        hit = &b;
        break;
      }
    }
    if (hit == nullptr) {
      out.found = true;
      out.w = w;
      return out;
    }
    const auto& name = family[hit->structure].name;
    out.log.push_back("w=" + std::to_string(w) + " rejected by " + (name.empty() ? "structure" : name) + " at " +
                      to_string(hit->a));
  }
  return out;
}

}  // namespace pbcalc
