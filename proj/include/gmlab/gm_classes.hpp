#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "gmlab/sequence.hpp"

namespace gmlab {

/// Bracket helpers. [x] is floor(x); lower summation limits are clamped to 1.
[[nodiscard]] Index floor_div_real(Index n, double c);
[[nodiscard]] Index ceil_div_real(Index n, double c);

/// Choice of majorant beta_n for the class GM(beta, r).
struct BetaSpec {
  enum class Kind { BetaStar, V1, V2, V3, V4, V5 };

  Kind kind = Kind::BetaStar;
  Index r = 1;         // BetaStar
  double c = 2.0;      // BetaStar, V4, V5
  Index N = 0;         // V2, V3
  Index base = 2;      // V3: integer c > 1

  static BetaSpec star(Index r, double c) { return {Kind::BetaStar, r, c, 0, 2}; }
  static BetaSpec v1() { return {Kind::V1, 1, 2.0, 0, 2}; }
  static BetaSpec v2(Index N) { return {Kind::V2, 1, 2.0, N, 2}; }
  static BetaSpec v3(Index N, Index base) { return {Kind::V3, 1, 2.0, N, base}; }
  static BetaSpec v4(double c) { return {Kind::V4, 1, c, 0, 2}; }
  static BetaSpec v5(double c) { return {Kind::V5, 1, c, 0, 2}; }

  /// Throws std::domain_error when a field violates its constraint.
  void validate() const;
};

/// Sum_{k=m}^{2m-1} |a_k - a_{k+r}| in ascending k.
[[nodiscard]] double r_variation(const RealSequence& seq, Index m, Index r);

/// beta*_n = Sum_{k=n}^{n+r-1} |a_k| + Sum_{k=L}^{U} |a_k|/k with
/// L = max(1, floor(n/c)), U = floor(c n). Requires c > 1.
[[nodiscard]] double beta_star(const RealSequence& seq, Index n, Index r, double c);

/// The selected majorant at n. V5 agrees bitwise with beta_star(seq, n, 1, c).
[[nodiscard]] double beta_variant(const RealSequence& seq, Index n, const BetaSpec& spec);

struct DefectSample {
  Index m = 0;
  double lhs = 0.0;
  double beta = 0.0;
  /// lhs / beta; +infinity when beta == 0 < lhs, 0 when both vanish.
  double ratio = 0.0;
  /// Set when beta == 0; such samples never enter the slope fit.
  bool zero_beta = false;
};

enum class Verdict { Bounded, Growing, Inconclusive };

[[nodiscard]] std::string_view to_string(Verdict v);

struct ClassifyThresholds {
  double bounded_slope_max = 0.2;
  double growing_slope_min = 0.6;
  double ratio_cap = std::numeric_limits<double>::infinity();
};

struct DefectReport {
  Index r = 1;
  BetaSpec beta;
  std::vector<DefectSample> samples;
  /// Max over samples with finite ratio (0 when there are none).
  double max_ratio = 0.0;
  /// Number of samples with infinite ratio.
  std::size_t infinite_count = 0;
  /// Least-squares slope of log(ratio) against log(m) over samples with
  /// m >= median(grid) and finite positive ratio. NaN when fewer than 2 fit.
  double slope = 0.0;
  Verdict verdict = Verdict::Inconclusive;
};

/// m = 1, 2, 4, ..., up to and including m_max when m_max is a power of two.
[[nodiscard]] std::vector<Index> dyadic_grid(Index m_max);

/// One sample per m in an ascending grid, then classify().
[[nodiscard]] DefectReport defect_profile(const RealSequence& seq, Index r, const BetaSpec& spec,
                                          const std::vector<Index>& m_grid,
                                          const ClassifyThresholds& thresholds = {});

/// Bounded iff slope <= bounded_slope_max, no infinite ratios and
/// max_ratio <= ratio_cap. Growing iff slope >= growing_slope_min.
/// Everything else, including a NaN slope, is inconclusive.
[[nodiscard]] Verdict classify(const DefectReport& report, const ClassifyThresholds& thresholds);

/// Membership in GM(beta*, r) for "some c > 1": profiles each c in cs.
struct MembershipReport {
  std::vector<DefectReport> per_c;
  std::vector<double> cs;
  /// Bounded if any c is bounded, growing if every c is growing.
  Verdict verdict = Verdict::Inconclusive;
};

[[nodiscard]] MembershipReport membership_profile(const RealSequence& seq, Index r,
                                                  const std::vector<double>& cs,
                                                  const std::vector<Index>& m_grid,
                                                  const ClassifyThresholds& thresholds = {});

/// n |a_n| / Sum_{k=L}^{U} |a_k|; +infinity when only the denominator vanishes,
/// 0 when both do.
[[nodiscard]] double weak_monotone_defect(const RealSequence& seq, Index n, double c);

struct RatioSample {
  Index n = 0;
  double ratio = 0.0;
  bool flagged = false;
};

struct RatioReport {
  std::vector<RatioSample> samples;
  double max_ratio = 0.0;  // over unflagged samples
  std::size_t flagged_count = 0;
};

/// Sum_{i=0}^{r-1} beta_{n+i} / beta_n on each n of the grid. A bounded max
/// certifies the embedding hypothesis GM(beta,1) in GM(beta,r) on the grid.
[[nodiscard]] RatioReport remark1_condition(const std::function<double(Index)>& beta, Index r,
                                            const std::vector<Index>& n_grid);

/// Partial sum Sum_{n=1}^{N} Sum_{k=1}^{[r/2]} |a_{rn+k} - a_{rn+r-k}|. Requires r >= 3.
[[nodiscard]] double theorem6_condition(const RealSequence& seq, Index r, Index N);

struct Epsilon1 {
  double value = 0.0;
  /// The maximum is first reached at k == cap, so truncation may hide a larger value.
  bool attained_at_cap = false;
};

/// max_{ceil(n/c) <= k <= cap} k |a_k|, a truncated sup_{k >= n/c} k|b_k|.
[[nodiscard]] Epsilon1 epsilon1(const RealSequence& seq, Index n, double c, Index cap);

/// Max over n of n a_n / (4 r Sum_{k=ceil(n/c1)}^{floor(c1 n)} a_k), c1 = max(3, 2c).
/// Only n > r are sampled; smaller n in the list are skipped.
[[nodiscard]] RatioReport theorem4_bound_check(const RealSequence& seq, Index r, double c,
                                               const std::vector<Index>& n_range);

}  // namespace gmlab
