#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gmlab/gm_classes.hpp"
#include "gmlab/sequence.hpp"

namespace gmlab {

/// Raised when x lies too close to 2*l*pi/r for the r-step Abel identity.
class SingularityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Sum_{n>=1} b_n sin(n x).
struct SineSeries {
  RealSequence coeffs;
  std::string label;
};

inline constexpr double kDefaultExclusionTol = 1e-6;

/// Evaluation points in (0, pi), ascending.
class EvalGrid {
 public:
  explicit EvalGrid(std::vector<double> points, double exclusion_tol = kDefaultExclusionTol);

  /// `size` Chebyshev-spaced points pi/2 (1 - cos(pi (i + 1/2) / size)), merged
  /// with the split points pi/2, 2 l pi/r and 2 l pi/r + pi/r that fall inside (0, pi).
  static EvalGrid chebyshev(std::size_t size, Index r, double exclusion_tol = kDefaultExclusionTol);

  [[nodiscard]] const std::vector<double>& points() const { return points_; }
  /// The split points that were merged in by chebyshev(); empty otherwise.
  [[nodiscard]] const std::vector<double>& special_points() const { return special_; }
  [[nodiscard]] double exclusion_tol() const { return exclusion_tol_; }

  /// Throws SingularityError if some point has |sin(r x / 2)| < exclusion_tol.
  void check_lemma1_safe(Index r) const;

 private:
  std::vector<double> points_;
  std::vector<double> special_;
  double exclusion_tol_;
};

/// Sum_{k=1}^{N} b_k sin(k x), ascending, compensated above 10^4 terms.
[[nodiscard]] double partial_sum(const SineSeries& series, Index N, double x);

/// Sum_{k=n}^{2n-1} b_k sin(k x).
[[nodiscard]] double block_sum(const SineSeries& series, Index n, double x);

/// Right-hand side of the r-step Abel identity for block_sum:
///   -1/(2 sin(r x/2)) * { Sum_{k=n}^{2n-1} (b_k - b_{k+r}) cos((k + r/2) x)
///                        + Sum_{k=2n}^{2n+r-1} b_k cos((k - r/2) x)
///                        - Sum_{k=n}^{n+r-1}  b_k cos((k - r/2) x) }.
/// Throws SingularityError when |sin(r x / 2)| < exclusion_tol.
[[nodiscard]] double lemma1_rhs(const SineSeries& series, Index n, Index r, double x,
                                double exclusion_tol = kDefaultExclusionTol);

/// |block_sum - lemma1_rhs| / (1 + |block_sum|).
[[nodiscard]] double lemma1_residual(const SineSeries& series, Index n, Index r, double x,
                                     double exclusion_tol = kDefaultExclusionTol);

/// max over grid points of |partial_sum(N_max, x) - partial_sum(n - 1, x)|.
/// Requires N_max >= 2 n.
[[nodiscard]] double remainder_sup(const SineSeries& series, Index n, const EvalGrid& grid, Index N_max);

/// Sum_{m=ceil(n/r)}^{cap} Sum_{k=1}^{[r/2]} |b_{rm+k} - b_{rm+r-k}|. Requires r >= 3.
[[nodiscard]] double epsilon2(const RealSequence& seq, Index r, Index n, Index cap);

enum class ConvergenceVerdict { ConsistentWithUniformConvergence, DivergenceWitness, Inconclusive };

[[nodiscard]] std::string_view to_string(ConvergenceVerdict v);

struct ConvergenceOptions {
  Index r = 2;
  double c = 2.0;
  std::vector<Index> n_grid{16, 32, 64, 128, 256, 512, 1024};
  Index N_max = Index{1} << 16;
  Index cap = Index{1} << 20;
  /// Largest allowed final sup remainder for a "consistent" verdict.
  double remainder_tol = 0.5;
  /// Divergence checkpoints N = 3*10^j + 3 for j = 1..divergence_depth.
  int divergence_depth = 6;
  /// Required rise between the first and last checkpoint sums.
  double divergence_threshold = 0.25;
  /// Special grid points are always scanned, regular points every stride-th.
  std::size_t divergence_stride = 16;
};

struct DivergenceWitness {
  double x = 0.0;
  std::vector<Index> checkpoints;
  std::vector<double> partial_sums;
};

struct ConvergenceReport {
  std::string label;
  Index r = 2;
  std::vector<Index> n_grid;
  std::vector<double> eps1;
  std::vector<double> eps2;  // empty when r <= 2
  std::vector<double> sup_remainder;
  std::vector<double> side_condition_partials;  // zeros when r <= 2
  std::vector<double> nbn_sup;
  /// Crude bound 2 * eps1(N_max) on the truncated tail beyond N_max.
  double tail_bound = 0.0;
  /// Some eps1 or nbn_sup maximum was first reached at the cap.
  bool cap_attained = false;
  std::vector<DivergenceWitness> witnesses;
  ConvergenceVerdict verdict = ConvergenceVerdict::Inconclusive;
};

/// Divergence checkpoints N_j = 3*10^j + 3, j = 1..depth.
[[nodiscard]] std::vector<Index> divergence_checkpoints(int depth);

/// Partial sums of the series at each checkpoint (ascending), in one pass.
[[nodiscard]] std::vector<double> checkpoint_sums(const SineSeries& series, double x,
                                                  const std::vector<Index>& checkpoints);

/// True when sums are strictly increasing and rise by at least threshold.
[[nodiscard]] bool is_divergence_witness(const std::vector<double>& sums, double threshold);

/// Remainder and epsilon diagnostics over n_grid. The verdict is
/// divergence_witness if any scanned point is a witness; otherwise
/// consistent_with_uniform_convergence when sup_remainder is nonincreasing
/// and its last entry is <= remainder_tol; otherwise inconclusive.
[[nodiscard]] ConvergenceReport convergence_report(const SineSeries& series, const EvalGrid& grid,
                                                   const ConvergenceOptions& options);

struct Remark3Identity {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// lhs: partial sum of the family_remark3 series at 2 pi/3 with N = 3M + 3.
/// rhs: sin(2 pi/3) [(d_1 - d_2) + Sum_{k=1}^{M} (d_{3k+1} - d_{3k+2})].
[[nodiscard]] Remark3Identity remark3_identity(Index M);

/// sin(2 pi/3) Sum_{k=1}^{K} 2 / ((3k+1) ln(3k+3)).
[[nodiscard]] double diverge_lower_bound(Index K);

struct Lemma1Row {
  Index trial = 0;
  Index n = 0;
  Index r = 0;
  double x = 0.0;
  double block_sum = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
};

struct Lemma1Report {
  std::vector<Lemma1Row> rows;
  double max_residual = 0.0;
  bool pass = false;
};

struct Lemma1SuiteOptions {
  std::uint64_t seed = 42;
  Index trials = 200;
  Index n_max = 64;
  Index r_max = 8;
  /// Sampled x in (0, 2 pi) are redrawn until |sin(r x / 2)| >= min_sin.
  double min_sin = 1e-3;
  double tolerance = 1e-10;
};

/// For each trial a random series (seed + trial, length 2 n_max + r_max,
/// amplitude 1) and every (n, r) in [1, n_max] x [1, r_max], one random x.
/// pass iff max_residual <= tolerance.
[[nodiscard]] Lemma1Report lemma1_suite(const Lemma1SuiteOptions& options);

struct DivergeRow {
  Index M = 0;
  Index N = 0;
  double partial_sum = 0.0;
  double telescoped = 0.0;
  double lower_bound = 0.0;
};

struct DivergeReport {
  std::vector<DivergeRow> rows;
  ConvergenceVerdict verdict = ConvergenceVerdict::Inconclusive;
};

/// family_remark3 checkpoints M = 10, 100, ... <= K (plus K itself when it is not a
/// power of ten). divergence_witness when the partial sums strictly increase
/// and rise by at least threshold.
[[nodiscard]] DivergeReport remark3_checkpoints(Index K, double threshold = 0.25);

}  // namespace gmlab
