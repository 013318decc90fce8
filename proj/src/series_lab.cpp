#include "gmlab/series_lab.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <span>
#include <string>

#include "gmlab/summation.hpp"

namespace gmlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDivergencePoint = 2.0 * kPi / 3.0;

// Resynchronization period for the sin/cos rotation recurrence in checkpoint scans.
constexpr Index kRotationResync = 1024;

std::vector<double> tabulate(const RealSequence& seq, Index count) {
  std::vector<double> out(static_cast<std::size_t>(std::max<Index>(count, 0)));
  for (Index k = 1; k <= count; ++k) out[static_cast<std::size_t>(k - 1)] = seq.term(k);
  return out;
}

// Partial sums Sum_{k=1}^{N} b_k sin(k x) at each N in `at` (ascending), one
// compensated pass with sin evaluated directly. coeffs[k-1] = b_k.
std::vector<double> prefix_sums(std::span<const double> coeffs, double x, const std::vector<Index>& at) {
  std::vector<double> out;
  out.reserve(at.size());
  CompensatedSum acc;
  Index k = 1;
  for (Index stop : at) {
    for (; k <= stop; ++k) {
      acc.add(coeffs[static_cast<std::size_t>(k - 1)] * std::sin(static_cast<double>(k) * x));
    }
    out.push_back(acc.value());
  }
  return out;
}

// Same as prefix_sums, but sin(k x) comes from the angle-addition rotation,
// resynchronized with std::sin/std::cos every kRotationResync steps. Used for
// the long divergence scans where direct sin calls dominate the cost.
std::vector<double> rotation_sums(std::span<const double> coeffs, double x, const std::vector<Index>& at) {
  const double sx = std::sin(x);
  const double cx = std::cos(x);
  std::vector<double> out;
  out.reserve(at.size());
  CompensatedSum acc;
  double s = 0.0;
  double c = 1.0;
  Index k = 1;
  for (Index stop : at) {
    for (; k <= stop; ++k) {
      if ((k - 1) % kRotationResync == 0) {
        s = std::sin(static_cast<double>(k) * x);
        c = std::cos(static_cast<double>(k) * x);
      } else {
        const double ns = s * cx + c * sx;
        c = c * cx - s * sx;
        s = ns;
      }
      acc.add(coeffs[static_cast<std::size_t>(k - 1)] * s);
    }
    out.push_back(acc.value());
  }
  return out;
}

void require_positive(Index v, const char* what) {
  if (v < 1) throw std::domain_error(std::string(what) + " must be >= 1, got " + std::to_string(v));
}

}  // namespace

EvalGrid::EvalGrid(std::vector<double> points, double exclusion_tol)
    : points_(std::move(points)), exclusion_tol_(exclusion_tol) {
  if (!(exclusion_tol_ > 0.0)) throw std::domain_error("EvalGrid: exclusion_tol must be > 0");
  for (double x : points_) {
    if (!(x > 0.0 && x < kPi)) {
      throw std::domain_error("EvalGrid: point " + std::to_string(x) + " is not inside (0, pi)");
    }
  }
  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
}

EvalGrid EvalGrid::chebyshev(std::size_t size, Index r, double exclusion_tol) {
  require_positive(r, "EvalGrid::chebyshev: r");
  std::vector<double> pts;
  pts.reserve(size + 8);
  const auto n = static_cast<double>(size);
  for (std::size_t i = 0; i < size; ++i) {
    pts.push_back(0.5 * kPi * (1.0 - std::cos(kPi * (static_cast<double>(i) + 0.5) / n)));
  }
  std::vector<double> special{0.5 * kPi};
  const auto rr = static_cast<double>(r);
  for (Index l = 0; 2 * l < r; ++l) {
    const double node = 2.0 * static_cast<double>(l) * kPi / rr;
    if (node > 0.0 && node < kPi) special.push_back(node);
    const double mid = node + kPi / rr;
    if (mid > 0.0 && mid < kPi) special.push_back(mid);
  }
  std::sort(special.begin(), special.end());
  special.erase(std::unique(special.begin(), special.end()), special.end());
  pts.insert(pts.end(), special.begin(), special.end());
  EvalGrid grid(std::move(pts), exclusion_tol);
  grid.special_ = std::move(special);
  return grid;
}

void EvalGrid::check_lemma1_safe(Index r) const {
  for (double x : points_) {
    if (std::fabs(std::sin(static_cast<double>(r) * x / 2.0)) < exclusion_tol_) {
      throw SingularityError("EvalGrid: x = " + std::to_string(x) + " is within tolerance of 2 l pi / " +
                             std::to_string(r));
    }
  }
}

double partial_sum(const SineSeries& series, Index N, double x) {
  require_positive(N, "partial_sum: N");
  return ordered_sum(1, N, [&](Index k) {
    return series.coeffs.term(k) * std::sin(static_cast<double>(k) * x);
  });
}

double block_sum(const SineSeries& series, Index n, double x) {
  require_positive(n, "block_sum: n");
  return ordered_sum(n, 2 * n - 1, [&](Index k) {
    return series.coeffs.term(k) * std::sin(static_cast<double>(k) * x);
  });
}

double lemma1_rhs(const SineSeries& series, Index n, Index r, double x, double exclusion_tol) {
  require_positive(n, "lemma1_rhs: n");
  require_positive(r, "lemma1_rhs: r");
  const double half_r = 0.5 * static_cast<double>(r);
  const double s = std::sin(half_r * x);
  if (std::fabs(s) < exclusion_tol) {
    throw SingularityError("lemma1_rhs: |sin(r x / 2)| = " + std::to_string(std::fabs(s)) +
                           " is below the exclusion tolerance");
  }
  const auto& b = series.coeffs;
  // Angles and accumulation in long double: (k + r/2) x in double loses about k x ulp.
  const long double xl = x;
  const long double hr = half_r;
  auto window = [&](Index lo, Index hi, auto&& term) {
    long double acc = 0.0L;
    for (Index k = lo; k <= hi; ++k) acc += term(k);
    return acc;
  };
  const long double differences = window(n, 2 * n - 1, [&](Index k) {
    return static_cast<long double>(b.term(k) - b.term(k + r)) * std::cos((static_cast<long double>(k) + hr) * xl);
  });
  const long double upper = window(2 * n, 2 * n + r - 1, [&](Index k) {
    return static_cast<long double>(b.term(k)) * std::cos((static_cast<long double>(k) - hr) * xl);
  });
  const long double lower = window(n, n + r - 1, [&](Index k) {
    return static_cast<long double>(b.term(k)) * std::cos((static_cast<long double>(k) - hr) * xl);
  });
  return static_cast<double>(-(differences + upper - lower) / (2.0L * std::sin(hr * xl)));
}

double lemma1_residual(const SineSeries& series, Index n, Index r, double x, double exclusion_tol) {
  const double rhs = lemma1_rhs(series, n, r, x, exclusion_tol);
  const double lhs = block_sum(series, n, x);
  return std::fabs(lhs - rhs) / (1.0 + std::fabs(lhs));
}

double remainder_sup(const SineSeries& series, Index n, const EvalGrid& grid, Index N_max) {
  require_positive(n, "remainder_sup: n");
  if (N_max < 2 * n) throw std::domain_error("remainder_sup: N_max must be >= 2 n");
  const auto coeffs = tabulate(series.coeffs, N_max);
  const std::vector<Index> at{n - 1, N_max};
  double best = 0.0;
  for (double x : grid.points()) {
    const auto sums = prefix_sums(coeffs, x, at);
    best = std::max(best, std::fabs(sums[1] - sums[0]));
  }
  return best;
}

double epsilon2(const RealSequence& seq, Index r, Index n, Index cap) {
  if (r < 3) throw std::domain_error("epsilon2: r must be >= 3, got " + std::to_string(r));
  require_positive(n, "epsilon2: n");
  const Index lo = ceil_div_real(n, static_cast<double>(r));
  const Index half = r / 2;
  return ordered_sum(lo, cap, [&](Index m) {
    double inner = 0.0;
    for (Index k = 1; k <= half; ++k) inner += std::fabs(seq.term(r * m + k) - seq.term(r * m + r - k));
    return inner;
  });
}

std::string_view to_string(ConvergenceVerdict v) {
  switch (v) {
    case ConvergenceVerdict::ConsistentWithUniformConvergence:
      return "consistent_with_uniform_convergence";
    case ConvergenceVerdict::DivergenceWitness:
      return "divergence_witness";
    case ConvergenceVerdict::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

std::vector<Index> divergence_checkpoints(int depth) {
  if (depth < 2 || depth > 8) throw std::domain_error("divergence_checkpoints: depth must be in [2, 8]");
  std::vector<Index> out;
  Index p = 1;
  for (int j = 1; j <= depth; ++j) {
    p *= 10;
    out.push_back(3 * p + 3);
  }
  return out;
}

std::vector<double> checkpoint_sums(const SineSeries& series, double x, const std::vector<Index>& checkpoints) {
  if (checkpoints.empty()) return {};
  if (!std::is_sorted(checkpoints.begin(), checkpoints.end()) || checkpoints.front() < 1) {
    throw std::domain_error("checkpoint_sums: checkpoints must be ascending and >= 1");
  }
  return rotation_sums(tabulate(series.coeffs, checkpoints.back()), x, checkpoints);
}

bool is_divergence_witness(const std::vector<double>& sums, double threshold) {
  if (sums.size() < 2) return false;
  for (std::size_t i = 1; i < sums.size(); ++i) {
    if (!(sums[i] > sums[i - 1])) return false;
  }
  return sums.back() - sums.front() >= threshold;
}

ConvergenceReport convergence_report(const SineSeries& series, const EvalGrid& grid,
                                     const ConvergenceOptions& opt) {
  require_positive(opt.r, "convergence_report: r");
  if (!(opt.c > 1.0)) throw std::domain_error("convergence_report: c must be > 1");
  if (opt.n_grid.empty() || !std::is_sorted(opt.n_grid.begin(), opt.n_grid.end()) || opt.n_grid.front() < 1) {
    throw std::domain_error("convergence_report: n grid must be nonempty, ascending and >= 1");
  }
  if (opt.N_max < 2 * opt.n_grid.back()) {
    throw std::domain_error("convergence_report: N_max must be >= 2 max(n_grid)");
  }
  if (opt.cap < opt.N_max) throw std::domain_error("convergence_report: cap must be >= N_max");

  const auto& seq = series.coeffs;
  ConvergenceReport rep;
  rep.label = series.label;
  rep.r = opt.r;
  rep.n_grid = opt.n_grid;

  for (Index n : opt.n_grid) {
    const auto e1 = epsilon1(seq, n, opt.c, opt.cap);
    rep.eps1.push_back(e1.value);
    rep.cap_attained = rep.cap_attained || e1.attained_at_cap;
    if (opt.r >= 3) {
      rep.eps2.push_back(epsilon2(seq, opt.r, n, opt.cap));
      rep.side_condition_partials.push_back(theorem6_condition(seq, opt.r, n));
    } else {
      rep.side_condition_partials.push_back(0.0);
    }
    // sup_{k >= n} k |b_k| is epsilon1 with c -> 1; evaluated directly here.
    double nb = 0.0;
    Index arg = n;
    for (Index k = n; k <= opt.cap; ++k) {
      const double v = static_cast<double>(k) * std::fabs(seq.term(k));
      if (v > nb) {
        nb = v;
        arg = k;
      }
    }
    rep.cap_attained = rep.cap_attained || (nb > 0.0 && arg == opt.cap && opt.cap > n);
    rep.nbn_sup.push_back(nb);
  }
  const auto tail = epsilon1(seq, opt.N_max, opt.c, opt.cap);
  rep.tail_bound = 2.0 * tail.value;
  rep.cap_attained = rep.cap_attained || tail.attained_at_cap;

  // Remainders: one pass per grid point, recording S_{n-1} for every n and S_{N_max}.
  const auto coeffs = tabulate(seq, opt.N_max);
  std::vector<Index> at;
  for (Index n : opt.n_grid) at.push_back(n - 1);
  at.push_back(opt.N_max);
  rep.sup_remainder.assign(opt.n_grid.size(), 0.0);
  for (double x : grid.points()) {
    const auto sums = prefix_sums(coeffs, x, at);
    for (std::size_t i = 0; i < opt.n_grid.size(); ++i) {
      rep.sup_remainder[i] = std::max(rep.sup_remainder[i], std::fabs(sums.back() - sums[i]));
    }
  }

  // Divergence scan.
  const auto checkpoints = divergence_checkpoints(opt.divergence_depth);
  std::vector<double> scan = grid.special_points();
  const std::size_t stride = std::max<std::size_t>(1, opt.divergence_stride);
  for (std::size_t i = 0; i < grid.points().size(); i += stride) scan.push_back(grid.points()[i]);
  std::sort(scan.begin(), scan.end());
  scan.erase(std::unique(scan.begin(), scan.end()), scan.end());
  const auto scan_coeffs = tabulate(seq, checkpoints.back());
  for (double x : scan) {
    auto sums = rotation_sums(scan_coeffs, x, checkpoints);
    if (is_divergence_witness(sums, opt.divergence_threshold)) {
      rep.witnesses.push_back({x, checkpoints, std::move(sums)});
    }
  }

  if (!rep.witnesses.empty()) {
    rep.verdict = ConvergenceVerdict::DivergenceWitness;
  } else {
    const bool nonincreasing = std::is_sorted(rep.sup_remainder.rbegin(), rep.sup_remainder.rend());
    rep.verdict = nonincreasing && rep.sup_remainder.back() <= opt.remainder_tol
                      ? ConvergenceVerdict::ConsistentWithUniformConvergence
                      : ConvergenceVerdict::Inconclusive;
  }
  return rep;
}

Remark3Identity remark3_identity(Index M) {
  if (M < 0) throw std::domain_error("remark3_identity: M must be >= 0");
  const SineSeries series{family_remark3(), "remark3"};
  const auto& d = series.coeffs;
  Remark3Identity out;
  out.lhs = partial_sum(series, 3 * M + 3, kDivergencePoint);
  const double head = d.term(1) - d.term(2);
  const double pairs = ordered_sum(1, M, [&](Index k) { return d.term(3 * k + 1) - d.term(3 * k + 2); });
  out.rhs = std::sin(kDivergencePoint) * (head + pairs);
  return out;
}

double diverge_lower_bound(Index K) {
  require_positive(K, "diverge_lower_bound: K");
  const double sum = ordered_sum(1, K, [](Index k) {
    const double kk = static_cast<double>(k);
    return 2.0 / ((3.0 * kk + 1.0) * std::log(3.0 * kk + 3.0));
  });
  return std::sin(kDivergencePoint) * sum;
}

Lemma1Report lemma1_suite(const Lemma1SuiteOptions& opt) {
  require_positive(opt.trials, "lemma1_suite: trials");
  require_positive(opt.n_max, "lemma1_suite: n_max");
  require_positive(opt.r_max, "lemma1_suite: r_max");
  if (!(opt.min_sin > 0.0 && opt.min_sin < 1.0)) {
    throw std::domain_error("lemma1_suite: min_sin must lie in (0, 1)");
  }
  Lemma1Report rep;
  rep.rows.reserve(static_cast<std::size_t>(opt.trials * opt.n_max * opt.r_max));
  std::mt19937_64 gen(opt.seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  for (Index t = 0; t < opt.trials; ++t) {
    const SineSeries series{family_random(opt.seed + static_cast<std::uint64_t>(t), 2 * opt.n_max + opt.r_max, 1.0),
                            "random"};
    for (Index n = 1; n <= opt.n_max; ++n) {
      for (Index r = 1; r <= opt.r_max; ++r) {
        double x = 0.0;
        do {
          x = angle(gen);
        } while (x == 0.0 || std::fabs(std::sin(0.5 * static_cast<double>(r) * x)) < opt.min_sin);
        Lemma1Row row{t, n, r, x, block_sum(series, n, x), lemma1_rhs(series, n, r, x, opt.min_sin), 0.0};
        row.residual = std::fabs(row.block_sum - row.rhs) / (1.0 + std::fabs(row.block_sum));
        rep.max_residual = std::max(rep.max_residual, row.residual);
        rep.rows.push_back(row);
      }
    }
  }
  rep.pass = rep.max_residual <= opt.tolerance;
  return rep;
}

DivergeReport remark3_checkpoints(Index K, double threshold) {
  require_positive(K, "remark3_checkpoints: K");
  std::vector<Index> ms;
  for (Index m = 10; m <= K; m *= 10) ms.push_back(m);
  if (ms.empty() || ms.back() != K) ms.push_back(K);
  DivergeReport rep;
  std::vector<double> sums;
  for (Index m : ms) {
    const auto id = remark3_identity(m);
    rep.rows.push_back({m, 3 * m + 3, id.lhs, id.rhs, diverge_lower_bound(m)});
    sums.push_back(id.lhs);
  }
  rep.verdict = is_divergence_witness(sums, threshold) ? ConvergenceVerdict::DivergenceWitness
                                                       : ConvergenceVerdict::Inconclusive;
  return rep;
}

}  // namespace gmlab
