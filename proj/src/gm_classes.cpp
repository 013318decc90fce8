#include "gmlab/gm_classes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gmlab/summation.hpp"

namespace gmlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_index(Index v, Index min, const char* what) {
  if (v < min) {
    throw std::domain_error(std::string(what) + " must be >= " + std::to_string(min) + ", got " +
                            std::to_string(v));
  }
}

void require_c(double c, const char* who) {
  if (!(c > 1.0) || !std::isfinite(c)) {
    throw std::domain_error(std::string(who) + ": c must be a finite real > 1");
  }
}

double abs_window(const RealSequence& seq, Index lo, Index hi) {
  return ordered_sum(lo, hi, [&](Index k) { return std::fabs(seq.term(k)); });
}

// Sum_{k=L}^{U} |a_k|/k, shared by beta* and variant (5) so both agree bitwise.
double weighted_window(const RealSequence& seq, Index n, double c) {
  const Index lo = std::max<Index>(1, floor_div_real(n, c));
  const Index hi = static_cast<Index>(std::floor(c * static_cast<double>(n)));
  return ordered_sum(lo, hi, [&](Index k) { return std::fabs(seq.term(k)) / static_cast<double>(k); });
}

double median_of(std::vector<Index> v) {
  std::sort(v.begin(), v.end());
  const auto mid = v.size() / 2;
  if (v.size() % 2 == 1) return static_cast<double>(v[mid]);
  return 0.5 * (static_cast<double>(v[mid - 1]) + static_cast<double>(v[mid]));
}

double ls_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const auto n = static_cast<double>(xs.size());
  if (xs.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  if (sxx == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return sxy / sxx;
}

}  // namespace

Index floor_div_real(Index n, double c) {
  return static_cast<Index>(std::floor(static_cast<double>(n) / c));
}

Index ceil_div_real(Index n, double c) {
  return static_cast<Index>(std::ceil(static_cast<double>(n) / c));
}

void BetaSpec::validate() const {
  switch (kind) {
    case Kind::BetaStar:
      require_index(r, 1, "BetaSpec.r");
      require_c(c, "BetaSpec");
      break;
    case Kind::V1:
      break;
    case Kind::V2:
      require_index(N, 0, "BetaSpec.N");
      break;
    case Kind::V3:
      require_index(N, 0, "BetaSpec.N");
      require_index(base, 2, "BetaSpec.base");
      break;
    case Kind::V4:
    case Kind::V5:
      require_c(c, "BetaSpec");
      break;
  }
}

double r_variation(const RealSequence& seq, Index m, Index r) {
  require_index(m, 1, "r_variation: m");
  require_index(r, 1, "r_variation: r");
  return ordered_sum(m, 2 * m - 1, [&](Index k) { return std::fabs(seq.term(k) - seq.term(k + r)); });
}

double beta_star(const RealSequence& seq, Index n, Index r, double c) {
  require_index(n, 1, "beta_star: n");
  require_index(r, 1, "beta_star: r");
  require_c(c, "beta_star");
  return abs_window(seq, n, n + r - 1) + weighted_window(seq, n, c);
}

double beta_variant(const RealSequence& seq, Index n, const BetaSpec& spec) {
  require_index(n, 1, "beta_variant: n");
  spec.validate();
  switch (spec.kind) {
    case BetaSpec::Kind::BetaStar:
      return beta_star(seq, n, spec.r, spec.c);
    case BetaSpec::Kind::V1:
      return std::fabs(seq.term(n));
    case BetaSpec::Kind::V2:
      return abs_window(seq, n, n + spec.N);
    case BetaSpec::Kind::V3: {
      double acc = 0.0;
      Index idx = n;
      for (Index nu = 0; nu <= spec.N; ++nu) {
        acc += std::fabs(seq.term(idx));
        if (nu < spec.N && idx > std::numeric_limits<Index>::max() / spec.base) {
          throw std::domain_error("beta_variant: index base^nu * n overflows");
        }
        idx *= spec.base;
      }
      return acc;
    }
    case BetaSpec::Kind::V4: {
      const Index hi = static_cast<Index>(std::floor(spec.c * static_cast<double>(n)));
      const double tail = ordered_sum(n + 1, hi, [&](Index k) {
        return std::fabs(seq.term(k)) / static_cast<double>(k);
      });
      return std::fabs(seq.term(n)) + tail;
    }
    case BetaSpec::Kind::V5:
      // |a_n| alone is the r = 1 head window of beta*; 0.0 + x == x keeps this bitwise equal.
      return (0.0 + std::fabs(seq.term(n))) + weighted_window(seq, n, spec.c);
  }
  throw std::domain_error("beta_variant: unknown kind");
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Bounded:
      return "bounded";
    case Verdict::Growing:
      return "growing";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

std::vector<Index> dyadic_grid(Index m_max) {
  require_index(m_max, 1, "dyadic_grid: m_max");
  std::vector<Index> grid;
  for (Index m = 1; m <= m_max; m *= 2) grid.push_back(m);
  return grid;
}

DefectReport defect_profile(const RealSequence& seq, Index r, const BetaSpec& spec,
                            const std::vector<Index>& m_grid, const ClassifyThresholds& thresholds) {
  if (m_grid.empty()) throw std::domain_error("defect_profile: empty m grid");
  if (!std::is_sorted(m_grid.begin(), m_grid.end())) {
    throw std::domain_error("defect_profile: m grid must be ascending");
  }
  spec.validate();

  DefectReport report;
  report.r = r;
  report.beta = spec;
  report.samples.reserve(m_grid.size());
  for (Index m : m_grid) {
    DefectSample s;
    s.m = m;
    s.lhs = r_variation(seq, m, r);
    s.beta = beta_variant(seq, m, spec);
    if (s.beta > 0.0) {
      s.ratio = s.lhs / s.beta;
    } else {
      s.zero_beta = true;
      s.ratio = s.lhs > 0.0 ? kInf : 0.0;
    }
    report.samples.push_back(s);
  }

  const double median = median_of(m_grid);
  std::vector<double> xs, ys;
  for (const auto& s : report.samples) {
    if (std::isinf(s.ratio)) {
      ++report.infinite_count;
      continue;
    }
    report.max_ratio = std::max(report.max_ratio, s.ratio);
    if (static_cast<double>(s.m) >= median && !s.zero_beta && s.ratio > 0.0) {
      xs.push_back(std::log(static_cast<double>(s.m)));
      ys.push_back(std::log(s.ratio));
    }
  }
  report.slope = ls_slope(xs, ys);
  report.verdict = classify(report, thresholds);
  return report;
}

Verdict classify(const DefectReport& report, const ClassifyThresholds& t) {
  if (!(t.bounded_slope_max < t.growing_slope_min)) {
    throw std::domain_error("classify: bounded slope threshold must be below the growing one");
  }
  if (std::isnan(report.slope)) return Verdict::Inconclusive;
  if (report.slope <= t.bounded_slope_max && report.infinite_count == 0 &&
      report.max_ratio <= t.ratio_cap) {
    return Verdict::Bounded;
  }
  if (report.slope >= t.growing_slope_min) return Verdict::Growing;
  return Verdict::Inconclusive;
}

MembershipReport membership_profile(const RealSequence& seq, Index r, const std::vector<double>& cs,
                                    const std::vector<Index>& m_grid,
                                    const ClassifyThresholds& thresholds) {
  if (cs.empty()) throw std::domain_error("membership_profile: no c values");
  MembershipReport out;
  out.cs = cs;
  bool any_bounded = false;
  bool all_growing = true;
  for (double c : cs) {
    auto rep = defect_profile(seq, r, BetaSpec::star(r, c), m_grid, thresholds);
    any_bounded = any_bounded || rep.verdict == Verdict::Bounded;
    all_growing = all_growing && rep.verdict == Verdict::Growing;
    out.per_c.push_back(std::move(rep));
  }
  out.verdict = any_bounded ? Verdict::Bounded : all_growing ? Verdict::Growing : Verdict::Inconclusive;
  return out;
}

double weak_monotone_defect(const RealSequence& seq, Index n, double c) {
  require_index(n, 1, "weak_monotone_defect: n");
  require_c(c, "weak_monotone_defect");
  const double num = static_cast<double>(n) * std::fabs(seq.term(n));
  const Index lo = std::max<Index>(1, floor_div_real(n, c));
  const Index hi = static_cast<Index>(std::floor(c * static_cast<double>(n)));
  const double den = abs_window(seq, lo, hi);
  if (den == 0.0) return num > 0.0 ? kInf : 0.0;
  return num / den;
}

RatioReport remark1_condition(const std::function<double(Index)>& beta, Index r,
                              const std::vector<Index>& n_grid) {
  require_index(r, 1, "remark1_condition: r");
  RatioReport out;
  for (Index n : n_grid) {
    require_index(n, 1, "remark1_condition: n");
    RatioSample s{n, 0.0, false};
    const double base = beta(n);
    double acc = 0.0;
    for (Index i = 0; i < r; ++i) acc += beta(n + i);
    if (base > 0.0) {
      s.ratio = acc / base;
      out.max_ratio = std::max(out.max_ratio, s.ratio);
    } else {
      s.flagged = true;
      s.ratio = acc > 0.0 ? kInf : 0.0;
      ++out.flagged_count;
    }
    out.samples.push_back(s);
  }
  return out;
}

double theorem6_condition(const RealSequence& seq, Index r, Index N) {
  require_index(r, 3, "theorem6_condition: r");
  require_index(N, 1, "theorem6_condition: N");
  const Index half = r / 2;
  return ordered_sum(1, N, [&](Index n) {
    double inner = 0.0;
    for (Index k = 1; k <= half; ++k) inner += std::fabs(seq.term(r * n + k) - seq.term(r * n + r - k));
    return inner;
  });
}

Epsilon1 epsilon1(const RealSequence& seq, Index n, double c, Index cap) {
  require_index(n, 1, "epsilon1: n");
  require_c(c, "epsilon1");
  const Index lo = std::max<Index>(1, ceil_div_real(n, c));
  if (cap < lo) {
    throw std::domain_error("epsilon1: cap " + std::to_string(cap) + " is below ceil(n/c) = " +
                            std::to_string(lo));
  }
  Epsilon1 out;
  Index arg = lo;
  for (Index k = lo; k <= cap; ++k) {
    const double v = static_cast<double>(k) * std::fabs(seq.term(k));
    if (v > out.value) {
      out.value = v;
      arg = k;
    }
  }
  out.attained_at_cap = out.value > 0.0 && arg == cap && cap > lo;
  return out;
}

RatioReport theorem4_bound_check(const RealSequence& seq, Index r, double c,
                                 const std::vector<Index>& n_range) {
  require_index(r, 1, "theorem4_bound_check: r");
  require_c(c, "theorem4_bound_check");
  const double c1 = std::max(3.0, 2.0 * c);
  Index top = 0;
  for (Index n : n_range) {
    if (n > r) top = std::max(top, static_cast<Index>(std::floor(c1 * static_cast<double>(n))));
  }
  // prefix[k] = Sum_{j=1}^{k} a_j, one compensated ascending pass.
  std::vector<double> prefix(static_cast<std::size_t>(top) + 1, 0.0);
  CompensatedSum acc;
  for (Index k = 1; k <= top; ++k) {
    acc.add(seq.term(k));
    prefix[static_cast<std::size_t>(k)] = acc.value();
  }
  RatioReport out;
  for (Index n : n_range) {
    if (n <= r) continue;
    const double num = static_cast<double>(n) * seq.term(n);
    const Index lo = std::max<Index>(1, ceil_div_real(n, c1));
    const Index hi = static_cast<Index>(std::floor(c1 * static_cast<double>(n)));
    const double window = prefix[static_cast<std::size_t>(hi)] - prefix[static_cast<std::size_t>(lo - 1)];
    const double den = 4.0 * static_cast<double>(r) * window;
    RatioSample s{n, 0.0, false};
    if (den > 0.0) {
      s.ratio = num / den;
      out.max_ratio = std::max(out.max_ratio, s.ratio);
    } else if (num > 0.0) {
      s.flagged = true;
      s.ratio = kInf;
      ++out.flagged_count;
    }
    out.samples.push_back(s);
  }
  return out;
}

}  // namespace gmlab
