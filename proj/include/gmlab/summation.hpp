#pragma once

#include <cmath>
#include <cstdint>

namespace gmlab {

/// Sums with more terms than this switch from plain to compensated accumulation.
inline constexpr std::int64_t kCompensationThreshold = 10'000;

/// Neumaier's variant of Kahan summation. Unlike plain Kahan it stays exact
/// when an incoming term is larger in magnitude than the running sum.
class CompensatedSum {
 public:
  void add(double value) {
    const double t = sum_ + value;
    if (std::fabs(sum_) >= std::fabs(value)) {
      carry_ += (sum_ - t) + value;
    } else {
      carry_ += (value - t) + sum_;
    }
    sum_ = t;
  }

  CompensatedSum& operator+=(double value) {
    add(value);
    return *this;
  }

  [[nodiscard]] double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

/// Sums f(k) for k = lo..hi in ascending order. Empty ranges give 0.
/// Ranges longer than kCompensationThreshold use CompensatedSum.
template <typename Fn>
double ordered_sum(std::int64_t lo, std::int64_t hi, Fn&& f) {
  if (hi < lo) return 0.0;
  if (hi - lo + 1 > kCompensationThreshold) {
    CompensatedSum acc;
    for (std::int64_t k = lo; k <= hi; ++k) acc.add(f(k));
    return acc.value();
  }
  double acc = 0.0;
  for (std::int64_t k = lo; k <= hi; ++k) acc += f(k);
  return acc;
}

}  // namespace gmlab
