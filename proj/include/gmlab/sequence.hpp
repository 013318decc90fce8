#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace gmlab {

/// 1-based sequence index.
using Index = std::int64_t;

/// An immutable, lazily evaluated real sequence a_1, a_2, ...
///
/// Terms are produced by a pure function of the index, so a RealSequence can
/// be copied freely and evaluated from several threads. The name and params
/// record how the sequence was built and travel into reports.
class RealSequence {
 public:
  using TermFn = std::function<double(Index)>;

  RealSequence(std::string name, std::map<std::string, double> params, TermFn fn);

  /// Returns a_n. Throws std::domain_error for n < 1.
  [[nodiscard]] double term(Index n) const;
  [[nodiscard]] double operator()(Index n) const { return term(n); }

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] const std::map<std::string, double>& params() const { return params_; }

  /// Pointwise product with a constant; a factor of -1 gives the sign-flipped sequence.
  [[nodiscard]] RealSequence scaled(double factor) const;

 private:
  std::string name_;
  std::map<std::string, double> params_;
  TermFn fn_;
};

// Reference families. Every constructor validates its parameters and throws
// std::domain_error on violation.

RealSequence family_zero();
RealSequence family_constant(double value);

/// Finite support: values[0] is a_1, terms beyond values.size() are 0.
RealSequence family_from_values(std::string name, std::vector<double> values);

/// a_n = (2 + alpha_n) / n^2 with alpha_n = -1 if period | n, else 1.
/// Separates GM(beta*, r1) from GM(beta*, r2) when r1 | r2 and period = r2.
RealSequence family_theorem2(Index period);

/// Same shape as family_theorem2 with the period playing the role of r1;
/// used for the non-comparability experiment.
RealSequence family_theorem3(Index period);

/// 3/(n ln(n+1)) when n = 1 (mod 3), else 1/(n ln(n+1)). Its sine series
/// diverges at 2*pi/3.
RealSequence family_remark3();

/// 0 when period | n, else 1/(n ln(n+1)). Requires period >= 3.
RealSequence family_remark4(Index period);

/// n^(-p) * ln(n+1)^(-q), p >= 0, q >= 0.
RealSequence family_power_log(double p, double q);

/// Uniform values in [-amplitude, amplitude] for n <= length, zero beyond.
/// The same seed reproduces the same sequence within one build.
RealSequence family_random(std::uint64_t seed, Index length, double amplitude);

}  // namespace gmlab
