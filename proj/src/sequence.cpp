#include "gmlab/sequence.hpp"

#include <cmath>
#include <memory>
#include <random>
#include <stdexcept>
#include <utility>

namespace gmlab {

RealSequence::RealSequence(std::string name, std::map<std::string, double> params, TermFn fn)
    : name_(std::move(name)), params_(std::move(params)), fn_(std::move(fn)) {
  if (!fn_) throw std::invalid_argument("RealSequence: empty term function");
}

double RealSequence::term(Index n) const {
  if (n < 1) {
    throw std::domain_error("RealSequence::term: index must be >= 1, got " + std::to_string(n));
  }
  return fn_(n);
}

RealSequence RealSequence::scaled(double factor) const {
  auto params = params_;
  params["scale"] = factor;
  return RealSequence(name_ + "_scaled", std::move(params),
                      [fn = fn_, factor](Index n) { return factor * fn(n); });
}

RealSequence family_zero() {
  return RealSequence("zero", {}, [](Index) { return 0.0; });
}

RealSequence family_constant(double value) {
  if (!std::isfinite(value)) throw std::domain_error("family_constant: value must be finite");
  return RealSequence("constant", {{"value", value}}, [value](Index) { return value; });
}

RealSequence family_from_values(std::string name, std::vector<double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) throw std::domain_error("family_from_values: non-finite value");
  }
  auto data = std::make_shared<const std::vector<double>>(std::move(values));
  std::map<std::string, double> params{{"length", static_cast<double>(data->size())}};
  return RealSequence(std::move(name), std::move(params), [data](Index n) {
    return n <= static_cast<Index>(data->size()) ? (*data)[static_cast<std::size_t>(n - 1)] : 0.0;
  });
}

namespace {

RealSequence divisor_dip(std::string name, const char* param, Index period) {
  if (period < 1) {
    throw std::domain_error(name + ": period must be >= 1, got " + std::to_string(period));
  }
  return RealSequence(std::move(name), {{param, static_cast<double>(period)}}, [period](Index n) {
    const double nn = static_cast<double>(n);
    return (n % period == 0 ? 1.0 : 3.0) / (nn * nn);
  });
}

double inv_n_log(Index n) {
  const double nn = static_cast<double>(n);
  return 1.0 / (nn * std::log(nn + 1.0));
}

}  // namespace

RealSequence family_theorem2(Index period) { return divisor_dip("thm2", "r2", period); }

RealSequence family_theorem3(Index period) { return divisor_dip("thm3", "r1", period); }

RealSequence family_remark3() {
  return RealSequence("remark3", {}, [](Index n) {
    return (n % 3 == 1 ? 3.0 : 1.0) * inv_n_log(n);
  });
}

RealSequence family_remark4(Index period) {
  if (period < 3) {
    throw std::domain_error("family_remark4: period must be >= 3, got " + std::to_string(period));
  }
  return RealSequence("remark4", {{"r", static_cast<double>(period)}},
                      [period](Index n) { return n % period == 0 ? 0.0 : inv_n_log(n); });
}

RealSequence family_power_log(double p, double q) {
  if (!(p >= 0.0) || !(q >= 0.0) || !std::isfinite(p) || !std::isfinite(q)) {
    throw std::domain_error("family_power_log: exponents must be finite and >= 0");
  }
  return RealSequence("powerlog", {{"p", p}, {"q", q}}, [p, q](Index n) {
    const double nn = static_cast<double>(n);
    return std::pow(nn, -p) * std::pow(std::log(nn + 1.0), -q);
  });
}

RealSequence family_random(std::uint64_t seed, Index length, double amplitude) {
  if (length < 1) throw std::domain_error("family_random: length must be >= 1");
  if (!(amplitude > 0.0) || !std::isfinite(amplitude)) {
    throw std::domain_error("family_random: amplitude must be finite and > 0");
  }
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> dist(-amplitude, amplitude);
  std::vector<double> values(static_cast<std::size_t>(length));
  for (auto& v : values) v = dist(gen);
  auto seq = family_from_values("random", std::move(values));
  auto params = seq.params();
  params["seed"] = static_cast<double>(seed);
  params["amplitude"] = amplitude;
  return RealSequence("random", std::move(params), [seq](Index n) { return seq.term(n); });
}

}  // namespace gmlab
