#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "gmlab/sequence.hpp"
#include "gmlab/summation.hpp"

using namespace gmlab;

TEST_CASE("terms are 1-based") {
  const auto seq = family_power_log(1.0, 0.0);
  CHECK_THROWS_AS((void)seq.term(0), std::domain_error);
  CHECK_THROWS_AS((void)seq.term(-3), std::domain_error);
  CHECK(seq.term(1) == 1.0);
  CHECK(seq(4) == 0.25);
}

TEST_CASE("zero and constant families") {
  CHECK(family_zero().term(17) == 0.0);
  CHECK(family_constant(2.5).term(1000) == 2.5);
  CHECK_THROWS_AS(family_constant(INFINITY), std::domain_error);
}

TEST_CASE("finite support pads with zeros") {
  const auto seq = family_from_values("v", {1.0, -2.0, 3.0});
  CHECK(seq.term(2) == -2.0);
  CHECK(seq.term(3) == 3.0);
  CHECK(seq.term(4) == 0.0);
  CHECK(seq.term(1'000'000) == 0.0);
}

TEST_CASE("scaled multiplies every term") {
  const auto seq = family_theorem2(3).scaled(-2.0);
  for (Index n = 1; n <= 20; ++n) CHECK(seq.term(n) == -2.0 * family_theorem2(3).term(n));
}

TEST_CASE("family_theorem2: n^2 a_n is 1 on multiples of the period, else 3") {
  for (Index period : {1, 2, 3, 4}) {
    const auto seq = family_theorem2(period);
    for (Index n = 1; n <= 100'000; ++n) {
      const double nn = static_cast<double>(n);
      const double scaled = seq.term(n) * nn * nn;
      const double expected = n % period == 0 ? 1.0 : 3.0;
      if (std::fabs(scaled - expected) > 4e-16 * expected) {
        FAIL("n^2 a_n = " << scaled << " at n = " << n << " period " << period);
      }
    }
  }
  CHECK(family_theorem2(2).term(2) == 0.25);
  CHECK(family_theorem2(2).term(3) == 3.0 / 9.0);
  CHECK_THROWS_AS(family_theorem2(0), std::domain_error);
}

TEST_CASE("family_theorem3 shares the divisor-dip shape") {
  const auto a = family_theorem3(2);
  const auto b = family_theorem2(2);
  for (Index n = 1; n <= 1000; ++n) CHECK(a.term(n) == b.term(n));
}

TEST_CASE("family_remark3 and family_remark4: n a_n <= 3/ln(n+1) and decreases to 0 along dyadic n") {
  std::vector<RealSequence> seqs{family_remark3(), family_remark4(3), family_remark4(4), family_remark4(5)};
  for (const auto& seq : seqs) {
    for (Index n = 1; n <= 100'000; ++n) {
      const double v = static_cast<double>(n) * seq.term(n);
      if (v > 3.0 / std::log(static_cast<double>(n) + 1.0) * (1.0 + 1e-15)) FAIL("bound fails at n = " << n);
    }
    // n a_n ln(n+1) takes the values 0, 1 or 3; within each class n a_n must strictly decrease.
    std::map<long, double> last;
    double final_value = 0.0;
    for (Index n = 1; n <= (Index{1} << 20); n *= 2) {
      const double v = static_cast<double>(n) * seq.term(n);
      const long cls = std::lround(v * std::log(static_cast<double>(n) + 1.0));
      REQUIRE((cls == 0 || cls == 1 || cls == 3));
      if (cls != 0) {
        if (last.count(cls)) CHECK(v < last[cls]);
        last[cls] = v;
      }
      final_value = std::max(final_value, v);
      if (n >= (Index{1} << 18)) CHECK(v < 0.25);
    }
    CHECK(final_value > 0.0);
  }
}

TEST_CASE("family_remark3 coefficients") {
  const auto d = family_remark3();
  CHECK(d.term(1) == doctest::Approx(3.0 / std::log(2.0)).epsilon(1e-15));
  CHECK(d.term(2) == doctest::Approx(1.0 / (2.0 * std::log(3.0))).epsilon(1e-15));
  CHECK(d.term(4) == doctest::Approx(3.0 / (4.0 * std::log(5.0))).epsilon(1e-15));
}

TEST_CASE("family_remark4 vanishes on multiples of the period") {
  const auto a = family_remark4(4);
  CHECK(a.term(8) == 0.0);
  CHECK(a.term(9) > 0.0);
  CHECK_THROWS_AS(family_remark4(2), std::domain_error);
}

TEST_CASE("power-log family is strictly decreasing for p > 0") {
  for (auto [p, q] : std::vector<std::pair<double, double>>{{1, 0}, {2, 0}, {1, 1}, {0.5, 2}}) {
    const auto seq = family_power_log(p, q);
    for (Index n = 1; n < 10'000; ++n) {
      if (!(seq.term(n + 1) < seq.term(n))) FAIL("not decreasing at n = " << n);
    }
  }
  CHECK_THROWS_AS(family_power_log(-1.0, 0.0), std::domain_error);
}

TEST_CASE("all deterministic families are nonnegative") {
  std::vector<RealSequence> seqs{family_theorem2(2), family_theorem3(3), family_remark3(), family_remark4(3),
                                 family_power_log(1, 1), family_zero()};
  for (const auto& seq : seqs) {
    for (Index n = 1; n <= 10'000; ++n) REQUIRE(seq.term(n) >= 0.0);
  }
}

TEST_CASE("random family: deterministic, bounded, finite support") {
  const auto a = family_random(42, 64, 1.5);
  const auto b = family_random(42, 64, 1.5);
  const auto other = family_random(43, 64, 1.5);
  bool differs = false;
  for (Index n = 1; n <= 64; ++n) {
    CHECK(a.term(n) == b.term(n));
    CHECK(std::fabs(a.term(n)) <= 1.5);
    differs = differs || a.term(n) != other.term(n);
  }
  CHECK(differs);
  CHECK(a.term(65) == 0.0);
  CHECK_THROWS_AS(family_random(1, 0, 1.0), std::domain_error);
  CHECK_THROWS_AS(family_random(1, 4, 0.0), std::domain_error);
}

TEST_CASE("ordered_sum: empty range and compensation") {
  CHECK(ordered_sum(5, 4, [](Index) { return 1.0; }) == 0.0);
  // 1 followed by many terms below half an ulp of 1: plain summation loses them.
  const Index count = 2 * kCompensationThreshold;
  const double tiny = 1e-17;
  const double s = ordered_sum(0, count, [&](Index k) { return k == 0 ? 1.0 : tiny; });
  CHECK(s == doctest::Approx(1.0 + static_cast<double>(count) * tiny).epsilon(1e-15));
  CHECK(s > 1.0);
}
