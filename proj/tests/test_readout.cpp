#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "zenolz/readout.hpp"

using namespace zenolz;

TEST_CASE("model validation") {
  CHECK_THROWS_AS(ReadoutModel(0, 0.5), DomainError);
  CHECK_THROWS_AS(ReadoutModel(10, -0.1), DomainError);
  CHECK_THROWS_AS(ReadoutModel(10, 1.1), DomainError);
  CHECK_THROWS_AS(ReadoutModel(10, 0.5, 0.0), DomainError);
  CHECK_THROWS_AS(failure_probability(0.5, 0), DomainError);
  CHECK_THROWS_AS(failure_probability(2.0, 10), DomainError);
}

TEST_CASE("exact anchor points") {
  CHECK(failure_probability(0.5, 1000) == 0.5);  // erf(0) = 0 exactly
  CHECK(failure_probability(1.0, 1000) == 0.0);
  CHECK(failure_probability(0.0, 1000) == 1.0);
  CHECK(failure_probability(ReadoutModel(1000, 0.5)) == 0.5);
}

TEST_CASE("frozen high-precision tail value (p = 0.6, N = 1000)") {
  // z = 0.1*sqrt(1000)/sqrt(0.48) = 4.56435464587638427...
  // erfc(z)/2 = 5.41193695467451839987632507e-11
  CHECK(failure_probability(0.6, 1000) ==
        doctest::Approx(5.4119369546745184e-11).epsilon(1e-10));
}

TEST_CASE("monotone in p and in N on a 20x20 grid") {
  // strictly decreasing in p wherever erfc has headroom; the deep tails
  // saturate at exactly 0 and 1 in double precision, where only
  // non-increase can be asserted
  for (int i = 0; i < 20; ++i) {
    const std::int64_t N = 10 + 52 * i;
    double prev = failure_probability(0.025, N);
    for (int j = 1; j < 20; ++j) {
      const double p = 0.025 + 0.05 * j;  // 0.075 .. 0.975
      const double pe = failure_probability(p, N);
      CHECK(pe <= prev);
      if (prev < 1.0 && pe > 0.0) CHECK(pe < prev);
      prev = pe;
    }
  }
  for (int j = 0; j < 20; ++j) {
    const double p = 0.51 + 0.02 * j;
    double prev = failure_probability(p, 100);
    for (int i = 1; i < 20; ++i) {
      const std::int64_t N = 100 + 500 * i;
      const double pe = failure_probability(p, N);
      CHECK(pe <= prev);  // decreasing in N for p > 1/2
      if (prev > 0.0 && pe > 0.0) CHECK(pe < prev);
      prev = pe;
    }
  }
}

TEST_CASE("symmetry failure(1-p) = 1 - failure(p)") {
  for (const double p : {0.1, 0.25, 0.4, 0.49, 0.5, 0.62, 0.8, 0.93}) {
    CHECK(failure_probability(1.0 - p, 777) ==
          doctest::Approx(1.0 - failure_probability(p, 777)).epsilon(1e-12));
  }
}

TEST_CASE("required_p threshold and concentration limits") {
  CHECK(required_p(10, 0.5) == 0.5);
  CHECK(required_p(1000, 0.4999) > 0.5);
  CHECK(required_p(1000, 0.4999) < 0.5002);
  // N -> infinity pushes the requirement to 1/2
  CHECK(required_p(100000000000041, 1e-12) < 0.501);
  CHECK_THROWS_AS(required_p(10, 0.6), DomainError);
  CHECK_THROWS_AS(required_p(10, 0.0), DomainError);
  CHECK_THROWS_AS(required_p(0, 0.1), DomainError);
}

TEST_CASE("required_p round trip at the stated grids") {
  for (const double target : {1e-6, 1e-12}) {
    for (const std::int64_t N : {100, 10000, 1000000}) {
      const double p = required_p(N, target);
      CHECK(p > 0.5);
      CHECK(p < 1.0);
      CHECK(failure_probability(p, N) <= target);
      CHECK(failure_probability(p - 1e-9, N) >= target);
    }
  }
}

TEST_CASE("required_p decreasing in N") {
  const double target = 1e-12;
  double prev = 1.0;
  for (const std::int64_t N : {10, 100, 1000, 10000, 100000}) {
    const double p = required_p(N, target);
    CHECK(p < prev);
    prev = p;
  }
}

TEST_CASE("required_p agrees with direct bisection on failure_probability") {
  // independent oracle: bisect the failure probability itself
  const auto bisect_required = [](std::int64_t N, double target) {
    double lo = 0.5, hi = 1.0;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (failure_probability(mid, N) <= target)
        hi = mid;
      else
        lo = mid;
    }
    return hi;
  };
  for (const double target : {1e-3, 1e-6, 1e-12}) {
    for (const std::int64_t N : {7, 100, 10000, 1000000}) {
      CHECK(required_p(N, target) ==
            doctest::Approx(bisect_required(N, target)).epsilon(1e-10));
    }
  }
}

TEST_CASE("gaussian model tracks the exact binomial tail at moderate N") {
  // majority vote failure = P[X <= 500] for X ~ Bin(1001, 0.52);
  // exact value 0.102690985869100625 (30-digit arithmetic), gaussian model
  // gives 0.102656865711590627
  const std::int64_t N = 1001;
  const double p = 0.52;
  double tail = 0.0;
  for (int k = 0; k <= 500; ++k) {
    const double logterm = std::lgamma(N + 1.0) - std::lgamma(k + 1.0) -
                           std::lgamma(N - k + 1.0) + k * std::log(p) +
                           (N - k) * std::log1p(-p);
    tail += std::exp(logterm);
  }
  CHECK(tail == doctest::Approx(0.102690985869100625).epsilon(1e-9));
  CHECK(failure_probability(p, N) == doctest::Approx(tail).epsilon(0.001));
}
