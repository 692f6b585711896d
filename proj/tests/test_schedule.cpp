#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "zenolz/schedule.hpp"

using namespace zenolz;

TEST_CASE("schedule validation") {
  CHECK_THROWS_AS(SweepSchedule(10.0, 0.0, 20.0), DomainError);
  CHECK_THROWS_AS(SweepSchedule(10.0, -1.0, 20.0), DomainError);
  CHECK_THROWS_AS(SweepSchedule(1.0, 1.0, 20.0), DomainError);   // epsilon0 == delta
  CHECK_THROWS_AS(SweepSchedule(0.5, 1.0, 20.0), DomainError);   // epsilon0 < delta
  CHECK_THROWS_AS(SweepSchedule(10.0, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(SweepSchedule(10.0, 1.0, -5.0), DomainError);

  const SweepSchedule ok(10.0, 1.0, 20.0);
  CHECK(ok.v() == doctest::Approx(1.0));
  CHECK_FALSE(ok.weak_separation());
  CHECK(SweepSchedule(3.0, 1.0, 20.0).weak_separation());
}

TEST_CASE("epsilon_at is the linear ramp") {
  const SweepSchedule s(10.0, 1.0, 20.0);  // v = 1
  CHECK(epsilon_at(s, -10.0) == doctest::Approx(-10.0));  // endpoint -epsilon0
  CHECK(epsilon_at(s, 0.0) == 0.0);
  CHECK(epsilon_at(s, 5.0) == doctest::Approx(5.0));
  CHECK(epsilon_at(s, 10.0) == doctest::Approx(10.0));
  CHECK_THROWS_AS(epsilon_at(s, 10.5), DomainError);
  CHECK_THROWS_AS(epsilon_at(s, -11.0), DomainError);

  // odd in t
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> ut(0.0, 10.0);
  for (int i = 0; i < 50; ++i) {
    const double t = ut(rng);
    CHECK(epsilon_at(s, -t) == doctest::Approx(-epsilon_at(s, t)).epsilon(1e-15));
  }
}

TEST_CASE("frame at the symmetric point and asymptote") {
  const SweepSchedule s(10.0, 1.0, 20.0);
  const auto f0 = frame_at(s, 0.0);
  CHECK(f0.u * f0.u == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(f0.v * f0.v == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(f0.gap == doctest::Approx(1.0));

  const auto finf = frame_from_epsilon(1.0, 1.0, 1e9);
  CHECK(finf.u == doctest::Approx(0.0).epsilon(1e-8));
  CHECK(finf.v == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("frame closed form at delta=1, eps=-1") {
  // Independent evaluation of u^2 = [1 - eps/sqrt(eps^2+delta^2)]/2 at
  // eps = -1, delta = 1: u^2 = (1 + 1/sqrt(2))/2 = (2 + sqrt(2))/4.
  const long double expected_u2 = (2.0L + std::sqrt(2.0L)) / 4.0L;
  const auto f = frame_from_epsilon(1.0, 1.0, -1.0);
  CHECK(f.gap == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(f.u * f.u == doctest::Approx(static_cast<double>(expected_u2)).epsilon(1e-14));
}

TEST_CASE("u^2 + v^2 = 1 and the u(-eps) = v(eps) symmetry") {
  const SweepSchedule s(10.0, 1.0, 20.0);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> ut(-10.0, 10.0);
  for (int i = 0; i < 100; ++i) {
    const double t = ut(rng);
    const auto f = frame_at(s, t);
    CHECK(f.u * f.u + f.v * f.v == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(f.u >= 0.0);
    CHECK(f.v >= 0.0);
    const double eps = epsilon_at(s, t);
    const auto g = frame_from_epsilon(s.delta, s.v(), -eps);
    CHECK(g.u == doctest::Approx(f.v).epsilon(1e-14));
    CHECK(g.v == doctest::Approx(f.u).epsilon(1e-14));
  }
}

TEST_CASE("gap >= delta with equality only at t = 0") {
  const SweepSchedule s(10.0, 1.0, 20.0);
  CHECK(frame_at(s, 0.0).gap == doctest::Approx(s.delta));
  for (const double t : {-10.0, -3.0, -0.01, 0.01, 2.0, 10.0})
    CHECK(frame_at(s, t).gap > s.delta);
}

TEST_CASE("kappa substitutions") {
  const SweepSchedule s(10.0, 1.0, 20.0);  // v = 1
  CHECK(kappa_at(s, 0.0) == doctest::Approx(s.v() / (2.0 * s.delta)).epsilon(1e-15));
  CHECK(kappa_from_epsilon(1.0, 1.0, 1.0) == doctest::Approx(0.25).epsilon(1e-15));
  // a large gap suppresses the diabatic excitation
  CHECK(kappa_from_epsilon(1e8, 1.0, 0.0) < 1e-7);
  for (const double t : {-9.0, -1.0, 0.0, 1.0, 9.0}) CHECK(kappa_at(s, t) > 0.0);
  // maximal at the crossing
  CHECK(kappa_at(s, 0.0) > kappa_at(s, 0.5));
  CHECK(kappa_at(s, 0.0) > kappa_at(s, -0.5));
}

TEST_CASE("kappa equals Vdot*U - Udot*V to second order in the step") {
  const SweepSchedule s(10.0, 1.0, 20.0);

  const auto fd_kappa = [&](double t, double h) {
    const auto fp = frame_at(s, t + h);
    const auto fm = frame_at(s, t - h);
    const auto f = frame_at(s, t);
    const double vdot = (fp.v - fm.v) / (2.0 * h);
    const double udot = (fp.u - fm.u) / (2.0 * h);
    return vdot * f.u - udot * f.v;
  };

  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> ut(-9.5, 9.5);
  for (int i = 0; i < 100; ++i) {
    const double t = ut(rng);
    const double kappa = kappa_at(s, t);
    const double err_h = std::abs(fd_kappa(t, 1e-3) - kappa);
    const double err_h2 = std::abs(fd_kappa(t, 5e-4) - kappa);
    CHECK(err_h < 1e-6);
    // halving h cuts the error ~4x; allow slack for the rounding floor
    CHECK(err_h2 <= 0.3 * err_h + 1e-11);
  }
}
