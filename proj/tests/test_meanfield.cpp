#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "zenolz/exact.hpp"
#include "zenolz/meanfield.hpp"

using namespace zenolz;
using cd = std::complex<double>;

namespace {
const SweepSchedule kS(10.0, 1.0, 20.0);  // v = 1
}

TEST_CASE("relaxation config validation") {
  CHECK_THROWS_AS((RelaxationConfig{-1.0, 0.0}.validate()), DomainError);
  CHECK_THROWS_AS((RelaxationConfig{0.0, -0.5}.validate()), DomainError);
  CHECK(RelaxationConfig{}.closed());
  CHECK_FALSE(RelaxationConfig{0.1, 0.0}.closed());
}

TEST_CASE("sigma_x dissipative part vanishes at the ground state") {
  // (jz = -N/2, jplus = 0) is the dissipative fixed point: the gamma_x terms
  // of the derivative are zero for every N and gamma_x.
  for (const std::int64_t N : {1, 2, 10, 1000}) {
    const MeanFieldState ground{-0.5 * static_cast<double>(N), 0.0};
    for (const double gx : {0.3, 2.0, 50.0}) {
      const auto with = rhs_sigma_x(ground, 1.3, N, gx, kS);
      const auto without = rhs_sigma_x(ground, 1.3, N, 0.0, kS);
      CHECK(with.djz == doctest::Approx(without.djz).epsilon(1e-14));
      CHECK(std::abs(with.djplus - without.djplus) < 1e-14 * N);
    }
  }
}

TEST_CASE("sigma_x substitution at N = 2") {
  // d<Jz>/dt = -gx(N/2 + jz) - gx(N-1)(N/4 - jz^2/N) at jz = 0, jplus = 0:
  // = -(1)(1 + 0) - (1)(1)(1/2 - 0) = -1.5; the kappa term is zero.
  const auto d = rhs_sigma_x(MeanFieldState{0.0, 0.0}, 0.0, 2, 1.0, kS);
  CHECK(d.djz == doctest::Approx(-1.5).epsilon(1e-14));
}

TEST_CASE("sigma_x at N = 1 reduces to single-spin damping") {
  const MeanFieldState st{0.21, cd(-0.13, 0.08)};
  const double t = -2.7, gx = 1.7;
  const auto d = rhs_sigma_x(st, t, 1, gx, kS);
  const auto f = frame_at(kS, t);
  // independently coded N = 1 equations
  const double djz = -f.kappa * 2.0 * st.jplus.real() - gx * (0.5 + st.jz);
  const cd djp = cd(0.0, f.gap) * st.jplus + 2.0 * f.kappa * st.jz - 0.5 * gx * st.jplus;
  CHECK(d.djz == doctest::Approx(djz).epsilon(1e-13));
  CHECK(std::abs(d.djplus - djp) < 1e-13);
}

TEST_CASE("plus and minus equations are exact conjugates") {
  // Code the printed +/- pair with <J+> and <J-> as independent variables;
  // with <J-> = conj(<J+>) the derivatives must be conjugates, which is what
  // lets the state carry a single complex number.
  const MeanFieldState st{-1.1, cd(0.4, -0.33)};
  const double t = 3.1, gx = 0.8, gz = 2.2;
  const std::int64_t N = 6;
  const auto f = frame_at(kS, t);
  const cd jp = st.jplus, jm = std::conj(st.jplus);
  const double nd = static_cast<double>(N);

  const cd djp = cd(0.0, f.gap) * jp + 2.0 * f.kappa * st.jz - 0.5 * gx * jp -
                 gx * (nd - 1.0) * jp * (0.5 + st.jz / nd) - 0.25 * gz * jp;
  const cd djm = cd(0.0, -f.gap) * jm + 2.0 * f.kappa * st.jz - 0.5 * gx * jm -
                 gx * (nd - 1.0) * jm * (0.5 + st.jz / nd) - 0.25 * gz * jm;
  CHECK(std::abs(djm - std::conj(djp)) < 1e-15);

  const auto d = rhs_combined(st, t, N, RelaxationConfig{gx, gz}, kS);
  CHECK(std::abs(d.djplus - djp) < 1e-13);
}

TEST_CASE("sigma_z: no Jz drain, phase rotation, linearity") {
  const auto d0 = rhs_sigma_z(MeanFieldState{-0.37, 0.0}, 1.0, 5.0, kS);
  CHECK(d0.djz == 0.0);  // jplus = 0 kills the only term

  // d|w|^2/dt = -(gz/2)|w|^2: pure dephasing never feeds population
  const MeanFieldState st{0.0, cd(0.3, -0.2)};
  for (const double gz : {0.0, 4.0}) {
    const auto d = rhs_sigma_z(st, 0.7, gz, kS);
    const double re = (std::conj(st.jplus) * d.djplus).real();
    CHECK(re == doctest::Approx(-0.25 * gz * std::norm(st.jplus)).epsilon(1e-12));
  }

  // linear system: scaling the state scales the derivative
  const auto d1 = rhs_sigma_z(MeanFieldState{0.2, cd(-0.1, 0.05)}, -1.0, 3.0, kS);
  const auto d2 = rhs_sigma_z(MeanFieldState{0.5, cd(-0.25, 0.125)}, -1.0, 3.0, kS);
  CHECK(d2.djz == doctest::Approx(2.5 * d1.djz).epsilon(1e-12));
  CHECK(std::abs(d2.djplus - 2.5 * d1.djplus) < 1e-12);
}

TEST_CASE("lab probability anchors") {
  const std::int64_t N = 8;
  const MeanFieldState ground{-4.0, 0.0};
  CHECK(lab_probability(ground, frame_at(kS, kS.t_end()), N) == doctest::Approx(1.0).epsilon(3e-3));
  CHECK(lab_probability(ground, frame_at(kS, kS.t_start()), N) ==
        doctest::Approx(0.0).scale(1.0).epsilon(3e-3));
  for (const double t : {-7.0, 0.0, 4.2})
    CHECK(lab_probability(MeanFieldState{0.0, 0.0}, frame_at(kS, t), N) ==
          doctest::Approx(0.5).epsilon(1e-14));
  // unphysical state trips the invariant check
  CHECK_THROWS_AS((lab_probability(MeanFieldState{0.0, cd(2.0, 0.0)}, frame_at(kS, 0.0), 2)),
                  InvariantError);
}

TEST_CASE("closed adiabatic sweep ends in the ground state") {
  const SweepSchedule slow(10.0, 1.0, 2000.0);  // v = 0.01
  const double p = final_lab_probability(slow, RelaxationConfig{}, 1);
  CHECK(p > 0.995);
}

TEST_CASE("closed N = 1 sweep conserves the Bloch norm") {
  IntegrateOptions opt;
  opt.samples = 400;
  const auto rec = integrate(kS, RelaxationConfig{}, 1, opt);
  for (const auto& smp : rec.samples) {
    const double norm = std::sqrt(smp.jz * smp.jz + std::norm(smp.jplus));
    CHECK(norm == doctest::Approx(0.5).epsilon(1e-7));
  }
}

TEST_CASE("trajectory record invariants") {
  IntegrateOptions opt;
  opt.samples = 137;
  const auto rec = integrate(kS, RelaxationConfig{0.5, 0.2}, 12, opt);
  REQUIRE(rec.samples.size() == 137);
  CHECK(rec.samples.front().t == doctest::Approx(kS.t_start()));
  CHECK(rec.samples.back().t == doctest::Approx(kS.t_end()));
  for (std::size_t i = 1; i < rec.samples.size(); ++i)
    CHECK(rec.samples[i].t > rec.samples[i - 1].t);
  for (const auto& smp : rec.samples) {
    CHECK(smp.p_a >= 0.0);
    CHECK(smp.p_a <= 1.0);
    // closure states can leave the physical ball by a few percent; anything
    // near the divergence guard would be a bug
    CHECK(std::abs(smp.jz) <= 0.6 * 12);
    CHECK(std::abs(smp.jplus) <= 0.6 * 12);
  }
  CHECK(final_lab_probability(kS, RelaxationConfig{0.5, 0.2}, 12) ==
        doctest::Approx(rec.samples.back().p_a).epsilon(1e-9));
}

TEST_CASE("sigma_z flow is N-invariant in normalized variables") {
  IntegrateOptions opt;
  opt.samples = 200;
  const RelaxationConfig relax{0.0, 3.0};
  const auto r1 = integrate(kS, relax, 1, opt);
  const auto r10 = integrate(kS, relax, 10, opt);
  const auto r100 = integrate(kS, relax, 100, opt);
  for (std::size_t i = 0; i < r1.samples.size(); ++i) {
    const auto& a = r1.samples[i];
    CHECK(std::abs(r10.samples[i].jz / 10.0 - a.jz) < 1e-10);
    CHECK(std::abs(r100.samples[i].jz / 100.0 - a.jz) < 1e-10);
    CHECK(std::abs(r10.samples[i].jplus / 10.0 - a.jplus) < 1e-10);
    CHECK(std::abs(r100.samples[i].jplus / 100.0 - a.jplus) < 1e-10);
  }
}

TEST_CASE("mean-field matches the exact oracle at N = 1 (both channels)") {
  // The Hartree closure is exact at N = 1, so this is equality up to
  // integrator tolerance.
  IntegrateOptions mopt;
  mopt.samples = 500;
  EvolveOptions eopt;
  eopt.samples = 500;
  const RelaxationConfig relax{1.0, 0.5};
  const auto mf = integrate(kS, relax, 1, mopt);
  const auto ex = evolve(DickeDensityMatrix::ground(1), relax, kS, eopt);
  double worst = 0.0;
  for (std::size_t i = 0; i < mf.samples.size(); ++i) {
    worst = std::max(worst, std::abs(mf.samples[i].jz - ex.samples[i].jz));
    worst = std::max(worst, std::abs(mf.samples[i].jplus - ex.samples[i].jplus));
  }
  CHECK(worst < 1e-6);
}

namespace {
// 5x faster than the sweep that keeps closed-system leakage at 1%; the
// regime where relaxation visibly rescues the transition
SweepSchedule too_fast_sweep() {
  const double v_ad = M_PI / (2.0 * std::log(100.0));
  return SweepSchedule(10.0, 1.0, (2.0 * 10.0 / v_ad) / 5.0);
}
}  // namespace

TEST_CASE("final p_a is non-decreasing in gamma_x (stabilization trend)") {
  const SweepSchedule fast = too_fast_sweep();
  for (const std::int64_t N : {10, 100}) {
    double prev = 0.0;
    for (const double gx : {1e-3, 1e-2, 1e-1, 1.0, 10.0, 100.0}) {
      const double p = final_lab_probability(fast, RelaxationConfig{gx, 0.0}, N);
      CHECK(p >= prev - 1e-9);
      prev = p;
    }
  }
}

TEST_CASE("final p_a is non-decreasing in N at small gamma_x (enhancement trend)") {
  const SweepSchedule fast = too_fast_sweep();
  double prev = 0.0;
  for (const std::int64_t N : {1, 10, 100, 1000}) {
    const double p = final_lab_probability(fast, RelaxationConfig{0.01, 0.0}, N);
    CHECK(p >= prev - 1e-9);
    prev = p;
  }
}
