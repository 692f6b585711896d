// meanfield.hpp — Hartree-closed mean-field dynamics of the collective spin in
// the rotated (instantaneous diagonal) frame.
//
// Sign convention, used consistently by this module and the exact solver:
// Jz = (n_excited - n_ground)/2, J- transfers one boson from the excited to
// the ground instantaneous mode, and the fully relaxed ground state has
// <Jz> = -N/2. The sigma_x channel (rate gamma_x) is the longitudinal
// relaxation J-; its mean-field terms carry the (N-1) bosonic final-state
// stimulation factors. The sigma_z channel (rate gamma_z) is pure dephasing;
// its mean-field equations are linear and contain no N.
//
// <J-> = conj(<J+>) always; the state carries one complex number.

#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "zenolz/schedule.hpp"

namespace zenolz {

struct RelaxationConfig {
  double gamma_x = 0.0;
  double gamma_z = 0.0;

  void validate() const {
    if (gamma_x < 0.0 || gamma_z < 0.0)
      throw DomainError("RelaxationConfig: relaxation rates must be non-negative");
  }
  bool closed() const { return gamma_x == 0.0 && gamma_z == 0.0; }
};

struct MeanFieldState {
  double jz;                   // <Jz>, in [-N/2, N/2]
  std::complex<double> jplus;  // <J+>; |<J+>| <= N/2
};

struct MeanFieldDeriv {
  double djz;
  std::complex<double> djplus;
};

// Eqs. of motion with sigma_x relaxation only (kept exact at N = 1):
//   d<Jz>/dt = -kappa(<J+>+<J->) - gx(N/2 + <Jz>) - gx(N-1)(N/4 - <Jz>^2/N)
//   d<J+>/dt = +i gap <J+> + 2 kappa <Jz> - gx/2 <J+> - gx(N-1)<J+>(1/2 + <Jz>/N)
MeanFieldDeriv rhs_sigma_x(const MeanFieldState& state, double t, std::int64_t N, double gamma_x,
                           const SweepSchedule& s);

// Pure dephasing channel:
//   d<Jz>/dt = -kappa(<J+>+<J->)
//   d<J+>/dt = +i gap <J+> + 2 kappa <Jz> - gz/4 <J+>
MeanFieldDeriv rhs_sigma_z(const MeanFieldState& state, double t, double gamma_z,
                           const SweepSchedule& s);

// Both channels: dissipative terms add, coherent terms counted once.
MeanFieldDeriv rhs_combined(const MeanFieldState& state, double t, std::int64_t N,
                            const RelaxationConfig& relax, const SweepSchedule& s);

// Per-boson probability of occupying the bare (lab-frame) level a:
//   p_a = [v^2(N/2 - jz) + u^2(N/2 + jz) + 2 u v Re<J+>] / N,
// clamped to [0, 1]; values pre-clamp outside [-tolerance, 1+tolerance] are
// an invariant violation. The default suits physical states (the exact
// solver's expectations). Hartree-closed trajectories at N > 1 are only
// approximately states: they can leave the physical region by several
// percent mid-sweep at moderate gamma_x*N, so the trajectory integrator
// clamps p_a without the tolerance check and instead aborts only when the
// normalized state leaves kClosureStateBound (2x the physical radius),
// which signals divergence rather than closure error. The exact oracle
// bounds the actual closure error.
inline constexpr double kClosureStateBound = 1.0;
double lab_probability(const MeanFieldState& state, const FrameCoefficients& frame,
                       std::int64_t N, double tolerance = 1e-6);

struct TrajectorySample {
  double t;
  double jz;
  std::complex<double> jplus;
  double p_a;
};

struct TrajectoryRecord {
  std::int64_t N;
  RelaxationConfig relax;
  std::vector<TrajectorySample> samples;
};

struct IntegrateOptions {
  double rtol = 1e-8;
  double atol = 1e-10;  // on the normalized variables jz/N, jplus/N
  int samples = 2000;
  std::optional<MeanFieldState> initial;  // default: ground state (-N/2, 0)
};

// Integrates from -T/2 to T/2, sampling on a uniform grid. The state is
// propagated in normalized form (jz/N, jplus/N) so tolerances are
// N-independent; samples expose the un-normalized values.
TrajectoryRecord integrate(const SweepSchedule& s, const RelaxationConfig& relax, std::int64_t N,
                           const IntegrateOptions& opt = {});

// Final p_a only; skips the dense output grid.
double final_lab_probability(const SweepSchedule& s, const RelaxationConfig& relax,
                             std::int64_t N, double rtol = 1e-8, double atol = 1e-10);

}  // namespace zenolz
