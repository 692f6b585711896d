// exact.hpp — dense Lindblad master-equation solver on the permutation
// symmetric (Dicke) subspace of N two-mode bosons. Serves as the brute-force
// oracle for the mean-field module at small N.
//
// Everything lives in the rotated (instantaneous diagonal) frame, where the
// dissipators are time-independent. The coherent generator there is
//   H(t) = gap(t) Jz + 2 kappa(t) Jy,
// the unique choice whose Heisenberg equations reproduce the coherent parts
// of the mean-field equations under the shared sign convention (see
// meanfield.hpp). The master equation integrated is
//   drho/dt = -i[H, rho] + gamma_x (J- rho J+ - {J+J-, rho}/2)
//                        + (gamma_z/2) (Jz rho Jz - {Jz^2, rho}/2),
// whose dephasing strength is fixed so that a single-boson coherence decays
// at gamma_z/4, matching the mean-field equations exactly at N = 1.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "zenolz/meanfield.hpp"
#include "zenolz/ode.hpp"
#include "zenolz/schedule.hpp"

namespace zenolz {

// Dense-matrix cap; the oracle targets desk-scale validation.
inline constexpr std::int64_t kDickeCapacity = 64;

// (N+1)-dimensional collective operators in the basis |j=N/2, m>, m ascending.
struct CollectiveOperators {
  std::int64_t N;
  Eigen::MatrixXcd jz, jplus, jminus, jy;
};

CollectiveOperators build_collective_operators(std::int64_t N);

struct RotatedFrameHamiltonian {
  double gap;
  double kappa;
  Eigen::MatrixXcd matrix(std::int64_t N) const;  // gap*Jz + 2*kappa*Jy
};

struct DickeDensityMatrix {
  std::int64_t N;
  Eigen::MatrixXcd rho;

  static DickeDensityMatrix ground(std::int64_t N);  // |m=-N/2><m=-N/2|
  void validate(double trace_tol = 1e-9, double herm_tol = 1e-12,
                double eig_floor = -1e-8) const;
};

struct Expectations {
  double jz;
  std::complex<double> jplus;
};

// tr(rho Jz) and tr(rho J+); the Jz trace must be real to 1e-10.
Expectations expectations(const Eigen::MatrixXcd& rho);

double purity(const Eigen::MatrixXcd& rho);

struct ExactSampleStats {
  double t;
  double jz;
  std::complex<double> jplus;
  double p_a;
  double purity;
  double trace_error;     // |tr(rho) - 1|
  double herm_error;      // max |rho - rho^dag|
  double min_eigenvalue;  // smallest eigenvalue of the Hermitian part
};

struct ExactTrajectory {
  std::int64_t N;
  std::vector<ExactSampleStats> samples;
  Eigen::MatrixXcd rho_final;
};

struct EvolveOptions {
  double rtol = 1e-8;
  double atol = 1e-10;
  int samples = 2000;
  double trace_tol = 1e-9;  // breach aborts the run
};

// Full-sweep evolution from -T/2 to T/2 on a uniform output grid, with
// conservation metrics recorded at every sample.
ExactTrajectory evolve(const DickeDensityMatrix& rho0, const RelaxationConfig& relax,
                       const SweepSchedule& s, const EvolveOptions& opt = {});

// Low-level driver over an arbitrary grid with explicit generator functions;
// the schedule-based evolve is a thin wrapper. Useful for frozen-frame runs
// (constant gap, kappa = 0) that a linear sweep cannot express.
void evolve_generator(const Eigen::MatrixXcd& rho0, std::int64_t N,
                      const RelaxationConfig& relax,
                      const std::function<double(double)>& gap_fn,
                      const std::function<double(double)>& kappa_fn,
                      std::span<const double> tgrid, const StepControl& ctrl,
                      const std::function<void(std::size_t, double, const Eigen::MatrixXcd&)>& observe);

struct LandauZenerCheck {
  double excitation;  // final excited-mode population, N = 1, closed system
  double asymptote;   // exp(-pi delta^2 / (2 v))
};

// Closed-system single-boson sweep against the standard asymptote.
// Requires epsilon0 >= 10*delta so the sweep covers the crossing region.
LandauZenerCheck landau_zener_check(const SweepSchedule& s, double rtol = 1e-8,
                                    double atol = 1e-10);

}  // namespace zenolz
