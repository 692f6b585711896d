#include "zenolz/meanfield.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <string>

#include "zenolz/ode.hpp"

namespace zenolz {

namespace {

// Normalized variables: z = jz/N, w = jplus/N, packed as (z, Re w, Im w).
// In these variables the sigma_z flow carries no N at all, and the sigma_x
// stimulation terms appear as gx*(N-1)*(...) with O(1) state factors.
struct NormalizedRhs {
  const SweepSchedule* s;
  double gx, gz;
  double n_minus_1;

  void operator()(double t, const Eigen::Vector3d& y, Eigen::Vector3d& dy) const {
    const double eps = s->v() * t;  // integrator stays inside [-T/2, T/2]
    const double gap = std::hypot(eps, s->delta);
    const double kappa = kappa_from_epsilon(s->delta, s->v(), eps);

    const double z = y[0], wr = y[1], wi = y[2];
    const double damp = 0.5 * gx + gx * n_minus_1 * (0.5 + z) + 0.25 * gz;
    dy[0] = -2.0 * kappa * wr - gx * (0.5 + z) - gx * n_minus_1 * (0.25 - z * z);
    dy[1] = -gap * wi + 2.0 * kappa * z - damp * wr;
    dy[2] = gap * wr - damp * wi;
  }
};

NormalizedRhs make_rhs(const SweepSchedule& s, const RelaxationConfig& relax, std::int64_t N) {
  relax.validate();
  if (N < 1) throw DomainError("meanfield: requires N >= 1");
  return NormalizedRhs{&s, relax.gamma_x, relax.gamma_z, static_cast<double>(N - 1)};
}

Eigen::Vector3d normalized_initial(std::int64_t N, const std::optional<MeanFieldState>& initial) {
  if (!initial) return Eigen::Vector3d(-0.5, 0.0, 0.0);
  const double n = static_cast<double>(N);
  return Eigen::Vector3d(initial->jz / n, initial->jplus.real() / n, initial->jplus.imag() / n);
}

std::vector<double> uniform_grid(double a, double b, int count) {
  std::vector<double> t(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    t[static_cast<std::size_t>(i)] =
        a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1);
  t.back() = b;
  return t;
}

double lab_probability_normalized(double z, double wr, const FrameCoefficients& f,
                                  double tolerance) {
  const double u2 = f.u * f.u, v2 = f.v * f.v;
  const double p = v2 * (0.5 - z) + u2 * (0.5 + z) + 2.0 * f.u * f.v * wr;
  if (p < -tolerance || p > 1.0 + tolerance)
    throw InvariantError("lab_probability: value " + std::to_string(p) +
                         " outside [0,1] beyond tolerance");
  return std::min(1.0, std::max(0.0, p));
}

// Trajectory readout: clamp the closure's transient excursions, abort only
// on divergence.
double closure_probability(double t, const Eigen::Vector3d& y, const FrameCoefficients& f) {
  const double wmag = std::hypot(y[1], y[2]);
  if (std::abs(y[0]) > kClosureStateBound || wmag > kClosureStateBound)
    throw IntegrationError("meanfield: normalized state diverged (|jz/N| = " +
                               std::to_string(std::abs(y[0])) + ", |jplus/N| = " +
                               std::to_string(wmag) + ") at t = " + std::to_string(t),
                           t);
  const double u2 = f.u * f.u, v2 = f.v * f.v;
  const double p = v2 * (0.5 - y[0]) + u2 * (0.5 + y[0]) + 2.0 * f.u * f.v * y[1];
  return std::min(1.0, std::max(0.0, p));
}

}  // namespace

MeanFieldDeriv rhs_sigma_x(const MeanFieldState& state, double t, std::int64_t N, double gamma_x,
                           const SweepSchedule& s) {
  const auto rhs = make_rhs(s, RelaxationConfig{gamma_x, 0.0}, N);
  const double n = static_cast<double>(N);
  Eigen::Vector3d y(state.jz / n, state.jplus.real() / n, state.jplus.imag() / n), dy;
  rhs(t, y, dy);
  return MeanFieldDeriv{n * dy[0], n * std::complex<double>(dy[1], dy[2])};
}

MeanFieldDeriv rhs_sigma_z(const MeanFieldState& state, double t, double gamma_z,
                           const SweepSchedule& s) {
  const auto rhs = make_rhs(s, RelaxationConfig{0.0, gamma_z}, 1);
  Eigen::Vector3d y(state.jz, state.jplus.real(), state.jplus.imag()), dy;
  rhs(t, y, dy);
  return MeanFieldDeriv{dy[0], std::complex<double>(dy[1], dy[2])};
}

MeanFieldDeriv rhs_combined(const MeanFieldState& state, double t, std::int64_t N,
                            const RelaxationConfig& relax, const SweepSchedule& s) {
  const auto rhs = make_rhs(s, relax, N);
  const double n = static_cast<double>(N);
  Eigen::Vector3d y(state.jz / n, state.jplus.real() / n, state.jplus.imag() / n), dy;
  rhs(t, y, dy);
  return MeanFieldDeriv{n * dy[0], n * std::complex<double>(dy[1], dy[2])};
}

double lab_probability(const MeanFieldState& state, const FrameCoefficients& frame,
                       std::int64_t N, double tolerance) {
  if (N < 1) throw DomainError("lab_probability: requires N >= 1");
  const double n = static_cast<double>(N);
  return lab_probability_normalized(state.jz / n, state.jplus.real() / n, frame, tolerance);
}

TrajectoryRecord integrate(const SweepSchedule& s, const RelaxationConfig& relax, std::int64_t N,
                           const IntegrateOptions& opt) {
  if (opt.samples < 2) throw DomainError("meanfield::integrate: requires samples >= 2");
  const auto rhs = make_rhs(s, relax, N);
  const auto grid = uniform_grid(s.t_start(), s.t_end(), opt.samples);

  TrajectoryRecord rec;
  rec.N = N;
  rec.relax = relax;
  rec.samples.reserve(grid.size());

  StepControl ctrl;
  ctrl.rtol = opt.rtol;
  ctrl.atol = opt.atol;
  const double n = static_cast<double>(N);
  integrate_grid(rhs, normalized_initial(N, opt.initial), std::span<const double>(grid), ctrl,
                 [&](std::size_t, double t, const Eigen::Vector3d& y) {
                   const auto f = frame_at(s, t);
                   rec.samples.push_back(TrajectorySample{
                       t, n * y[0], n * std::complex<double>(y[1], y[2]),
                       closure_probability(t, y, f)});
                 });
  return rec;
}

double final_lab_probability(const SweepSchedule& s, const RelaxationConfig& relax,
                             std::int64_t N, double rtol, double atol) {
  const auto rhs = make_rhs(s, relax, N);
  StepControl ctrl;
  ctrl.rtol = rtol;
  ctrl.atol = atol;
  const Eigen::Vector3d yT =
      integrate_final(rhs, normalized_initial(N, std::nullopt), s.t_start(), s.t_end(), ctrl);
  return closure_probability(s.t_end(), yT, frame_at(s, s.t_end()));
}

}  // namespace zenolz
