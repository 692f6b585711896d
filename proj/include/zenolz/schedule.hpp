// schedule.hpp — linear Landau-Zener sweep and its instantaneous diagonal frame.
//
// Conventions used throughout the project:
//   * energies and rates are expressed in units of the minimum gap delta
//     (delta = 1 is the default everywhere),
//   * the sweep is the linear ramp eps(t) = v t with v = 2*eps0/T on
//     t in [-T/2, T/2],
//   * the frame amplitudes U, V are taken real and non-negative, which fixes
//     the gauge for all overlaps and makes kappa = Vdot*U - Udot*V positive
//     for v > 0.

#pragma once

#include <cmath>
#include <string>

#include "zenolz/errors.hpp"

namespace zenolz {

struct SweepSchedule {
  double epsilon0;  // detuning reached at |t| = T/2
  double delta;     // minimum gap, must stay finite or kappa diverges
  double T;         // total sweep duration

  SweepSchedule(double epsilon0_, double delta_, double T_)
      : epsilon0(epsilon0_), delta(delta_), T(T_) {
    if (!(delta > 0.0))
      throw DomainError("SweepSchedule: requires a non-zero minimum gap delta > 0, got delta = " +
                        std::to_string(delta));
    if (!(epsilon0 > delta))
      throw DomainError("SweepSchedule: requires epsilon0 > delta, got epsilon0 = " +
                        std::to_string(epsilon0) + ", delta = " + std::to_string(delta));
    if (!(T > 0.0)) throw DomainError("SweepSchedule: requires T > 0, got T = " + std::to_string(T));
  }

  double v() const { return 2.0 * epsilon0 / T; }  // sweep rate, eps(t) = v t
  double t_start() const { return -0.5 * T; }
  double t_end() const { return 0.5 * T; }

  // The analysis assumes eps0 >> delta; below this ratio results are still
  // computed but callers should surface a warning.
  bool weak_separation() const { return epsilon0 < 5.0 * delta; }
};

// Instantaneous diagonal-frame data at one point of the sweep.
// u^2 = [1 - eps/gap]/2, v^2 = [1 + eps/gap]/2, gap = sqrt(eps^2 + delta^2).
struct FrameCoefficients {
  double u;      // ground-mode amplitude on the bare excited level
  double v;      // ground-mode amplitude on the bare ground level
  double gap;    // instantaneous gap sqrt(eps^2 + delta^2)
  double kappa;  // diabatic coupling v*delta / (2*gap^2)
};

// Mixing angle theta = atan2(delta, eps) in (0, pi); u = sin(theta/2),
// v = cos(theta/2). The half-angle form keeps u^2 + v^2 = 1 to rounding.
inline double mixing_angle(double delta, double epsilon) { return std::atan2(delta, epsilon); }

inline double kappa_from_epsilon(double delta, double sweep_rate, double epsilon) {
  return sweep_rate * delta / (2.0 * (epsilon * epsilon + delta * delta));
}

inline FrameCoefficients frame_from_epsilon(double delta, double sweep_rate, double epsilon) {
  const double half = 0.5 * mixing_angle(delta, epsilon);
  return FrameCoefficients{std::sin(half), std::cos(half), std::hypot(epsilon, delta),
                           kappa_from_epsilon(delta, sweep_rate, epsilon)};
}

inline double epsilon_at(const SweepSchedule& s, double t) {
  const double half = 0.5 * s.T;
  // allow endpoint round-off from integrators stepping exactly to +-T/2
  if (std::abs(t) > half * (1.0 + 1e-12))
    throw DomainError("epsilon_at: t = " + std::to_string(t) + " outside [-T/2, T/2] with T = " +
                      std::to_string(s.T));
  return s.v() * t;
}

inline FrameCoefficients frame_at(const SweepSchedule& s, double t) {
  return frame_from_epsilon(s.delta, s.v(), epsilon_at(s, t));
}

inline double kappa_at(const SweepSchedule& s, double t) {
  return kappa_from_epsilon(s.delta, s.v(), epsilon_at(s, t));
}

}  // namespace zenolz
