// ode.hpp — adaptive embedded Dormand-Prince 5(4) integrator with output at a
// fixed time grid.
//
// The stepper is generic over the state type: anything with element access via
// .data()/.size() (Eigen vectors and matrices qualify) and the usual linear
// arithmetic. Step control follows the standard error-per-step scheme with a
// scaled RMS norm; all reductions run in a fixed order so a given problem and
// tolerance reproduce bit-identical trajectories.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <utility>

#include "zenolz/errors.hpp"

namespace zenolz {

struct StepControl {
  double rtol = 1e-8;
  double atol = 1e-10;
  double h_init = 0.0;  // 0 = span/1000
  double safety = 0.9;
  double max_shrink = 0.2;
  double max_grow = 5.0;
  long max_steps = 200'000'000;
};

namespace detail {

// RMS of |err_i| / (atol + rtol*max(|y_i|, |ynew_i|)) over all coefficients.
template <class State>
double scaled_rms_error(const State& err, const State& y, const State& ynew, double atol,
                        double rtol) {
  const auto* e = err.data();
  const auto* a = y.data();
  const auto* b = ynew.data();
  const std::ptrdiff_t n = err.size();
  double acc = 0.0;
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double scale = atol + rtol * std::max(std::abs(a[i]), std::abs(b[i]));
    const double q = std::abs(e[i]) / scale;
    acc += q * q;
  }
  return std::sqrt(acc / static_cast<double>(n));
}

}  // namespace detail

// Integrates dy/dt = rhs(t, y) across tgrid (strictly increasing), landing on
// every grid time exactly and calling observe(index, t, y) there, including
// index 0 at tgrid[0]. rhs has signature void(double t, const State&, State&).
template <class State, class Rhs, class Observer>
void integrate_grid(Rhs&& rhs, State y, std::span<const double> tgrid, const StepControl& ctrl,
                    Observer&& observe) {
  if (tgrid.empty()) return;
  observe(std::size_t{0}, tgrid[0], y);
  if (tgrid.size() == 1) return;

  const double span = tgrid.back() - tgrid.front();
  if (!(span > 0.0)) throw DomainError("integrate_grid: output grid must be strictly increasing");
  const double h_floor = 32.0 * std::numeric_limits<double>::epsilon() * span;

  double t = tgrid.front();
  State k1, k2, k3, k4, k5, k6, k7, ytmp, ynew, yerr;
  rhs(t, y, k1);

  double h = ctrl.h_init > 0.0 ? ctrl.h_init : span / 1000.0;
  bool rejected = false;
  long steps = 0;

  for (std::size_t ig = 1; ig < tgrid.size(); ++ig) {
    const double tg = tgrid[ig];
    while (t < tg) {
      if (++steps > ctrl.max_steps)
        throw IntegrationError("integrate_grid: exceeded max step count", t);
      const bool clamped = t + h >= tg;
      const double hs = clamped ? tg - t : h;

      // Dormand-Prince 5(4) stages (FSAL: k7 becomes next k1 on acceptance).
      ytmp = y + hs * (0.2 * k1);
      rhs(t + 0.2 * hs, ytmp, k2);
      ytmp = y + hs * ((3.0 / 40.0) * k1 + (9.0 / 40.0) * k2);
      rhs(t + 0.3 * hs, ytmp, k3);
      ytmp = y + hs * ((44.0 / 45.0) * k1 + (-56.0 / 15.0) * k2 + (32.0 / 9.0) * k3);
      rhs(t + 0.8 * hs, ytmp, k4);
      ytmp = y + hs * ((19372.0 / 6561.0) * k1 + (-25360.0 / 2187.0) * k2 +
                       (64448.0 / 6561.0) * k3 + (-212.0 / 729.0) * k4);
      rhs(t + (8.0 / 9.0) * hs, ytmp, k5);
      ytmp = y + hs * ((9017.0 / 3168.0) * k1 + (-355.0 / 33.0) * k2 + (46732.0 / 5247.0) * k3 +
                       (49.0 / 176.0) * k4 + (-5103.0 / 18656.0) * k5);
      rhs(t + hs, ytmp, k6);
      ynew = y + hs * ((35.0 / 384.0) * k1 + (500.0 / 1113.0) * k3 + (125.0 / 192.0) * k4 +
                       (-2187.0 / 6784.0) * k5 + (11.0 / 84.0) * k6);
      rhs(t + hs, ynew, k7);
      yerr = hs * ((71.0 / 57600.0) * k1 + (-71.0 / 16695.0) * k3 + (71.0 / 1920.0) * k4 +
                   (-17253.0 / 339200.0) * k5 + (22.0 / 525.0) * k6 + (-1.0 / 40.0) * k7);

      const double errn = detail::scaled_rms_error(yerr, y, ynew, ctrl.atol, ctrl.rtol);
      if (errn <= 1.0) {
        t = clamped ? tg : t + hs;
        std::swap(y, ynew);  // ynew is re-assigned before its next read
        std::swap(k1, k7);
        double grow = ctrl.safety * std::pow(std::max(errn, 1e-16), -0.2);
        if (rejected) grow = std::min(grow, 1.0);
        h = hs * std::clamp(grow, ctrl.max_shrink, ctrl.max_grow);
        rejected = false;
      } else {
        h = hs * std::clamp(ctrl.safety * std::pow(errn, -0.2), ctrl.max_shrink, 1.0);
        rejected = true;
      }
      if (h < h_floor)
        throw IntegrationError("integrate_grid: step size underflow at t = " + std::to_string(t),
                               t);
    }
    observe(ig, t, y);
  }
}

// Convenience for integrating start -> end when only the final state matters.
template <class State, class Rhs>
State integrate_final(Rhs&& rhs, State y0, double t0, double t1, const StepControl& ctrl) {
  const double grid[2] = {t0, t1};
  State out = y0;
  integrate_grid(std::forward<Rhs>(rhs), std::move(y0), std::span<const double>(grid, 2), ctrl,
                 [&](std::size_t, double, const State& y) { out = y; });
  return out;
}

}  // namespace zenolz
