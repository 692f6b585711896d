// tmin.hpp — minimum sweep duration reaching the readout target, per N, and
// the log-log speedup exponent across N.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "zenolz/meanfield.hpp"
#include "zenolz/readout.hpp"
#include "zenolz/schedule.hpp"

namespace zenolz {

struct TminOptions {
  double target_pe = 1e-12;
  double t_lo = 0.05;    // search bracket in T
  double t_hi = 4000.0;
  double rel_precision = 1e-3;
  int prescan_points = 16;
  double rtol = 1e-8;
  double atol = 1e-10;
  // Test hook: bypass required_p and demand this p directly.
  std::optional<double> required_p_override;
  // At N <= 20, also evaluate the exact oracle at T_min and record it.
  bool cross_validate_exact = false;
};

struct TminEntry {
  std::int64_t N = 0;
  double T_min = 0.0;
  double p_final = 0.0;     // final p_a at T_min
  double required_p = 0.0;
  // Bracketing certificate: p_a(T_min) >= required_p and, except in the
  // degenerate T_min == t_lo case, p_a(certificate_lo) < required_p.
  double certificate_lo = 0.0;       // T_min * (1 - 2*rel_precision)
  double p_at_certificate_lo = 0.0;
  bool used_grid_scan = false;       // pre-scan was non-monotone
  std::optional<double> exact_p_final;  // cross-validation value, N <= 20 only
};

// Smallest T in [t_lo, t_hi] whose final p_a reaches required_p(N, target_pe),
// found by a monotonicity pre-scan, bracketing, and geometric bisection to
// rel_precision; falls back to a full grid scan at 1e-3 resolution in log T
// when the pre-scan is not monotone. The schedule argument fixes
// (epsilon0, delta); its T is ignored.
TminEntry solve_tmin(std::int64_t N, const RelaxationConfig& relax,
                     const SweepSchedule& schedule_template, const TminOptions& opt = {});

struct ExponentFit {
  double slope;
  double residual;            // RMS residual of the fit window
  std::size_t window_begin;   // first entry (by ascending N) used in the fit
};

// OLS slope of log T_min vs log N over the largest-N half of the entries.
// Requires >= 4 entries spanning at least two decades in N.
ExponentFit fit_exponent(std::span<const TminEntry> entries);

struct TminResult {
  std::vector<TminEntry> entries;
  ExponentFit fit;
};

}  // namespace zenolz
