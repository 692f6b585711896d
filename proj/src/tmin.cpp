#include "zenolz/tmin.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "zenolz/exact.hpp"

namespace zenolz {

namespace {

double final_p_at(double T, std::int64_t N, const RelaxationConfig& relax,
                  const SweepSchedule& tpl, const TminOptions& opt) {
  const SweepSchedule s(tpl.epsilon0, tpl.delta, T);
  return final_lab_probability(s, relax, N, opt.rtol, opt.atol);
}

}  // namespace

TminEntry solve_tmin(std::int64_t N, const RelaxationConfig& relax,
                     const SweepSchedule& schedule_template, const TminOptions& opt) {
  if (N < 1) throw DomainError("solve_tmin: requires N >= 1");
  if (!(opt.t_lo > 0.0 && opt.t_hi > opt.t_lo))
    throw DomainError("solve_tmin: requires 0 < t_lo < t_hi");
  relax.validate();

  TminEntry entry;
  entry.N = N;
  entry.required_p =
      opt.required_p_override ? *opt.required_p_override : required_p(N, opt.target_pe);
  const double p_req = entry.required_p;
  const auto eval = [&](double T) { return final_p_at(T, N, relax, schedule_template, opt); };

  double t_pass = 0.0;  // smallest known passing T
  double t_fail = 0.0;  // largest known failing T below t_pass

  const double p_lo = eval(opt.t_lo);
  if (p_lo >= p_req) {
    // Threshold degeneracy: the whole range succeeds.
    entry.T_min = opt.t_lo;
    entry.p_final = p_lo;
    entry.certificate_lo = opt.t_lo;
    entry.p_at_certificate_lo = p_lo;
  } else {
    // Log-spaced pre-scan: locate the first crossing and detect
    // non-monotonicity (possible near the final-state-stimulation
    // crossover), which switches the search to an exhaustive grid scan.
    const int K = std::max(opt.prescan_points, 4);
    const double log_lo = std::log(opt.t_lo), log_hi = std::log(opt.t_hi);
    std::vector<double> ts(static_cast<std::size_t>(K)), ps(static_cast<std::size_t>(K));
    bool monotone = true;
    int first_pass = -1;
    double best = p_lo;
    for (int i = 0; i < K; ++i) {
      ts[i] = std::exp(log_lo + (log_hi - log_lo) * static_cast<double>(i) /
                                    static_cast<double>(K - 1));
      ps[i] = i == 0 ? p_lo : eval(ts[i]);
      best = std::max(best, ps[i]);
      if (i > 0 && ps[i] < ps[i - 1] - 1e-12) monotone = false;
      if (first_pass < 0 && ps[i] >= p_req) first_pass = i;
    }

    if (monotone && first_pass < 0)
      throw InfeasibleError("solve_tmin: required p " + std::to_string(p_req) +
                                " not reached within t_hi = " + std::to_string(opt.t_hi) +
                                " (best p_a = " + std::to_string(best) + ")",
                            best);

    if (monotone) {
      t_fail = ts[first_pass - 1];
      t_pass = ts[first_pass];
    } else {
      // Non-monotone pre-scan: exhaustive scan at 1e-3 resolution in log10 T,
      // up to the first pass the pre-scan observed (or t_hi if it saw none),
      // so the earliest crossing is not skipped by bisection.
      entry.used_grid_scan = true;
      const double scan_hi = first_pass >= 0 ? ts[first_pass] : opt.t_hi;
      const double step = std::pow(10.0, 1e-3);
      double prev_t = opt.t_lo;  // eval(t_lo) < p_req already known
      bool found = false;
      for (double T = opt.t_lo * step; !found && prev_t < scan_hi; T *= step) {
        T = std::min(T, scan_hi);
        const double p = eval(T);
        best = std::max(best, p);
        if (p >= p_req) {
          t_fail = prev_t;
          t_pass = T;
          found = true;
        } else {
          prev_t = T;
        }
      }
      if (!found)
        throw InfeasibleError("solve_tmin: required p " + std::to_string(p_req) +
                                  " not reached within t_hi = " + std::to_string(opt.t_hi) +
                                  " (best p_a = " + std::to_string(best) + ")",
                              best);
    }

    if (t_fail > 0.0) {
      // Geometric bisection to relative precision.
      while ((t_pass - t_fail) / t_pass > opt.rel_precision) {
        const double mid = std::sqrt(t_pass * t_fail);
        if (eval(mid) >= p_req)
          t_pass = mid;
        else
          t_fail = mid;
      }
    }
    entry.T_min = t_pass;
    entry.p_final = eval(t_pass);
    entry.certificate_lo = t_pass * (1.0 - 2.0 * opt.rel_precision);
    entry.p_at_certificate_lo = eval(entry.certificate_lo);
  }

  if (opt.cross_validate_exact && N <= 20) {
    const SweepSchedule s(schedule_template.epsilon0, schedule_template.delta, entry.T_min);
    EvolveOptions eopt;
    eopt.rtol = opt.rtol;
    eopt.atol = opt.atol;
    eopt.samples = 2;
    const auto traj = evolve(DickeDensityMatrix::ground(N), relax, s, eopt);
    entry.exact_p_final = traj.samples.back().p_a;
  }
  return entry;
}

ExponentFit fit_exponent(std::span<const TminEntry> entries) {
  if (entries.size() < 4)
    throw DomainError("fit_exponent: needs at least 4 entries, got " +
                      std::to_string(entries.size()));
  std::vector<TminEntry> sorted(entries.begin(), entries.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const TminEntry& a, const TminEntry& b) { return a.N < b.N; });
  const double n_min = static_cast<double>(sorted.front().N);
  const double n_max = static_cast<double>(sorted.back().N);
  if (n_max / n_min < 100.0)
    throw DomainError("fit_exponent: N values must span at least two decades");

  // Large-N asymptote: fit only the top half of the entries by N.
  const std::size_t begin = sorted.size() / 2;
  const std::size_t count = sorted.size() - begin;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = begin; i < sorted.size(); ++i) {
    const double x = std::log(static_cast<double>(sorted[i].N));
    const double y = std::log(sorted[i].T_min);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double nd = static_cast<double>(count);
  const double denom = nd * sxx - sx * sx;
  if (denom == 0.0) throw DomainError("fit_exponent: degenerate N window");
  const double slope = (nd * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / nd;

  double ss = 0.0;
  for (std::size_t i = begin; i < sorted.size(); ++i) {
    const double x = std::log(static_cast<double>(sorted[i].N));
    const double r = std::log(sorted[i].T_min) - (slope * x + intercept);
    ss += r * r;
  }
  return ExponentFit{slope, std::sqrt(ss / nd), begin};
}

}  // namespace zenolz
