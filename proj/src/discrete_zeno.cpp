#include "zenolz/discrete_zeno.hpp"

#include <cmath>
#include <string>

namespace zenolz {

namespace {

// log of the per-boson survival amplitude cos(dtheta/2), written through
// log1p(-2 sin^2(dtheta/4)) so near-unity overlaps keep full precision.
double log_overlap_from_angles(double theta_a, double theta_b) {
  const double s = std::sin(0.25 * (theta_b - theta_a));
  return std::log1p(-2.0 * s * s);
}

double theta_at(const MeasurementPlan& plan, std::int64_t k) {
  const double eps = epsilon_at(plan.schedule, plan.measurement_time(k));
  return mixing_angle(plan.schedule.delta, eps);
}

}  // namespace

double frame_overlap(const FrameCoefficients& a, const FrameCoefficients& b) {
  return b.u * a.u + b.v * a.v;
}

double projection_probability(const FrameCoefficients& a, const FrameCoefficients& b,
                              std::int64_t N) {
  const double c = frame_overlap(a, b);
  return std::exp(2.0 * static_cast<double>(N) * std::log(c));
}

double step_probability(const MeasurementPlan& plan, std::int64_t k) {
  if (k < 1 || k > plan.n - 1)
    throw DomainError("step_probability: k = " + std::to_string(k) + " outside [1, n-1], n = " +
                      std::to_string(plan.n));
  const double log_c = log_overlap_from_angles(theta_at(plan, k), theta_at(plan, k + 1));
  return std::exp(2.0 * static_cast<double>(plan.N) * log_c);
}

DiscreteSummary evaluate_plan(const MeasurementPlan& plan) {
  const double delta = plan.schedule.delta;
  const double deps = plan.delta_epsilon();

  double log_amp = 0.0;  // sum_k log c_k, fixed order k = 1..n-1
  double max_dr = 0.0;
  double theta_prev = theta_at(plan, 1);
  for (std::int64_t k = 1; k < plan.n; ++k) {
    const double eps_k = epsilon_at(plan.schedule, plan.measurement_time(k));
    const double theta_next = mixing_angle(delta, epsilon_at(plan.schedule, plan.measurement_time(k + 1)));
    log_amp += log_overlap_from_angles(theta_prev, theta_next);
    max_dr = std::max(max_dr, deps / std::hypot(eps_k, delta));
    theta_prev = theta_next;
  }

  DiscreteSummary out;
  out.log_success_per_boson = 2.0 * log_amp;
  out.success = std::exp(static_cast<double>(plan.N) * out.log_success_per_boson);
  out.max_delta_r = max_dr;
  out.bound = lower_bound(plan);
  return out;
}

BoundResult lower_bound(const MeasurementPlan& plan) {
  const double r = plan.schedule.epsilon0 / plan.schedule.delta;
  const double nd = static_cast<double>(plan.n);
  const double bracket_minus_one = -r * r / (2.0 * nd * nd);
  if (1.0 + bracket_minus_one <= 0.0) return BoundResult{0.0, false};
  const double log_bound = static_cast<double>(plan.N) * nd * std::log1p(bracket_minus_one);
  return BoundResult{std::exp(log_bound), true};
}

double log_success_per_boson(const MeasurementPlan& plan) {
  return evaluate_plan(plan).log_success_per_boson;
}

double success_probability(const MeasurementPlan& plan) { return evaluate_plan(plan).success; }

double max_delta_r(const MeasurementPlan& plan) { return evaluate_plan(plan).max_delta_r; }

}  // namespace zenolz
