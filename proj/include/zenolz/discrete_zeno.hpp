// discrete_zeno.hpp — survival probability of the N-boson ground state under a
// train of projective measurements in the instantaneous diagonal basis.
//
// Measurements happen at t_k = -T/2 + k*(T/n), k = 1..n. Between consecutive
// measurements the per-boson survival amplitude is the single-particle frame
// overlap c_k = u_{k+1} u_k + v_{k+1} v_k = cos((theta_{k+1} - theta_k)/2);
// projecting all N bosons back onto the moving ground mode succeeds with
// probability c_k^(2N). The total success probability is the product over the
// n-1 transitions, accumulated in log space.

#pragma once

#include <cstdint>

#include "zenolz/schedule.hpp"

namespace zenolz {

struct MeasurementPlan {
  std::int64_t n;  // number of measurement intervals
  std::int64_t N;  // bosons
  SweepSchedule schedule;

  MeasurementPlan(std::int64_t n_, std::int64_t N_, SweepSchedule schedule_)
      : n(n_), N(N_), schedule(schedule_) {
    if (n < 1) throw DomainError("MeasurementPlan: requires n >= 1");
    if (N < 1) throw DomainError("MeasurementPlan: requires N >= 1");
  }

  double dt() const { return schedule.T / static_cast<double>(n); }
  double delta_epsilon() const { return 2.0 * schedule.epsilon0 / static_cast<double>(n); }
  // t_k for k = 1..n
  double measurement_time(std::int64_t k) const {
    return -0.5 * schedule.T + static_cast<double>(k) * dt();
  }
};

// Per-boson survival amplitude between two frames, u_b*u_a + v_b*v_a.
double frame_overlap(const FrameCoefficients& a, const FrameCoefficients& b);

// Probability that all N bosons survive the projection between two frames.
double projection_probability(const FrameCoefficients& a, const FrameCoefficients& b,
                              std::int64_t N);

// Survival probability of the transition t_k -> t_{k+1}; k in [1, n-1].
double step_probability(const MeasurementPlan& plan, std::int64_t k);

// Closed-form bound [1 - eps0^2/(2 delta^2 n^2)]^(N n). `valid` is false when
// the bracket is non-positive and the bound is vacuous.
struct BoundResult {
  double value;
  bool valid;
};

struct DiscreteSummary {
  double log_success_per_boson;  // log survival probability of a single boson
  double success;                // exp(N * log_success_per_boson)
  BoundResult bound;
  double max_delta_r;  // max_k delta_eps / gap(t_k); small-step diagnostic
};

DiscreteSummary evaluate_plan(const MeasurementPlan& plan);

double log_success_per_boson(const MeasurementPlan& plan);
double success_probability(const MeasurementPlan& plan);
BoundResult lower_bound(const MeasurementPlan& plan);
double max_delta_r(const MeasurementPlan& plan);

}  // namespace zenolz
