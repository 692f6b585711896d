// readout.hpp — majority-vote readout statistics in the Gaussian limit.
//
// Each of the N bosons is measured in the lab basis; the algorithm outputs a
// when more than half land in a. With per-boson probability p the outcome
// fraction is Gaussian with mean p and standard deviation sqrt(p(1-p)/N)
// (fraction scale throughout: this is the normalization under which more
// bosons sharpen the vote), so
//   P_e = erfc( (p - 1/2) sqrt(N) / sqrt(2 p (1-p)) ) / 2.
// erfc rather than 1-erf keeps the deep tail (P_e ~ 1e-12) exact.

#pragma once

#include <cstdint>

#include "zenolz/errors.hpp"

namespace zenolz {

struct ReadoutModel {
  std::int64_t N;
  double p;
  double target_pe = 1e-12;

  ReadoutModel(std::int64_t N_, double p_, double target_pe_ = 1e-12)
      : N(N_), p(p_), target_pe(target_pe_) {
    if (N < 1) throw DomainError("ReadoutModel: requires N >= 1");
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("ReadoutModel: requires 0 <= p <= 1");
    if (!(target_pe > 0.0 && target_pe < 1.0))
      throw DomainError("ReadoutModel: requires 0 < target_pe < 1");
  }
};

// p in {0, 1} returns the exact limits 1 and 0 without dividing by zero.
double failure_probability(double p, std::int64_t N);
double failure_probability(const ReadoutModel& m);

// Smallest p with failure_probability(p, N) <= target_pe, to 1e-12 in p.
// Domain: 0 < target_pe <= 1/2 (the boundary returns exactly 1/2).
double required_p(std::int64_t N, double target_pe);

}  // namespace zenolz
