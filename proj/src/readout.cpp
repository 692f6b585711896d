#include "zenolz/readout.hpp"

#include <boost/math/special_functions/erf.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace zenolz {

namespace {

double vote_z_score(double p, std::int64_t N) {
  return (p - 0.5) * std::sqrt(static_cast<double>(N)) / std::sqrt(2.0 * p * (1.0 - p));
}

}  // namespace

double failure_probability(double p, std::int64_t N) {
  if (N < 1) throw DomainError("failure_probability: requires N >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("failure_probability: requires 0 <= p <= 1");
  if (p == 0.0) return 1.0;
  if (p == 1.0) return 0.0;
  return 0.5 * std::erfc(vote_z_score(p, N));
}

double failure_probability(const ReadoutModel& m) { return failure_probability(m.p, m.N); }

double required_p(std::int64_t N, double target_pe) {
  if (N < 1) throw DomainError("required_p: requires N >= 1");
  if (!(target_pe > 0.0 && target_pe <= 0.5))
    throw DomainError("required_p: requires 0 < target_pe <= 1/2, got " +
                      std::to_string(target_pe));
  if (target_pe == 0.5) return 0.5;

  // Root of F(p) = (p - 1/2) sqrt(N) - c sqrt(2 p (1-p)) on (1/2, 1), with
  // c = erfc_inv(2 target_pe) > 0. F is strictly increasing there, so Newton
  // with a bisection safeguard finds the unique root.
  const double c = boost::math::erfc_inv(2.0 * target_pe);
  const double sqn = std::sqrt(static_cast<double>(N));
  const auto f = [&](double p) { return (p - 0.5) * sqn - c * std::sqrt(2.0 * p * (1.0 - p)); };

  double lo = 0.5;
  double hi = 1.0 - 1e-16;
  if (f(hi) < 0.0)
    throw InfeasibleError("required_p: no p in (1/2, 1) reaches the target", f(hi));

  double p = std::clamp(0.5 + c * std::sqrt(0.5) / sqn, 0.5 + 1e-12, hi);
  for (int it = 0; it < 200; ++it) {
    const double fp = f(p);
    if (fp < 0.0)
      lo = p;
    else
      hi = p;
    const double q = std::sqrt(2.0 * p * (1.0 - p));
    const double dfdp = sqn - c * (1.0 - 2.0 * p) / q;
    double next = p - fp / dfdp;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const bool converged = std::abs(next - p) < 1e-15 * p;
    p = next;
    if (converged) break;
  }

  // Land on the <= side of the actual failure_probability, so the returned p
  // satisfies the target even when erfc and erfc_inv disagree by an ulp.
  for (int it = 0; it < 1000 && failure_probability(p, N) > target_pe; ++it)
    p = std::nextafter(p, 1.0);
  return p;
}

}  // namespace zenolz
