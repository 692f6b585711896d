#include "zenolz/exact.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace zenolz {

namespace {

void check_capacity(std::int64_t N) {
  if (N < 1) throw DomainError("exact: requires N >= 1");
  if (N > kDickeCapacity)
    throw CapacityError("exact: N = " + std::to_string(N) + " exceeds the dense-matrix cap " +
                        std::to_string(kDickeCapacity));
}

// Ladder amplitudes s_i = sqrt(j(j+1) - m_i(m_i+1)) with m_i = i - N/2,
// so (J+)_{i+1,i} = s_i. Written via (j-m)(j+m+1) to avoid cancellation.
std::vector<double> ladder_amplitudes(std::int64_t N) {
  const double j = 0.5 * static_cast<double>(N);
  std::vector<double> s(static_cast<std::size_t>(N));
  for (std::int64_t i = 0; i < N; ++i) {
    const double m = static_cast<double>(i) - j;
    s[static_cast<std::size_t>(i)] = std::sqrt((j - m) * (j + m + 1.0));
  }
  return s;
}

// Right-hand side of the master equation, evaluated entrywise on the lower
// triangle and mirrored, so rho stays exactly Hermitian through the stepper.
struct DickeRhs {
  std::int64_t dim;
  std::vector<double> m;      // Jz eigenvalues
  std::vector<double> s;      // ladder amplitudes, size dim-1
  std::vector<double> jpjm;   // diag(J+J-): jpjm[i] = s[i-1]^2
  double gx, gz;
  std::function<double(double)> gap_fn;
  std::function<double(double)> kappa_fn;

  void operator()(double t, const Eigen::MatrixXcd& rho, Eigen::MatrixXcd& drho) const {
    const double gap = gap_fn(t);
    const double kappa = kappa_fn(t);
    drho.resize(dim, dim);
    for (std::int64_t jc = 0; jc < dim; ++jc) {
      for (std::int64_t i = jc; i < dim; ++i) {
        std::complex<double> acc =
            std::complex<double>(0.0, -gap * (m[i] - m[jc])) * rho(i, jc);
        if (i + 1 < dim) acc += kappa * s[i] * rho(i + 1, jc);
        if (i >= 1) acc -= kappa * s[i - 1] * rho(i - 1, jc);
        if (jc + 1 < dim) acc += kappa * s[jc] * rho(i, jc + 1);
        if (jc >= 1) acc -= kappa * s[jc - 1] * rho(i, jc - 1);
        if (gx != 0.0) {
          if (i + 1 < dim && jc + 1 < dim) acc += gx * s[i] * s[jc] * rho(i + 1, jc + 1);
          acc -= 0.5 * gx * (jpjm[i] + jpjm[jc]) * rho(i, jc);
        }
        if (gz != 0.0) {
          const double dm = m[i] - m[jc];
          acc -= 0.25 * gz * dm * dm * rho(i, jc);
        }
        if (i == jc) {
          drho(i, jc) = std::complex<double>(acc.real(), 0.0);
        } else {
          drho(i, jc) = acc;
          drho(jc, i) = std::conj(acc);
        }
      }
    }
  }
};

DickeRhs make_rhs(std::int64_t N, const RelaxationConfig& relax,
                  std::function<double(double)> gap_fn, std::function<double(double)> kappa_fn) {
  check_capacity(N);
  relax.validate();
  DickeRhs rhs;
  rhs.dim = N + 1;
  const double j = 0.5 * static_cast<double>(N);
  rhs.m.resize(static_cast<std::size_t>(rhs.dim));
  for (std::int64_t i = 0; i <= N; ++i) rhs.m[static_cast<std::size_t>(i)] = static_cast<double>(i) - j;
  rhs.s = ladder_amplitudes(N);
  rhs.jpjm.assign(static_cast<std::size_t>(rhs.dim), 0.0);
  for (std::int64_t i = 1; i <= N; ++i) {
    const double si = rhs.s[static_cast<std::size_t>(i - 1)];
    rhs.jpjm[static_cast<std::size_t>(i)] = si * si;
  }
  rhs.gx = relax.gamma_x;
  rhs.gz = relax.gamma_z;
  rhs.gap_fn = std::move(gap_fn);
  rhs.kappa_fn = std::move(kappa_fn);
  return rhs;
}

std::vector<double> uniform_grid(double a, double b, int count) {
  std::vector<double> t(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    t[static_cast<std::size_t>(i)] =
        a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1);
  t.back() = b;
  return t;
}

}  // namespace

CollectiveOperators build_collective_operators(std::int64_t N) {
  check_capacity(N);
  const std::int64_t dim = N + 1;
  const double j = 0.5 * static_cast<double>(N);
  const auto s = ladder_amplitudes(N);

  CollectiveOperators ops;
  ops.N = N;
  ops.jz = Eigen::MatrixXcd::Zero(dim, dim);
  ops.jplus = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::int64_t i = 0; i < dim; ++i) ops.jz(i, i) = static_cast<double>(i) - j;
  for (std::int64_t i = 0; i + 1 < dim; ++i) ops.jplus(i + 1, i) = s[static_cast<std::size_t>(i)];
  ops.jminus = ops.jplus.adjoint();
  ops.jy = (ops.jplus - ops.jminus) / std::complex<double>(0.0, 2.0);
  return ops;
}

Eigen::MatrixXcd RotatedFrameHamiltonian::matrix(std::int64_t N) const {
  const auto ops = build_collective_operators(N);
  return gap * ops.jz + 2.0 * kappa * ops.jy;
}

DickeDensityMatrix DickeDensityMatrix::ground(std::int64_t N) {
  check_capacity(N);
  DickeDensityMatrix d;
  d.N = N;
  d.rho = Eigen::MatrixXcd::Zero(N + 1, N + 1);
  d.rho(0, 0) = 1.0;  // index 0 is m = -N/2
  return d;
}

void DickeDensityMatrix::validate(double trace_tol, double herm_tol, double eig_floor) const {
  if (rho.rows() != N + 1 || rho.cols() != N + 1)
    throw InvariantError("DickeDensityMatrix: dimension does not match N + 1");
  const double tr_err = std::abs(rho.trace() - std::complex<double>(1.0));
  if (tr_err > trace_tol)
    throw InvariantError("DickeDensityMatrix: trace deviates from 1 by " + std::to_string(tr_err));
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm > herm_tol)
    throw InvariantError("DickeDensityMatrix: non-Hermitian by " + std::to_string(herm));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < eig_floor)
    throw InvariantError("DickeDensityMatrix: eigenvalue below " + std::to_string(eig_floor));
}

Expectations expectations(const Eigen::MatrixXcd& rho) {
  const std::int64_t dim = rho.rows();
  const double j = 0.5 * static_cast<double>(dim - 1);
  std::complex<double> jz_tr = 0.0;
  for (std::int64_t i = 0; i < dim; ++i) jz_tr += (static_cast<double>(i) - j) * rho(i, i);
  if (std::abs(jz_tr.imag()) > 1e-10)
    throw InvariantError("expectations: tr(rho Jz) has imaginary part " +
                         std::to_string(jz_tr.imag()));
  const auto s = ladder_amplitudes(dim - 1);
  std::complex<double> jp = 0.0;
  for (std::int64_t i = 0; i + 1 < dim; ++i) jp += s[static_cast<std::size_t>(i)] * rho(i, i + 1);
  return Expectations{jz_tr.real(), jp};
}

double purity(const Eigen::MatrixXcd& rho) { return rho.squaredNorm(); }

void evolve_generator(const Eigen::MatrixXcd& rho0, std::int64_t N,
                      const RelaxationConfig& relax,
                      const std::function<double(double)>& gap_fn,
                      const std::function<double(double)>& kappa_fn,
                      std::span<const double> tgrid, const StepControl& ctrl,
                      const std::function<void(std::size_t, double, const Eigen::MatrixXcd&)>& observe) {
  auto rhs = make_rhs(N, relax, gap_fn, kappa_fn);
  if (rho0.rows() != N + 1 || rho0.cols() != N + 1)
    throw DomainError("evolve_generator: rho0 dimension does not match N + 1");
  integrate_grid(rhs, Eigen::MatrixXcd(rho0), tgrid, ctrl, observe);
}

ExactTrajectory evolve(const DickeDensityMatrix& rho0, const RelaxationConfig& relax,
                       const SweepSchedule& s, const EvolveOptions& opt) {
  if (opt.samples < 2) throw DomainError("exact::evolve: requires samples >= 2");
  rho0.validate();
  const auto grid = uniform_grid(s.t_start(), s.t_end(), opt.samples);

  StepControl ctrl;
  ctrl.rtol = opt.rtol;
  ctrl.atol = opt.atol;

  ExactTrajectory out;
  out.N = rho0.N;
  out.samples.reserve(grid.size());

  const double sweep_rate = s.v();
  const double delta = s.delta;
  evolve_generator(
      rho0.rho, rho0.N, relax,
      [sweep_rate, delta](double t) { return std::hypot(sweep_rate * t, delta); },
      [sweep_rate, delta](double t) { return kappa_from_epsilon(delta, sweep_rate, sweep_rate * t); },
      std::span<const double>(grid), ctrl,
      [&](std::size_t, double t, const Eigen::MatrixXcd& rho) {
        ExactSampleStats st;
        st.t = t;
        const auto ex = expectations(rho);
        st.jz = ex.jz;
        st.jplus = ex.jplus;
        st.p_a = lab_probability(MeanFieldState{ex.jz, ex.jplus}, frame_at(s, t), out.N);
        st.purity = purity(rho);
        st.trace_error = std::abs(rho.trace() - std::complex<double>(1.0));
        st.herm_error = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
        st.min_eigenvalue = es.eigenvalues().minCoeff();
        if (st.trace_error > opt.trace_tol)
          throw IntegrationError("exact::evolve: trace drift " + std::to_string(st.trace_error) +
                                     " exceeds tolerance at t = " + std::to_string(t),
                                 t);
        out.samples.push_back(st);
        out.rho_final = rho;
      });
  return out;
}

LandauZenerCheck landau_zener_check(const SweepSchedule& s, double rtol, double atol) {
  if (s.epsilon0 < 10.0 * s.delta)
    throw DomainError("landau_zener_check: requires epsilon0 >= 10*delta for the asymptote");
  EvolveOptions opt;
  opt.rtol = rtol;
  opt.atol = atol;
  opt.samples = 2;
  const auto traj = evolve(DickeDensityMatrix::ground(1), RelaxationConfig{}, s, opt);
  const double jz_final = traj.samples.back().jz;
  const double v = s.v();
  return LandauZenerCheck{0.5 + jz_final,
                          std::exp(-M_PI * s.delta * s.delta / (2.0 * v))};
}

}  // namespace zenolz
