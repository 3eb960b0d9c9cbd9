#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "hnwalk/hamiltonian.hpp"
#include "hnwalk/propagator.hpp"
#include "hnwalk/qfi.hpp"

using namespace hnwalk;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

namespace {

// Exact Eq.-(3)-style QFI for a real symmetric H(F) = H0 + F * A via
// eigendecomposition derivatives:
//   d/dF e^{-iHt} = -i * integral_0^t e^{-iH(t-s)} A e^{-iHs} ds,
// evaluated elementwise in the eigenbasis. Shares nothing with the
// fidelity-susceptibility path it checks.
double exact_qfi(const MatrixXd& h, const MatrixXd& a, const VectorXcd& psi0, double t) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(h);
  const MatrixXd& vecs = es.eigenvectors();
  const VectorXd& vals = es.eigenvalues();
  const int n = static_cast<int>(h.rows());
  const MatrixXd a_eig = vecs.transpose() * a * vecs;
  const VectorXcd xi = vecs.transpose() * psi0;
  const std::complex<double> i_unit(0, 1);

  VectorXcd dpsi_eig = VectorXcd::Zero(n);
  for (int m = 0; m < n; ++m) {
    std::complex<double> acc = 0;
    for (int q = 0; q < n; ++q) {
      const double gap = vals[m] - vals[q];
      std::complex<double> kernel;
      if (std::abs(gap) < 1e-12)
        kernel = -i_unit * t * std::exp(-i_unit * vals[m] * t);
      else
        kernel = -i_unit * std::exp(-i_unit * vals[m] * t) *
                 (std::exp(i_unit * gap * t) - 1.0) / (i_unit * gap);
      acc += kernel * a_eig(m, q) * xi[q];
    }
    dpsi_eig[m] = acc;
  }
  VectorXcd psi_eig(n);
  for (int m = 0; m < n; ++m) psi_eig[m] = std::exp(-i_unit * vals[m] * t) * xi[m];
  const VectorXcd psi = vecs * psi_eig;
  const VectorXcd dpsi = vecs * dpsi_eig;
  return 4.0 * (dpsi.squaredNorm() - std::norm(psi.dot(dpsi)));
}

QfiSeries small_series(double delta, double f, const EvolutionSchedule& s,
                       QfiOptions options = {}, int num_sites = 12) {
  LatticeParams p{.L = num_sites, .delta = delta, .U = 0.0, .F = f, .N = 1};
  auto basis = build_basis(p);
  return qfi_series(p, initial_state(basis, InitialStateKind::single_center), s, options);
}

}  // namespace

TEST_CASE("two-level system: fidelity form vs exact eigen-derivative QFI") {
  // L=2, N=1, delta=0, U=0: H(F) = [[F, -1], [-1, 2F]], dH/dF = diag(1, 2)
  const double f = 0.3;
  MatrixXd h(2, 2), a(2, 2);
  h << f, -1.0, -1.0, 2.0 * f;
  a << 1.0, 0.0, 0.0, 2.0;
  VectorXcd psi0(2);
  psi0 << 1.0, 0.0;
  const double expected = exact_qfi(h, a, psi0, 1.0);

  LatticeParams p{.L = 2, .delta = 0.0, .U = 0.0, .F = f, .N = 1};
  EvolutionSchedule s;
  s.t_max = 1.0;
  s.n_snapshots = 2;
  auto series = qfi_series(p, StateVector::basis_state(2, 0), s);
  CHECK(series.fq.back() == doctest::Approx(expected).epsilon(1e-4));
}

TEST_CASE("wider lattice: fidelity form tracks the exact QFI over time") {
  const int L = 16;
  const double f = 0.26;
  MatrixXd h0 = MatrixXd::Zero(L, L), a = MatrixXd::Zero(L, L);
  for (int i = 0; i + 1 < L; ++i) h0(i, i + 1) = h0(i + 1, i) = -1.0;
  for (int i = 0; i < L; ++i) a(i, i) = i + 1;
  VectorXcd psi0 = VectorXcd::Zero(L);
  psi0[L / 2 - 1] = 1.0;

  LatticeParams p{.L = L, .delta = 0.0, .U = 0.0, .F = f, .N = 1};
  EvolutionSchedule s;
  s.t_max = 3.0;
  s.n_snapshots = 4;
  auto series = qfi_series(p, StateVector(psi0), s);
  for (std::size_t k = 1; k < series.times.size(); ++k) {
    const double expected = exact_qfi(h0 + f * a, a, psi0, series.times[k]);
    CHECK(series.fq[k] == doctest::Approx(expected).epsilon(1e-4));
  }
}

TEST_CASE("QFI starts at zero and stays nonnegative") {
  EvolutionSchedule s;
  s.t_max = 4.0;
  s.n_snapshots = 41;
  auto series = small_series(0.08, 0.26, s);
  CHECK(series.fq[0] == 0.0);
  for (double v : series.fq) CHECK(v >= -1e-9);
  CHECK(series.reliable);
}

TEST_CASE("a fixed global phase on one branch leaves the QFI unchanged") {
  FockBasis basis(10, 1);
  LatticeParams p{.L = 10, .delta = 0.05, .U = 0.0, .F = 0.3, .N = 1};
  auto h = build_hamiltonian(build_basis(p), p);
  auto psi0 = initial_state(basis, InitialStateKind::single_center);
  EvolutionSchedule s;
  s.t_max = 2.0;
  s.n_snapshots = 2;
  const double eps = 1e-3;
  LatticeParams pp = p;
  pp.F += eps;
  LatticeParams pm = p;
  pm.F -= eps;
  auto at_f = evolve(h, psi0, s).back().normalized();
  auto plus = evolve(build_hamiltonian(basis, pp), psi0, s).back().normalized();
  auto minus = evolve(build_hamiltonian(basis, pm), psi0, s).back().normalized();

  const double base = qfi_point(at_f, plus, minus, eps);
  const StateVector rotated(std::polar(1.0, 0.7331) * plus.amplitudes());
  const double with_phase = qfi_point(at_f, rotated, minus, eps);
  CHECK(with_phase == doctest::Approx(base).epsilon(1e-13));
}

TEST_CASE("an epsilon below the resolvable deficit is rejected with guidance") {
  EvolutionSchedule s;
  s.t_max = 0.5;
  s.n_snapshots = 3;
  QfiOptions options;
  options.epsilon = 1e-12;
  options.richardson_check = false;
  CHECK_THROWS_AS(small_series(0.0, 0.26, s, options), StepSizeError);
}

TEST_CASE("fit_alpha on synthetic power laws") {
  QfiSeries series;
  for (int k = 0; k <= 100; ++k) {
    const double t = 0.1 * k;
    series.times.push_back(t);
    series.fq.push_back(4.0 * t * t * t);
  }
  auto fit = fit_alpha(series, 0.5, 10.0);
  CHECK(fit.alpha == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(fit.residual < 1e-10);

  for (std::size_t k = 0; k < series.times.size(); ++k)
    series.fq[k] = series.times[k] * series.times[k];
  CHECK(fit_alpha(series, 0.5, 10.0).alpha == doctest::Approx(2.0).epsilon(1e-6));

  SUBCASE("nonpositive values inside the window are rejected") {
    series.fq[40] = 0.0;
    CHECK_THROWS_AS(fit_alpha(series, 0.5, 10.0), ParameterError);
  }
  SUBCASE("too few samples are rejected") {
    CHECK_THROWS_AS(fit_alpha(series, 9.5, 10.0), ParameterError);
  }
  SUBCASE("bad windows are rejected") {
    CHECK_THROWS_AS(fit_alpha(series, -1.0, 10.0), ParameterError);
    CHECK_THROWS_AS(fit_alpha(series, 5.0, 2.0), ParameterError);
  }
}

TEST_CASE("delta metric") {
  QfiSeries a, b;
  for (int k = 0; k <= 20; ++k) {
    const double t = 0.5 * k;
    a.times.push_back(t);
    b.times.push_back(t);
    a.fq.push_back(3.0 * t * t);
    b.fq.push_back(2.0 * t * t);
  }
  SUBCASE("identical series give zero at every time") {
    for (double t : {0.5, 2.0, 10.0}) CHECK(delta_metric(a, a, t) == 0.0);
  }
  SUBCASE("quadratic series give a constant gap") {
    CHECK(delta_metric(a, b, 4.0) == doctest::Approx((3.0 - 2.0) / 4.0).epsilon(1e-12));
  }
  SUBCASE("t = 0 is out of domain") { CHECK_THROWS_AS(delta_metric(a, b, 0.0), DomainError); }
  SUBCASE("off-grid times are rejected") {
    CHECK_THROWS_AS(delta_metric(a, b, 0.77), ParameterError);
  }
  SUBCASE("mismatched grids are rejected") {
    QfiSeries c = b;
    c.times[3] += 0.1;
    CHECK_THROWS_AS(delta_metric(a, c, 2.0), ShapeError);
    c.times.pop_back();
    c.fq.pop_back();
    CHECK_THROWS_AS(delta_metric(a, c, 2.0), ShapeError);
  }
}

TEST_CASE("non-reciprocity lowers the late-time QFI") {
  // Wide lattice: the Bloch excursion (4/F sites) must stay in the bulk,
  // or boundary reflections scramble the delta ordering.
  EvolutionSchedule s;
  s.t_max = 10.0;
  s.n_snapshots = 51;
  QfiOptions options;
  options.richardson_check = false;
  auto hermitian = small_series(0.0, 0.26, s, options, 70);
  auto weak = small_series(0.04, 0.26, s, options, 70);
  auto strong = small_series(0.08, 0.26, s, options, 70);
  const double gap_weak = delta_metric(hermitian, weak, 10.0);
  const double gap_strong = delta_metric(hermitian, strong, 10.0);
  CHECK(gap_weak > 0.0);
  CHECK(gap_strong > gap_weak);
}

TEST_CASE("cramer-rao bound") {
  CHECK(cramer_rao_bound(4.0) == 0.5);
  CHECK(cramer_rao_bound(1.0) == 1.0);
  CHECK(cramer_rao_bound(100.0) == doctest::Approx(0.1).epsilon(1e-15));
  CHECK_THROWS_AS(cramer_rao_bound(0.0), DomainError);
  CHECK_THROWS_AS(cramer_rao_bound(-1.0), DomainError);
}
