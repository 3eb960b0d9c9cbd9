#include "hnwalk/oracle.hpp"

#include <cmath>
#include <cstdlib>

namespace hnwalk::oracle {

DenseOracle::DenseOracle(const SparseHamiltonian& h) {
  if (h.dimension() > 2500)
    throw DomainError("DenseOracle: dimension " + std::to_string(h.dimension()) +
                      " exceeds the 2500 desk-scale guard");
  engine_ = std::make_shared<DenseExpm>(h.dense());
}

StateVector DenseOracle::expm_apply(const StateVector& psi0, double t) const {
  return StateVector(engine_->apply(psi0.amplitudes(), t));
}

double bessel_j(int order, double x) {
  // J_{-n}(x) = (-1)^n J_n(x) for integer n.
  double sign = 1.0;
  if (order < 0) {
    order = -order;
    if (order % 2 == 1) sign = -1.0;
  }
  if (x < 0.0) {
    x = -x;
    if (order % 2 == 1) sign = -sign;
  }
  if (x == 0.0) return order == 0 ? sign : 0.0;

  // J_n(x) = sum_k (-1)^k (x/2)^{n+2k} / (k! (n+k)!), built by term recursion.
  const double half_x = 0.5 * x;
  double term = 1.0;
  for (int m = 1; m <= order; ++m) term *= half_x / m;
  double sum = term;
  const double minus_q = -half_x * half_x;
  for (int k = 1; k <= 400; ++k) {
    term *= minus_q / (static_cast<double>(k) * (order + k));
    sum += term;
    if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-300) && k > half_x) break;
  }
  return sign * sum;
}

double bessel_density(int site, int start, double t) {
  const int offset = site - start;
  if (std::abs(offset) > 60)
    throw DomainError("bessel_density: |site-start| = " + std::to_string(std::abs(offset)) +
                      " exceeds the series convergence guard (60)");
  const double j = bessel_j(offset, 2.0 * t);
  return j * j;
}

}  // namespace hnwalk::oracle
