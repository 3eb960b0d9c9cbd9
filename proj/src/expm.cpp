#include "hnwalk/expm.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include "hnwalk/errors.hpp"

namespace hnwalk {

namespace {
constexpr double kConditionLimit = 1e12;
}

DenseExpm::DenseExpm(Eigen::MatrixXcd h) : h_(std::move(h)) {
  if (h_.rows() != h_.cols()) throw ShapeError("DenseExpm: matrix must be square");

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(h_, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success) {
    fallback_ = true;
    return;
  }
  values_ = solver.eigenvalues();
  vectors_ = solver.eigenvectors();

  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(vectors_);
  vectors_inv_ = lu.inverse();
  condition_ = vectors_.cwiseAbs().colwise().sum().maxCoeff() *
               vectors_inv_.cwiseAbs().colwise().sum().maxCoeff();
  if (!std::isfinite(condition_) || condition_ > kConditionLimit) fallback_ = true;
}

Eigen::VectorXcd DenseExpm::apply(const Eigen::VectorXcd& psi0, double t) const {
  if (psi0.size() != h_.rows()) throw ShapeError("DenseExpm::apply: dimension mismatch");
  const std::complex<double> minus_i(0.0, -1.0);
  if (fallback_) {
    Eigen::MatrixXcd propagator = (minus_i * t * h_).exp();
    return propagator * psi0;
  }
  Eigen::VectorXcd coeffs = vectors_inv_ * psi0;
  coeffs.array() *= (minus_i * t * values_.array()).exp();
  return vectors_ * coeffs;
}

}  // namespace hnwalk
