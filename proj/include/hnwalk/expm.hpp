#pragma once

#include <Eigen/Dense>
#include <complex>

namespace hnwalk {

// Exact propagator e^{-iHt} for a dense complex H, non-Hermitian allowed.
//
// Factorizes H = V diag(lambda) V^{-1} once; apply() is then a pair of
// dense matvecs per time. Non-normal matrices can be near-defective, so
// when the eigenbasis condition estimate exceeds 1e12 (or the solver
// fails) we fall back to Pade scaling-and-squaring per requested time.
class DenseExpm {
 public:
  explicit DenseExpm(Eigen::MatrixXcd h);

  Eigen::VectorXcd apply(const Eigen::VectorXcd& psi0, double t) const;

  bool used_fallback() const { return fallback_; }
  double eigenbasis_condition() const { return condition_; }
  int dimension() const { return static_cast<int>(h_.rows()); }

 private:
  Eigen::MatrixXcd h_;
  Eigen::MatrixXcd vectors_;
  Eigen::MatrixXcd vectors_inv_;
  Eigen::VectorXcd values_;
  double condition_ = 0.0;
  bool fallback_ = false;
};

}  // namespace hnwalk
