#include "hnwalk/state.hpp"

#include <cmath>

namespace hnwalk {

StateVector::StateVector(Eigen::VectorXcd amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() == 0) throw ShapeError("StateVector: empty amplitude vector");
  norm_sq_ = amps_.squaredNorm();
  if (!std::isfinite(norm_sq_)) throw DomainError("StateVector: non-finite amplitudes");
}

StateVector StateVector::basis_state(int dimension, int index) {
  if (index < 0 || index >= dimension) throw ShapeError("StateVector::basis_state: index out of range");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dimension);
  v[index] = 1.0;
  return StateVector(std::move(v));
}

StateVector StateVector::normalized() const {
  if (norm_sq_ <= 0.0) throw DomainError("StateVector::normalized: zero-norm state");
  return StateVector(amps_ / std::sqrt(norm_sq_));
}

}  // namespace hnwalk
