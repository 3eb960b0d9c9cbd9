#pragma once

#include <Eigen/Dense>
#include <complex>

#include "hnwalk/errors.hpp"

namespace hnwalk {

// A complex amplitude vector with its squared 2-norm tracked explicitly.
// Amplitudes are raw: non-Hermitian evolution is allowed to grow or shrink
// them, and normalization happens only where an observable demands it.
class StateVector {
 public:
  explicit StateVector(Eigen::VectorXcd amplitudes);

  // Unit amplitude on one basis element.
  static StateVector basis_state(int dimension, int index);

  int dimension() const { return static_cast<int>(amps_.size()); }
  const Eigen::VectorXcd& amplitudes() const { return amps_; }
  double norm_sq() const { return norm_sq_; }

  // psi / sqrt(norm_sq). Throws DomainError on a fully decayed state.
  StateVector normalized() const;

 private:
  Eigen::VectorXcd amps_;
  double norm_sq_;
};

inline StateVector normalized(const StateVector& psi) { return psi.normalized(); }

}  // namespace hnwalk
