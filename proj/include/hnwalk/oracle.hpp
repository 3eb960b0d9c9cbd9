#pragma once

#include <memory>

#include "hnwalk/expm.hpp"
#include "hnwalk/hamiltonian.hpp"

// Slow-but-exact reference implementations. These back the test suites;
// nothing on the production path depends on them.
namespace hnwalk::oracle {

// Dense e^{-iHt} reference, desk-scale only.
class DenseOracle {
 public:
  // Throws DomainError above dimension 2500.
  explicit DenseOracle(const SparseHamiltonian& h);

  StateVector expm_apply(const StateVector& psi0, double t) const;

  bool used_fallback() const { return engine_->used_fallback(); }
  int dimension() const { return engine_->dimension(); }

 private:
  std::shared_ptr<DenseExpm> engine_;
};

// Bessel function of the first kind J_nu(x), integer order, evaluated by
// its power series with term recursion. Deliberately shares no code with
// any propagation path.
double bessel_j(int order, double x);

// |J_{site-start}(2t)|^2: the infinite-lattice density of one boson
// released from `start` with symmetric hopping and no field. Throws
// DomainError when |site-start| > 60 (series guard).
double bessel_density(int site, int start, double t);

}  // namespace hnwalk::oracle
