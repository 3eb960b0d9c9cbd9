#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <complex>
#include <iosfwd>

#include "hnwalk/fock.hpp"
#include "hnwalk/state.hpp"

namespace hnwalk {

using Complex = std::complex<double>;
using SparseMatrixXcd = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

// The Hatano-Nelson-Bose-Hubbard matrix in a fixed-N Fock basis.
//
//   H = -sum_{i=1..L-1} [ (1-delta) a†_{i+1} a_i + (1+delta) a†_i a_{i+1} ]
//       + (U/2) sum_i n_i (n_i - 1) + F sum_i i n_i
//
// Moving a boson rightward (i -> i+1) carries -(1-delta), leftward
// -(1+delta). Open boundary conditions. Entries are real for all
// parameters but stored complex so Hermitian and non-Hermitian cases share
// one propagation path.
struct SparseHamiltonian {
  SparseMatrixXcd matrix;
  LatticeParams params;

  int dimension() const { return static_cast<int>(matrix.rows()); }
  Eigen::MatrixXcd dense() const { return Eigen::MatrixXcd(matrix); }
};

// Throws ParameterError if the basis was not built from the same L and N.
SparseHamiltonian build_hamiltonian(const FockBasis& basis, const LatticeParams& params);

// H * v, no normalization. Throws ShapeError on dimension mismatch.
StateVector apply(const SparseHamiltonian& h, const StateVector& v);

// Coordinate-format dump, one "row col re im" line per stored entry
// (0-based indices), for cross-checks against external tools.
void write_coordinate_format(const SparseHamiltonian& h, std::ostream& out);

}  // namespace hnwalk
