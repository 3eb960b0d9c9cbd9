#include "hnwalk/hamiltonian.hpp"

#include <ostream>
#include <vector>

namespace hnwalk {

SparseHamiltonian build_hamiltonian(const FockBasis& basis, const LatticeParams& params) {
  params.validate();
  if (basis.site_count() != params.L || basis.particle_count() != params.N)
    throw ParameterError("build_hamiltonian: basis was built for different L or N");

  const int dim = basis.dimension();
  const int L = params.L;
  const double hop_right = -(1.0 - params.delta); // a†_{i+1} a_i
  const double hop_left = -(1.0 + params.delta);  // a†_i a_{i+1}

  std::vector<Eigen::Triplet<Complex>> entries;
  entries.reserve(static_cast<std::size_t>(dim) * 5);

  for (int col = 0; col < dim; ++col) {
    const SiteList& s = basis.state(col);

    double diag = 0.0;
    for (int site : s) diag += params.F * site;
    for (std::size_t k = 0; k < s.size(); ++k) {
      // n(n-1)/2 per site: each unordered pair of bosons on the same site counts once.
      for (std::size_t m = k + 1; m < s.size(); ++m)
        if (s[k] == s[m]) diag += params.U;
    }
    if (diag != 0.0) entries.emplace_back(col, col, Complex(diag, 0.0));

    for (int i = 1; i <= L - 1; ++i) {
      // rightward move i -> i+1
      if (auto ann = annihilate(s, i); ann.factor != 0.0) {
        auto cre = create(ann.sites, i + 1);
        entries.emplace_back(basis.index_of(cre.sites), col,
                             Complex(hop_right * ann.factor * cre.factor, 0.0));
      }
      // leftward move i+1 -> i
      if (auto ann = annihilate(s, i + 1); ann.factor != 0.0) {
        auto cre = create(ann.sites, i);
        entries.emplace_back(basis.index_of(cre.sites), col,
                             Complex(hop_left * ann.factor * cre.factor, 0.0));
      }
    }
  }

  SparseHamiltonian h;
  h.params = params;
  h.matrix.resize(dim, dim);
  h.matrix.setFromTriplets(entries.begin(), entries.end());
  h.matrix.makeCompressed();
  return h;
}

StateVector apply(const SparseHamiltonian& h, const StateVector& v) {
  if (v.dimension() != h.dimension())
    throw ShapeError("apply: state dimension " + std::to_string(v.dimension()) +
                     " does not match Hamiltonian dimension " + std::to_string(h.dimension()));
  return StateVector(h.matrix * v.amplitudes());
}

void write_coordinate_format(const SparseHamiltonian& h, std::ostream& out) {
  out << "# rows cols nnz: " << h.matrix.rows() << " " << h.matrix.cols() << " "
      << h.matrix.nonZeros() << "\n";
  out.precision(17);
  for (int k = 0; k < h.matrix.outerSize(); ++k)
    for (SparseMatrixXcd::InnerIterator it(h.matrix, k); it; ++it)
      out << it.row() << " " << it.col() << " " << it.value().real() << " " << it.value().imag()
          << "\n";
}

}  // namespace hnwalk
