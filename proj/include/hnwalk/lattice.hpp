#pragma once

#include <cmath>

#include "hnwalk/errors.hpp"

namespace hnwalk {

// Physical parameters of the Hatano-Nelson-Bose-Hubbard chain.
//
// Energies are measured in units of the symmetric hopping amplitude and
// times in its inverse. Sites are labeled 1..L throughout, so the linear
// potential contributes F*i on site i. The interaction and field sums run
// over all sites 1..L; only the hopping is restricted to bonds 1..L-1
// (open boundary conditions).
struct LatticeParams {
  int L = 2;          // site count, >= 2
  double delta = 0.0; // non-reciprocity, |delta| < 1
  double U = 0.0;     // on-site interaction
  double F = 0.0;     // tilt strength (energy per site)
  int N = 1;          // particle count, 1 or 2

  void validate() const {
    if (L < 2) throw ParameterError("LatticeParams: L must be >= 2, got " + std::to_string(L));
    if (!(std::abs(delta) < 1.0) || !std::isfinite(delta))
      throw ParameterError("LatticeParams: |delta| must be < 1, got " + std::to_string(delta));
    if (!std::isfinite(U)) throw ParameterError("LatticeParams: U must be finite");
    if (!std::isfinite(F)) throw ParameterError("LatticeParams: F must be finite");
    if (N != 1 && N != 2)
      throw ParameterError("LatticeParams: N must be 1 or 2, got " + std::to_string(N));
  }
};

}  // namespace hnwalk
