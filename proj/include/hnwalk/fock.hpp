#pragma once

#include <vector>

#include "hnwalk/lattice.hpp"

namespace hnwalk {

// An occupation multiset: one entry per boson, sorted ascending.
// {i} is a single boson on site i, {i, j} with i <= j a two-boson state.
using SiteList = std::vector<int>;

struct LadderResult {
  double factor = 0.0; // bosonic matrix element; 0 means the state was annihilated
  SiteList sites;      // resulting multiset (empty when factor is 0)
};

// a_site |sites>: removes one boson, factor sqrt(n_site).
// Annihilating an unoccupied site yields factor 0, not an error.
LadderResult annihilate(const SiteList& sites, int site);

// a†_site |sites>: adds one boson, factor sqrt(n_site + 1).
LadderResult create(const SiteList& sites, int site);

int occupation(const SiteList& sites, int site);

// Symmetric Fock basis for N in {1, 2} bosons on L sites.
//
// States are enumerated lexicographically: for N=1 the single sites
// 1..L; for N=2 the pairs (i, j) with i <= j, ordered (1,1), (1,2), ...,
// (1,L), (2,2), ..., (L,L). Symmetrization factors are not baked into the
// basis; the ladder operators above carry all sqrt(n) algebra.
class FockBasis {
 public:
  FockBasis(int num_sites, int num_particles);

  int dimension() const { return static_cast<int>(states_.size()); }
  int site_count() const { return num_sites_; }
  int particle_count() const { return num_particles_; }

  const SiteList& state(int index) const { return states_[index]; }
  const std::vector<SiteList>& states() const { return states_; }

  // Inverse of state(); throws ParameterError for multisets outside the basis.
  int index_of(const SiteList& sites) const;

  int occupation_of(int index, int site) const { return occupation(states_[index], site); }

 private:
  int num_sites_;
  int num_particles_;
  std::vector<SiteList> states_;
  std::vector<int> lookup_; // flattened (site, site) -> index table, -1 for holes
};

FockBasis build_basis(const LatticeParams& params);

}  // namespace hnwalk
