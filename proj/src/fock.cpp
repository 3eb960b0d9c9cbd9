#include "hnwalk/fock.hpp"

#include <algorithm>
#include <cmath>

namespace hnwalk {

int occupation(const SiteList& sites, int site) {
  return static_cast<int>(std::count(sites.begin(), sites.end(), site));
}

LadderResult annihilate(const SiteList& sites, int site) {
  const int n = occupation(sites, site);
  if (n == 0) return {0.0, {}};
  LadderResult out;
  out.factor = std::sqrt(static_cast<double>(n));
  out.sites = sites;
  out.sites.erase(std::find(out.sites.begin(), out.sites.end(), site));
  return out;
}

LadderResult create(const SiteList& sites, int site) {
  const int n = occupation(sites, site);
  LadderResult out;
  out.factor = std::sqrt(static_cast<double>(n + 1));
  out.sites = sites;
  out.sites.insert(std::upper_bound(out.sites.begin(), out.sites.end(), site), site);
  return out;
}

FockBasis::FockBasis(int num_sites, int num_particles)
    : num_sites_(num_sites), num_particles_(num_particles) {
  if (num_sites < 2) throw ParameterError("FockBasis: need at least 2 sites");
  if (num_particles != 1 && num_particles != 2)
    throw ParameterError("FockBasis: only 1- and 2-boson sectors are supported");

  const int L = num_sites_;
  if (num_particles_ == 1) {
    states_.reserve(L);
    lookup_.assign(L, -1);
    for (int i = 1; i <= L; ++i) {
      lookup_[i - 1] = static_cast<int>(states_.size());
      states_.push_back({i});
    }
  } else {
    states_.reserve(L * (L + 1) / 2);
    lookup_.assign(static_cast<std::size_t>(L) * L, -1);
    for (int i = 1; i <= L; ++i) {
      for (int j = i; j <= L; ++j) {
        lookup_[static_cast<std::size_t>(i - 1) * L + (j - 1)] = static_cast<int>(states_.size());
        states_.push_back({i, j});
      }
    }
  }
}

int FockBasis::index_of(const SiteList& sites) const {
  const int L = num_sites_;
  int index = -1;
  if (static_cast<int>(sites.size()) == num_particles_) {
    if (num_particles_ == 1) {
      const int i = sites[0];
      if (i >= 1 && i <= L) index = lookup_[i - 1];
    } else {
      const int i = std::min(sites[0], sites[1]);
      const int j = std::max(sites[0], sites[1]);
      if (i >= 1 && j <= L) index = lookup_[static_cast<std::size_t>(i - 1) * L + (j - 1)];
    }
  }
  if (index < 0) throw ParameterError("FockBasis::index_of: multiset not in basis");
  return index;
}

FockBasis build_basis(const LatticeParams& params) {
  params.validate();
  return FockBasis(params.L, params.N);
}

}  // namespace hnwalk
