#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hnwalk/hamiltonian.hpp"

namespace hnwalk {

enum class InitialStateKind {
  neighboring,   // a†_{L/2} a†_{L/2+1} |0>, N=2
  same_site,     // a†_{L/2} a†_{L/2} |0>,   N=2
  single_center, // a†_{L/2} |0>,            N=1
};

InitialStateKind parse_initial_state_kind(const std::string& name);
std::string to_string(InitialStateKind kind);

// Unit-norm product state at the lattice center (integer division: site
// L/2, and L/2+1 for the neighboring pair). Throws ParameterError when the
// kind does not match the basis particle number.
StateVector initial_state(const FockBasis& basis, InitialStateKind kind);

// Lattice coordinate the initial state is centered on: L/2 for the
// site-centered kinds, L/2 + 0.5 for the neighboring pair (bond center).
double initial_center(InitialStateKind kind, int num_sites);

enum class PropagationMethod {
  stepped_integrator, // fixed-step RK4 on dpsi/dt = -iH psi
  dense_exponential,  // eigendecomposition-based exact exponential
};

PropagationMethod parse_propagation_method(const std::string& name);
std::string to_string(PropagationMethod method);

struct EvolutionSchedule {
  double t_max = 10.0;
  int n_snapshots = 101; // uniformly spaced, t=0 included
  double dt = 1e-3;      // integrator step (upper bound; intervals divide evenly)
  PropagationMethod method = PropagationMethod::stepped_integrator;

  // When set, the full evolution is repeated at dt/2 and the runs must
  // agree to 1e-8 in max amplitude, else EvolutionError. Off by default;
  // the test suites exercise it and cross-check against the dense
  // exponential, which is a stronger statement than self-consistency.
  bool check_dt_convergence = false;

  void validate() const;
  std::vector<double> snapshot_times() const;
};

// Snapshots of e^{-iHt} psi0 at the schedule times. Amplitudes are raw
// (no normalization); snapshot 0 is psi0 exactly.
std::vector<StateVector> evolve(const SparseHamiltonian& h, const StateVector& psi0,
                                const EvolutionSchedule& schedule);

// Raw snapshot dump for offline analysis: per snapshot one
// "snapshot <index> <t> <norm_sq>" line followed by one "re im" line per
// amplitude, in basis order.
void write_snapshots(std::ostream& out, const std::vector<double>& times,
                     const std::vector<StateVector>& snapshots);

}  // namespace hnwalk
