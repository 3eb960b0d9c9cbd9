#pragma once

#include <Eigen/Dense>
#include <vector>

#include "hnwalk/fock.hpp"
#include "hnwalk/state.hpp"

namespace hnwalk {

// All observables take a normalized state (|norm_sq - 1| <= 1e-9) and
// throw ContractError otherwise. Densities are indexed 0..L-1 for sites
// 1..L.

// n_i = <a†_i a_i>.
Eigen::VectorXd density(const StateVector& psi, const FockBasis& basis);

// n_i^(2) = <a†_i a†_i a_i a_i> = <n_i (n_i - 1)>. Two-boson sector only.
Eigen::VectorXd doublon_density(const StateVector& psi, const FockBasis& basis);

// Gamma_{ij} = <a†_i a†_j a_i a_j>: diagonal <n_i(n_i-1)>, off-diagonal
// <n_i n_j>. Symmetric, sums to N(N-1) = 2. Two-boson sector only.
Eigen::MatrixXd correlator(const StateVector& psi, const FockBasis& basis);

// (sum_{i > center} n_i - sum_{i < center} n_i) / N, in [-1, 1].
// Half-lattices are strict: a site equal to an integer center is excluded,
// and a half-integer center (bond) splits the lattice with no exclusions.
double asymmetry(const Eigen::VectorXd& density, double center, int n_particles);

// sum_i i * w_i / sum_i w_i for a nonnegative weight profile (density or
// doublon density). Throws DomainError when the total weight vanishes.
double mean_position(const Eigen::VectorXd& weights);

struct PeriodEstimate {
  double period = 0.0;    // dominant period, valid when found
  double sharpness = 0.0; // peak power over median grid power
  bool found = false;
};

// Dominant period of a uniformly sampled scalar series via the Hann-
// windowed periodogram of the mean-subtracted signal, evaluated on a
// zero-padding-equivalent fine frequency grid with parabolic peak
// refinement. A flat series or a peak indistinct from the noise floor
// yields found = false rather than an error.
PeriodEstimate oscillation_period(const std::vector<double>& values, double sample_dt);

// Everything the exporters need about one snapshot.
struct ObservableFrame {
  double t = 0.0;
  Eigen::VectorXd density;
  Eigen::VectorXd single_density;  // n - n^(2); equals n in the one-boson sector
  Eigen::VectorXd doublon_density; // zero in the one-boson sector
  Eigen::MatrixXd correlator;      // empty unless requested
  double asymmetry = 0.0;
  double norm_sq = 0.0; // raw squared norm before normalization
};

ObservableFrame make_frame(const StateVector& raw, const FockBasis& basis, double t, double center,
                           bool with_correlator);

}  // namespace hnwalk
