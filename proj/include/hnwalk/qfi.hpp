#pragma once

#include <optional>
#include <vector>

#include "hnwalk/propagator.hpp"

namespace hnwalk {

struct AlphaFit {
  double alpha = 0.0;    // log-log slope of F_Q vs t
  double residual = 0.0; // rms residual of the fit in log space
  double t_lo = 0.0;
  double t_hi = 0.0;
  int n_samples = 0;
};

struct QfiSeries {
  std::vector<double> times;
  std::vector<double> fq;
  double epsilon = 0.0;
  std::optional<AlphaFit> alpha_fit;

  // Outcome of the epsilon-halving robustness check.
  bool reliable = true;
  double max_step_deviation = 0.0;
};

struct QfiOptions {
  double epsilon = 0.0;       // 0 selects the default max(|F|, 1) * 1e-3
  bool richardson_check = true;
  std::optional<std::pair<double, double>> fit_window; // default [0.5, 0.5 T_B]
};

// 1 - |<a~|b~>| for normalized inputs, computed through the phase-aligned
// difference norm ||a - e^{i phi} b||^2 / 2, which keeps relative accuracy
// when the deficit is tiny.
double fidelity_deficit(const StateVector& a, const StateVector& b);

// Symmetric finite-difference quantum Fisher information for one time:
//   F_Q = (4 / eps^2) [ (1 - |<psi_F|psi_{F+eps}>|) + (1 - |<psi_F|psi_{F-eps}>|) ]
// on normalized states. Phase- and norm-robust by construction.
double qfi_point(const StateVector& at_f, const StateVector& at_f_plus,
                 const StateVector& at_f_minus, double epsilon);

// Quantum Fisher information of the tilt F along the evolution of psi0,
// via three (five with the robustness check) evolutions at shifted F.
// Snapshots are normalized before overlaps, so the non-Hermitian norm
// growth never enters. Throws StepSizeError when epsilon is too small
// for the fidelity deficit to rise above roundoff.
QfiSeries qfi_series(const LatticeParams& params, const StateVector& psi0,
                     const EvolutionSchedule& schedule, const QfiOptions& options = {});

// Least-squares slope of log F_Q vs log t over [t_lo, t_hi]. Requires at
// least 10 samples in the window, all with positive F_Q.
AlphaFit fit_alpha(const QfiSeries& series, double t_lo, double t_hi);

// (F_Q / 4t^2) of the first series minus the same of the second, at grid
// time t > 0. The series must share their time grid.
double delta_metric(const QfiSeries& reference, const QfiSeries& other, double t);

// Cramer-Rao lower bound on the standard error of F: 1/sqrt(F_Q).
double cramer_rao_bound(double fq);

}  // namespace hnwalk
