#include "hnwalk/qfi.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

namespace hnwalk {

double fidelity_deficit(const StateVector& a, const StateVector& b) {
  if (a.dimension() != b.dimension()) throw ShapeError("fidelity_deficit: dimension mismatch");
  const std::complex<double> overlap = a.amplitudes().dot(b.amplitudes());
  const double mag = std::abs(overlap);
  if (mag == 0.0) return 1.0;
  // 2 (1 - |<a|b>|) = ||a - e^{-i arg<a|b>} b||^2 for unit vectors
  const std::complex<double> phase = std::conj(overlap) / mag;
  return 0.5 * (a.amplitudes() - phase * b.amplitudes()).squaredNorm();
}

double qfi_point(const StateVector& at_f, const StateVector& at_f_plus,
                 const StateVector& at_f_minus, double epsilon) {
  if (!(epsilon > 0.0)) throw ParameterError("qfi_point: epsilon must be positive");
  const double deficit =
      fidelity_deficit(at_f, at_f_plus) + fidelity_deficit(at_f, at_f_minus);
  return 4.0 * deficit / (epsilon * epsilon);
}

namespace {

std::vector<StateVector> evolve_at_tilt(LatticeParams params, double tilt,
                                        const StateVector& psi0,
                                        const EvolutionSchedule& schedule) {
  params.F = tilt;
  const FockBasis basis = build_basis(params);
  const SparseHamiltonian h = build_hamiltonian(basis, params);
  return evolve(h, psi0, schedule);
}

std::vector<double> qfi_values(const std::vector<StateVector>& at_f,
                               const std::vector<StateVector>& plus,
                               const std::vector<StateVector>& minus, double epsilon) {
  std::vector<double> fq(at_f.size());
  fq[0] = 0.0; // the initial state carries no tilt information
  for (std::size_t k = 1; k < at_f.size(); ++k)
    fq[k] = qfi_point(at_f[k].normalized(), plus[k].normalized(), minus[k].normalized(), epsilon);
  return fq;
}

double largest_deficit(const std::vector<double>& fq, double epsilon) {
  double worst = 0.0;
  for (double v : fq) worst = std::max(worst, v * epsilon * epsilon / 8.0);
  return worst;
}

}  // namespace

QfiSeries qfi_series(const LatticeParams& params, const StateVector& psi0,
                     const EvolutionSchedule& schedule, const QfiOptions& options) {
  params.validate();
  schedule.validate();

  QfiSeries series;
  series.epsilon = options.epsilon > 0.0 ? options.epsilon : std::max(std::abs(params.F), 1.0) * 1e-3;
  series.times = schedule.snapshot_times();

  const double eps = series.epsilon;
  const auto at_f = evolve_at_tilt(params, params.F, psi0, schedule);
  const auto plus = evolve_at_tilt(params, params.F + eps, psi0, schedule);
  const auto minus = evolve_at_tilt(params, params.F - eps, psi0, schedule);
  series.fq = qfi_values(at_f, plus, minus, eps);

  constexpr double kMachineEps = std::numeric_limits<double>::epsilon();
  if (largest_deficit(series.fq, eps) < 100.0 * kMachineEps)
    throw StepSizeError(
        "qfi_series: fidelity deficit is below 100x machine precision for epsilon = " +
        std::to_string(eps) + "; increase epsilon (or evolve longer) to resolve the QFI");

  double window_lo = 0.5;
  double window_hi = params.F != 0.0 ? 0.5 * (2.0 * std::acos(-1.0) / std::abs(params.F))
                                     : schedule.t_max;
  if (options.fit_window) {
    window_lo = options.fit_window->first;
    window_hi = options.fit_window->second;
  }
  window_hi = std::min(window_hi, schedule.t_max);

  if (options.richardson_check) {
    const auto plus_half = evolve_at_tilt(params, params.F + 0.5 * eps, psi0, schedule);
    const auto minus_half = evolve_at_tilt(params, params.F - 0.5 * eps, psi0, schedule);
    const auto fq_half = qfi_values(at_f, plus_half, minus_half, 0.5 * eps);
    for (std::size_t k = 0; k < series.fq.size(); ++k) {
      const double t = series.times[k];
      if (t < window_lo || t > window_hi) continue;
      const double scale = std::max(std::abs(fq_half[k]), 1e-300);
      series.max_step_deviation =
          std::max(series.max_step_deviation, std::abs(series.fq[k] - fq_half[k]) / scale);
    }
    series.reliable = series.max_step_deviation < 0.01;
  }

  // Fit is best-effort here; callers with unusual windows use fit_alpha directly.
  try {
    series.alpha_fit = fit_alpha(series, window_lo, window_hi);
  } catch (const Error&) {
    series.alpha_fit.reset();
  }
  return series;
}

AlphaFit fit_alpha(const QfiSeries& series, double t_lo, double t_hi) {
  if (!(t_lo > 0.0) || !(t_hi > t_lo)) throw ParameterError("fit_alpha: need 0 < t_lo < t_hi");

  std::vector<double> xs, ys;
  for (std::size_t k = 0; k < series.times.size(); ++k) {
    const double t = series.times[k];
    if (t < t_lo || t > t_hi) continue;
    if (!(series.fq[k] > 0.0))
      throw ParameterError("fit_alpha: nonpositive F_Q at t = " + std::to_string(t) +
                           " inside the fit window");
    xs.push_back(std::log(t));
    ys.push_back(std::log(series.fq[k]));
  }
  if (xs.size() < 10)
    throw ParameterError("fit_alpha: only " + std::to_string(xs.size()) +
                         " samples in window, need >= 10");

  const int n = static_cast<int>(xs.size());
  double x_mean = 0.0, y_mean = 0.0;
  for (int k = 0; k < n; ++k) {
    x_mean += xs[k];
    y_mean += ys[k];
  }
  x_mean /= n;
  y_mean /= n;

  double sxx = 0.0, sxy = 0.0;
  for (int k = 0; k < n; ++k) {
    sxx += (xs[k] - x_mean) * (xs[k] - x_mean);
    sxy += (xs[k] - x_mean) * (ys[k] - y_mean);
  }

  AlphaFit fit;
  fit.alpha = sxy / sxx;
  fit.t_lo = t_lo;
  fit.t_hi = t_hi;
  fit.n_samples = n;
  const double intercept = y_mean - fit.alpha * x_mean;
  double ss = 0.0;
  for (int k = 0; k < n; ++k) {
    const double r = ys[k] - (intercept + fit.alpha * xs[k]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

double delta_metric(const QfiSeries& reference, const QfiSeries& other, double t) {
  if (reference.times.size() != other.times.size())
    throw ShapeError("delta_metric: series have different time grids");
  for (std::size_t k = 0; k < reference.times.size(); ++k)
    if (std::abs(reference.times[k] - other.times[k]) > 1e-9)
      throw ShapeError("delta_metric: series have different time grids");
  if (!(t > 0.0)) throw DomainError("delta_metric: undefined at t <= 0");

  std::size_t best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < reference.times.size(); ++k) {
    const double d = std::abs(reference.times[k] - t);
    if (d < best_dist) {
      best_dist = d;
      best = k;
    }
  }
  if (best_dist > 1e-6 * std::max(1.0, std::abs(t)))
    throw ParameterError("delta_metric: t = " + std::to_string(t) + " is not on the time grid");

  const double tt = reference.times[best];
  return reference.fq[best] / (4.0 * tt * tt) - other.fq[best] / (4.0 * tt * tt);
}

double cramer_rao_bound(double fq) {
  if (!(fq > 0.0)) throw DomainError("cramer_rao_bound: F_Q must be positive");
  return 1.0 / std::sqrt(fq);
}

}  // namespace hnwalk
