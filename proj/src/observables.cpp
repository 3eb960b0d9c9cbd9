#include "hnwalk/observables.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

namespace hnwalk {

namespace {

void require_normalized(const StateVector& psi) {
  if (std::abs(psi.norm_sq() - 1.0) > 1e-9)
    throw ContractError("observable evaluated on an unnormalized state (norm_sq = " +
                        std::to_string(psi.norm_sq()) + ")");
}

void require_two_boson(const FockBasis& basis, const char* what) {
  if (basis.particle_count() != 2)
    throw ParameterError(std::string(what) + " is defined for the two-boson sector only");
}

void require_matching(const StateVector& psi, const FockBasis& basis) {
  if (psi.dimension() != basis.dimension())
    throw ShapeError("state dimension does not match basis dimension");
}

}  // namespace

Eigen::VectorXd density(const StateVector& psi, const FockBasis& basis) {
  require_matching(psi, basis);
  require_normalized(psi);
  Eigen::VectorXd n = Eigen::VectorXd::Zero(basis.site_count());
  for (int k = 0; k < basis.dimension(); ++k) {
    const double w = std::norm(psi.amplitudes()[k]);
    for (int site : basis.state(k)) n[site - 1] += w;
  }
  return n;
}

Eigen::VectorXd doublon_density(const StateVector& psi, const FockBasis& basis) {
  require_two_boson(basis, "doublon_density");
  require_matching(psi, basis);
  require_normalized(psi);
  Eigen::VectorXd n2 = Eigen::VectorXd::Zero(basis.site_count());
  for (int i = 1; i <= basis.site_count(); ++i) {
    const int k = basis.index_of({i, i});
    n2[i - 1] = 2.0 * std::norm(psi.amplitudes()[k]);
  }
  return n2;
}

Eigen::MatrixXd correlator(const StateVector& psi, const FockBasis& basis) {
  require_two_boson(basis, "correlator");
  require_matching(psi, basis);
  require_normalized(psi);
  const int L = basis.site_count();
  Eigen::MatrixXd gamma = Eigen::MatrixXd::Zero(L, L);
  // a_i a_j |psi> lands on the vacuum, so each entry reads off one amplitude:
  // sqrt(2) c_(i,i) on the diagonal, c_(i,j) off it.
  for (int k = 0; k < basis.dimension(); ++k) {
    const SiteList& s = basis.state(k);
    const double w = std::norm(psi.amplitudes()[k]);
    const int i = s[0] - 1;
    const int j = s[1] - 1;
    if (i == j) {
      gamma(i, i) = 2.0 * w;
    } else {
      gamma(i, j) = w;
      gamma(j, i) = w;
    }
  }
  return gamma;
}

double asymmetry(const Eigen::VectorXd& density, double center, int n_particles) {
  double right = 0.0;
  double left = 0.0;
  for (int i = 1; i <= density.size(); ++i) {
    if (i > center + 1e-12)
      right += density[i - 1];
    else if (i < center - 1e-12)
      left += density[i - 1];
  }
  return (right - left) / n_particles;
}

double mean_position(const Eigen::VectorXd& weights) {
  double total = 0.0;
  double first_moment = 0.0;
  for (int i = 1; i <= weights.size(); ++i) {
    total += weights[i - 1];
    first_moment += i * weights[i - 1];
  }
  if (total <= 1e-14) throw DomainError("mean_position: total weight vanishes");
  return first_moment / total;
}

PeriodEstimate oscillation_period(const std::vector<double>& values, double sample_dt) {
  PeriodEstimate out;
  const int n = static_cast<int>(values.size());
  if (n < 8 || !(sample_dt > 0.0)) throw ParameterError("oscillation_period: need >= 8 uniform samples");

  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;

  std::vector<double> windowed(n);
  double signal_scale = 0.0;
  const double pi = std::acos(-1.0);
  for (int k = 0; k < n; ++k) {
    const double hann = 0.5 * (1.0 - std::cos(2.0 * pi * k / (n - 1)));
    windowed[k] = hann * (values[k] - mean);
    signal_scale = std::max(signal_scale, std::abs(values[k] - mean));
  }
  if (signal_scale < 1e-12) return out; // flat series: no oscillation

  const double t_total = (n - 1) * sample_dt;
  const double f_min = 1.0 / t_total;       // at least one full period in the window
  const double f_max = 0.5 / sample_dt;     // Nyquist
  const double f_step = f_min / 32.0;       // fine grid (32x zero-padding equivalent)
  const int n_freqs = static_cast<int>((f_max - f_min) / f_step) + 1;
  if (n_freqs < 3) return out;

  std::vector<double> power(n_freqs);
  for (int q = 0; q < n_freqs; ++q) {
    const double f = f_min + q * f_step;
    // phasor recursion, one complex multiply per sample
    const std::complex<double> step = std::polar(1.0, -2.0 * pi * f * sample_dt);
    std::complex<double> phase(1.0, 0.0);
    std::complex<double> acc(0.0, 0.0);
    for (int k = 0; k < n; ++k) {
      acc += windowed[k] * phase;
      phase *= step;
    }
    power[q] = std::norm(acc);
  }

  int peak = 0;
  for (int q = 1; q < n_freqs; ++q)
    if (power[q] > power[peak]) peak = q;

  std::vector<double> sorted = power;
  std::nth_element(sorted.begin(), sorted.begin() + n_freqs / 2, sorted.end());
  const double median = sorted[n_freqs / 2];

  out.sharpness = median > 0.0 ? power[peak] / median : std::numeric_limits<double>::infinity();
  if (!(out.sharpness > 10.0)) return out; // peak indistinct from the floor

  double f_peak = f_min + peak * f_step;
  if (peak > 0 && peak < n_freqs - 1) {
    const double y0 = power[peak - 1], y1 = power[peak], y2 = power[peak + 1];
    const double denom = y0 - 2.0 * y1 + y2;
    if (denom < 0.0) f_peak += 0.5 * f_step * (y0 - y2) / denom;
  }

  out.period = 1.0 / f_peak;
  out.found = true;
  return out;
}

ObservableFrame make_frame(const StateVector& raw, const FockBasis& basis, double t, double center,
                           bool with_correlator) {
  ObservableFrame frame;
  frame.t = t;
  frame.norm_sq = raw.norm_sq();
  const StateVector psi = raw.normalized();
  frame.density = density(psi, basis);
  if (basis.particle_count() == 2) {
    frame.doublon_density = doublon_density(psi, basis);
    if (with_correlator) frame.correlator = correlator(psi, basis);
  } else {
    frame.doublon_density = Eigen::VectorXd::Zero(basis.site_count());
  }
  frame.single_density = frame.density - frame.doublon_density;
  frame.asymmetry = asymmetry(frame.density, center, basis.particle_count());
  return frame;
}

}  // namespace hnwalk
