#include "hnwalk/propagator.hpp"

#include <cmath>
#include <complex>
#include <ostream>

#include "hnwalk/expm.hpp"

namespace hnwalk {

InitialStateKind parse_initial_state_kind(const std::string& name) {
  if (name == "neighboring") return InitialStateKind::neighboring;
  if (name == "same-site") return InitialStateKind::same_site;
  if (name == "single-center") return InitialStateKind::single_center;
  throw ParameterError("unknown initial state kind '" + name +
                       "' (expected neighboring, same-site or single-center)");
}

std::string to_string(InitialStateKind kind) {
  switch (kind) {
    case InitialStateKind::neighboring: return "neighboring";
    case InitialStateKind::same_site: return "same-site";
    case InitialStateKind::single_center: return "single-center";
  }
  return "?";
}

StateVector initial_state(const FockBasis& basis, InitialStateKind kind) {
  const int center = basis.site_count() / 2;
  SiteList sites;
  switch (kind) {
    case InitialStateKind::neighboring: sites = {center, center + 1}; break;
    case InitialStateKind::same_site: sites = {center, center}; break;
    case InitialStateKind::single_center: sites = {center}; break;
  }
  if (static_cast<int>(sites.size()) != basis.particle_count())
    throw ParameterError("initial_state: kind '" + to_string(kind) + "' needs N=" +
                         std::to_string(sites.size()) + ", basis has N=" +
                         std::to_string(basis.particle_count()));
  return StateVector::basis_state(basis.dimension(), basis.index_of(sites));
}

double initial_center(InitialStateKind kind, int num_sites) {
  const double center = static_cast<double>(num_sites / 2); // integer division, as in initial_state
  return kind == InitialStateKind::neighboring ? center + 0.5 : center;
}

PropagationMethod parse_propagation_method(const std::string& name) {
  if (name == "stepped-integrator") return PropagationMethod::stepped_integrator;
  if (name == "dense-exponential") return PropagationMethod::dense_exponential;
  throw ParameterError("unknown propagation method '" + name +
                       "' (expected stepped-integrator or dense-exponential)");
}

std::string to_string(PropagationMethod method) {
  return method == PropagationMethod::stepped_integrator ? "stepped-integrator"
                                                         : "dense-exponential";
}

void EvolutionSchedule::validate() const {
  if (!(t_max > 0.0) || !std::isfinite(t_max))
    throw ParameterError("EvolutionSchedule: t_max must be positive");
  if (n_snapshots < 2) throw ParameterError("EvolutionSchedule: n_snapshots must be >= 2");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ParameterError("EvolutionSchedule: dt must be positive");
}

std::vector<double> EvolutionSchedule::snapshot_times() const {
  std::vector<double> times(n_snapshots);
  const double spacing = t_max / (n_snapshots - 1);
  for (int k = 0; k < n_snapshots; ++k) times[k] = k * spacing;
  times.back() = t_max;
  return times;
}

namespace {

constexpr double kNormOverflow = 1e300;
constexpr double kNormUnderflow = 1e-300;

void check_norm(double norm_sq, double t) {
  if (std::isfinite(norm_sq) && norm_sq > kNormUnderflow && norm_sq < kNormOverflow) return;
  throw EvolutionError("evolve: state norm left representable range at t=" + std::to_string(t));
}

// RK4 snapshots of exp(-iHt) psi0. The Hamiltonian is shifted by the real
// part of the initial energy expectation so the integrator tracks slow
// envelope dynamics instead of a fast global phase rotation; the phase
// exp(-i E0 t) is multiplied back exactly at each snapshot.
std::vector<Eigen::VectorXcd> rk4_snapshots(const SparseMatrixXcd& matrix,
                                            const Eigen::VectorXcd& psi0,
                                            const std::vector<double>& times, double dt) {
  const std::complex<double> minus_i(0.0, -1.0);
  const Eigen::Index dim = psi0.size();

  double e_shift = 0.0;
  const double norm0 = psi0.squaredNorm();
  if (norm0 > 0.0) e_shift = (psi0.dot(matrix * psi0)).real() / norm0;

  SparseMatrixXcd identity(dim, dim);
  identity.setIdentity();
  SparseMatrixXcd shifted = matrix - std::complex<double>(e_shift, 0.0) * identity;

  std::vector<Eigen::VectorXcd> out;
  out.reserve(times.size());
  out.push_back(psi0);

  Eigen::VectorXcd psi = psi0;
  Eigen::VectorXcd k1(dim), k2(dim), k3(dim), k4(dim), work(dim);

  for (std::size_t snap = 1; snap < times.size(); ++snap) {
    const double interval = times[snap] - times[snap - 1];
    const int steps = std::max(1, static_cast<int>(std::ceil(interval / dt - 1e-9)));
    const double h = interval / steps;
    for (int s = 0; s < steps; ++s) {
      k1.noalias() = shifted * psi;
      k1 *= minus_i;
      work = psi + (0.5 * h) * k1;
      k2.noalias() = shifted * work;
      k2 *= minus_i;
      work = psi + (0.5 * h) * k2;
      k3.noalias() = shifted * work;
      k3 *= minus_i;
      work = psi + h * k3;
      k4.noalias() = shifted * work;
      k4 *= minus_i;
      psi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    check_norm(psi.squaredNorm(), times[snap]);
    out.push_back(std::polar(1.0, -e_shift * times[snap]) * psi);
  }
  return out;
}

double max_abs_difference(const std::vector<Eigen::VectorXcd>& a,
                          const std::vector<Eigen::VectorXcd>& b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k)
    worst = std::max(worst, (a[k] - b[k]).cwiseAbs().maxCoeff());
  return worst;
}

double max_abs_amplitude(const std::vector<Eigen::VectorXcd>& a) {
  double worst = 0.0;
  for (const auto& v : a) worst = std::max(worst, v.cwiseAbs().maxCoeff());
  return worst;
}

}  // namespace

std::vector<StateVector> evolve(const SparseHamiltonian& h, const StateVector& psi0,
                                const EvolutionSchedule& schedule) {
  schedule.validate();
  if (psi0.dimension() != h.dimension())
    throw ShapeError("evolve: state dimension does not match Hamiltonian dimension");

  const std::vector<double> times = schedule.snapshot_times();
  std::vector<Eigen::VectorXcd> raw;

  if (schedule.method == PropagationMethod::dense_exponential) {
    DenseExpm expm(h.dense());
    raw.reserve(times.size());
    raw.push_back(psi0.amplitudes());
    for (std::size_t k = 1; k < times.size(); ++k) {
      raw.push_back(expm.apply(psi0.amplitudes(), times[k]));
      check_norm(raw.back().squaredNorm(), times[k]);
    }
  } else {
    raw = rk4_snapshots(h.matrix, psi0.amplitudes(), times, schedule.dt);
    if (schedule.check_dt_convergence) {
      const auto refined = rk4_snapshots(h.matrix, psi0.amplitudes(), times, schedule.dt / 2.0);
      const double scale = std::max(1.0, max_abs_amplitude(refined));
      const double diff = max_abs_difference(raw, refined);
      if (diff > 1e-8 * scale)
        throw EvolutionError("evolve: halving dt moved snapshot amplitudes by " +
                             std::to_string(diff) + "; reduce dt below " +
                             std::to_string(schedule.dt));
    }
  }

  std::vector<StateVector> snapshots;
  snapshots.reserve(raw.size());
  for (auto& v : raw) snapshots.emplace_back(std::move(v));
  return snapshots;
}

void write_snapshots(std::ostream& out, const std::vector<double>& times,
                     const std::vector<StateVector>& snapshots) {
  if (times.size() != snapshots.size())
    throw ShapeError("write_snapshots: times and snapshots differ in length");
  out.precision(17);
  out << "# hnwalk snapshots: dimension " << (snapshots.empty() ? 0 : snapshots[0].dimension())
      << ", count " << snapshots.size() << "\n";
  out << "# per snapshot: 'snapshot <index> <t> <norm_sq>' then one 're im' line per amplitude\n";
  for (std::size_t k = 0; k < snapshots.size(); ++k) {
    out << "snapshot " << k << " " << times[k] << " " << snapshots[k].norm_sq() << "\n";
    for (int a = 0; a < snapshots[k].dimension(); ++a) {
      const Complex c = snapshots[k].amplitudes()[a];
      out << c.real() << " " << c.imag() << "\n";
    }
  }
}

}  // namespace hnwalk
