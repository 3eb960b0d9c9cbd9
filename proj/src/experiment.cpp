#include "hnwalk/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "hnwalk/hamiltonian.hpp"

namespace hnwalk {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

[[noreturn]] void config_fail(const std::string& field, const std::string& why) {
  throw ConfigError("config: " + field + ": " + why);
}

}  // namespace

void ExperimentConfig::validate() const {
  if (params.L < 2) config_fail("params.L", "must be >= 2");
  if (!(std::abs(params.delta) < 1.0)) config_fail("params.delta", "must satisfy |delta| < 1");
  if (!std::isfinite(params.U)) config_fail("params.U", "must be finite");
  if (!std::isfinite(params.F)) config_fail("params.F", "must be finite");
  if (params.N != 1 && params.N != 2) config_fail("params.N", "must be 1 or 2");

  const int needed = initial_state == InitialStateKind::single_center ? 1 : 2;
  if (params.N != needed)
    config_fail("initial_state",
                "'" + to_string(initial_state) + "' requires N=" + std::to_string(needed));

  if (!(schedule.t_max > 0.0)) config_fail("schedule.t_max", "must be positive");
  if (schedule.n_snapshots < 2) config_fail("schedule.n_snapshots", "must be >= 2");
  if (!(schedule.dt > 0.0)) config_fail("schedule.dt", "must be positive");

  if (observables.correlator && params.N != 2)
    config_fail("observables.correlator", "requires the two-boson sector");
  if (observables.correlator_time) {
    const double t = *observables.correlator_time;
    if (!(t >= 0.0) || t > schedule.t_max)
      config_fail("observables.correlator_time", "must lie in [0, t_max]");
  }
  if (observables.qfi.epsilon < 0.0 || !std::isfinite(observables.qfi.epsilon))
    config_fail("observables.qfi.epsilon", "must be >= 0 (0 selects the default)");
  if (observables.qfi.fit_window) {
    const auto& [lo, hi] = *observables.qfi.fit_window;
    if (!(lo > 0.0) || !(hi > lo)) config_fail("observables.qfi.fit_window", "needs 0 < lo < hi");
  }

  for (std::size_t k = 0; k < sweep.size(); ++k) {
    const std::string where = "sweep[" + std::to_string(k) + "]";
    const auto& entry = sweep[k];
    if (entry.name != "delta" && entry.name != "U" && entry.name != "F")
      config_fail(where + ".name", "must be one of delta, U, F");
    if (entry.values.empty()) config_fail(where + ".values", "must not be empty");
    for (double v : entry.values) {
      if (!std::isfinite(v)) config_fail(where + ".values", "must be finite");
      if (entry.name == "delta" && !(std::abs(v) < 1.0))
        config_fail(where + ".values", "delta values must satisfy |delta| < 1");
    }
  }
  if (output_dir.empty()) config_fail("output_dir", "must not be empty");
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json j;
  j["params"] = {{"L", params.L}, {"delta", params.delta}, {"U", params.U},
                 {"F", params.F}, {"N", params.N}};
  j["initial_state"] = to_string(initial_state);
  j["schedule"] = {{"t_max", schedule.t_max},
                   {"n_snapshots", schedule.n_snapshots},
                   {"dt", schedule.dt},
                   {"method", to_string(schedule.method)},
                   {"check_dt_convergence", schedule.check_dt_convergence}};
  nlohmann::json q;
  q["enabled"] = observables.qfi.enabled;
  q["epsilon"] = observables.qfi.epsilon;
  q["fit_window"] = observables.qfi.fit_window
                        ? nlohmann::json{observables.qfi.fit_window->first,
                                         observables.qfi.fit_window->second}
                        : nlohmann::json(nullptr);
  j["observables"] = {{"density", observables.density},
                      {"decomposition", observables.decomposition},
                      {"correlator", observables.correlator},
                      {"correlator_time", observables.correlator_time
                                              ? nlohmann::json(*observables.correlator_time)
                                              : nlohmann::json(nullptr)},
                      {"qfi", q}};
  nlohmann::json sw = nlohmann::json::array();
  for (const auto& entry : sweep) sw.push_back({{"name", entry.name}, {"values", entry.values}});
  j["sweep"] = sw;
  j["output_dir"] = output_dir;
  return j;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  try {
    const auto& p = j.at("params");
    c.params.L = p.at("L").get<int>();
    c.params.delta = p.at("delta").get<double>();
    c.params.U = p.at("U").get<double>();
    c.params.F = p.at("F").get<double>();
    c.params.N = p.at("N").get<int>();

    c.initial_state = parse_initial_state_kind(j.at("initial_state").get<std::string>());

    const auto& s = j.at("schedule");
    c.schedule.t_max = s.at("t_max").get<double>();
    c.schedule.n_snapshots = s.at("n_snapshots").get<int>();
    c.schedule.dt = s.value("dt", 1e-3);
    c.schedule.method = parse_propagation_method(s.value("method", std::string("stepped-integrator")));
    c.schedule.check_dt_convergence = s.value("check_dt_convergence", false);

    if (j.contains("observables")) {
      const auto& o = j.at("observables");
      c.observables.density = o.value("density", true);
      c.observables.decomposition = o.value("decomposition", true);
      c.observables.correlator = o.value("correlator", false);
      if (o.contains("correlator_time") && !o.at("correlator_time").is_null())
        c.observables.correlator_time = o.at("correlator_time").get<double>();
      if (o.contains("qfi")) {
        const auto& q = o.at("qfi");
        c.observables.qfi.enabled = q.value("enabled", false);
        c.observables.qfi.epsilon = q.value("epsilon", 0.0);
        if (q.contains("fit_window") && !q.at("fit_window").is_null()) {
          const auto& w = q.at("fit_window");
          c.observables.qfi.fit_window = std::make_pair(w.at(0).get<double>(), w.at(1).get<double>());
        }
      }
    }
    if (j.contains("sweep")) {
      for (const auto& e : j.at("sweep")) {
        SweepEntry entry;
        entry.name = e.at("name").get<std::string>();
        entry.values = e.at("values").get<std::vector<double>>();
        c.sweep.push_back(std::move(entry));
      }
    }
    c.output_dir = j.value("output_dir", std::string("runs/out"));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: malformed JSON: ") + e.what());
  } catch (const ParameterError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t hash = 14695981039346656037ull;
  for (unsigned char b : bytes) {
    hash ^= b;
    hash *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

std::vector<SweepPoint> expand_sweep(const ExperimentConfig& config) {
  std::vector<SweepPoint> points{{config.params, ""}};
  for (const auto& entry : config.sweep) {
    std::vector<SweepPoint> next;
    next.reserve(points.size() * entry.values.size());
    for (const auto& point : points) {
      for (double v : entry.values) {
        SweepPoint p = point;
        if (entry.name == "delta") p.params.delta = v;
        if (entry.name == "U") p.params.U = v;
        if (entry.name == "F") p.params.F = v;
        p.label += (p.label.empty() ? "" : "_") + entry.name + "=" + fmt(v);
        next.push_back(std::move(p));
      }
    }
    points = std::move(next);
  }
  for (auto& p : points)
    if (p.label.empty()) p.label = "base";
  return points;
}

namespace {

void write_header(std::ostream& out, const std::string& table, const ExperimentConfig& config,
                  const LatticeParams& p) {
  out << "# hnwalk " << table << " table\n";
  out << "# L=" << p.L << " N=" << p.N << " delta=" << fmt(p.delta) << " U=" << fmt(p.U)
      << " F=" << fmt(p.F) << " initial_state=" << to_string(config.initial_state) << "\n";
  out << "# t_max=" << fmt(config.schedule.t_max) << " n_snapshots=" << config.schedule.n_snapshots
      << " dt=" << fmt(config.schedule.dt) << " method=" << to_string(config.schedule.method)
      << "\n";
}

void check_frame(const ObservableFrame& frame, int n_particles, const std::string& label) {
  const double total = frame.density.sum();
  if (std::abs(total - n_particles) > 1e-9)
    throw RunError("sweep point '" + label + "': density sum rule violated at t=" + fmt(frame.t) +
                   " (sum=" + fmt(total) + ")");
  if (frame.single_density.minCoeff() < -1e-12)
    throw RunError("sweep point '" + label + "': negative single-particle density at t=" +
                   fmt(frame.t));
  if (frame.correlator.size() > 0) {
    if (std::abs(frame.correlator.sum() - 2.0) > 1e-9)
      throw RunError("sweep point '" + label + "': correlator sum rule violated at t=" +
                     fmt(frame.t));
    const double max_asym = (frame.correlator - frame.correlator.transpose()).cwiseAbs().maxCoeff();
    if (max_asym > 1e-12)
      throw RunError("sweep point '" + label + "': correlator asymmetric at t=" + fmt(frame.t));
  }
}

struct PointOutput {
  std::optional<QfiSeries> qfi;
};

PointOutput run_point(const ExperimentConfig& config, const SweepPoint& point,
                      const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);

  const FockBasis basis = build_basis(point.params);
  const SparseHamiltonian h = build_hamiltonian(basis, point.params);
  const StateVector psi0 = initial_state(basis, config.initial_state);
  const double center = initial_center(config.initial_state, point.params.L);
  const std::vector<double> times = config.schedule.snapshot_times();

  int correlator_index = static_cast<int>(times.size()) - 1;
  if (config.observables.correlator_time) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < times.size(); ++k) {
      const double d = std::abs(times[k] - *config.observables.correlator_time);
      if (d < best) {
        best = d;
        correlator_index = static_cast<int>(k);
      }
    }
  }

  const std::vector<StateVector> snapshots = evolve(h, psi0, config.schedule);
  std::vector<ObservableFrame> frames;
  frames.reserve(snapshots.size());
  for (std::size_t k = 0; k < snapshots.size(); ++k) {
    const bool with_gamma =
        config.observables.correlator && static_cast<int>(k) == correlator_index;
    frames.push_back(make_frame(snapshots[k], basis, times[k], center, with_gamma));
    check_frame(frames.back(), point.params.N, point.label);
  }

  if (config.observables.density || config.observables.decomposition) {
    std::ofstream out(dir / "density.tsv");
    write_header(out, "density", config, point.params);
    out << "# columns: t\tsite\tn\tn1\tn2\n";
    for (const auto& frame : frames)
      for (int i = 0; i < point.params.L; ++i)
        out << fmt(frame.t) << "\t" << (i + 1) << "\t" << fmt(frame.density[i]) << "\t"
            << fmt(frame.single_density[i]) << "\t" << fmt(frame.doublon_density[i]) << "\n";
  }

  {
    std::ofstream out(dir / "scalars.tsv");
    write_header(out, "scalars", config, point.params);
    out << "# columns: t\tnorm_sq\tasymmetry\tmean_position\tdoublon_mean_position\n";
    for (const auto& frame : frames) {
      double doublon_com = std::numeric_limits<double>::quiet_NaN();
      if (point.params.N == 2 && frame.doublon_density.sum() > 1e-14)
        doublon_com = mean_position(frame.doublon_density);
      out << fmt(frame.t) << "\t" << fmt(frame.norm_sq) << "\t" << fmt(frame.asymmetry) << "\t"
          << fmt(mean_position(frame.density)) << "\t" << fmt(doublon_com) << "\n";
    }
  }

  if (config.observables.correlator) {
    std::ofstream out(dir / "correlator.tsv");
    write_header(out, "correlator", config, point.params);
    out << "# columns: t\ti\tj\tgamma\n";
    const auto& frame = frames[correlator_index];
    for (int i = 0; i < point.params.L; ++i)
      for (int j = 0; j < point.params.L; ++j)
        out << fmt(frame.t) << "\t" << (i + 1) << "\t" << (j + 1) << "\t"
            << fmt(frame.correlator(i, j)) << "\n";
  }

  PointOutput result;
  if (config.observables.qfi.enabled) {
    QfiOptions opts;
    opts.epsilon = config.observables.qfi.epsilon;
    opts.fit_window = config.observables.qfi.fit_window;
    QfiSeries series = qfi_series(point.params, psi0, config.schedule, opts);

    std::ofstream out(dir / "qfi.tsv");
    write_header(out, "qfi", config, point.params);
    out << "# columns: t\tfq\tcramer_rao\trunning_alpha\n";
    const double fit_lo = series.alpha_fit ? series.alpha_fit->t_lo : 0.5;
    for (std::size_t k = 0; k < series.times.size(); ++k) {
      const double fq = series.fq[k];
      const double crlb = fq > 0.0 ? cramer_rao_bound(fq) : std::numeric_limits<double>::quiet_NaN();
      double running = std::numeric_limits<double>::quiet_NaN();
      if (series.times[k] > fit_lo) {
        try {
          running = fit_alpha(series, fit_lo, series.times[k]).alpha;
        } catch (const Error&) {
        }
      }
      out << fmt(series.times[k]) << "\t" << fmt(fq) << "\t" << fmt(crlb) << "\t" << fmt(running)
          << "\n";
    }
    if (series.alpha_fit)
      out << "# fit: window=[" << fmt(series.alpha_fit->t_lo) << "," << fmt(series.alpha_fit->t_hi)
          << "] alpha=" << fmt(series.alpha_fit->alpha)
          << " residual=" << fmt(series.alpha_fit->residual) << " n=" << series.alpha_fit->n_samples
          << "\n";
    out << "# epsilon=" << fmt(series.epsilon) << " reliable=" << (series.reliable ? 1 : 0)
        << " richardson_dev=" << fmt(series.max_step_deviation) << "\n";
    result.qfi = std::move(series);
  }
  return result;
}

}  // namespace

RunManifest run(const ExperimentConfig& config, int workers) {
  config.validate();
  const std::vector<SweepPoint> points = expand_sweep(config);
  const std::filesystem::path root = config.output_dir;
  std::filesystem::create_directories(root);

  if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(1, std::min<int>(workers, static_cast<int>(points.size())));

  std::vector<PointOutput> outputs(points.size());
  std::atomic<std::size_t> cursor{0};
  std::mutex error_mutex;
  std::vector<std::string> errors;

  auto work = [&]() {
    for (;;) {
      const std::size_t k = cursor.fetch_add(1);
      if (k >= points.size()) return;
      try {
        outputs[k] = run_point(config, points[k], root / points[k].label);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> guard(error_mutex);
        std::string what = e.what();
        if (what.rfind("sweep point", 0) != 0) what = "sweep point '" + points[k].label + "': " + what;
        errors.push_back(std::move(what));
      }
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (!errors.empty()) {
    std::sort(errors.begin(), errors.end());
    throw RunError(errors.front() + (errors.size() > 1 ? " (and " +
                   std::to_string(errors.size() - 1) + " more)" : ""));
  }

  // Delta comparison against the Hermitian member of a delta sweep.
  if (config.observables.qfi.enabled && config.sweep.size() == 1 &&
      config.sweep[0].name == "delta") {
    int reference = -1;
    for (std::size_t k = 0; k < points.size(); ++k)
      if (points[k].params.delta == 0.0) reference = static_cast<int>(k);
    if (reference >= 0 && outputs[reference].qfi) {
      const QfiSeries& ref = *outputs[reference].qfi;
      for (std::size_t k = 0; k < points.size(); ++k) {
        if (static_cast<int>(k) == reference || !outputs[k].qfi) continue;
        std::ofstream out(root / points[k].label / "qfi_delta.tsv");
        write_header(out, "qfi_delta", config, points[k].params);
        out << "# delta_metric = F_Q/(4 t^2) at delta=0 minus the same at delta="
            << fmt(points[k].params.delta) << "\n";
        out << "# columns: t\tdelta_metric\n";
        const QfiSeries& cur = *outputs[k].qfi;
        for (std::size_t q = 1; q < cur.times.size(); ++q)
          out << fmt(cur.times[q]) << "\t" << fmt(delta_metric(ref, cur, cur.times[q])) << "\n";
      }
    }
  }

  RunManifest manifest;
  manifest.output_dir = root;
  for (const auto& point : points) {
    for (const auto& entry : std::filesystem::directory_iterator(root / point.label)) {
      if (!entry.is_regular_file()) continue;
      std::ifstream in(entry.path(), std::ios::binary);
      std::ostringstream buffer;
      buffer << in.rdbuf();
      FileRecord record;
      record.path = point.label + "/" + entry.path().filename().string();
      record.bytes = std::filesystem::file_size(entry.path());
      record.fnv1a64 = fnv1a64_hex(buffer.str());
      manifest.files.push_back(std::move(record));
    }
  }
  std::sort(manifest.files.begin(), manifest.files.end(),
            [](const FileRecord& a, const FileRecord& b) { return a.path < b.path; });

  nlohmann::json mj;
  mj["tool"] = "hnwalk";
  mj["config"] = config.to_json();
  mj["files"] = nlohmann::json::array();
  for (const auto& record : manifest.files)
    mj["files"].push_back(
        {{"path", record.path}, {"bytes", record.bytes}, {"fnv1a64", record.fnv1a64}});
  std::ofstream mout(root / "manifest.json");
  mout << mj.dump(2) << "\n";

  return manifest;
}

}  // namespace hnwalk
