#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hnwalk/lattice.hpp"
#include "hnwalk/observables.hpp"
#include "hnwalk/propagator.hpp"
#include "hnwalk/qfi.hpp"

namespace hnwalk {

struct QfiSelection {
  bool enabled = false;
  double epsilon = 0.0; // 0 = automatic
  std::optional<std::pair<double, double>> fit_window;
};

struct ObservableSelection {
  bool density = true;
  bool decomposition = true;
  bool correlator = false;
  // Snapshot time for the correlator table; the nearest snapshot is used.
  // Unset means the latest snapshot.
  std::optional<double> correlator_time;
  QfiSelection qfi;
};

struct SweepEntry {
  std::string name; // one of delta, U, F
  std::vector<double> values;
};

// A fully deterministic experiment description. Round-trips losslessly
// through JSON.
struct ExperimentConfig {
  LatticeParams params;
  InitialStateKind initial_state = InitialStateKind::neighboring;
  EvolutionSchedule schedule;
  ObservableSelection observables;
  std::vector<SweepEntry> sweep; // cartesian product; empty = single run
  std::string output_dir = "runs/out";

  // Throws ConfigError naming the offending field.
  void validate() const;

  nlohmann::json to_json() const;
  static ExperimentConfig from_json(const nlohmann::json& j);
};

struct SweepPoint {
  LatticeParams params;
  std::string label; // subdirectory name, e.g. "delta=0.04", or "base"
};

// Cartesian product of the sweep entries applied to the base parameters.
std::vector<SweepPoint> expand_sweep(const ExperimentConfig& config);

struct FileRecord {
  std::string path; // relative to the run directory
  std::uintmax_t bytes = 0;
  std::string fnv1a64; // hex content checksum
};

struct RunManifest {
  std::filesystem::path output_dir;
  std::vector<FileRecord> files;
};

// Executes every sweep point (concurrently up to `workers`), writing one
// subdirectory of observable tables per point plus manifest.json at the
// root. Every produced frame is checked against the density and correlator
// sum rules; a violation aborts the run with RunError naming the point.
RunManifest run(const ExperimentConfig& config, int workers = 0);

// FNV-1a 64-bit checksum of a byte string, as fixed-width hex.
std::string fnv1a64_hex(const std::string& bytes);

std::vector<std::string> preset_names();
std::string preset_description(const std::string& name);

// Built-in experiment configurations. Throws ConfigError for unknown
// names, listing the valid ones.
ExperimentConfig preset(const std::string& name);

}  // namespace hnwalk
