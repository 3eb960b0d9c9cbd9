#include <cmath>
#include <map>

#include "hnwalk/experiment.hpp"

namespace hnwalk {

namespace {

constexpr double kTilt = 0.26;
const std::vector<double> kDeltaSweep{0.0, 0.02, 0.04, 0.08};
const std::vector<double> kInteractionSweep{0.0, 2.0, 5.0, 10.0};

// Free walk: the light cone (speed 2) reaches ~site 30 of the 35 available
// from the center by t=15, leaving the boundary untouched.
EvolutionSchedule walk_schedule() {
  EvolutionSchedule s;
  s.t_max = 15.0;
  s.n_snapshots = 151;
  return s;
}

// Tilted runs cover two Bloch periods T_B = 2*pi/F.
EvolutionSchedule tilt_schedule() {
  EvolutionSchedule s;
  s.t_max = 48.4;
  s.n_snapshots = 485;
  return s;
}

// QFI runs cover the cubic-growth regime t < 0.5 T_B.
EvolutionSchedule qfi_schedule() {
  EvolutionSchedule s;
  s.t_max = 12.1;
  s.n_snapshots = 122;
  return s;
}

ExperimentConfig two_boson_walk(InitialStateKind kind, bool sweep_interaction, double tilt,
                                bool with_correlator) {
  ExperimentConfig c;
  c.params.L = 70;
  c.params.N = 2;
  c.params.F = tilt;
  c.initial_state = kind;
  c.schedule = tilt == 0.0 ? walk_schedule() : tilt_schedule();
  c.observables.correlator = with_correlator;
  if (sweep_interaction) {
    c.params.delta = 0.04;
    c.params.U = 2.0;
    c.sweep = {{"U", kInteractionSweep}};
  } else {
    c.params.U = 2.0;
    c.sweep = {{"delta", kDeltaSweep}};
  }
  return c;
}

ExperimentConfig qfi_walk(InitialStateKind kind) {
  ExperimentConfig c;
  c.params.L = 70;
  c.params.N = kind == InitialStateKind::single_center ? 1 : 2;
  c.params.U = 2.0;
  c.params.F = kTilt;
  c.initial_state = kind;
  c.schedule = qfi_schedule();
  c.observables.qfi.enabled = true;
  c.sweep = {{"delta", kDeltaSweep}};
  return c;
}

struct PresetDef {
  std::string description;
  ExperimentConfig (*make)();
};

const std::map<std::string, PresetDef>& preset_table() {
  static const std::map<std::string, PresetDef> table = {
      {"fig1-a1",
       {"density map, neighboring-pair start, U=2, F=0, delta swept",
        [] { return two_boson_walk(InitialStateKind::neighboring, false, 0.0, false); }}},
      {"fig1-b1",
       {"density map, same-site start, U=2, F=0, delta swept",
        [] { return two_boson_walk(InitialStateKind::same_site, false, 0.0, false); }}},
      {"fig1-a2",
       {"density map, neighboring-pair start, delta=0.04, F=0, U swept",
        [] { return two_boson_walk(InitialStateKind::neighboring, true, 0.0, false); }}},
      {"fig1-b2",
       {"density map, same-site start, delta=0.04, F=0, U swept",
        [] { return two_boson_walk(InitialStateKind::same_site, true, 0.0, false); }}},
      {"fig2-a1",
       {"two-particle correlator, neighboring-pair start, U=2, F=0, delta swept",
        [] { return two_boson_walk(InitialStateKind::neighboring, false, 0.0, true); }}},
      {"fig2-b1",
       {"two-particle correlator, same-site start, U=2, F=0, delta swept",
        [] { return two_boson_walk(InitialStateKind::same_site, false, 0.0, true); }}},
      {"fig2-a2",
       {"two-particle correlator, neighboring-pair start, delta=0.04, F=0, U swept",
        [] { return two_boson_walk(InitialStateKind::neighboring, true, 0.0, true); }}},
      {"fig2-b2",
       {"two-particle correlator, same-site start, delta=0.04, F=0, U swept",
        [] { return two_boson_walk(InitialStateKind::same_site, true, 0.0, true); }}},
      {"fig3-a1",
       {"tilted-lattice density, neighboring-pair start, U=2, F=0.26, delta swept",
        [] { return two_boson_walk(InitialStateKind::neighboring, false, kTilt, false); }}},
      {"fig3-b1",
       {"tilted-lattice density, same-site start, U=2, F=0.26, delta swept",
        [] { return two_boson_walk(InitialStateKind::same_site, false, kTilt, false); }}},
      {"fig3-a2",
       {"tilted-lattice density, neighboring-pair start, delta=0.04, F=0.26, U swept",
        [] { return two_boson_walk(InitialStateKind::neighboring, true, kTilt, false); }}},
      {"fig3-b2",
       {"tilted-lattice density, same-site start, delta=0.04, F=0.26, U swept",
        [] { return two_boson_walk(InitialStateKind::same_site, true, kTilt, false); }}},
      {"fig4-a1",
       {"tilted-lattice correlator, neighboring-pair start, U=2, F=0.26, delta swept",
        [] { return two_boson_walk(InitialStateKind::neighboring, false, kTilt, true); }}},
      {"fig4-b1",
       {"tilted-lattice correlator, same-site start, U=2, F=0.26, delta swept",
        [] { return two_boson_walk(InitialStateKind::same_site, false, kTilt, true); }}},
      {"fig4-a2",
       {"tilted-lattice correlator, neighboring-pair start, delta=0.04, F=0.26, U swept",
        [] { return two_boson_walk(InitialStateKind::neighboring, true, kTilt, true); }}},
      {"fig4-b2",
       {"tilted-lattice correlator, same-site start, delta=0.04, F=0.26, U swept",
        [] { return two_boson_walk(InitialStateKind::same_site, true, kTilt, true); }}},
      {"fig5-a",
       {"QFI growth, one boson at the central site, F=0.26, delta swept",
        [] { return qfi_walk(InitialStateKind::single_center); }}},
      {"fig5-b",
       {"QFI growth, neighboring-pair start, U=2, F=0.26, delta swept",
        [] { return qfi_walk(InitialStateKind::neighboring); }}},
      {"fig5-c",
       {"QFI growth, same-site start, U=2, F=0.26, delta swept",
        [] { return qfi_walk(InitialStateKind::same_site); }}},
  };
  return table;
}

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [name, def] : preset_table()) names.push_back(name);
  return names;
}

std::string preset_description(const std::string& name) {
  const auto& table = preset_table();
  const auto it = table.find(name);
  return it == table.end() ? std::string() : it->second.description;
}

ExperimentConfig preset(const std::string& name) {
  const auto& table = preset_table();
  const auto it = table.find(name);
  if (it == table.end()) {
    std::string names;
    for (const auto& [known, def] : table) names += (names.empty() ? "" : ", ") + known;
    throw ConfigError("unknown preset '" + name + "'; valid presets: " + names);
  }
  ExperimentConfig c = it->second.make();
  c.output_dir = "runs/" + name;
  c.validate();
  return c;
}

}  // namespace hnwalk
