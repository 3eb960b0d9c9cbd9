#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hnwalk/experiment.hpp"

using namespace hnwalk;
namespace fs = std::filesystem;

namespace {

ExperimentConfig tiny_config(const std::string& out) {
  ExperimentConfig c;
  c.params = {.L = 10, .delta = 0.06, .U = 2.0, .F = 0.0, .N = 2};
  c.initial_state = InitialStateKind::neighboring;
  c.schedule.t_max = 0.5;
  c.schedule.n_snapshots = 3;
  c.observables.correlator = true;
  c.output_dir = out;
  return c;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

fs::path fresh_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("fnv1a64 matches the published test vectors") {
  CHECK(fnv1a64_hex("") == "cbf29ce484222325");
  CHECK(fnv1a64_hex("a") == "af63dc4c8601ec8c");
  CHECK(fnv1a64_hex("foobar") == "85944171f73967e8");
}

TEST_CASE("config round-trips losslessly through JSON") {
  ExperimentConfig c = tiny_config("runs/x");
  c.params.delta = 0.1234567890123456;
  c.sweep = {{"delta", {0.0, 0.02}}, {"U", {1.5}}};
  c.observables.correlator_time = 0.3;
  c.observables.qfi.enabled = true;
  c.observables.qfi.epsilon = 2.5e-4;
  c.observables.qfi.fit_window = {0.25, 0.45};
  const auto j = c.to_json();
  CHECK(ExperimentConfig::from_json(j).to_json() == j);
}

TEST_CASE("config validation names the offending field") {
  auto expect_mentions = [](ExperimentConfig c, const std::string& field) {
    try {
      c.validate();
      FAIL_CHECK("expected ConfigError for " << field);
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find(field) != std::string::npos);
    }
  };
  ExperimentConfig base = tiny_config("runs/x");
  { auto c = base; c.params.L = 1; expect_mentions(c, "params.L"); }
  { auto c = base; c.params.delta = 1.5; expect_mentions(c, "params.delta"); }
  { auto c = base; c.params.N = 1; expect_mentions(c, "initial_state"); }
  { auto c = base; c.schedule.n_snapshots = 1; expect_mentions(c, "schedule.n_snapshots"); }
  { auto c = base; c.schedule.dt = -1; expect_mentions(c, "schedule.dt"); }
  { auto c = base; c.observables.correlator_time = 9.0; expect_mentions(c, "correlator_time"); }
  { auto c = base; c.sweep = {{"J", {1.0}}}; expect_mentions(c, "sweep[0].name"); }
  { auto c = base; c.sweep = {{"delta", {}}}; expect_mentions(c, "sweep[0].values"); }
  { auto c = base; c.sweep = {{"delta", {2.0}}}; expect_mentions(c, "sweep[0].values"); }
  { auto c = base; c.output_dir.clear(); expect_mentions(c, "output_dir"); }
  { auto c = base; c.observables.qfi.fit_window = {0.4, 0.2}; expect_mentions(c, "fit_window"); }
}

TEST_CASE("malformed JSON is a config error") {
  CHECK_THROWS_AS(ExperimentConfig::from_json(nlohmann::json{{"params", 3}}), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::from_json(nlohmann::json::object()), ConfigError);
}

TEST_CASE("presets encode the documented figure parameters") {
  SUBCASE("fig5-a: one boson, tilt on, delta sweep, QFI enabled") {
    auto c = preset("fig5-a");
    CHECK(c.params.N == 1);
    CHECK(c.initial_state == InitialStateKind::single_center);
    CHECK(c.params.F == 0.26);
    CHECK(c.observables.qfi.enabled);
    REQUIRE(c.sweep.size() == 1);
    CHECK(c.sweep[0].name == "delta");
    CHECK(c.sweep[0].values == std::vector<double>{0.0, 0.02, 0.04, 0.08});
  }
  SUBCASE("fig1-b1: same-site pair, U=2, free lattice, delta sweep") {
    auto c = preset("fig1-b1");
    CHECK(c.params.N == 2);
    CHECK(c.initial_state == InitialStateKind::same_site);
    CHECK(c.params.U == 2.0);
    CHECK(c.params.F == 0.0);
    REQUIRE(c.sweep.size() == 1);
    CHECK(c.sweep[0].name == "delta");
    CHECK_FALSE(c.observables.qfi.enabled);
  }
  SUBCASE("fig4-a2: neighboring pair, delta=0.04, tilt on, U sweep, correlator") {
    auto c = preset("fig4-a2");
    CHECK(c.params.N == 2);
    CHECK(c.initial_state == InitialStateKind::neighboring);
    CHECK(c.params.delta == 0.04);
    CHECK(c.params.F == 0.26);
    CHECK(c.observables.correlator);
    REQUIRE(c.sweep.size() == 1);
    CHECK(c.sweep[0].name == "U");
    CHECK(c.sweep[0].values == std::vector<double>{0.0, 2.0, 5.0, 10.0});
  }
  SUBCASE("every preset validates and lists a description") {
    for (const auto& name : preset_names()) {
      CHECK_NOTHROW(preset(name));
      CHECK_FALSE(preset_description(name).empty());
    }
    CHECK(preset_names().size() == 19);
  }
  SUBCASE("unknown names are rejected with the valid list") {
    try {
      preset("fig9-z");
      FAIL_CHECK("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("fig1-a1") != std::string::npos);
      CHECK(std::string(e.what()).find("fig5-c") != std::string::npos);
    }
  }
}

TEST_CASE("an empty sweep runs a single point") {
  auto dir = fresh_dir("hnwalk_test_single");
  auto manifest = run(tiny_config(dir.string()), 1);
  CHECK(fs::exists(dir / "base" / "density.tsv"));
  CHECK(fs::exists(dir / "base" / "scalars.tsv"));
  CHECK(fs::exists(dir / "base" / "correlator.tsv"));
  CHECK(fs::exists(dir / "manifest.json"));
  CHECK(manifest.files.size() == 3);
}

TEST_CASE("sweep points land in labeled subdirectories") {
  auto dir = fresh_dir("hnwalk_test_sweep");
  auto c = tiny_config(dir.string());
  c.sweep = {{"delta", {0.0, 0.05}}};
  auto manifest = run(c, 2);
  CHECK(fs::exists(dir / "delta=0" / "density.tsv"));
  CHECK(fs::exists(dir / "delta=0.05" / "density.tsv"));
  CHECK(manifest.files.size() == 6);
}

TEST_CASE("two runs of the same config are byte-identical") {
  auto dir_a = fresh_dir("hnwalk_test_det_a");
  auto dir_b = fresh_dir("hnwalk_test_det_b");
  auto c = tiny_config(dir_a.string());
  c.sweep = {{"U", {0.0, 3.0}}};
  auto manifest_a = run(c, 2);
  c.output_dir = dir_b.string();
  auto manifest_b = run(c, 1); // worker count must not matter
  REQUIRE(manifest_a.files.size() == manifest_b.files.size());
  for (std::size_t k = 0; k < manifest_a.files.size(); ++k) {
    CHECK(manifest_a.files[k].path == manifest_b.files[k].path);
    CHECK(manifest_a.files[k].fnv1a64 == manifest_b.files[k].fnv1a64);
    CHECK(slurp(dir_a / manifest_a.files[k].path) == slurp(dir_b / manifest_b.files[k].path));
  }
}

TEST_CASE("manifest checksums match the files on disk") {
  auto dir = fresh_dir("hnwalk_test_manifest");
  auto manifest = run(tiny_config(dir.string()), 1);
  for (const auto& record : manifest.files) {
    const std::string bytes = slurp(dir / record.path);
    CHECK(bytes.size() == record.bytes);
    CHECK(fnv1a64_hex(bytes) == record.fnv1a64);
  }
  // the manifest on disk lists the same checksums
  auto mj = nlohmann::json::parse(slurp(dir / "manifest.json"));
  REQUIRE(mj.at("files").size() == manifest.files.size());
  for (std::size_t k = 0; k < manifest.files.size(); ++k)
    CHECK(mj.at("files")[k].at("fnv1a64").get<std::string>() == manifest.files[k].fnv1a64);
}

TEST_CASE("every table echoes the sweep-point parameters in its header") {
  auto dir = fresh_dir("hnwalk_test_header");
  auto c = tiny_config(dir.string());
  c.sweep = {{"delta", {0.05}}};
  run(c, 1);
  const std::string density = slurp(dir / "delta=0.05" / "density.tsv");
  CHECK(density.find("delta=0.05") != std::string::npos);
  CHECK(density.find("L=10") != std::string::npos);
  CHECK(density.find("initial_state=neighboring") != std::string::npos);
  CHECK(density.find("# columns: t\tsite\tn\tn1\tn2") != std::string::npos);
}

TEST_CASE("qfi tables report the series and the fit footer") {
  auto dir = fresh_dir("hnwalk_test_qfi");
  ExperimentConfig c;
  c.params = {.L = 10, .delta = 0.0, .U = 0.0, .F = 0.5, .N = 1};
  c.initial_state = InitialStateKind::single_center;
  c.schedule.t_max = 6.5; // just past 0.5 T_B = 2 pi / 1 = 6.28
  c.schedule.n_snapshots = 66;
  c.observables.qfi.enabled = true;
  c.sweep = {{"delta", {0.0, 0.05}}};
  c.output_dir = dir.string();
  run(c, 1);
  const std::string qfi = slurp(dir / "delta=0" / "qfi.tsv");
  CHECK(qfi.find("# columns: t\tfq\tcramer_rao\trunning_alpha") != std::string::npos);
  CHECK(qfi.find("# fit: window=[") != std::string::npos);
  CHECK(qfi.find("# epsilon=") != std::string::npos);
  // the non-reciprocal sweep member gets the comparison table
  CHECK(fs::exists(dir / "delta=0.05" / "qfi_delta.tsv"));
  CHECK_FALSE(fs::exists(dir / "delta=0" / "qfi_delta.tsv"));
}
