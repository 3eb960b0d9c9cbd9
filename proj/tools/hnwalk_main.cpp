#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hnwalk/experiment.hpp"

namespace {

// Relative output directories resolve under $HNWALK_OUTPUT_ROOT when set.
void resolve_output_dir(hnwalk::ExperimentConfig& config, const std::string& cli_override) {
  if (!cli_override.empty()) config.output_dir = cli_override;
  const char* root = std::getenv("HNWALK_OUTPUT_ROOT");
  if (root && *root && std::filesystem::path(config.output_dir).is_relative())
    config.output_dir = (std::filesystem::path(root) / config.output_dir).string();
}

nlohmann::json parse_override_value(const std::string& text) {
  // Accept JSON scalars/arrays verbatim, bare comma lists as arrays,
  // and anything else as a string.
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception&) {
  }
  if (text.find(',') != std::string::npos) {
    nlohmann::json array = nlohmann::json::array();
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) array.push_back(parse_override_value(item));
    return array;
  }
  return text;
}

// key=value with a dotted key path, e.g. params.delta=0.1 or
// sweep.U=0,2,5,10 (which replaces the sweep with a single-parameter one).
void apply_override(nlohmann::json& j, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0)
    throw hnwalk::ConfigError("override '" + assignment + "' is not of the form key=value");
  const std::string key = assignment.substr(0, eq);
  const nlohmann::json value = parse_override_value(assignment.substr(eq + 1));

  if (key.rfind("sweep.", 0) == 0) {
    const std::string name = key.substr(6);
    nlohmann::json values = value.is_array() ? value : nlohmann::json::array({value});
    j["sweep"] = nlohmann::json::array({{{"name", name}, {"values", values}}});
    return;
  }
  if (key == "sweep" && value.is_string() && value.get<std::string>() == "none") {
    j["sweep"] = nlohmann::json::array();
    return;
  }

  nlohmann::json* node = &j;
  std::stringstream stream(key);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(stream, part, '.')) parts.push_back(part);
  for (std::size_t k = 0; k + 1 < parts.size(); ++k) node = &(*node)[parts[k]];
  (*node)[parts.back()] = value;
}

int run_config(hnwalk::ExperimentConfig config, const std::string& out_override, int workers) {
  resolve_output_dir(config, out_override);
  const hnwalk::RunManifest manifest = hnwalk::run(config, workers);
  std::cout << "wrote " << manifest.files.size() << " files under " << manifest.output_dir.string()
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"simulator for one- and two-boson quantum walks on the Hatano-Nelson lattice"};
  app.require_subcommand(1);

  std::string config_path;
  std::string preset_name;
  std::string output_dir;
  std::vector<std::string> overrides;
  bool print_only = false;
  int workers = 0;

  auto* run_cmd = app.add_subcommand("run", "run an experiment from a JSON config file");
  run_cmd->add_option("config", config_path, "path to the config file")->required();
  run_cmd->add_option("--output-dir", output_dir, "override the config's output directory");
  run_cmd->add_option("--workers", workers, "concurrent sweep points (default: hardware)");

  auto* preset_cmd = app.add_subcommand("preset", "run (or print) a built-in experiment");
  preset_cmd->add_option("name", preset_name, "preset name; see list-presets")->required();
  preset_cmd->add_option("--override", overrides,
                         "key=value config override, e.g. params.delta=0.1 or sweep.U=0,2,5");
  preset_cmd->add_option("--output-dir", output_dir, "override the output directory");
  preset_cmd->add_option("--workers", workers, "concurrent sweep points (default: hardware)");
  preset_cmd->add_flag("--print", print_only, "print the resolved config as JSON and exit");

  auto* list_cmd = app.add_subcommand("list-presets", "list the built-in experiments");

  try {
    app.parse(argc, argv);

    if (list_cmd->parsed()) {
      for (const auto& name : hnwalk::preset_names())
        std::cout << name << "\t" << hnwalk::preset_description(name) << "\n";
      return 0;
    }

    if (run_cmd->parsed()) {
      std::ifstream in(config_path);
      if (!in) throw hnwalk::ConfigError("cannot open config file '" + config_path + "'");
      nlohmann::json j;
      try {
        in >> j;
      } catch (const nlohmann::json::exception& e) {
        throw hnwalk::ConfigError("config file '" + config_path + "': " + e.what());
      }
      return run_config(hnwalk::ExperimentConfig::from_json(j), output_dir, workers);
    }

    // preset
    nlohmann::json j = hnwalk::preset(preset_name).to_json();
    for (const auto& assignment : overrides) apply_override(j, assignment);
    hnwalk::ExperimentConfig config = hnwalk::ExperimentConfig::from_json(j);
    if (print_only) {
      std::cout << config.to_json().dump(2) << "\n";
      return 0;
    }
    return run_config(std::move(config), output_dir, workers);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const hnwalk::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
