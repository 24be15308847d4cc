#include <CLI11.hpp>
#include <filesystem>
#include <iostream>

#include "vap/log.hpp"
#include "vap/pipeline.hpp"
#include "vap/scenario.hpp"
#include "vap/textio.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitMissingInput = 2;

int check_readable(const std::string& path) {
  if (!fs::exists(path)) {
    std::cerr << "vap: input file '" << path << "' does not exist\n";
    return kExitMissingInput;
  }
  return 0;
}

std::vector<vap::scenario::ScenarioSpec> load_suite(const std::vector<std::string>& paths) {
  std::vector<vap::scenario::ScenarioSpec> suite;
  for (const auto& p : paths) suite.push_back(vap::scenario::load_spec(p));
  return suite;
}

void print_summary(const vap::pipeline::RunSummary& s) {
  std::cout << s.name << ": instances=" << s.instances.size()
            << " error_rate=" << vap::textio::format_double(s.final_error)
            << " refinements=" << s.refinements.size() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"VAP contextual object-recognition engine"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  std::vector<std::string> scenario_paths;
  std::uint64_t seed_override = 0;
  bool has_seed = false;
  bool dump_frames = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "pipeline config JSON")->required();
    cmd->add_option("--scenario", scenario_paths,
                    "scenario spec JSON (repeat for a multi-clip suite)")
        ->required();
    cmd->add_option("--out", out_dir, "output directory for run artifacts")->required();
    cmd->add_option("--seed", seed_override, "override the config seed")
        ->each([&](const std::string&) { has_seed = true; });
  };

  CLI::App* cmd_run = app.add_subcommand("run", "run a scenario suite and emit metric CSVs");
  add_common(cmd_run);
  cmd_run->add_flag("--dump-frames", dump_frames, "also write rendered frames as PPM");

  std::vector<std::string> ablate_set;
  CLI::App* cmd_ablate = app.add_subcommand(
      "ablate", "run the bottom-up/context/object-files/full ablation ladder");
  add_common(cmd_ablate);
  cmd_ablate->add_option("--ablate-set", ablate_set,
                         "subset of configurations "
                         "(bottom_up, context_fusion, object_files, full)");

  std::string preset_name, preset_out;
  double bootstrap_weight = vap::scenario::presets::kBootstrapWeight;
  CLI::App* cmd_scenario = app.add_subcommand(
      "scenario", "write a preset scenario suite, bootstrap tables, and a matching config");
  cmd_scenario->add_option("--preset", preset_name, "tiny | ambiguity | occlusion | viewpoint")
      ->required();
  cmd_scenario->add_option("--out", preset_out, "output directory")->required();
  cmd_scenario->add_option("--bootstrap-weight", bootstrap_weight,
                           "count weight for the bootstrap tables");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_scenario->parsed()) {
      fs::create_directories(preset_out);
      std::vector<vap::scenario::ScenarioSpec> suite =
          vap::scenario::presets::by_name(preset_name);
      for (const auto& spec : suite)
        vap::scenario::save_spec(spec, (fs::path(preset_out) / (spec.name + ".json")).string());

      std::vector<vap::scenario::ScenarioSpec> boot =
          vap::scenario::presets::bootstrap_suite(preset_name);
      vap::context::ContextState state = vap::scenario::bootstrap_context(
          boot, vap::scenario::scene_catalog_from(boot), vap::default_catalog(),
          bootstrap_weight);
      std::string bootstrap_path = (fs::path(preset_out) / "bootstrap.json").string();
      vap::context::save_context(state, vap::default_catalog(), bootstrap_path);

      vap::pipeline::PipelineConfig cfg = vap::pipeline::presets::config_for(preset_name);
      cfg.context.bootstrap_path = bootstrap_path;
      vap::pipeline::save_config(cfg, (fs::path(preset_out) / "config.json").string());

      std::cout << "wrote " << suite.size() << " scenario spec(s), bootstrap.json and "
                << "config.json under " << preset_out << "\n";
      return 0;
    }

    if (int rc = check_readable(config_path); rc != 0) return rc;
    for (const auto& p : scenario_paths)
      if (int rc = check_readable(p); rc != 0) return rc;

    vap::pipeline::PipelineConfig config = vap::pipeline::load_config(config_path);
    if (has_seed) config.seed = seed_override;
    std::vector<vap::scenario::ScenarioSpec> suite = load_suite(scenario_paths);

    if (cmd_run->parsed()) {
      vap::pipeline::RunOptions options;
      options.out_dir = out_dir;
      options.dump_frames = dump_frames;
      vap::pipeline::RunSummary summary = vap::pipeline::run(config, suite, options);
      print_summary(summary);
      std::cout << "artifacts written to " << out_dir << "\n";
      return 0;
    }

    if (cmd_ablate->parsed()) {
      vap::pipeline::RunOptions options;
      options.out_dir = out_dir;
      std::vector<vap::pipeline::RunSummary> summaries =
          vap::pipeline::ablate(config, suite, options, ablate_set);
      for (const auto& s : summaries) print_summary(s);
      std::cout << "artifacts written to " << out_dir << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "vap: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}
