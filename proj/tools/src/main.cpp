#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fpeit/config.hpp"
#include "fpeit/log.hpp"
#include "fpeit/pipeline.hpp"

namespace {

struct Common {
  std::string config_path;
  std::string preset_name;
  int threads = -1;
};

void add_common(CLI::App* cmd, Common& common) {
  auto* config = cmd->add_option("--config", common.config_path, "JSON run configuration");
  auto* preset = cmd->add_option("--preset", common.preset_name, "Start from a named preset instead of a file");
  config->excludes(preset);
  cmd->add_option("--threads", common.threads, "Worker threads for ray integration (0 = all cores)")
      ->check(CLI::NonNegativeNumber);
}

// Returns an exit code on failure, 0 when `config` is ready.
int load(const Common& common, fpeit::RunConfig& config) {
  try {
    if (!common.config_path.empty()) {
      config = fpeit::load_config(common.config_path);
    } else if (!common.preset_name.empty()) {
      config = fpeit::preset(common.preset_name);
    } else {
      fpeit::log::error("one of --config or --preset is required");
      return fpeit::kExitValidation;
    }
    if (common.threads >= 0) config.threads = common.threads;
  } catch (const std::exception& e) {
    fpeit::log::error(e.what());
    return fpeit::kExitValidation;
  }
  return fpeit::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  fpeit::log::set_level(fpeit::log::level_from_env());

  CLI::App app{"Forward conductivity-equation solver built on formal powers"};
  app.require_subcommand(1);

  Common solve_opts;
  std::string solve_out;
  bool dense_error = false;
  auto* solve = app.add_subcommand("solve", "Fit boundary data and write coefficients, fit and report");
  add_common(solve, solve_opts);
  solve->add_option("--out", solve_out, "Output directory")->required();
  solve->add_flag("--dense-error", dense_error, "Rebuild traces on Q rays for the error integral");

  Common verify_opts;
  std::string verify_out = "verify.json";
  auto* verify = app.add_subcommand("verify", "Run residual checks and write verify.json");
  add_common(verify, verify_opts);
  verify->add_option("--out", verify_out, "Report path")->capture_default_str();

  Common powers_opts;
  std::string powers_out;
  auto* powers = app.add_subcommand("powers", "Tabulate formal powers into powers.csv");
  add_common(powers, powers_opts);
  powers->add_option("--out", powers_out, "Output directory")->required();

  app.add_subcommand("presets", "List the built-in presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : fpeit::kExitValidation;
  }

  fpeit::RunConfig config;
  if (*solve) {
    if (const int code = load(solve_opts, config)) return code;
    if (dense_error) config.dense_error = true;
    return fpeit::run_solve(config, solve_out);
  }
  if (*verify) {
    if (const int code = load(verify_opts, config)) return code;
    return fpeit::run_verify(config, verify_out);
  }
  if (*powers) {
    if (const int code = load(powers_opts, config)) return code;
    return fpeit::run_powers(config, powers_out);
  }
  for (const auto& name : fpeit::preset_names()) std::cout << name << '\n';
  return fpeit::kExitOk;
}
