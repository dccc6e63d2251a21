// Command-line front end. Links the C API only; all physics configuration
// lives in the config file, never in positional arguments.
#include <CLI11.hpp>

#include <cstdio>
#include <string>

#include "fadiff.h"

namespace {

int run(const std::string& command, const std::string& config_path,
        const std::string& out_dir, const std::string& seed_override) {
  fadiff_config* config = nullptr;
  fadiff_status status = config_path.empty()
                             ? fadiff_config_create(&config)
                             : fadiff_config_load(config_path.c_str(), &config);
  if (status != FADIFF_OK) {
    std::fprintf(stderr, "error: %s\n", fadiff_last_error());
    return static_cast<int>(status);
  }
  if (!seed_override.empty()) {
    status = fadiff_config_set(config, "maps.seed", seed_override.c_str());
    if (status != FADIFF_OK) {
      std::fprintf(stderr, "error: %s\n", fadiff_last_error());
      fadiff_config_destroy(config);
      return static_cast<int>(status);
    }
  }

  if (command == "verify") {
    status = fadiff_cmd_verify(config, out_dir.c_str());
  } else if (command == "converge") {
    status = fadiff_cmd_converge(config, out_dir.c_str());
  } else {
    status = fadiff_cmd_run(config, out_dir.c_str());
  }

  if (status == FADIFF_OK) {
    std::printf("%s: %s\n", command.c_str(), fadiff_last_summary());
  } else {
    std::fprintf(stderr, "%s failed: %s\n", command.c_str(),
                 fadiff_last_error());
  }
  fadiff_config_destroy(config);
  return static_cast<int>(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Field-aligned anisotropic diffusion solver (SBP-SAT)"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::string seed;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Path to the run config file");
    sub->add_option("--out", out_dir, "Output directory for CSV artifacts");
    sub->add_option("--seed", seed, "Override maps.seed from the config");
  };
  add_common(app.add_subcommand(
      "verify", "Build operators and certify every SBP/map property"));
  add_common(app.add_subcommand(
      "converge", "Manufactured-solution convergence study"));
  add_common(app.add_subcommand("run", "Integrate the configured problem"));

  CLI11_PARSE(app, argc, argv);
  return run(app.get_subcommands().front()->get_name(), config_path, out_dir,
             seed);
}
