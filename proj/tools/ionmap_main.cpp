#include "ionmap/config.hpp"
#include "ionmap/runner.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"ionmap: phonon-number-selective spin mapping for a trapped ion"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "execute a task described by a JSON config");
  std::string config_path;
  std::string out_dir;
  int threads = 0;
  long long seed = -1;
  run->add_option("--config", config_path, "path to the experiment config")->required();
  run->add_option("--out", out_dir, "redirect outputs into this directory");
  run->add_option("--threads", threads, "override the threads knob");
  run->add_option("--seed", seed, "override the optimizer seed");

  CLI11_PARSE(app, argc, argv);

  ionmap::ExperimentConfig config;
  try {
    config = ionmap::load_config_file(config_path);
    if (!out_dir.empty()) {
      const std::filesystem::path name =
          std::filesystem::path(config.output_prefix).filename();
      config.output_prefix = (std::filesystem::path(out_dir) / name).string();
    }
    if (threads > 0) {
      config.threads = threads;
      config.opt.threads = threads;
    }
    if (seed >= 0) config.opt.seed = static_cast<uint64_t>(seed);
  } catch (const ionmap::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: invalid config: " << e.what() << "\n";
    return 1;
  }

  try {
    const auto artifacts = ionmap::run_experiment(config, std::cout);
    for (const auto& f : artifacts.files) std::cout << "wrote " << f << "\n";
  } catch (const ionmap::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
