#pragma once

#include "ionmap/crab.hpp"
#include "ionmap/system_model.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace ionmap {

/// Invalid configuration; the message names the offending key.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Task { Optimize, Evaluate, Robustness, Poincare, Qnd, Scaling };
std::string task_name(Task task);

struct QndRhoSpec {
  std::string type = "thermal";  ///< "thermal" or "fock"
  double nbar = 1.0;
  int n = 0;
};

struct QndMapsSpec {
  std::string type = "ideal";  ///< "ideal" or "pulses"
  std::string pulse_csv_m;
  std::string pulse_csv_m_prime;
};

struct ExperimentConfig {
  SystemParams system;

  // control block
  ControlScenario scenario = ControlScenario::ThreeField;
  int m = 0;
  int N = 10;
  OptimizeConfig opt;  ///< scenario/threads mirrored for convenience

  Task task = Task::Evaluate;
  std::string output_prefix = "out/run";
  int threads = 1;

  struct {
    std::string pulse_csv;
  } evaluate;

  struct {
    std::string pulse_csv;
    double xi_min = -0.01;
    double xi_max = 0.01;
    int points = 21;
  } robustness;

  struct {
    int N_min = 2;
    int N_max = 5;
    double eps = 0.02;
    double dt_factor = 0.005;
    double t_max_factor = 50.0;
    bool compute_t_opt = false;
    std::vector<double> t_opt_ladder_us = {60.0, 100.0, 150.0, 300.0, 500.0};
  } poincare;

  struct {
    int m = 0;
    int m_prime = 0;
    std::string channel_json;  ///< empty: identity channel
    QndRhoSpec rho;
    QndMapsSpec maps;
  } qnd;

  struct {
    std::vector<int> N_list = {2, 3, 4, 5};
  } scaling;
};

/// Strict parser: unknown keys are rejected, all fields carry defaults.
/// Frequencies are given in kHz (omega = 2 pi * value) and converted on load.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config_file(const std::string& path);

/// Round trip for the run manifest: the effective configuration after
/// defaulting and overrides.
nlohmann::json config_json(const ExperimentConfig& config);

}  // namespace ionmap
