#include "ionmap/runner.hpp"

#include "ionmap/analysis.hpp"
#include "ionmap/io.hpp"
#include "ionmap/poincare.hpp"
#include "ionmap/propagator.hpp"
#include "ionmap/qnd.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>

namespace ionmap {

namespace {

struct Sink {
  std::string prefix;
  std::vector<std::pair<std::string, std::string>> outputs;  // path, hash

  std::string emit(const std::string& suffix, const std::string& content) {
    const std::string path = prefix + suffix;
    write_text_file(path, content);
    outputs.emplace_back(path, fnv1a64_hex(content));
    return path;
  }
};

PulseSet load_pulse_on_grid(const std::string& path, const SystemParams& system,
                            const char* key) {
  int n_steps = 0;
  double total_time = 0.0;
  const PulseSet pulses = parse_pulse_csv(read_text_file(path), n_steps, total_time);
  if (n_steps != system.n_steps)
    throw ConfigError(std::string("config: ") + key + ": csv grid has " +
                      std::to_string(n_steps) + " intervals, system.n_steps is " +
                      std::to_string(system.n_steps));
  if (std::abs(total_time - system.total_time) > 1e-9 * system.total_time)
    throw ConfigError(std::string("config: ") + key + ": csv duration differs from system.T_us");
  return pulses;
}

void run_optimize(const ExperimentConfig& c, Sink& sink, std::ostream& log) {
  const OptResult res = c.scenario == ControlScenario::Discrete
                            ? optimize_discrete(c.m, c.N, c.system, c.opt)
                            : optimize_map(c.m, c.N, c.system, c.opt);
  log << "optimize: F = " << res.report.F << " after " << res.evaluations << " evaluations ("
      << res.wall_time_s << " s)\n";
  sink.emit("_result.json", opt_result_json(res).dump(2) + "\n");
  sink.emit("_pulse.csv", pulse_csv(res.best_pulse, c.system));
  sink.emit("_report.csv", map_report_csv(res.report));
}

void run_evaluate(const ExperimentConfig& c, Sink& sink, std::ostream& log) {
  const PulseSet pulses = load_pulse_on_grid(c.evaluate.pulse_csv, c.system, "evaluate.pulse_csv");
  const MapReport report = fidelity(evolve_basis(c.system, pulses, c.N), c.m, c.N);
  log << "evaluate: F = " << report.F << "\n";
  sink.emit("_report.json", map_report_json(report).dump(2) + "\n");
  sink.emit("_report.csv", map_report_csv(report));
}

void run_robustness(const ExperimentConfig& c, Sink& sink, std::ostream& log) {
  const PulseSet pulses =
      load_pulse_on_grid(c.robustness.pulse_csv, c.system, "robustness.pulse_csv");
  std::vector<double> grid(c.robustness.points);
  const double lo = c.robustness.xi_min, hi = c.robustness.xi_max;
  int nearest = 0;
  for (int i = 0; i < c.robustness.points; ++i) {
    grid[i] = lo + (hi - lo) * i / (c.robustness.points - 1);
    if (std::abs(grid[i]) < std::abs(grid[nearest])) nearest = i;
  }
  grid[nearest] = 0.0;  // the unperturbed point anchors max_drop
  const RobustnessCurve curve = scan_calibration(pulses, c.system, c.m, c.N, grid);
  log << "robustness: max drop " << curve.max_drop << ", peak-to-peak " << curve.peak_to_peak
      << "\n";
  sink.emit("_robustness.csv", robustness_csv(curve));
  nlohmann::json j{{"max_drop", curve.max_drop}, {"peak_to_peak", curve.peak_to_peak}};
  sink.emit("_robustness.json", j.dump(2) + "\n");
}

void run_poincare(const ExperimentConfig& c, Sink& sink, std::ostream& log) {
  const double omega0 = c.system.omega_0;
  std::vector<PoincareRow> rows;
  for (int N = c.poincare.N_min; N <= c.poincare.N_max; ++N) {
    double t_opt_units = std::nan("");
    if (c.poincare.compute_t_opt) {
      OptimizeConfig opt = c.opt;
      opt.scenario = ControlScenario::CarrierRed;
      const TimedOptimum timed = minimal_mapping_time(0, N, c.poincare.eps,
                                                      c.poincare.t_opt_ladder_us, c.system, opt);
      if (timed.achieved) {
        t_opt_units = timed.T_us * omega0;
        log << "poincare: N=" << N << " T_opt=" << timed.T_us << " us (F=" << timed.result.report.F
            << ")\n";
      } else {
        log << "poincare: N=" << N << " no ladder time reached 1-F <= " << c.poincare.eps
            << " (best F=" << timed.result.report.F << ")\n";
      }
    }
    for (int m = 0; m < N; ++m) {
      const PointerSystem sys = make_pointer_system(c.system, N, m, c.poincare.eps);
      const double T_P = analytic_recurrence_time(sys);
      const double dt = default_scan_dt(sys, c.poincare.dt_factor);
      const double t_max = c.poincare.t_max_factor * T_P;
      const WaitResult tf = waiting_time_fidelity(sys, t_max, dt);
      const WaitResult tu = waiting_time_uniform(sys, t_max, dt);
      if (!tf.found || !tu.found)
        log << "poincare: N=" << N << " m=" << m << ": not found within " << t_max << " us\n";
      rows.push_back({N, m, T_P * omega0, tf.found ? tf.t * omega0 : std::nan(""),
                      tu.found ? tu.t * omega0 : std::nan(""), t_opt_units});
    }
  }
  sink.emit("_poincare.csv", poincare_csv(rows));
}

void run_qnd(const ExperimentConfig& c, Sink& sink, std::ostream& log) {
  const int d = c.system.fock_dim();
  Eigen::MatrixXcd rho_ho;
  if (c.qnd.rho.type == "thermal") {
    rho_ho = thermal_state(d, c.qnd.rho.nbar);
  } else {
    if (c.qnd.rho.n < 0 || c.qnd.rho.n >= d) throw ConfigError("config: qnd.rho.n outside 0..n_max");
    rho_ho = Eigen::MatrixXcd::Zero(d, d);
    rho_ho(c.qnd.rho.n, c.qnd.rho.n) = 1.0;
  }

  PhononChannel channel = PhononChannel::identity(d);
  if (!c.qnd.channel_json.empty()) {
    channel = parse_channel_json(nlohmann::json::parse(read_text_file(c.qnd.channel_json)));
    if (channel.kraus.front().rows() != d)
      throw ConfigError("config: qnd.channel_json dimension differs from n_max + 1");
  }

  UnitaryProvider maps;
  if (c.qnd.maps.type == "ideal") {
    maps = ideal_maps(c.system.n_max);
  } else {
    const PulseSet pulse_m =
        load_pulse_on_grid(c.qnd.maps.pulse_csv_m, c.system, "qnd.maps.pulse_csv_m");
    const PulseSet pulse_mp =
        load_pulse_on_grid(c.qnd.maps.pulse_csv_m_prime, c.system, "qnd.maps.pulse_csv_m_prime");
    const Eigen::MatrixXcd U_m = total_unitary(c.system, pulse_m);
    const Eigen::MatrixXcd U_mp = total_unitary(c.system, pulse_mp);
    const int m = c.qnd.m, mp = c.qnd.m_prime;
    maps = [U_m, U_mp, m, mp](int level) {
      if (level == m) return U_m;
      if (level == mp) return U_mp;
      throw std::invalid_argument("qnd maps: no pulse supplied for level " +
                                  std::to_string(level));
    };
  }

  const FilterOutcome outcome = run_filter_sequence(rho_ho, c.qnd.m, c.qnd.m_prime, channel, maps);
  const double formula = closed_form_p_f(rho_ho, c.qnd.m, c.qnd.m_prime, channel);
  const double initial = initial_population_measurement(rho_ho, c.qnd.m, maps);
  log << "qnd: P_f = " << outcome.p_f << " (closed form with ideal maps: " << formula << ")\n";

  nlohmann::json j;
  j["P_f"] = outcome.p_f;
  j["P_f_closed_form_ideal"] = formula;
  j["initial_population"] = initial;
  j["protocol_error"] = std::abs(outcome.p_f - formula);
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : outcome.traces)
    steps.push_back({{"step", s.step},
                     {"in_trap", s.in_trap},
                     {"shelf_a1", s.shelf_a1},
                     {"shelf_a2", s.shelf_a2}});
  j["steps"] = std::move(steps);
  sink.emit("_qnd.json", j.dump(2) + "\n");
}

void run_scaling(const ExperimentConfig& c, Sink& sink, std::ostream& log) {
  const auto rows = scaling_run(c.m, c.system.total_time, c.scaling.N_list, c.system, c.opt);
  for (const auto& r : rows)
    log << "scaling: N=" << r.N << " 1-F=" << 1.0 - r.best_F << " (T=" << r.T_us << " us)\n";
  sink.emit("_scaling.csv", scaling_csv(rows));
}

}  // namespace

RunArtifacts run_experiment(const ExperimentConfig& config, std::ostream& log) {
  const auto t0 = std::chrono::steady_clock::now();
  for (const auto& w : regime_warnings(config.system)) log << "warning: " << w << "\n";

  const std::filesystem::path prefix(config.output_prefix);
  if (prefix.has_parent_path()) std::filesystem::create_directories(prefix.parent_path());

  Sink sink{config.output_prefix, {}};
  switch (config.task) {
    case Task::Optimize: run_optimize(config, sink, log); break;
    case Task::Evaluate: run_evaluate(config, sink, log); break;
    case Task::Robustness: run_robustness(config, sink, log); break;
    case Task::Poincare: run_poincare(config, sink, log); break;
    case Task::Qnd: run_qnd(config, sink, log); break;
    case Task::Scaling: run_scaling(config, sink, log); break;
  }

  nlohmann::json manifest;
  manifest["config"] = config_json(config);
  manifest["seed"] = config.opt.seed;
  manifest["versions"] = {{"ionmap", "0.1.0"},
                          {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                                        std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                        std::to_string(EIGEN_MINOR_VERSION)},
                          {"compiler", __VERSION__}};
  manifest["wall_time_s"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  nlohmann::json outputs = nlohmann::json::array();
  for (const auto& [path, hash] : sink.outputs)
    outputs.push_back({{"path", path}, {"fnv1a64", hash}});
  manifest["outputs"] = std::move(outputs);

  RunArtifacts artifacts;
  for (const auto& [path, hash] : sink.outputs) artifacts.files.push_back(path);
  const std::string manifest_path = config.output_prefix + "_manifest.json";
  write_text_file(manifest_path, manifest.dump(2) + "\n");
  artifacts.files.push_back(manifest_path);
  return artifacts;
}

}  // namespace ionmap
