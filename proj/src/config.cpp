#include "ionmap/config.hpp"

#include "ionmap/io.hpp"

#include <cmath>
#include <set>

namespace ionmap {

namespace {

void check_keys(const nlohmann::json& j, const std::string& scope,
                std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ConfigError("config: '" + scope + "' must be an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& item : j.items()) {
    if (!ok.count(item.key()))
      throw ConfigError("config: unknown key '" + scope + "." + item.key() + "'");
  }
}

template <typename T>
T get(const nlohmann::json& j, const std::string& scope, const char* key, T def) {
  if (!j.contains(key)) return def;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError("config: bad value for '" + scope + "." + std::string(key) + "'");
  }
}

double khz_to_rad_per_us(double khz) { return 2.0 * M_PI * khz * 1e-3; }

}  // namespace

std::string task_name(Task task) {
  switch (task) {
    case Task::Optimize: return "optimize";
    case Task::Evaluate: return "evaluate";
    case Task::Robustness: return "robustness";
    case Task::Poincare: return "poincare";
    case Task::Qnd: return "qnd";
    case Task::Scaling: return "scaling";
  }
  throw ConfigError("unknown task");
}

ExperimentConfig parse_config(const nlohmann::json& j) {
  check_keys(j, "", {"task", "output_prefix", "threads", "system", "control", "evaluate",
                     "robustness", "poincare", "qnd", "scaling"});
  ExperimentConfig c;

  const std::string task = get<std::string>(j, "", "task", "");
  if (task == "optimize") c.task = Task::Optimize;
  else if (task == "evaluate") c.task = Task::Evaluate;
  else if (task == "robustness") c.task = Task::Robustness;
  else if (task == "poincare") c.task = Task::Poincare;
  else if (task == "qnd") c.task = Task::Qnd;
  else if (task == "scaling") c.task = Task::Scaling;
  else throw ConfigError("config: 'task' must be one of optimize|evaluate|robustness|poincare|qnd|scaling");

  c.output_prefix = get<std::string>(j, "", "output_prefix", c.output_prefix);
  c.threads = get<int>(j, "", "threads", c.threads);
  if (c.threads < 1) throw ConfigError("config: 'threads' must be >= 1");

  if (j.contains("system")) {
    const auto& s = j.at("system");
    check_keys(s, "system",
               {"eta", "omega_z_kHz", "omega_0_kHz", "T_us", "n_steps", "n_max", "resonant_only"});
    c.system.eta = get<double>(s, "system", "eta", c.system.eta);
    c.system.omega_z = khz_to_rad_per_us(get<double>(s, "system", "omega_z_kHz", 1400.0));
    c.system.omega_0 = khz_to_rad_per_us(get<double>(s, "system", "omega_0_kHz", 50.0));
    c.system.total_time = get<double>(s, "system", "T_us", c.system.total_time);
    c.system.n_steps = get<int>(s, "system", "n_steps", c.system.n_steps);
    c.system.n_max = get<int>(s, "system", "n_max", c.system.n_max);
    c.system.resonant_only = get<bool>(s, "system", "resonant_only", c.system.resonant_only);
  }
  try {
    validate(c.system);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: system: ") + e.what());
  }

  if (j.contains("control")) {
    const auto& ctl = j.at("control");
    check_keys(ctl, "control",
               {"scenario", "m", "N", "K", "restarts", "budget", "seed", "coeff_range", "tol_x",
                "tol_f", "simplex_step"});
    try {
      c.scenario = scenario_from_name(
          get<std::string>(ctl, "control", "scenario", scenario_name(c.scenario)));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("config: control.scenario: ") + e.what());
    }
    c.m = get<int>(ctl, "control", "m", c.m);
    c.N = get<int>(ctl, "control", "N", c.N);
    c.opt.K = get<int>(ctl, "control", "K", c.opt.K);
    c.opt.restarts = get<int>(ctl, "control", "restarts", c.opt.restarts);
    c.opt.budget = get<long>(ctl, "control", "budget", c.opt.budget);
    c.opt.seed = get<uint64_t>(ctl, "control", "seed", c.opt.seed);
    c.opt.coeff_range = get<double>(ctl, "control", "coeff_range", c.opt.coeff_range);
    c.opt.search.tol_x = get<double>(ctl, "control", "tol_x", c.opt.search.tol_x);
    c.opt.search.tol_f = get<double>(ctl, "control", "tol_f", c.opt.search.tol_f);
    c.opt.search.simplex_step = get<double>(ctl, "control", "simplex_step", c.opt.search.simplex_step);
    c.opt.search.max_evals = c.opt.budget;
  }
  c.opt.scenario = c.scenario;
  c.opt.threads = c.threads;
  c.opt.search.max_evals = c.opt.budget;
  if (c.N < 2) throw ConfigError("config: control.N must be >= 2");
  if (c.m < 0 || c.m >= c.N) throw ConfigError("config: control.m must satisfy 0 <= m < N");
  if (c.N > c.system.n_max + 1) throw ConfigError("config: control.N exceeds system.n_max + 1");
  if (c.opt.K < 1) throw ConfigError("config: control.K must be >= 1");
  if (c.opt.restarts < 1) throw ConfigError("config: control.restarts must be >= 1");
  if (c.opt.budget < 0) throw ConfigError("config: control.budget must be >= 0");

  if (j.contains("evaluate")) {
    const auto& e = j.at("evaluate");
    check_keys(e, "evaluate", {"pulse_csv"});
    c.evaluate.pulse_csv = get<std::string>(e, "evaluate", "pulse_csv", "");
  }
  if (c.task == Task::Evaluate && c.evaluate.pulse_csv.empty())
    throw ConfigError("config: evaluate.pulse_csv is required for task=evaluate");

  if (j.contains("robustness")) {
    const auto& r = j.at("robustness");
    check_keys(r, "robustness", {"pulse_csv", "xi_min", "xi_max", "points"});
    c.robustness.pulse_csv = get<std::string>(r, "robustness", "pulse_csv", "");
    c.robustness.xi_min = get<double>(r, "robustness", "xi_min", c.robustness.xi_min);
    c.robustness.xi_max = get<double>(r, "robustness", "xi_max", c.robustness.xi_max);
    c.robustness.points = get<int>(r, "robustness", "points", c.robustness.points);
    if (c.robustness.points < 2) throw ConfigError("config: robustness.points must be >= 2");
    if (!(c.robustness.xi_min <= 0.0 && 0.0 <= c.robustness.xi_max))
      throw ConfigError("config: robustness window must contain xi = 0");
  }
  if (c.task == Task::Robustness && c.robustness.pulse_csv.empty())
    throw ConfigError("config: robustness.pulse_csv is required for task=robustness");

  if (j.contains("poincare")) {
    const auto& p = j.at("poincare");
    check_keys(p, "poincare",
               {"N_min", "N_max", "eps", "dt_factor", "t_max_factor", "compute_t_opt",
                "t_opt_ladder_us"});
    c.poincare.N_min = get<int>(p, "poincare", "N_min", c.poincare.N_min);
    c.poincare.N_max = get<int>(p, "poincare", "N_max", c.poincare.N_max);
    c.poincare.eps = get<double>(p, "poincare", "eps", c.poincare.eps);
    c.poincare.dt_factor = get<double>(p, "poincare", "dt_factor", c.poincare.dt_factor);
    c.poincare.t_max_factor = get<double>(p, "poincare", "t_max_factor", c.poincare.t_max_factor);
    c.poincare.compute_t_opt = get<bool>(p, "poincare", "compute_t_opt", false);
    c.poincare.t_opt_ladder_us =
        get<std::vector<double>>(p, "poincare", "t_opt_ladder_us", c.poincare.t_opt_ladder_us);
    if (c.poincare.N_min < 1 || c.poincare.N_max < c.poincare.N_min)
      throw ConfigError("config: poincare.N_min/N_max out of order");
    if (!(c.poincare.eps > 0.0 && c.poincare.eps < 1.0))
      throw ConfigError("config: poincare.eps must be in (0, 1)");
    if (!(c.poincare.dt_factor > 0.0 && c.poincare.dt_factor <= 0.01))
      throw ConfigError("config: poincare.dt_factor must be in (0, 0.01]");
  }

  if (j.contains("qnd")) {
    const auto& q = j.at("qnd");
    check_keys(q, "qnd", {"m", "m_prime", "channel_json", "rho", "maps"});
    c.qnd.m = get<int>(q, "qnd", "m", c.qnd.m);
    c.qnd.m_prime = get<int>(q, "qnd", "m_prime", c.qnd.m_prime);
    c.qnd.channel_json = get<std::string>(q, "qnd", "channel_json", "");
    if (q.contains("rho")) {
      const auto& rho = q.at("rho");
      check_keys(rho, "qnd.rho", {"type", "nbar", "n"});
      c.qnd.rho.type = get<std::string>(rho, "qnd.rho", "type", c.qnd.rho.type);
      c.qnd.rho.nbar = get<double>(rho, "qnd.rho", "nbar", c.qnd.rho.nbar);
      c.qnd.rho.n = get<int>(rho, "qnd.rho", "n", c.qnd.rho.n);
      if (c.qnd.rho.type != "thermal" && c.qnd.rho.type != "fock")
        throw ConfigError("config: qnd.rho.type must be 'thermal' or 'fock'");
    }
    if (q.contains("maps")) {
      const auto& maps = q.at("maps");
      check_keys(maps, "qnd.maps", {"type", "pulse_csv_m", "pulse_csv_m_prime"});
      c.qnd.maps.type = get<std::string>(maps, "qnd.maps", "type", c.qnd.maps.type);
      c.qnd.maps.pulse_csv_m = get<std::string>(maps, "qnd.maps", "pulse_csv_m", "");
      c.qnd.maps.pulse_csv_m_prime = get<std::string>(maps, "qnd.maps", "pulse_csv_m_prime", "");
      if (c.qnd.maps.type != "ideal" && c.qnd.maps.type != "pulses")
        throw ConfigError("config: qnd.maps.type must be 'ideal' or 'pulses'");
      if (c.qnd.maps.type == "pulses" &&
          (c.qnd.maps.pulse_csv_m.empty() || c.qnd.maps.pulse_csv_m_prime.empty()))
        throw ConfigError("config: qnd.maps of type 'pulses' needs both pulse csv paths");
    }
    if (c.qnd.m < 0 || c.qnd.m > c.system.n_max || c.qnd.m_prime < 0 ||
        c.qnd.m_prime > c.system.n_max)
      throw ConfigError("config: qnd.m and qnd.m_prime must lie in 0..n_max");
  }

  if (j.contains("scaling")) {
    const auto& s = j.at("scaling");
    check_keys(s, "scaling", {"N_list"});
    c.scaling.N_list = get<std::vector<int>>(s, "scaling", "N_list", c.scaling.N_list);
    if (c.scaling.N_list.empty()) throw ConfigError("config: scaling.N_list must be non-empty");
    for (int n : c.scaling.N_list)
      if (n < 2 || n > c.system.n_max + 1)
        throw ConfigError("config: scaling.N_list entries must lie in 2..n_max+1");
  }
  return c;
}

ExperimentConfig load_config_file(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config: cannot parse '" + path + "': " + e.what());
  }
  return parse_config(j);
}

nlohmann::json config_json(const ExperimentConfig& c) {
  nlohmann::json j;
  j["task"] = task_name(c.task);
  j["output_prefix"] = c.output_prefix;
  j["threads"] = c.threads;
  j["system"] = {{"eta", c.system.eta},
                 {"omega_z_kHz", c.system.omega_z / (2.0 * M_PI) * 1e3},
                 {"omega_0_kHz", c.system.omega_0 / (2.0 * M_PI) * 1e3},
                 {"T_us", c.system.total_time},
                 {"n_steps", c.system.n_steps},
                 {"n_max", c.system.n_max},
                 {"resonant_only", c.system.resonant_only}};
  j["control"] = {{"scenario", scenario_name(c.scenario)},
                  {"m", c.m},
                  {"N", c.N},
                  {"K", c.opt.K},
                  {"restarts", c.opt.restarts},
                  {"budget", c.opt.budget},
                  {"seed", c.opt.seed},
                  {"coeff_range", c.opt.coeff_range},
                  {"tol_x", c.opt.search.tol_x},
                  {"tol_f", c.opt.search.tol_f},
                  {"simplex_step", c.opt.search.simplex_step}};
  switch (c.task) {
    case Task::Evaluate:
      j["evaluate"] = {{"pulse_csv", c.evaluate.pulse_csv}};
      break;
    case Task::Robustness:
      j["robustness"] = {{"pulse_csv", c.robustness.pulse_csv},
                         {"xi_min", c.robustness.xi_min},
                         {"xi_max", c.robustness.xi_max},
                         {"points", c.robustness.points}};
      break;
    case Task::Poincare:
      j["poincare"] = {{"N_min", c.poincare.N_min},
                       {"N_max", c.poincare.N_max},
                       {"eps", c.poincare.eps},
                       {"dt_factor", c.poincare.dt_factor},
                       {"t_max_factor", c.poincare.t_max_factor},
                       {"compute_t_opt", c.poincare.compute_t_opt},
                       {"t_opt_ladder_us", c.poincare.t_opt_ladder_us}};
      break;
    case Task::Qnd:
      j["qnd"] = {{"m", c.qnd.m},
                  {"m_prime", c.qnd.m_prime},
                  {"channel_json", c.qnd.channel_json},
                  {"rho", {{"type", c.qnd.rho.type}, {"nbar", c.qnd.rho.nbar}, {"n", c.qnd.rho.n}}},
                  {"maps",
                   {{"type", c.qnd.maps.type},
                    {"pulse_csv_m", c.qnd.maps.pulse_csv_m},
                    {"pulse_csv_m_prime", c.qnd.maps.pulse_csv_m_prime}}}};
      break;
    case Task::Scaling:
      j["scaling"] = {{"N_list", c.scaling.N_list}};
      break;
    case Task::Optimize:
      break;
  }
  return j;
}

}  // namespace ionmap
