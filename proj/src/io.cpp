#include "ionmap/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ionmap {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

uint64_t fnv1a64(const std::string& bytes) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string fnv1a64_hex(const std::string& bytes) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

std::string pulse_csv(const PulseSet& pulses, const SystemParams& params) {
  std::ostringstream os;
  os << "t_us,f_carrier,f_blue,f_red\n";
  for (int j = 0; j <= params.n_steps; ++j) {
    const double t = params.total_time * j / params.n_steps;
    os << format_double(t) << ',' << format_double(pulses.samples[0][j]) << ','
       << format_double(pulses.samples[1][j]) << ',' << format_double(pulses.samples[2][j])
       << '\n';
  }
  return os.str();
}

PulseSet parse_pulse_csv(const std::string& text, int& n_steps, double& total_time) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("pulse csv: empty file");
  if (line.find("t_us") != 0) throw std::runtime_error("pulse csv: missing header");
  std::vector<std::array<double, 4>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::array<double, 4> row{};
    std::istringstream ls(line);
    std::string cell;
    for (int c = 0; c < 4; ++c) {
      if (!std::getline(ls, cell, ',')) throw std::runtime_error("pulse csv: short row");
      row[c] = std::stod(cell);
    }
    rows.push_back(row);
  }
  if (rows.size() < 2) throw std::runtime_error("pulse csv: needs at least two grid points");
  n_steps = static_cast<int>(rows.size()) - 1;
  total_time = rows.back()[0];
  PulseSet p = PulseSet::zeros(n_steps);
  for (int j = 0; j <= n_steps; ++j)
    for (int f = 0; f < 3; ++f) p.samples[f][j] = rows[j][f + 1];
  return p;
}

nlohmann::json map_report_json(const MapReport& r) {
  nlohmann::json j;
  j["m"] = r.m;
  j["N"] = r.N;
  j["F"] = r.F;
  j["F_up"] = r.F_up;
  j["F_down"] = r.F_down;
  j["p_up"] = r.p_up;
  j["diagnostics"] = {{"F_subspace", r.F_subspace},
                      {"F_up_subspace", r.F_up_subspace},
                      {"F_down_subspace", r.F_down_subspace}};
  return j;
}

std::string map_report_csv(const MapReport& r) {
  std::ostringstream os;
  os << "n,p_up\n";
  for (size_t n = 0; n < r.p_up.size(); ++n)
    os << n << ',' << format_double(r.p_up[n]) << '\n';
  return os.str();
}

nlohmann::json crab_params_json(const CrabParams& crab) {
  nlohmann::json j;
  j["K"] = crab.K;
  j["seed"] = crab.seed;
  j["discrete"] = crab.discrete;
  const char* names[3] = {"carrier", "blue", "red"};
  for (int f = 0; f < 3; ++f) {
    if (!crab.active[f]) continue;
    j["fields"][names[f]] = {{"a", crab.fields[f].a},
                             {"b", crab.fields[f].b},
                             {"r", crab.fields[f].r}};
  }
  return j;
}

nlohmann::json opt_result_json(const OptResult& result, bool include_wall_time) {
  nlohmann::json j;
  j["F"] = result.report.F;
  j["report"] = map_report_json(result.report);
  j["params"] = crab_params_json(result.best_params);
  j["evaluations"] = result.evaluations;
  j["best_restart"] = result.best_restart;
  nlohmann::json traces = nlohmann::json::array();
  for (const auto& trace : result.traces) {
    nlohmann::json t = nlohmann::json::array();
    for (const auto& pt : trace) t.push_back({pt.eval, pt.value});
    traces.push_back(std::move(t));
  }
  j["traces"] = std::move(traces);
  if (include_wall_time) j["wall_time_s"] = result.wall_time_s;
  return j;
}

std::string robustness_csv(const RobustnessCurve& curve) {
  std::ostringstream os;
  os << "xi,F\n";
  for (size_t i = 0; i < curve.xi.size(); ++i)
    os << format_double(curve.xi[i]) << ',' << format_double(curve.F[i]) << '\n';
  return os.str();
}

std::string poincare_csv(const std::vector<PoincareRow>& rows) {
  std::ostringstream os;
  os << "N,m,T_P,T_F,T_dphi,T_opt\n";
  for (const auto& r : rows) {
    os << r.N << ',' << r.m << ',' << format_double(r.T_P) << ',' << format_double(r.T_F) << ','
       << format_double(r.T_dphi) << ',' << format_double(r.T_opt) << '\n';
  }
  return os.str();
}

std::string scaling_csv(const std::vector<ScalingRow>& rows) {
  std::ostringstream os;
  os << "N,one_minus_F,T_opt_us\n";
  for (const auto& r : rows)
    os << r.N << ',' << format_double(1.0 - r.best_F) << ',' << format_double(r.T_us) << '\n';
  return os.str();
}

PhononChannel parse_channel_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty())
    throw std::runtime_error("channel json: expected a non-empty list of matrices");
  PhononChannel ch;
  for (const auto& mat : j) {
    if (!mat.is_array() || mat.empty()) throw std::runtime_error("channel json: bad matrix");
    const size_t d = mat.size();
    Eigen::MatrixXcd K(d, d);
    for (size_t r = 0; r < d; ++r) {
      if (!mat[r].is_array() || mat[r].size() != d)
        throw std::runtime_error("channel json: matrix is not square");
      for (size_t c = 0; c < d; ++c) {
        const auto& cell = mat[r][c];
        if (!cell.is_array() || cell.size() != 2)
          throw std::runtime_error("channel json: entries must be [re, im] pairs");
        K(r, c) = Complex(cell[0].get<double>(), cell[1].get<double>());
      }
    }
    if (ch.kraus.size() && ch.kraus.front().rows() != K.rows())
      throw std::runtime_error("channel json: inconsistent matrix sizes");
    ch.kraus.push_back(std::move(K));
  }
  return ch;
}

}  // namespace ionmap
