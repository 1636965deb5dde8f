#pragma once

#include "ionmap/analysis.hpp"
#include "ionmap/crab.hpp"
#include "ionmap/fidelity.hpp"
#include "ionmap/poincare.hpp"
#include "ionmap/qnd.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace ionmap {

/// Decimal formatting with enough digits for bit-stable double round trips.
std::string format_double(double v);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

uint64_t fnv1a64(const std::string& bytes);
std::string fnv1a64_hex(const std::string& bytes);

/// Pulse CSV, header `t_us,f_carrier,f_blue,f_red`, one row per grid point.
std::string pulse_csv(const PulseSet& pulses, const SystemParams& params);
/// Parses a pulse CSV; the row count fixes the time grid (rows = n_steps + 1).
PulseSet parse_pulse_csv(const std::string& text, int& n_steps, double& total_time);

nlohmann::json map_report_json(const MapReport& report);
std::string map_report_csv(const MapReport& report);  ///< columns n, p_up

nlohmann::json crab_params_json(const CrabParams& crab);
nlohmann::json opt_result_json(const OptResult& result, bool include_wall_time = true);

std::string robustness_csv(const RobustnessCurve& curve);  ///< columns xi, F

struct PoincareRow {
  int N = 0;
  int m = 0;
  double T_P = 0.0;   ///< units of 1/Omega_0
  double T_F = 0.0;
  double T_dphi = 0.0;
  double T_opt = 0.0;  ///< NaN when not computed
};
std::string poincare_csv(const std::vector<PoincareRow>& rows);

std::string scaling_csv(const std::vector<ScalingRow>& rows);  ///< N, one_minus_F, T_opt_us

/// Channel definition: JSON list of complex matrices (row-major [re, im] pairs).
PhononChannel parse_channel_json(const nlohmann::json& j);

}  // namespace ionmap
