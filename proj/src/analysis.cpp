#include "ionmap/analysis.hpp"

#include "ionmap/propagator.hpp"

#include <algorithm>
#include <stdexcept>

namespace ionmap {

std::vector<double> default_xi_grid() {
  std::vector<double> grid(21);
  for (int i = 0; i < 21; ++i) grid[i] = -0.01 + 0.001 * i;
  grid[10] = 0.0;
  return grid;
}

RobustnessCurve scan_calibration(const PulseSet& pulses, const SystemParams& params, int m,
                                 int N, const std::vector<double>& xi_grid) {
  if (std::find(xi_grid.begin(), xi_grid.end(), 0.0) == xi_grid.end())
    throw std::invalid_argument("scan_calibration: xi grid must contain 0");
  RobustnessCurve curve;
  curve.xi = xi_grid;
  curve.F.reserve(xi_grid.size());
  double f0 = 0.0;
  for (double xi : xi_grid) {
    const PulseSet scaled = pulses.scaled(1.0 + xi);
    const double F = fidelity(evolve_basis(params, scaled, N), m, N).F;
    curve.F.push_back(F);
    if (xi == 0.0) f0 = F;
  }
  const double lo = *std::min_element(curve.F.begin(), curve.F.end());
  const double hi = *std::max_element(curve.F.begin(), curve.F.end());
  curve.max_drop = f0 - lo;
  curve.peak_to_peak = hi - lo;
  return curve;
}

TruncationReport check_truncation(const PulseSet& pulses, const SystemParams& params, int m,
                                  int N, int n_max_big) {
  TruncationReport rep;
  rep.n_max_base = params.n_max;
  rep.n_max_big = n_max_big;
  const MapReport base = fidelity(evolve_basis(params, pulses, N), m, N);
  SystemParams big = params;
  big.n_max = n_max_big;
  const MapReport wide = fidelity(evolve_basis(big, pulses, N), m, N);
  rep.F_base = base.F;
  rep.F_big = wide.F;
  rep.abs_dF = std::abs(base.F - wide.F);
  for (int n = 0; n < N; ++n)
    rep.max_p_up_diff = std::max(rep.max_p_up_diff, std::abs(base.p_up[n] - wide.p_up[n]));
  return rep;
}

std::vector<ScalingRow> scaling_run(int m, double T_us, const std::vector<int>& N_list,
                                    const SystemParams& base, const OptimizeConfig& config) {
  if (N_list.empty()) throw std::invalid_argument("scaling_run: empty N list");
  SystemParams params = base;
  params.total_time = T_us;
  std::vector<ScalingRow> rows;
  rows.reserve(N_list.size());
  for (int N : N_list) {
    const OptResult res = config.scenario == ControlScenario::Discrete
                              ? optimize_discrete(m, N, params, config)
                              : optimize_map(m, N, params, config);
    rows.push_back({N, res.report.F, T_us, res.evaluations});
  }
  return rows;
}

TimedOptimum minimal_mapping_time(int m, int N, double eps, const std::vector<double>& T_ladder,
                                  const SystemParams& base, const OptimizeConfig& config) {
  if (T_ladder.empty()) throw std::invalid_argument("minimal_mapping_time: empty T ladder");
  TimedOptimum out;
  for (double T : T_ladder) {
    SystemParams params = base;
    params.total_time = T;
    OptResult res = config.scenario == ControlScenario::Discrete
                        ? optimize_discrete(m, N, params, config)
                        : optimize_map(m, N, params, config);
    const bool ok = 1.0 - res.report.F <= eps;
    if (ok || T == T_ladder.back()) {
      out.achieved = ok;
      out.T_us = T;
      out.result = std::move(res);
      if (ok) break;
    }
  }
  return out;
}

}  // namespace ionmap
