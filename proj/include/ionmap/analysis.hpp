#pragma once

#include "ionmap/crab.hpp"
#include "ionmap/fidelity.hpp"

#include <vector>

namespace ionmap {

/// Fidelity under static amplitude miscalibration Omega_0 -> Omega_0 (1 + xi).
struct RobustnessCurve {
  std::vector<double> xi;
  std::vector<double> F;
  double max_drop = 0.0;      ///< F(0) - min F over the window
  double peak_to_peak = 0.0;  ///< max F - min F
};

/// Evolves with all pulse samples scaled by (1 + xi) per grid point. Scaled
/// samples may exceed |f| = 1; miscalibration is physical, the clipping
/// invariant binds designed pulses only.
RobustnessCurve scan_calibration(const PulseSet& pulses, const SystemParams& params, int m,
                                 int N, const std::vector<double>& xi_grid);

std::vector<double> default_xi_grid();  ///< 21 uniform points on [-0.01, 0.01]

struct TruncationReport {
  int n_max_base = 0;
  int n_max_big = 0;
  double F_base = 0.0;
  double F_big = 0.0;
  double abs_dF = 0.0;
  double max_p_up_diff = 0.0;
};

/// Recomputes F on a larger truncated space (default n_max = 19, dimension 40)
/// and reports the deviations.
TruncationReport check_truncation(const PulseSet& pulses, const SystemParams& params, int m,
                                  int N, int n_max_big = 19);

struct ScalingRow {
  int N = 0;
  double best_F = 0.0;
  double T_us = 0.0;
  long evaluations = 0;
};

/// Optimizes the map per N at fixed T and tabulates 1 - F (continuous or
/// discrete scenario per config.scenario).
std::vector<ScalingRow> scaling_run(int m, double T_us, const std::vector<int>& N_list,
                                    const SystemParams& base, const OptimizeConfig& config);

struct TimedOptimum {
  bool achieved = false;
  double T_us = 0.0;
  OptResult result;
};

/// Walks the T ladder (ascending) and returns the first operation time whose
/// optimized map reaches 1 - F <= eps.
TimedOptimum minimal_mapping_time(int m, int N, double eps, const std::vector<double>& T_ladder,
                                  const SystemParams& base, const OptimizeConfig& config);

}  // namespace ionmap
