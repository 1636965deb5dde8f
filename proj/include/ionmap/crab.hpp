#pragma once

#include "ionmap/fidelity.hpp"
#include "ionmap/rng.hpp"
#include "ionmap/system_model.hpp"

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace ionmap {

/// Which fields the optimizer drives.
enum class ControlScenario { ThreeField, CarrierBlue, CarrierRed, Discrete };

std::array<bool, 3> active_fields(ControlScenario scenario);
std::string scenario_name(ControlScenario scenario);
ControlScenario scenario_from_name(const std::string& name);

/// Randomized-basis coefficients for one field: K harmonic pairs (a_k, b_k)
/// at jittered frequencies w_k = 2 pi k (1 + r_k) / T, r_k in [-0.5, 0.5].
struct FieldBasis {
  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> r;
};

struct CrabParams {
  std::array<bool, 3> active = {true, true, true};
  int K = 12;
  uint64_t seed = 0;                    ///< seed that produced the jitters
  bool discrete = false;                ///< threshold the series to +-1
  std::array<FieldBasis, 3> fields;

  /// Packs (a, b) of the active fields into one search vector, carrier first.
  Eigen::VectorXd coefficients() const;
  void set_coefficients(const Eigen::VectorXd& x);
};

/// Draws fresh jitters (distinct per field) and initial coefficients uniform
/// in [-coeff_range, coeff_range].
CrabParams random_crab_params(const std::array<bool, 3>& active, int K, bool discrete,
                              double coeff_range, Rng& rng);

/// Realizes the coefficient set on the params time grid: the raw harmonic
/// series is shaped by the sin^2(pi t / T) envelope and hard-clipped to
/// [-1, 1]; endpoints are exactly zero. Discrete params map the raw series
/// through sign() instead (ties resolve to +1).
PulseSet synthesize_pulse(const CrabParams& crab, const SystemParams& params);

/// 1 - F(m, N) for the synthesized pulse; lower is better.
double objective(const CrabParams& crab, int m, int N, const SystemParams& params);

struct SearchOptions {
  double tol_x = 1e-9;        ///< simplex diameter
  double tol_f = 1e-12;       ///< objective spread
  long max_evals = 20000;
  double simplex_step = 0.1;  ///< initial simplex edge length
};

/// One (evaluation index, best objective so far) improvement point.
struct TracePoint {
  long eval = 0;
  double value = 0.0;
};

struct SearchResult {
  Eigen::VectorXd x;
  double f = 0.0;
  long evals = 0;
  bool budget_exhausted = false;
  std::vector<TracePoint> trace;  ///< best-so-far improvements, monotone
};

/// Nelder-Mead simplex descent with the standard reflection/expansion/
/// contraction/shrink coefficients (1, 2, 0.5, 0.5). x0 is always evaluated,
/// even with a zero budget.
SearchResult direct_search(const std::function<double(const Eigen::VectorXd&)>& f,
                           const Eigen::VectorXd& x0, const SearchOptions& opts);

struct OptimizeConfig {
  ControlScenario scenario = ControlScenario::ThreeField;
  int K = 12;
  int restarts = 8;
  long budget = 20000;           ///< objective evaluations per restart
  uint64_t seed = 1;
  int threads = 1;
  double coeff_range = 0.3;      ///< initial coefficients uniform in +-range
  SearchOptions search;
};

struct OptResult {
  CrabParams best_params;
  PulseSet best_pulse;
  MapReport report;              ///< recomputed from scratch for best_pulse
  long evaluations = 0;          ///< total across restarts
  std::vector<std::vector<TracePoint>> traces;  ///< one per restart
  double wall_time_s = 0.0;
  int best_restart = -1;
};

/// Multi-start CRAB optimization of F(m, N): each restart draws fresh jitters
/// and coefficients from a seed-derived stream and runs one direct_search.
OptResult optimize_map(int m, int N, const SystemParams& params, const OptimizeConfig& config);

/// Phase-flip control: two fields at constant power, sign-modulated. The
/// continuous coefficients remain the search variables.
OptResult optimize_discrete(int m, int N, const SystemParams& params,
                            const OptimizeConfig& config);

}  // namespace ionmap
