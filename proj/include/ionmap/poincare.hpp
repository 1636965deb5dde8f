#pragma once

#include "ionmap/system_model.hpp"

#include <vector>

namespace ionmap {

/// A set of rotating pointers: one resonant blue-sideband Rabi ladder per
/// phonon level n = 0..N-1, rotating at omega[n] = Omega_0 |M_{n,n+1}|.
struct PointerSystem {
  int N = 0;
  std::vector<double> omega;  ///< rad/us, strictly increasing in the Lamb-Dicke window
  int m = 0;                  ///< target level (wants a pi rotation)
  double eps = 0.02;          ///< error budget on 1 - F
};

PointerSystem make_pointer_system(const SystemParams& params, int N, int m, double eps);

/// Directional errors Delta_phi_n(t): half the angular distance of the Rabi
/// angle omega_n t from pi (n = m) or from 0 (n != m), so that
/// F_up = cos^2 Delta_phi_m and F_down = mean cos^2 Delta_phi_n hold exactly.
std::vector<double> pointer_deviations(const PointerSystem& sys, double t);

/// Hemmer-style recurrence estimate with the uniform tolerance
/// Delta_phi = sqrt(eps/2):  1/T_P = (eps/2)^{(N-1)/2} / (2 pi)^N * sum omega_n.
double analytic_recurrence_time(const PointerSystem& sys);

struct WaitResult {
  bool found = false;
  double t = 0.0;           ///< first crossing (bisection-refined), us
  double best_value = 0.0;  ///< smallest deviation metric seen when not found
  double best_t = 0.0;
};

/// First t > 0 on the grid with
/// Delta_phi_m^2 + sum_{n != m} Delta_phi_n^2 / (N-1) <= eps.
WaitResult waiting_time_fidelity(const PointerSystem& sys, double t_max, double dt);

/// First t > 0 on the grid with max_n Delta_phi_n <= sqrt(eps/2).
WaitResult waiting_time_uniform(const PointerSystem& sys, double t_max, double dt);

/// Scan step from the fastest pointer, dt = factor * 2 pi / omega_{N-1}.
double default_scan_dt(const PointerSystem& sys, double factor = 0.005);

}  // namespace ionmap
