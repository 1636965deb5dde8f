#include "ionmap/poincare.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ionmap {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

double deviation(double theta, bool target_pi) {
  // theta in [0, 2pi); half the shortest angular distance to the target
  if (target_pi) return 0.5 * std::abs(theta - M_PI);
  return 0.5 * std::min(theta, kTwoPi - theta);
}

double wrap(double angle) {
  double a = std::fmod(angle, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  return a;
}

}  // namespace

PointerSystem make_pointer_system(const SystemParams& params, int N, int m, double eps) {
  if (N < 1) throw std::invalid_argument("pointer system: N must be >= 1");
  if (m < 0 || m >= N) throw std::invalid_argument("pointer system: requires 0 <= m < N");
  if (!(eps > 0.0)) throw std::invalid_argument("pointer system: eps must be > 0");
  PointerSystem sys;
  sys.N = N;
  sys.m = m;
  sys.eps = eps;
  sys.omega.resize(N);
  for (int n = 0; n < N; ++n)
    sys.omega[n] = params.omega_0 * matrix_element(n, +1, params.eta).imag();
  for (int n = 0; n + 1 < N; ++n) {
    if (!(sys.omega[n] < sys.omega[n + 1]))
      throw std::invalid_argument(
          "pointer system: frequencies not strictly increasing (outside the Lamb-Dicke window)");
  }
  return sys;
}

std::vector<double> pointer_deviations(const PointerSystem& sys, double t) {
  if (t < 0.0) throw std::invalid_argument("pointer_deviations: t must be >= 0");
  std::vector<double> out(sys.N);
  for (int n = 0; n < sys.N; ++n)
    out[n] = deviation(wrap(sys.omega[n] * t), n == sys.m);
  return out;
}

double analytic_recurrence_time(const PointerSystem& sys) {
  if (!(sys.eps > 0.0 && sys.eps < 1.0))
    throw std::invalid_argument("analytic_recurrence_time: eps must be in (0, 1)");
  double sum = 0.0;
  for (double w : sys.omega) sum += w;
  if (!(sum > 0.0)) throw std::invalid_argument("analytic_recurrence_time: zero pointer sum");
  const double slack = std::pow(sys.eps / 2.0, 0.5 * (sys.N - 1));
  return std::pow(kTwoPi, sys.N) / (slack * sum);
}

namespace {

// Deviation metrics; both compare against a "crossed below threshold" predicate.
double metric_fidelity(const PointerSystem& sys, const std::vector<double>& dphi) {
  double acc = dphi[sys.m] * dphi[sys.m];
  if (sys.N > 1) {
    double rest = 0.0;
    for (int n = 0; n < sys.N; ++n)
      if (n != sys.m) rest += dphi[n] * dphi[n];
    acc += rest / (sys.N - 1);
  }
  return acc;
}

double metric_uniform(const PointerSystem& /*sys*/, const std::vector<double>& dphi) {
  return *std::max_element(dphi.begin(), dphi.end());
}

template <typename Metric>
WaitResult scan(const PointerSystem& sys, double t_max, double dt, double threshold,
                Metric metric) {
  if (!(dt > 0.0) || !(t_max > dt)) throw std::invalid_argument("waiting time: bad scan grid");
  const double w_max = *std::max_element(sys.omega.begin(), sys.omega.end());
  if (dt > 0.01 * kTwoPi / w_max)
    throw std::invalid_argument("waiting time: dt too coarse for the fastest pointer");

  const long resync = 1 << 20;  // drift-free phase refresh
  std::vector<double> theta(sys.N, 0.0), dphi(sys.N);
  auto eval_at = [&](double t) {
    return metric(sys, pointer_deviations(sys, t));
  };

  WaitResult res;
  res.best_value = std::numeric_limits<double>::infinity();
  bool prev_ok = eval_at(0.0) <= threshold;  // vacuous thresholds hold at t = 0
  const long n_steps = static_cast<long>(t_max / dt);
  for (long j = 1; j <= n_steps; ++j) {
    if (j % resync == 0) {
      for (int n = 0; n < sys.N; ++n) theta[n] = wrap(sys.omega[n] * (j * dt));
    } else {
      for (int n = 0; n < sys.N; ++n) {
        theta[n] += sys.omega[n] * dt;
        if (theta[n] >= kTwoPi) theta[n] -= kTwoPi;
      }
    }
    for (int n = 0; n < sys.N; ++n) dphi[n] = deviation(theta[n], n == sys.m);
    const double value = metric(sys, dphi);
    if (value < res.best_value) {
      res.best_value = value;
      res.best_t = j * dt;
    }
    if (value <= threshold) {
      res.found = true;
      if (prev_ok) {
        res.t = j * dt;  // condition already held at the previous grid point
        return res;
      }
      // refine the first crossing on [t_{j-1}, t_j] to 1e-6 relative
      double lo = (j - 1) * dt, hi = j * dt;
      while (hi - lo > 1e-6 * hi) {
        const double mid = 0.5 * (lo + hi);
        (eval_at(mid) <= threshold ? hi : lo) = mid;
      }
      res.t = hi;
      return res;
    }
    prev_ok = false;
  }
  return res;
}

}  // namespace

WaitResult waiting_time_fidelity(const PointerSystem& sys, double t_max, double dt) {
  return scan(sys, t_max, dt, sys.eps, metric_fidelity);
}

WaitResult waiting_time_uniform(const PointerSystem& sys, double t_max, double dt) {
  return scan(sys, t_max, dt, std::sqrt(sys.eps / 2.0), metric_uniform);
}

double default_scan_dt(const PointerSystem& sys, double factor) {
  const double w_max = *std::max_element(sys.omega.begin(), sys.omega.end());
  return factor * kTwoPi / w_max;
}

}  // namespace ionmap
