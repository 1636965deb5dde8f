#pragma once

// Test-only reference implementations, independent of the library code paths
// they check.

#include "ionmap/crab.hpp"
#include "ionmap/qnd.hpp"
#include "ionmap/rng.hpp"
#include "ionmap/system_model.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace oracles {

// L_n^k(x) by direct power-series summation: sum_i (-1)^i C(n+k, n-i) x^i / i!
inline double laguerre_series(int n, int k, double x) {
  double sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    double binom = 1.0;  // C(n+k, n-i)
    for (int j = 1; j <= n - i; ++j) binom *= static_cast<double>(k + i + j) / j;
    double term = binom;
    for (int j = 1; j <= i; ++j) term *= -x / j;
    sum += term;
  }
  return sum;
}

// Two-level Rabi population transfer for the resonant blue-sideband ladder
// starting from |down,n>.
inline double rabi_p_up(const ionmap::SystemParams& p, int n, double t) {
  const double omega = p.omega_0 * ionmap::matrix_element(n, +1, p.eta).imag();
  const double s = std::sin(0.5 * omega * t);
  return s * s;
}

inline ionmap::PulseSet random_admissible_pulse(const ionmap::SystemParams& p, ionmap::Rng& rng,
                                                int K = 6) {
  const ionmap::CrabParams crab =
      ionmap::random_crab_params({true, true, true}, K, false, 0.4, rng);
  return ionmap::synthesize_pulse(crab, p);
}

inline Eigen::MatrixXcd random_density_matrix(int dim, ionmap::Rng& rng) {
  Eigen::MatrixXcd B(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c)
      B(r, c) = ionmap::Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  Eigen::MatrixXcd rho = B * B.adjoint();
  rho /= rho.trace().real();
  return rho;
}

// Random trace-preserving channel: K_i = A_i M^{-1/2}, M = sum A_i^dag A_i.
inline ionmap::PhononChannel random_channel(int dim, int n_kraus, ionmap::Rng& rng) {
  std::vector<Eigen::MatrixXcd> raw;
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(dim, dim);
  for (int i = 0; i < n_kraus; ++i) {
    Eigen::MatrixXcd A(dim, dim);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c)
        A(r, c) = ionmap::Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    M += A.adjoint() * A;
    raw.push_back(std::move(A));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(M);
  const Eigen::MatrixXcd inv_sqrt = es.operatorInverseSqrt();
  ionmap::PhononChannel ch;
  for (auto& A : raw) ch.kraus.push_back(A * inv_sqrt);
  return ch;
}

inline Eigen::MatrixXcd random_hermitian(int dim, ionmap::Rng& rng) {
  Eigen::MatrixXcd A(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c)
      A(r, c) = ionmap::Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  return 0.5 * (A + A.adjoint()).eval();
}

}  // namespace oracles
