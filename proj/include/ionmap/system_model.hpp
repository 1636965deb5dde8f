#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ionmap {

using Complex = std::complex<double>;

/// The three radiation fields addressing the ion.
enum class Field : int { Carrier = 0, Blue = 1, Red = 2 };

/// Physical constants of the ion-light system. Angular frequencies are in
/// rad/us, times in us, so all magnitudes stay O(1)..O(10).
struct SystemParams {
  double eta = 0.25;                      ///< Lamb-Dicke parameter
  double omega_z = 2.0 * M_PI * 1.4;      ///< trap angular frequency, rad/us
  double omega_0 = 2.0 * M_PI * 0.05;     ///< maximal bare Rabi angular frequency, rad/us
  double total_time = 300.0;              ///< pulse duration, us
  int n_steps = 1000;                     ///< time-grid intervals
  int n_max = 14;                         ///< highest retained Fock level
  bool resonant_only = false;             ///< drop the off-resonant couplings

  int fock_dim() const { return n_max + 1; }
  int dim() const { return 2 * (n_max + 1); }
  double dt() const { return total_time / n_steps; }
};

/// Throws std::invalid_argument on a hard violation (n_steps < 1, n_max < 1,
/// total_time <= 0, eta < 0).
void validate(const SystemParams& params);

/// Soft diagnostics, e.g. omega_0/omega_z > 0.1 leaves the resolved-sideband
/// regime the model assumes.
std::vector<std::string> regime_warnings(const SystemParams& params);

/// Index into the spin (x) Fock product space; flat layout interleaves spin.
struct BasisIndex {
  int spin = 0;  ///< down = 0, up = 1
  int n = 0;     ///< phonon number

  int flat() const { return 2 * n + spin; }
  static BasisIndex from_flat(int i) { return BasisIndex{i % 2, i / 2}; }
};

/// Time-sampled dimensionless amplitudes f(t_j) for the three fields,
/// j = 0..n_steps. Fields not in use hold all-zero rows.
struct PulseSet {
  std::array<std::vector<double>, 3> samples;

  static PulseSet zeros(int n_steps);
  static PulseSet constant(int n_steps, Field field, double value);

  std::vector<double>& operator[](Field f) { return samples[static_cast<int>(f)]; }
  const std::vector<double>& operator[](Field f) const { return samples[static_cast<int>(f)]; }

  int n_samples() const { return static_cast<int>(samples[0].size()); }
  PulseSet scaled(double factor) const;
};

/// Checks the designed-pulse invariants (rows sized n_steps+1, zero endpoints,
/// |f| <= 1). Returns a description of the first violation, or nullopt.
std::optional<std::string> pulse_violation(const PulseSet& pulses, int n_steps);

/// Associated Laguerre polynomial L_n^k(x) by the stable three-term recurrence.
double laguerre(int n, int k, double x);

/// Lamb-Dicke matrix element M_{n,n+delta_n}(eta); delta_n in {-1,0,+1}.
/// Throws for (n = 0, delta_n = -1): no level below the ground state.
Complex matrix_element(int n, int delta_n, double eta);

/// Precomputed matrix elements for one truncation.
/// carrier[n] = M_{n,n} (real); sideband[n] = |M_{n,n+1}| for n = 0..n_max-1.
struct CouplingTable {
  Eigen::VectorXd carrier;
  Eigen::VectorXd sideband;

  static CouplingTable build(const SystemParams& params);
};

/// Spin-flip coupling block C(t) of the interaction Hamiltonian: C(n', n)
/// multiplies |up,n'><down,n|. Amplitudes are the dimensionless f^(alpha)(t)
/// triple ordered (carrier, blue, red); rotating phases are evaluated at t.
Eigen::MatrixXcd coupling_block(const SystemParams& params, const CouplingTable& table,
                                const std::array<double, 3>& amplitudes, double t);

/// Full 2(n_max+1)-dimensional Hermitian Hamiltonian in the interleaved basis.
Eigen::MatrixXcd assemble_hamiltonian(const SystemParams& params,
                                      const std::array<double, 3>& amplitudes, double t);

}  // namespace ionmap
