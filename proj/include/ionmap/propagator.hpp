#pragma once

#include "ionmap/system_model.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace ionmap {

using StateVector = Eigen::VectorXcd;

/// Basis states |down,n> evolved under a common pulse, with provenance.
struct EvolvedBasis {
  std::vector<StateVector> finals;  ///< |psi_n(T)>, n = 0..N-1
  SystemParams params;
  uint64_t pulse_hash = 0;          ///< content hash of the pulse samples
};

/// |spin, n> as a unit vector in the interleaved basis.
StateVector basis_state(const SystemParams& params, int spin, int n);

/// Exact one-step propagator exp(-i H dt) of a Hermitian matrix via
/// eigendecomposition H = V diag(lambda) V^dag.
Eigen::MatrixXcd step_propagator(const Eigen::MatrixXcd& H, double dt);

/// Propagates an initial state over the full time grid. Amplitudes are taken
/// from each interval's left-edge sample, rotating phases from its midpoint.
StateVector evolve(const SystemParams& params, const PulseSet& pulses,
                   const StateVector& initial);

/// As evolve, but returns the state at every grid time t_0..t_{n_steps}.
std::vector<StateVector> evolve_trajectory(const SystemParams& params, const PulseSet& pulses,
                                           const StateVector& initial);

/// Evolves the N initial states |down,n>, n = 0..N-1; the per-step unitaries
/// are computed once and shared across the basis.
EvolvedBasis evolve_basis(const SystemParams& params, const PulseSet& pulses, int N);

/// Accumulated evolution operator U(T) over the full grid, interleaved basis.
Eigen::MatrixXcd total_unitary(const SystemParams& params, const PulseSet& pulses);

/// FNV-1a over the raw pulse samples; identifies a sampled pulse exactly.
uint64_t pulse_hash(const PulseSet& pulses);

namespace detail {

/// Stepper for the bipartite Hamiltonian H = [[0, C^dag], [C, 0]] over the
/// split (down, up) Fock blocks. One Hermitian eigensolve of C^dag C per step
/// yields the exact step unitary.
class StepEngine {
 public:
  StepEngine(const SystemParams& params, const PulseSet& pulses);

  int steps() const { return params_.n_steps; }

  /// Advances split column blocks (fock_dim x M each) across interval `step`.
  void advance(int step, Eigen::MatrixXcd& down, Eigen::MatrixXcd& up) const;

  /// Runs all steps on interleaved columns (dim x M), in place.
  void run(Eigen::MatrixXcd& columns) const;

  static void split(const Eigen::MatrixXcd& columns, Eigen::MatrixXcd& down,
                    Eigen::MatrixXcd& up);
  static void merge(const Eigen::MatrixXcd& down, const Eigen::MatrixXcd& up,
                    Eigen::MatrixXcd& columns);

 private:
  SystemParams params_;
  const PulseSet* pulses_;
  CouplingTable table_;
};

}  // namespace detail
}  // namespace ionmap
