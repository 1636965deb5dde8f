#pragma once

#include "ionmap/system_model.hpp"

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

namespace ionmap {

/// Spin (x) Fock density matrix plus two classical shelf registers holding
/// population moved to the metastable auxiliary levels.
struct ShelvedState {
  Eigen::MatrixXcd rho;  ///< interleaved basis, dim = 2(n_max+1)
  double shelf_a1 = 0.0;
  double shelf_a2 = 0.0;

  double in_trap_trace() const { return rho.trace().real(); }
  double total() const { return in_trap_trace() + shelf_a1 + shelf_a2; }
};

/// Quantum process on the Fock factor only, as Kraus operators.
struct PhononChannel {
  std::vector<Eigen::MatrixXcd> kraus;  ///< each fock_dim x fock_dim

  static PhononChannel identity(int fock_dim);
  /// max-norm defect of sum K_i^dag K_i - I.
  double completeness_defect() const;
};

/// Supplies the mapping unitary U_level(T) for a requested level: either
/// propagated pulses or synthetic ideal permutations.
using UnitaryProvider = std::function<Eigen::MatrixXcd(int level)>;

/// Ideal mapping unitary: swaps |down,m> and |up,m>, identity elsewhere.
Eigen::MatrixXcd ideal_map_unitary(int n_max, int m);
UnitaryProvider ideal_maps(int n_max);

/// Thermal Fock-state density matrix with mean occupation nbar, truncated to
/// fock_dim levels and renormalized.
Eigen::MatrixXcd thermal_state(int fock_dim, double nbar);

struct StepTrace {
  std::string step;  ///< a..h
  double in_trap = 0.0;
  double shelf_a1 = 0.0;
  double shelf_a2 = 0.0;
};

struct FilterOutcome {
  double p_f = 0.0;  ///< fluorescence probability: unshelved in-trap population
  ShelvedState final_state;
  std::vector<StepTrace> traces;
};

/// Eight-step filter: (a) prepare |down><down| (x) rho_ho, (b) U_m,
/// (c) shelve spin-down to a1, (d) U_m^dag, (e) channel on the Fock factor,
/// (f) U_m', (g) shelve spin-down to a2, (h) read the remaining trace.
FilterOutcome run_filter_sequence(const Eigen::MatrixXcd& rho_ho, int m, int m_prime,
                                  const PhononChannel& channel, const UnitaryProvider& u_map);

/// Steps a-c only: in-trap population after the first shelving, which is
/// <m|rho_ho|m> for ideal maps.
double initial_population_measurement(const Eigen::MatrixXcd& rho_ho, int m,
                                      const UnitaryProvider& u_map);

/// Closed-form fluorescence probability
/// <m|rho_ho|m> <m'| L(|m><m|) |m'> used as the oracle for ideal maps.
double closed_form_p_f(const Eigen::MatrixXcd& rho_ho, int m, int m_prime,
                       const PhononChannel& channel);

}  // namespace ionmap
