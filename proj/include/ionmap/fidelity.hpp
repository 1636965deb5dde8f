#pragma once

#include "ionmap/propagator.hpp"

#include <vector>

namespace ionmap {

/// Mapping-fidelity breakdown for a target level m on an N-state subspace.
/// p_up[n] is the spin-up probability when starting from |down,n>, summed over
/// the full truncated Fock space; the *_subspace variants restrict the final
/// projector to phonon levels k <= N-1 and are reported as diagnostics.
struct MapReport {
  int m = 0;
  int N = 0;
  double F = 0.0;
  double F_up = 0.0;
  double F_down = 0.0;
  std::vector<double> p_up;

  double F_subspace = 0.0;
  double F_up_subspace = 0.0;
  double F_down_subspace = 0.0;
};

/// F(m,N) = F_up * F_down with F_up = p_up[m] and
/// F_down = (1/(N-1)) * sum_{n != m} (1 - p_up[n]).
/// Throws for m >= N, N < 2, or N exceeding the evolved basis.
MapReport fidelity(const EvolvedBasis& basis, int m, int N);

}  // namespace ionmap
