#include "ionmap/fidelity.hpp"

#include <stdexcept>

namespace ionmap {

MapReport fidelity(const EvolvedBasis& basis, int m, int N) {
  if (N < 2) throw std::invalid_argument("fidelity: N must be >= 2 (F_down undefined for N = 1)");
  if (m < 0 || m >= N) throw std::invalid_argument("fidelity: requires 0 <= m < N");
  if (static_cast<size_t>(N) > basis.finals.size())
    throw std::invalid_argument("fidelity: N exceeds the number of evolved states");

  const int n_max = basis.params.n_max;
  MapReport r;
  r.m = m;
  r.N = N;
  r.p_up.resize(N);

  double sum_keep = 0.0;           // full-space projector
  double sum_keep_sub = 0.0;       // k <= N-1 projector
  double p_up_m_sub = 0.0;
  for (int n = 0; n < N; ++n) {
    const StateVector& psi = basis.finals[n];
    double up = 0.0, up_sub = 0.0, down_sub = 0.0;
    for (int k = 0; k <= n_max; ++k) {
      const double w_up = std::norm(psi[BasisIndex{1, k}.flat()]);
      up += w_up;
      if (k < N) {
        up_sub += w_up;
        down_sub += std::norm(psi[BasisIndex{0, k}.flat()]);
      }
    }
    r.p_up[n] = up;
    if (n == m) {
      p_up_m_sub = up_sub;
    } else {
      sum_keep += 1.0 - up;
      sum_keep_sub += down_sub;
    }
  }

  r.F_up = r.p_up[m];
  r.F_down = sum_keep / (N - 1);
  r.F = r.F_up * r.F_down;

  r.F_up_subspace = p_up_m_sub;
  r.F_down_subspace = sum_keep_sub / (N - 1);
  r.F_subspace = r.F_up_subspace * r.F_down_subspace;
  return r;
}

}  // namespace ionmap
