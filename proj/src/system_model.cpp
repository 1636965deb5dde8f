#include "ionmap/system_model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ionmap {

void validate(const SystemParams& params) {
  if (params.n_steps < 1) throw std::invalid_argument("SystemParams: n_steps must be >= 1");
  if (params.n_max < 1) throw std::invalid_argument("SystemParams: n_max must be >= 1");
  if (!(params.total_time > 0.0)) throw std::invalid_argument("SystemParams: total_time must be > 0");
  if (params.eta < 0.0) throw std::invalid_argument("SystemParams: eta must be >= 0");
  if (!(params.omega_z > 0.0)) throw std::invalid_argument("SystemParams: omega_z must be > 0");
  if (params.omega_0 < 0.0) throw std::invalid_argument("SystemParams: omega_0 must be >= 0");
}

std::vector<std::string> regime_warnings(const SystemParams& params) {
  std::vector<std::string> out;
  if (params.omega_0 > 0.1 * params.omega_z) {
    std::ostringstream os;
    os << "omega_0/omega_z = " << params.omega_0 / params.omega_z
       << " > 0.1: outside the resolved-sideband regime the rotating-frame model assumes";
    out.push_back(os.str());
  }
  return out;
}

PulseSet PulseSet::zeros(int n_steps) {
  PulseSet p;
  for (auto& row : p.samples) row.assign(static_cast<size_t>(n_steps) + 1, 0.0);
  return p;
}

PulseSet PulseSet::constant(int n_steps, Field field, double value) {
  PulseSet p = zeros(n_steps);
  auto& row = p[field];
  std::fill(row.begin(), row.end(), value);
  return p;
}

PulseSet PulseSet::scaled(double factor) const {
  PulseSet out = *this;
  for (auto& row : out.samples)
    for (double& v : row) v *= factor;
  return out;
}

std::optional<std::string> pulse_violation(const PulseSet& pulses, int n_steps) {
  const size_t want = static_cast<size_t>(n_steps) + 1;
  for (int f = 0; f < 3; ++f) {
    const auto& row = pulses.samples[f];
    if (row.size() != want)
      return "field " + std::to_string(f) + ": " + std::to_string(row.size()) +
             " samples, expected " + std::to_string(want);
    if (row.front() != 0.0 || row.back() != 0.0)
      return "field " + std::to_string(f) + ": nonzero boundary sample";
    for (size_t j = 0; j < row.size(); ++j) {
      if (!(std::abs(row[j]) <= 1.0))
        return "field " + std::to_string(f) + ": |f| > 1 at sample " + std::to_string(j);
    }
  }
  return std::nullopt;
}

double laguerre(int n, int k, double x) {
  if (n < 0 || k < 0 || x < 0.0)
    throw std::invalid_argument("laguerre: requires n >= 0, k >= 0, x >= 0");
  if (n == 0) return 1.0;
  double prev = 1.0;                       // L_0^k
  double cur = 1.0 + k - x;                // L_1^k
  for (int i = 2; i <= n; ++i) {
    const double next = ((2.0 * i - 1.0 + k - x) * cur - (i - 1.0 + k) * prev) / i;
    prev = cur;
    cur = next;
  }
  return cur;
}

Complex matrix_element(int n, int delta_n, double eta) {
  if (n < 0) throw std::invalid_argument("matrix_element: n must be >= 0");
  const double x = eta * eta;
  const double damp = std::exp(-x / 2.0);
  switch (delta_n) {
    case 0:
      return Complex(damp * laguerre(n, 0, x), 0.0);
    case +1:
      return Complex(0.0, damp * eta * std::sqrt(1.0 / (n + 1)) * laguerre(n, 1, x));
    case -1:
      if (n == 0) throw std::invalid_argument("matrix_element: no level below the ground state");
      return Complex(0.0, damp * eta * std::sqrt(1.0 / n) * laguerre(n - 1, 1, x));
    default:
      throw std::invalid_argument("matrix_element: delta_n must be -1, 0 or +1");
  }
}

CouplingTable CouplingTable::build(const SystemParams& params) {
  const int d = params.fock_dim();
  CouplingTable t;
  t.carrier.resize(d);
  t.sideband.resize(d - 1);
  for (int n = 0; n < d; ++n) t.carrier[n] = matrix_element(n, 0, params.eta).real();
  for (int n = 0; n + 1 < d; ++n) t.sideband[n] = matrix_element(n, +1, params.eta).imag();
  return t;
}

Eigen::MatrixXcd coupling_block(const SystemParams& params, const CouplingTable& table,
                                const std::array<double, 3>& amplitudes, double t) {
  const int d = params.fock_dim();
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(d, d);
  const double half = 0.5 * params.omega_0;
  const double fc = amplitudes[0], fb = amplitudes[1], fr = amplitudes[2];
  const Complex i(0.0, 1.0);
  const Complex plus = std::exp(i * (params.omega_z * t));   // e^{+i w_z t}
  const Complex minus = std::conj(plus);

  // Resonant couplings (unit phase): carrier dn=0, blue dn=+1, red dn=-1.
  for (int n = 0; n < d; ++n) C(n, n) += half * fc * table.carrier[n];
  for (int n = 0; n + 1 < d; ++n) {
    C(n + 1, n) += half * fb * i * table.sideband[n];  // |up,n+1><down,n|
    C(n, n + 1) += half * fr * i * table.sideband[n];  // |up,n><down,n+1|, M_{n+1,n}
  }

  if (!params.resonant_only) {
    // Retained off-resonant couplings rotating at w_z.
    for (int n = 0; n < d; ++n) {
      C(n, n) += half * fb * table.carrier[n] * plus;   // blue dn=0
      C(n, n) += half * fr * table.carrier[n] * minus;  // red dn=0
    }
    for (int n = 0; n + 1 < d; ++n) {
      C(n + 1, n) += half * fc * i * table.sideband[n] * minus;  // carrier dn=+1
      C(n, n + 1) += half * fc * i * table.sideband[n] * plus;   // carrier dn=-1
    }
  }
  return C;
}

Eigen::MatrixXcd assemble_hamiltonian(const SystemParams& params,
                                      const std::array<double, 3>& amplitudes, double t) {
  const CouplingTable table = CouplingTable::build(params);
  const Eigen::MatrixXcd C = coupling_block(params, table, amplitudes, t);
  const int d = params.fock_dim();
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(2 * d, 2 * d);
  for (int col = 0; col < d; ++col) {
    for (int row = 0; row < d; ++row) {
      H(2 * row + 1, 2 * col) = C(row, col);             // <up,row| H |down,col>
      H(2 * col, 2 * row + 1) = std::conj(C(row, col));  // Hermitian conjugate
    }
  }
  return H;
}

}  // namespace ionmap
