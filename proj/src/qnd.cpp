#include "ionmap/qnd.hpp"

#include <cmath>
#include <stdexcept>

namespace ionmap {

PhononChannel PhononChannel::identity(int fock_dim) {
  PhononChannel ch;
  ch.kraus.push_back(Eigen::MatrixXcd::Identity(fock_dim, fock_dim));
  return ch;
}

double PhononChannel::completeness_defect() const {
  if (kraus.empty()) return 1.0;
  const Eigen::Index d = kraus.front().rows();
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(d, d);
  for (const auto& K : kraus) acc += K.adjoint() * K;
  return (acc - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff();
}

Eigen::MatrixXcd ideal_map_unitary(int n_max, int m) {
  if (m < 0 || m > n_max) throw std::invalid_argument("ideal_map_unitary: m outside truncation");
  const int dim = 2 * (n_max + 1);
  Eigen::MatrixXcd U = Eigen::MatrixXcd::Identity(dim, dim);
  const int down = BasisIndex{0, m}.flat();
  const int up = BasisIndex{1, m}.flat();
  U(down, down) = U(up, up) = Complex(0.0, 0.0);
  U(up, down) = U(down, up) = Complex(1.0, 0.0);
  return U;
}

UnitaryProvider ideal_maps(int n_max) {
  return [n_max](int level) { return ideal_map_unitary(n_max, level); };
}

Eigen::MatrixXcd thermal_state(int fock_dim, double nbar) {
  if (fock_dim < 1) throw std::invalid_argument("thermal_state: fock_dim must be >= 1");
  if (nbar < 0.0) throw std::invalid_argument("thermal_state: nbar must be >= 0");
  Eigen::VectorXd p(fock_dim);
  if (nbar == 0.0) {
    p.setZero();
    p[0] = 1.0;
  } else {
    const double q = nbar / (nbar + 1.0);
    for (int n = 0; n < fock_dim; ++n) p[n] = std::pow(q, n) / (nbar + 1.0);
    p /= p.sum();  // truncated and renormalized
  }
  return p.cast<Complex>().asDiagonal();
}

namespace {

void check_density_matrix(const Eigen::MatrixXcd& rho_ho, int fock_dim) {
  if (rho_ho.rows() != fock_dim || rho_ho.cols() != fock_dim)
    throw std::invalid_argument("filter: rho_ho dimension mismatch with the mapping unitaries");
  if (std::abs(rho_ho.trace().real() - 1.0) > 1e-8)
    throw std::invalid_argument("filter: rho_ho is not trace one");
}

Eigen::MatrixXcd embed_spin_down(const Eigen::MatrixXcd& rho_ho) {
  const Eigen::Index d = rho_ho.rows();
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(2 * d, 2 * d);
  for (Eigen::Index n = 0; n < d; ++n)
    for (Eigen::Index k = 0; k < d; ++k) rho(2 * n, 2 * k) = rho_ho(n, k);
  return rho;
}

// Moves all spin-down population to a shelf register, discarding coherences
// to the shelved level.
void shelve_down(ShelvedState& s, double& shelf) {
  const Eigen::Index dim = s.rho.rows();
  double moved = 0.0;
  for (Eigen::Index i = 0; i < dim; i += 2) moved += s.rho(i, i).real();
  for (Eigen::Index i = 0; i < dim; i += 2) {
    s.rho.row(i).setZero();
    s.rho.col(i).setZero();
  }
  shelf += moved;
}

// Applies the Fock-factor channel blockwise over the four spin blocks.
void apply_channel(ShelvedState& s, const PhononChannel& channel) {
  const Eigen::Index d = s.rho.rows() / 2;
  for (int sa = 0; sa < 2; ++sa) {
    for (int sb = 0; sb < 2; ++sb) {
      Eigen::MatrixXcd block(d, d);
      for (Eigen::Index n = 0; n < d; ++n)
        for (Eigen::Index k = 0; k < d; ++k) block(n, k) = s.rho(2 * n + sa, 2 * k + sb);
      Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
      for (const auto& K : channel.kraus) out += K * block * K.adjoint();
      for (Eigen::Index n = 0; n < d; ++n)
        for (Eigen::Index k = 0; k < d; ++k) s.rho(2 * n + sa, 2 * k + sb) = out(n, k);
    }
  }
}

}  // namespace

FilterOutcome run_filter_sequence(const Eigen::MatrixXcd& rho_ho, int m, int m_prime,
                                  const PhononChannel& channel, const UnitaryProvider& u_map) {
  const Eigen::MatrixXcd U_m = u_map(m);
  const Eigen::MatrixXcd U_mp = u_map(m_prime);
  if (U_m.rows() != U_m.cols() || U_m.rows() % 2 != 0 || U_mp.rows() != U_m.rows())
    throw std::invalid_argument("filter: mapping unitaries malformed");
  const int d = static_cast<int>(U_m.rows() / 2);
  check_density_matrix(rho_ho, d);
  for (const auto& K : channel.kraus) {
    if (K.rows() != d || K.cols() != d)
      throw std::invalid_argument("filter: channel operator dimension mismatch");
  }
  if (channel.completeness_defect() > 1e-10)
    throw std::invalid_argument("filter: channel is not trace preserving");

  FilterOutcome out;
  ShelvedState& s = out.final_state;
  auto record = [&](const char* label) {
    out.traces.push_back({label, s.in_trap_trace(), s.shelf_a1, s.shelf_a2});
  };

  s.rho = embed_spin_down(rho_ho);                    // (a)
  record("a");
  s.rho = U_m * s.rho * U_m.adjoint();                // (b)
  record("b");
  shelve_down(s, s.shelf_a1);                         // (c)
  record("c");
  s.rho = U_m.adjoint() * s.rho * U_m;                // (d)
  record("d");
  apply_channel(s, channel);                          // (e)
  record("e");
  s.rho = U_mp * s.rho * U_mp.adjoint();              // (f)
  record("f");
  shelve_down(s, s.shelf_a2);                         // (g)
  record("g");
  out.p_f = s.in_trap_trace();                        // (h)
  record("h");
  return out;
}

double initial_population_measurement(const Eigen::MatrixXcd& rho_ho, int m,
                                      const UnitaryProvider& u_map) {
  const Eigen::MatrixXcd U_m = u_map(m);
  const int d = static_cast<int>(U_m.rows() / 2);
  check_density_matrix(rho_ho, d);
  ShelvedState s;
  s.rho = embed_spin_down(rho_ho);
  s.rho = U_m * s.rho * U_m.adjoint();
  shelve_down(s, s.shelf_a1);
  return s.in_trap_trace();
}

double closed_form_p_f(const Eigen::MatrixXcd& rho_ho, int m, int m_prime,
                       const PhononChannel& channel) {
  if (m < 0 || m >= rho_ho.rows() || m_prime < 0 || m_prime >= rho_ho.rows())
    throw std::invalid_argument("closed_form_p_f: level outside rho_ho");
  double transfer = 0.0;
  for (const auto& K : channel.kraus) transfer += std::norm(K(m_prime, m));
  return rho_ho(m, m).real() * transfer;
}

}  // namespace ionmap
