#include "ionmap/propagator.hpp"

#include <cmath>
#include <stdexcept>

namespace ionmap {

namespace {

// sin(x)/x and (1 - cos(x))/x^2 with their removable singularities.
double sinc(double x) {
  if (x < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
  }
  return std::sin(x) / x;
}

double versinc(double x) {
  if (x < 1e-4) {
    const double x2 = x * x;
    return 0.5 - x2 / 24.0 * (1.0 - x2 / 30.0);
  }
  return (1.0 - std::cos(x)) / (x * x);
}

}  // namespace

StateVector basis_state(const SystemParams& params, int spin, int n) {
  if (spin < 0 || spin > 1 || n < 0 || n > params.n_max)
    throw std::invalid_argument("basis_state: index outside the truncated space");
  StateVector v = StateVector::Zero(params.dim());
  v[BasisIndex{spin, n}.flat()] = Complex(1.0, 0.0);
  return v;
}

Eigen::MatrixXcd step_propagator(const Eigen::MatrixXcd& H, double dt) {
  if (H.rows() != H.cols()) throw std::invalid_argument("step_propagator: matrix not square");
  if (!(dt > 0.0)) throw std::invalid_argument("step_propagator: dt must be > 0");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("step_propagator: eigensolver failed");
  const auto& lambda = es.eigenvalues();
  const auto& V = es.eigenvectors();
  Eigen::VectorXcd phase(lambda.size());
  for (Eigen::Index k = 0; k < lambda.size(); ++k)
    phase[k] = std::exp(Complex(0.0, -lambda[k] * dt));
  return V * phase.asDiagonal() * V.adjoint();
}

uint64_t pulse_hash(const PulseSet& pulses) {
  uint64_t h = 1469598103934665603ull;  // FNV-1a 64
  auto mix = [&h](const void* data, size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (size_t i = 0; i < len; ++i) {
      h ^= p[i];
      h *= 1099511628211ull;
    }
  };
  for (const auto& row : pulses.samples)
    mix(row.data(), row.size() * sizeof(double));
  return h;
}

namespace detail {

StepEngine::StepEngine(const SystemParams& params, const PulseSet& pulses)
    : params_(params), pulses_(&pulses), table_(CouplingTable::build(params)) {
  validate(params);
  for (const auto& row : pulses.samples) {
    if (row.size() != static_cast<size_t>(params.n_steps) + 1)
      throw std::invalid_argument("StepEngine: pulse not sampled on the params time grid");
  }
}

void StepEngine::advance(int step, Eigen::MatrixXcd& down, Eigen::MatrixXcd& up) const {
  const double dt = params_.dt();
  const std::array<double, 3> amps = {pulses_->samples[0][step], pulses_->samples[1][step],
                                      pulses_->samples[2][step]};
  const double t_mid = (step + 0.5) * dt;
  const Eigen::MatrixXcd C = coupling_block(params_, table_, amps, t_mid);
  const Complex i(0.0, 1.0);
  const int d = params_.fock_dim();

  // exp(-i dt H) for H = [[0, C^dag], [C, 0]], in matrix functions of
  // X = dt^2 C^dag C (eigenvalues x^2 with x the step rotation angles):
  //   down' = cos(X) down - i dt sinc(X) C^dag up
  //   up'   = up - dt^2 C vers(X) C^dag up - i dt C sinc(X) down
  // where cos, sinc = sin(x)/x and vers = (1-cos(x))/x^2 act on x^2.
  const Eigen::MatrixXcd X = dt * dt * (C.adjoint() * C);
  const double theta2 = X.cwiseAbs().rowwise().sum().maxCoeff();

  Eigen::MatrixXcd cosM, sincM, versM;
  if (theta2 <= 1.0) {
    // shared Taylor series; the tail bound drops below 1e-18 within ~8 terms
    const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(d, d);
    cosM = I;
    sincM = I;
    versM = 0.5 * I;
    Eigen::MatrixXcd term = I;
    double sign = -1.0;
    for (int k = 1; k <= 24; ++k) {
      term = (term * X).eval();
      const double fact = 1.0 / ((2.0 * k - 1.0) * (2.0 * k));  // (2k-2)! -> (2k)!
      term *= fact;
      cosM += sign * term;
      sincM += sign / (2.0 * k + 1.0) * term;
      versM += sign / ((2.0 * k + 1.0) * (2.0 * k + 2.0)) * term;
      if (term.cwiseAbs().maxCoeff() < 1e-18) break;
      sign = -sign;
    }
  } else {
    // large rotation angles (coarse grids): exact spectral route
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(X);
    if (es.info() != Eigen::Success)
      throw std::runtime_error("evolve: eigensolver failed at step " + std::to_string(step));
    const Eigen::VectorXd lambda = es.eigenvalues().cwiseMax(0.0);
    const Eigen::MatrixXcd& V = es.eigenvectors();
    Eigen::VectorXd fc(d), fs(d), fv(d);
    for (int k = 0; k < d; ++k) {
      const double x = std::sqrt(lambda[k]);
      fc[k] = std::cos(x);
      fs[k] = sinc(x);
      fv[k] = versinc(x);
    }
    cosM = V * fc.asDiagonal() * V.adjoint();
    sincM = V * fs.asDiagonal() * V.adjoint();
    versM = V * fv.asDiagonal() * V.adjoint();
  }

  const Eigen::MatrixXcd Cu = C.adjoint() * up;
  const Eigen::MatrixXcd new_down = cosM * down - (i * dt) * (sincM * Cu);
  up -= C * ((dt * dt) * (versM * Cu) + (i * dt) * (sincM * down));
  down = new_down;
}

void StepEngine::run(Eigen::MatrixXcd& columns) const {
  Eigen::MatrixXcd down, up;
  split(columns, down, up);
  for (int j = 0; j < params_.n_steps; ++j) advance(j, down, up);
  merge(down, up, columns);
}

void StepEngine::split(const Eigen::MatrixXcd& columns, Eigen::MatrixXcd& down,
                       Eigen::MatrixXcd& up) {
  const Eigen::Index d = columns.rows() / 2;
  down.resize(d, columns.cols());
  up.resize(d, columns.cols());
  for (Eigen::Index n = 0; n < d; ++n) {
    down.row(n) = columns.row(2 * n);
    up.row(n) = columns.row(2 * n + 1);
  }
}

void StepEngine::merge(const Eigen::MatrixXcd& down, const Eigen::MatrixXcd& up,
                       Eigen::MatrixXcd& columns) {
  const Eigen::Index d = down.rows();
  columns.resize(2 * d, down.cols());
  for (Eigen::Index n = 0; n < d; ++n) {
    columns.row(2 * n) = down.row(n);
    columns.row(2 * n + 1) = up.row(n);
  }
}

}  // namespace detail

StateVector evolve(const SystemParams& params, const PulseSet& pulses,
                   const StateVector& initial) {
  if (initial.size() != params.dim())
    throw std::invalid_argument("evolve: state dimension mismatch");
  detail::StepEngine engine(params, pulses);
  Eigen::MatrixXcd cols = initial;
  engine.run(cols);
  return cols.col(0);
}

std::vector<StateVector> evolve_trajectory(const SystemParams& params, const PulseSet& pulses,
                                           const StateVector& initial) {
  if (initial.size() != params.dim())
    throw std::invalid_argument("evolve: state dimension mismatch");
  detail::StepEngine engine(params, pulses);
  Eigen::MatrixXcd down, up, cols = initial;
  detail::StepEngine::split(cols, down, up);
  std::vector<StateVector> out;
  out.reserve(params.n_steps + 1);
  out.push_back(initial);
  for (int j = 0; j < params.n_steps; ++j) {
    engine.advance(j, down, up);
    detail::StepEngine::merge(down, up, cols);
    out.push_back(cols.col(0));
  }
  return out;
}

EvolvedBasis evolve_basis(const SystemParams& params, const PulseSet& pulses, int N) {
  if (N < 1 || N > params.n_max + 1)
    throw std::invalid_argument("evolve_basis: N must be in 1..n_max+1");
  detail::StepEngine engine(params, pulses);
  Eigen::MatrixXcd cols(params.dim(), N);
  cols.setZero();
  for (int n = 0; n < N; ++n) cols(BasisIndex{0, n}.flat(), n) = Complex(1.0, 0.0);
  engine.run(cols);
  EvolvedBasis basis;
  basis.finals.reserve(N);
  for (int n = 0; n < N; ++n) basis.finals.push_back(cols.col(n));
  basis.params = params;
  basis.pulse_hash = pulse_hash(pulses);
  return basis;
}

Eigen::MatrixXcd total_unitary(const SystemParams& params, const PulseSet& pulses) {
  detail::StepEngine engine(params, pulses);
  Eigen::MatrixXcd cols = Eigen::MatrixXcd::Identity(params.dim(), params.dim());
  engine.run(cols);
  return cols;
}

}  // namespace ionmap
