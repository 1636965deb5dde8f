#include "ionmap/crab.hpp"

#include "ionmap/propagator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <numeric>
#include <stdexcept>

namespace ionmap {

std::array<bool, 3> active_fields(ControlScenario scenario) {
  switch (scenario) {
    case ControlScenario::ThreeField: return {true, true, true};
    case ControlScenario::CarrierBlue: return {true, true, false};
    case ControlScenario::CarrierRed: return {true, false, true};
    case ControlScenario::Discrete: return {true, false, true};
  }
  throw std::invalid_argument("unknown scenario");
}

std::string scenario_name(ControlScenario scenario) {
  switch (scenario) {
    case ControlScenario::ThreeField: return "three-field";
    case ControlScenario::CarrierBlue: return "carrier+blue";
    case ControlScenario::CarrierRed: return "carrier+red";
    case ControlScenario::Discrete: return "discrete";
  }
  throw std::invalid_argument("unknown scenario");
}

ControlScenario scenario_from_name(const std::string& name) {
  if (name == "three-field") return ControlScenario::ThreeField;
  if (name == "carrier+blue") return ControlScenario::CarrierBlue;
  if (name == "carrier+red") return ControlScenario::CarrierRed;
  if (name == "discrete") return ControlScenario::Discrete;
  throw std::invalid_argument("unknown scenario '" + name + "'");
}

Eigen::VectorXd CrabParams::coefficients() const {
  std::vector<double> packed;
  for (int f = 0; f < 3; ++f) {
    if (!active[f]) continue;
    packed.insert(packed.end(), fields[f].a.begin(), fields[f].a.end());
    packed.insert(packed.end(), fields[f].b.begin(), fields[f].b.end());
  }
  return Eigen::Map<const Eigen::VectorXd>(packed.data(), packed.size());
}

void CrabParams::set_coefficients(const Eigen::VectorXd& x) {
  Eigen::Index i = 0;
  for (int f = 0; f < 3; ++f) {
    if (!active[f]) continue;
    if (i + 2 * K > x.size()) throw std::invalid_argument("coefficient vector too short");
    fields[f].a.assign(x.data() + i, x.data() + i + K);
    fields[f].b.assign(x.data() + i + K, x.data() + i + 2 * K);
    i += 2 * K;
  }
  if (i != x.size()) throw std::invalid_argument("coefficient vector size mismatch");
}

CrabParams random_crab_params(const std::array<bool, 3>& active, int K, bool discrete,
                              double coeff_range, Rng& rng) {
  if (K < 1) throw std::invalid_argument("random_crab_params: K must be >= 1");
  CrabParams crab;
  crab.active = active;
  crab.K = K;
  crab.discrete = discrete;
  for (int f = 0; f < 3; ++f) {
    if (!active[f]) continue;
    auto& basis = crab.fields[f];
    basis.r.resize(K);
    for (int k = 0; k < K; ++k) {
      // k(1+r_k) must stay distinct within the field
      for (;;) {
        basis.r[k] = rng.uniform(-0.5, 0.5);
        const double v = (k + 1) * (1.0 + basis.r[k]);
        bool clash = false;
        for (int j = 0; j < k; ++j)
          if ((j + 1) * (1.0 + basis.r[j]) == v) clash = true;
        if (!clash) break;
      }
    }
    basis.a.resize(K);
    basis.b.resize(K);
    for (int k = 0; k < K; ++k) basis.a[k] = rng.uniform(-coeff_range, coeff_range);
    for (int k = 0; k < K; ++k) basis.b[k] = rng.uniform(-coeff_range, coeff_range);
  }
  return crab;
}

PulseSet synthesize_pulse(const CrabParams& crab, const SystemParams& params) {
  const int n = params.n_steps;
  const double T = params.total_time;
  PulseSet out = PulseSet::zeros(n);
  for (int f = 0; f < 3; ++f) {
    if (!crab.active[f]) continue;
    const auto& basis = crab.fields[f];
    auto& row = out.samples[f];
    for (int j = 1; j < n; ++j) {
      const double t = T * j / n;
      double raw = 0.0;
      for (int k = 0; k < crab.K; ++k) {
        const double w = 2.0 * M_PI * (k + 1) * (1.0 + basis.r[k]) / T;
        raw += basis.a[k] * std::sin(w * t) + basis.b[k] * std::cos(w * t);
      }
      if (crab.discrete) {
        row[j] = raw < 0.0 ? -1.0 : 1.0;
      } else {
        const double env = std::sin(M_PI * t / T);
        row[j] = std::clamp(env * env * raw, -1.0, 1.0);
      }
    }
  }
  return out;
}

double objective(const CrabParams& crab, int m, int N, const SystemParams& params) {
  const PulseSet pulses = synthesize_pulse(crab, params);
  return 1.0 - fidelity(evolve_basis(params, pulses, N), m, N).F;
}

SearchResult direct_search(const std::function<double(const Eigen::VectorXd&)>& f,
                           const Eigen::VectorXd& x0, const SearchOptions& opts) {
  const Eigen::Index n = x0.size();
  if (n < 1) throw std::invalid_argument("direct_search: empty start vector");

  SearchResult res;
  res.evals = 0;
  double best = std::numeric_limits<double>::infinity();
  auto eval = [&](const Eigen::VectorXd& x) {
    const double v = f(x);
    ++res.evals;
    if (v < best) {
      best = v;
      res.trace.push_back({res.evals, v});
    }
    return v;
  };
  auto budget_left = [&] { return res.evals < opts.max_evals; };

  struct Vertex {
    Eigen::VectorXd x;
    double f;
  };
  std::vector<Vertex> simplex;
  simplex.reserve(n + 1);
  simplex.push_back({x0, eval(x0)});  // x0 is evaluated even with budget 0
  for (Eigen::Index i = 0; i < n && budget_left(); ++i) {
    Eigen::VectorXd xi = x0;
    xi[i] += opts.simplex_step;
    simplex.push_back({xi, eval(xi)});
  }

  auto finish = [&](bool exhausted) {
    const auto it = std::min_element(simplex.begin(), simplex.end(),
                                     [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    res.x = it->x;
    res.f = it->f;
    res.budget_exhausted = exhausted;
    return res;
  };
  if (simplex.size() != static_cast<size_t>(n) + 1) return finish(true);

  constexpr double rho = 1.0, chi = 2.0, gamma = 0.5, sigma = 0.5;
  for (;;) {
    std::stable_sort(simplex.begin(), simplex.end(),
                     [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    double diameter = 0.0;
    for (Eigen::Index i = 1; i <= n; ++i)
      diameter = std::max(diameter, (simplex[i].x - simplex[0].x).lpNorm<Eigen::Infinity>());
    if (diameter < opts.tol_x) return finish(false);
    if (simplex[n].f - simplex[0].f < opts.tol_f) return finish(false);
    if (!budget_left()) return finish(true);

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) centroid += simplex[i].x;
    centroid /= static_cast<double>(n);

    const Eigen::VectorXd xr = centroid + rho * (centroid - simplex[n].x);
    const double fr = eval(xr);
    if (fr < simplex[0].f) {
      if (!budget_left()) {
        simplex[n] = {xr, fr};
        return finish(true);
      }
      const Eigen::VectorXd xe = centroid + chi * (centroid - simplex[n].x);
      const double fe = eval(xe);
      simplex[n] = fe < fr ? Vertex{xe, fe} : Vertex{xr, fr};
      continue;
    }
    if (fr < simplex[n - 1].f) {
      simplex[n] = {xr, fr};
      continue;
    }
    if (!budget_left()) return finish(true);
    if (fr < simplex[n].f) {
      const Eigen::VectorXd xc = centroid + gamma * rho * (centroid - simplex[n].x);
      const double fc = eval(xc);
      if (fc <= fr) {
        simplex[n] = {xc, fc};
        continue;
      }
    } else {
      const Eigen::VectorXd xc = centroid - gamma * (centroid - simplex[n].x);
      const double fc = eval(xc);
      if (fc < simplex[n].f) {
        simplex[n] = {xc, fc};
        continue;
      }
    }
    for (Eigen::Index i = 1; i <= n; ++i) {
      if (!budget_left()) return finish(true);
      simplex[i].x = simplex[0].x + sigma * (simplex[i].x - simplex[0].x);
      simplex[i].f = eval(simplex[i].x);
    }
  }
}

namespace {

struct RestartOutcome {
  CrabParams params;
  SearchResult search;
};

RestartOutcome run_restart(int m, int N, const SystemParams& params, const OptimizeConfig& config,
                           bool discrete, const std::array<bool, 3>& active, int restart) {
  Rng rng(config.seed, static_cast<uint64_t>(restart));
  CrabParams crab = random_crab_params(active, config.K, discrete, config.coeff_range, rng);
  crab.seed = config.seed;
  auto f = [&](const Eigen::VectorXd& x) {
    CrabParams candidate = crab;
    candidate.set_coefficients(x);
    return objective(candidate, m, N, params);
  };
  RestartOutcome out;
  out.search = direct_search(f, crab.coefficients(), config.search);
  crab.set_coefficients(out.search.x);
  out.params = crab;
  return out;
}

OptResult run_multistart(int m, int N, const SystemParams& params, const OptimizeConfig& config,
                         bool discrete) {
  validate(params);
  if (m < 0 || m >= N) throw std::invalid_argument("optimize: requires 0 <= m < N");
  if (N > params.n_max + 1) throw std::invalid_argument("optimize: N exceeds the truncation");
  if (config.restarts < 1) throw std::invalid_argument("optimize: restarts must be >= 1");
  const std::array<bool, 3> active =
      discrete ? active_fields(ControlScenario::Discrete) : active_fields(config.scenario);

  const auto t0 = std::chrono::steady_clock::now();
  std::vector<RestartOutcome> outcomes(config.restarts);
  if (config.threads > 1) {
    for (int base = 0; base < config.restarts; base += config.threads) {
      const int hi = std::min(config.restarts, base + config.threads);
      std::vector<std::future<RestartOutcome>> futures;
      for (int r = base; r < hi; ++r)
        futures.push_back(std::async(std::launch::async, run_restart, m, N, std::cref(params),
                                     std::cref(config), discrete, active, r));
      for (int r = base; r < hi; ++r) outcomes[r] = futures[r - base].get();
    }
  } else {
    for (int r = 0; r < config.restarts; ++r)
      outcomes[r] = run_restart(m, N, params, config, discrete, active, r);
  }

  int best = 0;
  for (int r = 1; r < config.restarts; ++r)
    if (outcomes[r].search.f < outcomes[best].search.f) best = r;

  OptResult result;
  result.best_restart = best;
  result.best_params = outcomes[best].params;
  result.best_pulse = synthesize_pulse(result.best_params, params);
  result.report = fidelity(evolve_basis(params, result.best_pulse, N), m, N);
  for (const auto& o : outcomes) {
    result.evaluations += o.search.evals;
    result.traces.push_back(o.search.trace);
  }
  if (auto why = pulse_violation(result.best_pulse, params.n_steps))
    throw std::runtime_error("optimize: synthesized pulse violates constraints: " + *why);
  result.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

}  // namespace

OptResult optimize_map(int m, int N, const SystemParams& params, const OptimizeConfig& config) {
  if (config.scenario == ControlScenario::Discrete)
    throw std::invalid_argument("optimize_map: use optimize_discrete for the discrete scenario");
  return run_multistart(m, N, params, config, false);
}

OptResult optimize_discrete(int m, int N, const SystemParams& params,
                            const OptimizeConfig& config) {
  return run_multistart(m, N, params, config, true);
}

}  // namespace ionmap
