// Copyright 2026 The CQE Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cqe/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cqe/errors.hpp"
#include "line_search.hpp"

namespace cqe {

std::string to_string(ResidualMode m) {
  switch (m) {
    case ResidualMode::exact:
      return "exact";
    case ResidualMode::finite_eta:
      return "finite-eta";
    case ResidualMode::sampled:
      return "sampled";
  }
  return "exact";
}

ResidualMode residual_mode_from_string(const std::string& s) {
  if (s == "exact") return ResidualMode::exact;
  if (s == "finite-eta") return ResidualMode::finite_eta;
  if (s == "sampled") return ResidualMode::sampled;
  throw DomainError("unknown residual mode '" + s + "'");
}

void SolverConfig::validate() const {
  if (!(eta > 0.0 && eta < 1.0)) throw PreconditionError("eta must lie in (0, 1)");
  if (!(delta > 0.0)) throw PreconditionError("delta must be positive");
  if (max_iterations < 0) throw PreconditionError("max_iterations must be non-negative");
  if (!(theta_bound > 0.0)) throw PreconditionError("theta_bound must be positive");
  if (!(theta_tolerance > 0.0)) throw PreconditionError("theta_tolerance must be positive");
  if (mode == ResidualMode::sampled && (sampling.n_total < 1 || sampling.shots_per_entry < 1))
    throw PreconditionError("sampled mode needs positive shot counts");
}

std::vector<StateVector> initial_guesses(const Hamiltonian& h, int k, std::span<const std::uint64_t> allowed) {
  std::vector<double> diag(h.dim(), 0.0);
  h.op().for_each([&](std::size_t r, std::size_t c, cplx v) {
    if (r == c) diag[r] = v.real();
  });
  std::vector<std::uint64_t> pool(allowed.begin(), allowed.end());
  if (pool.empty()) {
    pool.resize(h.dim());
    std::iota(pool.begin(), pool.end(), std::uint64_t{0});
  }
  if (k < 1 || static_cast<std::size_t>(k) > pool.size())
    throw DomainError("requested " + std::to_string(k) + " guesses from " + std::to_string(pool.size()) + " candidates");
  for (auto i : pool)
    if (i >= h.dim()) throw DomainError("candidate index outside the register");
  std::sort(pool.begin(), pool.end());

  const QubitRegister reg(h.n_qubits());
  std::vector<StateVector> out;
  std::vector<bool> used(pool.size(), false);
  for (int n = 0; n < k; ++n) {
    std::size_t best = pool.size();
    for (std::size_t c = 0; c < pool.size(); ++c) {
      if (used[c]) continue;
      if (best == pool.size() || diag[pool[c]] < diag[pool[best]] - 1e-12) best = c;
    }
    used[best] = true;
    out.push_back(basis_state(reg, pool[best]));
  }
  return out;
}

namespace {

std::vector<std::size_t> ranked_components(const StateVector& s) {
  std::vector<std::size_t> idx(s.dim());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return std::abs(s[a]) > std::abs(s[b]); });
  return idx;
}

// Projects out `basis` (twice) and normalizes; returns false when nothing is left.
bool orthogonalize(Amplitudes& v, const std::vector<StateVector>& basis) {
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& b : basis) {
      const cplx ov = inner_product(b.amplitudes(), v);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= ov * b[i];
    }
  double n = 0.0;
  for (const auto& a : v) n += std::norm(a);
  n = std::sqrt(n);
  if (n < 1e-10) return false;
  for (auto& a : v) a /= n;
  return true;
}

}  // namespace

std::vector<StateVector> warm_start(const std::vector<StateVector>& previous, int keep) {
  if (keep < 1) throw DomainError("warm start must keep at least one component");
  if (orthonormality_error(previous) > 1e-8) throw PreconditionError("warm start needs orthonormal states");
  std::vector<StateVector> out;
  for (std::size_t nu = 0; nu < previous.size(); ++nu) {
    const StateVector& s = previous[nu];
    const auto ranked = ranked_components(s);
    bool placed = false;
    for (std::size_t n = static_cast<std::size_t>(keep); n <= std::min(ranked.size(), static_cast<std::size_t>(keep) + 1); ++n) {
      Amplitudes v(s.dim(), 0.0);
      for (std::size_t j = 0; j < n; ++j) v[ranked[j]] = s[ranked[j]];
      if (orthogonalize(v, out)) {
        out.emplace_back(s.reg(), std::move(v));
        placed = true;
        break;
      }
    }
    if (!placed) throw DegeneracyError("warm start: state " + std::to_string(nu) + " is linearly dependent after truncation");
  }
  return out;
}

Eigensystem exact_diagonalize(const Eigen::MatrixXcd& h, int k) {
  if (h.rows() != h.cols()) throw DomainError("diagonalization needs a square matrix");
  if (static_cast<std::size_t>(h.rows()) > kMaxDenseDimension)
    throw CapacityError("dense diagonalization is capped at dimension " + std::to_string(kMaxDenseDimension));
  if (k < 1 || k > h.rows()) throw DomainError("requested eigenpair count out of range");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (h + h.adjoint()));
  if (es.info() != Eigen::Success) throw NumericalError("eigendecomposition failed");
  return {es.eigenvalues().head(k), es.eigenvectors().leftCols(k)};
}

Eigensystem exact_diagonalize(const Hamiltonian& h, int k) {
  if (h.dim() > kMaxDenseDimension)
    throw CapacityError("dense diagonalization is capped at dimension " + std::to_string(kMaxDenseDimension));
  return exact_diagonalize(h.dense(), k);
}

namespace {

struct Evolving {
  bool purified;
  WeightVector weights;
  std::vector<StateVector> states;  // separate form
  std::optional<PurifiedState> rho;  // purified form

  EnsembleState ensemble() const {
    return purified ? EnsembleState::purified(*rho) : EnsembleState::separate(states, weights);
  }

  void apply(const detail::EnergyCurve& curve, double theta) {
    if (purified) {
      Amplitudes out = curve.propagate(theta, rho->state.amplitudes(), rho->ancilla_dim());
      rho->state = StateVector(rho->state.reg(), std::move(out));
      return;
    }
    const std::size_t k = states.size(), d = states.front().dim();
    Amplitudes block(d * k);
    for (std::size_t nu = 0; nu < k; ++nu)
      for (std::size_t i = 0; i < d; ++i) block[i * k + nu] = states[nu][i];
    const Amplitudes out = curve.propagate(theta, block, k);
    for (std::size_t nu = 0; nu < k; ++nu) {
      Amplitudes v(d);
      for (std::size_t i = 0; i < d; ++i) v[i] = out[i * k + nu];
      states[nu] = StateVector(states[nu].reg(), std::move(v));
    }
  }
};

ResidualTensor measure(const GeneratorPool& pool, const Hamiltonian& h, const EnsembleState& ens,
                       const SolverConfig& config, bool purified, int iteration) {
  switch (config.mode) {
    case ResidualMode::exact:
      return ensemble_residual(pool, h, ens);
    case ResidualMode::finite_eta:
      return finite_eta_residual(pool, h, ens, config.eta);
    case ResidualMode::sampled:
      break;
  }
  if (config.sampling.infinite_shots) return finite_eta_residual(pool, h, ens, config.eta);
  const RngStream root(config.sampling.seed, purified ? 1 : 2);
  const auto n = static_cast<std::uint64_t>(iteration);
  if (purified)
    return purified_sampled_residual(pool, h, ens, config.sampling.n_total, config.sampling.shots_per_entry,
                                     config.eta, root.substream({n, 1}));
  RngStream plan_rng = root.substream({n, 0});
  const ShotPlan plan = multinomial_allocate(config.sampling.n_total, ens.weights(), plan_rng);
  return sampled_residual(pool, h, ens, plan, config.sampling.shots_per_entry, config.eta, root.substream({n, 1}));
}

Trajectory run_cqe(const GeneratorPool& pool, const Hamiltonian& h, const std::vector<StateVector>& initial,
                   const WeightVector& w, const SolverConfig& config, const Eigensystem* oracle, bool purified) {
  config.validate();
  if (initial.empty() || static_cast<int>(initial.size()) != w.size())
    throw DomainError("one weight per initial state is required");
  if (pool.dim() != h.dim() || initial.front().dim() != h.dim()) throw DomainError("register mismatch");
  if (orthonormality_error(initial) > 1e-8) throw PreconditionError("initial states must be orthonormal");
  if (purified && w.min() <= 0.0) throw PreconditionError("the purified algorithm needs strictly positive weights");

  Evolving ev{purified, w, {}, std::nullopt};
  if (purified)
    ev.rho = purify(initial, w);
  else
    ev.states = initial;

  Trajectory t;
  t.weights = w;
  for (int n = 0;; ++n) {
    const EnsembleState ens = ev.ensemble();
    const ResidualTensor r = measure(pool, h, ens, config, purified, n);
    IterationRecord rec;
    rec.iteration = n;
    rec.ensemble_energy = ensemble_energy(h, ens);
    rec.state_energies = state_energies(h, ens);
    rec.residual_frobenius_sq = r.frobenius_sq();
    const auto states = ens.states();
    rec.orthonormality_error = orthonormality_error(states);
    for (const auto& s : states) rec.norm_error = std::max(rec.norm_error, std::abs(s.norm() - 1.0));
    if (oracle) rec.overlaps = eigenstate_overlaps(states, *oracle);

    t.converged = rec.residual_frobenius_sq <= config.delta;
    if (t.converged || n >= config.max_iterations) {
      t.records.push_back(std::move(rec));
      break;
    }
    const SparseOperator a = build_a_operator(pool, r);
    if (a.empty()) {
      t.records.push_back(std::move(rec));
      break;
    }
    const detail::EnergyCurve curve(h, a, ens.block(), ens.columns());
    const LineSearchResult ls = detail::minimize_curve(curve, config.theta_bound, config.theta_tolerance);
    rec.theta_star = ls.theta;
    t.records.push_back(std::move(rec));
    if (ls.theta == 0.0) {
      if (config.mode != ResidualMode::sampled) break;
      continue;
    }
    ev.apply(curve, ls.theta);
  }
  t.final_states = ev.ensemble().states();
  return t;
}

}  // namespace

Trajectory parallel_cqe(const GeneratorPool& pool, const Hamiltonian& h, const std::vector<StateVector>& initial,
                        const WeightVector& w, const SolverConfig& config, const Eigensystem* oracle) {
  return run_cqe(pool, h, initial, w, config, oracle, true);
}

Trajectory weighted_random_cqe(const GeneratorPool& pool, const Hamiltonian& h,
                               const std::vector<StateVector>& initial, const WeightVector& w,
                               const SolverConfig& config, const Eigensystem* oracle) {
  return run_cqe(pool, h, initial, w, config, oracle, false);
}

}  // namespace cqe
