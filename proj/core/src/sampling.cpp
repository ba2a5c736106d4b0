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

#include "cqe/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "cqe/errors.hpp"

namespace cqe {

double RngStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = 0.0;
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  spare_ = r * std::sin(2.0 * std::numbers::pi * u2);
  has_spare_ = true;
  return r * std::cos(2.0 * std::numbers::pi * u2);
}

namespace {

std::int64_t binomial(std::int64_t n, double p, RngStream& rng) {
  if (n <= 0 || p <= 0.0) return 0;
  if (p >= 1.0) return n;
  std::binomial_distribution<std::int64_t> dist(n, p);
  return dist(rng);
}

double plus_probability(double expectation) { return std::clamp(0.5 * (1.0 + expectation), 0.0, 1.0); }

// Hermitian parts (G + G^+)/2 and (G - G^+)/(2i) with real coefficients.
std::array<PauliSum, 2> hermitian_parts(const PauliSum& g) {
  const PauliSum ga = adjoint(g);
  PauliSum re = add_scaled(g, 1.0, ga);
  re *= 0.5;
  PauliSum im = add_scaled(g, -1.0, ga);
  im *= cplx(0, -0.5);
  return {re, im};
}

// Sum over Pauli terms of c * (sum of +-1 outcomes) / shots_per_unit for
// `units` independent preparations of `amps`.
double sampled_sum(const PauliSum& part, std::span<const cplx> amps, std::size_t columns, std::int64_t units,
                   std::int64_t shots_per_unit, const RngStream& base) {
  double acc = 0.0;
  std::uint64_t term = 0;
  const std::size_t dim = amps.size() / columns;
  for (const auto& [s, c] : part.terms()) {
    ++term;
    const double coeff = c.real();
    if (s.is_identity()) {
      acc += coeff * static_cast<double>(units);
      continue;
    }
    double ev = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      const cplx ph = s.phase_on(j);
      const std::size_t i = j ^ s.x();
      for (std::size_t col = 0; col < columns; ++col)
        ev += (std::conj(amps[i * columns + col]) * ph * amps[j * columns + col]).real();
    }
    RngStream rng = base.substream({term});
    const std::int64_t shots = units * shots_per_unit;
    const std::int64_t plus = binomial(shots, plus_probability(ev), rng);
    acc += coeff * static_cast<double>(2 * plus - shots) / static_cast<double>(shots_per_unit);
  }
  return acc;
}

void check_eta(double eta) {
  if (!(eta > 0.0 && eta < 1.0)) throw PreconditionError("eta must lie in (0, 1)");
}

}  // namespace

ShotPlan multinomial_allocate(std::int64_t n, const WeightVector& w, RngStream& rng) {
  if (n < 1) throw PreconditionError("shot total must be at least 1");
  ShotPlan plan;
  plan.total = n;
  std::int64_t remaining = n;
  double mass = 1.0;
  for (int k = 0; k < w.size(); ++k) {
    const double wk = w[static_cast<std::size_t>(k)];
    std::int64_t m = 0;
    if (k == w.size() - 1)
      m = remaining;
    else if (mass > 0.0)
      m = binomial(remaining, std::min(1.0, wk / mass), rng);
    plan.counts.push_back(m);
    remaining -= m;
    mass -= wk;
  }
  return plan;
}

SampledValue sampled_expectation(const PauliSum& h, const StateVector& v, std::int64_t shots, RngStream& rng) {
  if (shots < 1) throw PreconditionError("shots must be at least 1");
  if (!h.is_hermitian(1e-12)) throw PreconditionError("sampled observable must be Hermitian");
  if (h.n_qubits() != v.n_qubits()) throw DomainError("register mismatch");
  SampledValue out;
  double var = 0.0;
  for (const auto& [s, c] : h.terms()) {
    const double coeff = c.real();
    if (s.is_identity()) {
      out.estimate += coeff;
      continue;
    }
    const double ev = expectation(PauliSum(s, 1.0), v).real();
    const std::int64_t plus = binomial(shots, plus_probability(ev), rng);
    const double mean = static_cast<double>(2 * plus - shots) / static_cast<double>(shots);
    out.estimate += coeff * mean;
    const double sample_var =
        shots > 1 ? (1.0 - mean * mean) * static_cast<double>(shots) / static_cast<double>(shots - 1) : 0.0;
    var += coeff * coeff * sample_var / static_cast<double>(shots);
  }
  out.std_error = std::sqrt(var);
  return out;
}

ResidualTensor sampled_residual(const GeneratorPool& pool, const Hamiltonian& h, const EnsembleState& ens,
                                const ShotPlan& plan, std::int64_t shots_per_entry, double eta, const RngStream& rng) {
  check_eta(eta);
  if (static_cast<int>(plan.counts.size()) != ens.size()) throw DomainError("shot plan length differs from ensemble size");
  if (shots_per_entry < 1) throw PreconditionError("shots per entry must be at least 1");
  if (pool.dim() != h.dim() || h.dim() != ens.dim()) throw DomainError("register mismatch");
  const auto states = ens.to_separate().states();
  ResidualTensor acc(pool.n_rows(), pool.n_cols());
  const auto& gens = pool.generators();
  std::vector<std::array<PauliSum, 2>> parts;
  parts.reserve(gens.size());
  for (std::size_t k = 0; k < gens.size(); ++k) parts.push_back(hermitian_parts(*pool.pauli(k)));

  for (std::size_t nu = 0; nu < states.size(); ++nu) {
    const std::int64_t m = plan.counts[nu];
    if (m == 0) continue;
    const auto amps = states[nu].amplitudes();
    const std::array<Amplitudes, 2> lambda = {evolve_block(h, eta, amps, 1), evolve_block(h, -eta, amps, 1)};
    for (std::size_t k = 0; k < gens.size(); ++k)
      for (int z = 0; z < 2; ++z)
        for (int part = 0; part < 2; ++part) {
          const RngStream sub = rng.substream({nu, k, static_cast<std::uint64_t>(z), static_cast<std::uint64_t>(part)});
          const double s = sampled_sum(parts[k][static_cast<std::size_t>(part)], lambda[static_cast<std::size_t>(z)],
                                       1, m, shots_per_entry, sub);
          const cplx contrib = part == 0 ? cplx(s, 0) : cplx(0, s);
          acc.at(gens[k].row, gens[k].col) += z == 0 ? -contrib : contrib;
        }
  }
  const cplx scale = 1.0 / (static_cast<double>(plan.total) * cplx(0, 2.0 * eta));
  for (auto& e : acc.entries()) e *= scale;
  return acc;
}

ResidualTensor purified_sampled_residual(const GeneratorPool& pool, const Hamiltonian& h, const EnsembleState& ens,
                                         std::int64_t n_total, std::int64_t shots_per_entry, double eta,
                                         const RngStream& rng) {
  check_eta(eta);
  if (n_total < 1 || shots_per_entry < 1) throw PreconditionError("shot counts must be at least 1");
  if (pool.dim() != h.dim() || h.dim() != ens.dim()) throw DomainError("register mismatch");
  const EnsembleState rho = ens.to_purified();
  const std::array<Amplitudes, 2> lambda = {evolve_block(h, eta, rho.block(), rho.columns()),
                                            evolve_block(h, -eta, rho.block(), rho.columns())};
  ResidualTensor acc(pool.n_rows(), pool.n_cols());
  const auto& gens = pool.generators();
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const auto parts = hermitian_parts(*pool.pauli(k));
    for (int z = 0; z < 2; ++z)
      for (int part = 0; part < 2; ++part) {
        const RngStream sub = rng.substream({k, static_cast<std::uint64_t>(z), static_cast<std::uint64_t>(part)});
        const double s = sampled_sum(parts[static_cast<std::size_t>(part)], lambda[static_cast<std::size_t>(z)],
                                     rho.columns(), n_total, shots_per_entry, sub);
        const cplx contrib = part == 0 ? cplx(s, 0) : cplx(0, s);
        acc.at(gens[k].row, gens[k].col) += z == 0 ? -contrib : contrib;
      }
  }
  const cplx scale = 1.0 / (static_cast<double>(n_total) * cplx(0, 2.0 * eta));
  for (auto& e : acc.entries()) e *= scale;
  return acc;
}

EstimatorStatistics estimator_statistics(const std::vector<ResidualTensor>& trials) {
  if (trials.size() < 2) throw PreconditionError("estimator statistics need at least two trials");
  const auto& first = trials.front();
  for (const auto& t : trials)
    if (!t.same_shape(first)) throw DomainError("trial shape mismatch");
  EstimatorStatistics out{ResidualTensor(first.n_rows(), first.n_cols()), std::vector<double>(first.size(), 0.0)};
  const double n = static_cast<double>(trials.size());
  for (const auto& t : trials) out.mean += t;
  out.mean *= 1.0 / n;
  for (const auto& t : trials)
    for (std::size_t k = 0; k < t.size(); ++k) out.variance[k] += std::norm(t.entries()[k] - out.mean.entries()[k]);
  for (auto& v : out.variance) v /= n - 1.0;
  return out;
}

}  // namespace cqe
