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


#include <benchmark/benchmark.h>

#include "cqe/integrals.hpp"
#include "cqe/sampling.hpp"
#include "cqe/solvers.hpp"

namespace {

using namespace cqe;

struct Chain {
  Hamiltonian h;
  GeneratorPool pool;
  std::vector<StateVector> states;
  WeightVector weights;
};

Chain chain(int n_atoms, double angstrom, int k) {
  const AoIntegrals ao = build_ao_integrals(Geometry::hydrogen_chain(n_atoms, angstrom * kAngstromToBohr));
  const IntegralSet mo = transform_to_mo(ao.integrals, scf_with_fallback(ao.overlap, ao.integrals, n_atoms));
  const int modes = 2 * n_atoms;
  Hamiltonian h(jordan_wigner(build_hamiltonian(mo)));
  const SectorBasis basis = sector_basis(modes, n_atoms, 0);
  auto states = initial_guesses(h, k, basis.determinants);
  std::vector<double> raw;
  for (int i = k; i >= 1; --i) raw.push_back(i);
  return {std::move(h), GeneratorPool::fermionic(modes), std::move(states), WeightVector::from_raw(raw)};
}

const Chain& h2() {
  static const Chain c = chain(2, 0.7, 4);
  return c;
}

const Chain& h4() {
  static const Chain c = chain(4, 1.5, 8);
  return c;
}

void BM_ExactResidual(benchmark::State& state) {
  const Chain& c = state.range(0) == 2 ? h2() : h4();
  const auto ens = EnsembleState::separate(c.states, c.weights).to_purified();
  for (auto _ : state) benchmark::DoNotOptimize(ensemble_residual(c.pool, c.h, ens));
  state.counters["generators"] = static_cast<double>(c.pool.generators().size());
}
BENCHMARK(BM_ExactResidual)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_FiniteEtaResidual(benchmark::State& state) {
  const Chain& c = state.range(0) == 2 ? h2() : h4();
  const auto ens = EnsembleState::separate(c.states, c.weights).to_purified();
  for (auto _ : state) benchmark::DoNotOptimize(finite_eta_residual(c.pool, c.h, ens, 0.3));
}
BENCHMARK(BM_FiniteEtaResidual)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_LineSearch(benchmark::State& state) {
  const Chain& c = state.range(0) == 2 ? h2() : h4();
  const auto ens = EnsembleState::separate(c.states, c.weights).to_purified();
  const SparseOperator a = build_a_operator(c.pool, ensemble_residual(c.pool, c.h, ens));
  for (auto _ : state) benchmark::DoNotOptimize(line_search_theta(c.h, a, ens, 1.0, 1e-6));
}
BENCHMARK(BM_LineSearch)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_MultinomialAllocate(benchmark::State& state) {
  const WeightVector w = WeightVector::descending(8);
  RngStream rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(multinomial_allocate(state.range(0), w, rng));
}
BENCHMARK(BM_MultinomialAllocate)->Arg(64)->Arg(1 << 20);

void BM_SampledResidual(benchmark::State& state) {
  const Chain& c = h2();
  const auto ens = EnsembleState::separate(c.states, c.weights);
  RngStream rng(2);
  std::uint64_t n = 0;
  for (auto _ : state) {
    const ShotPlan plan = multinomial_allocate(state.range(0), c.weights, rng);
    benchmark::DoNotOptimize(sampled_residual(c.pool, c.h, ens, plan, 1, 0.3, rng.substream({n++})));
  }
}
BENCHMARK(BM_SampledResidual)->Arg(64)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_PurifiedSampledResidual(benchmark::State& state) {
  const Chain& c = h2();
  const auto ens = EnsembleState::separate(c.states, c.weights);
  RngStream rng(3);
  std::uint64_t n = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(purified_sampled_residual(c.pool, c.h, ens, state.range(0), 1, 0.3, rng.substream({n++})));
}
BENCHMARK(BM_PurifiedSampledResidual)->Arg(64)->Arg(4096)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
