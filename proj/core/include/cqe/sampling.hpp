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

#pragma once

#include <cstdint>
#include <vector>

#include "cqe/acse.hpp"
#include "cqe/rng.hpp"

namespace cqe {

struct ShotPlan {
  std::vector<std::int64_t> counts;
  std::int64_t total = 0;
};

// Exact Multinomial(n, w) draw via sequential conditional binomials.
ShotPlan multinomial_allocate(std::int64_t n, const WeightVector& w, RngStream& rng);

struct SampledValue {
  double estimate = 0.0;
  double std_error = 0.0;
};

// Each Pauli term is measured `shots` times independently with
// p(+1) = (1 + <P>) / 2.
SampledValue sampled_expectation(const PauliSum& h, const StateVector& v, std::int64_t shots, RngStream& rng);

// Ensemble residual from the separate-state procedure: state nu is prepared
// plan.counts[nu] times, each preparation measures every Pauli term of the
// Hermitian parts of Gamma on |L+-> `shots_per_entry` times. The accumulated
// sum is divided by plan.total and by 2 i eta.
ResidualTensor sampled_residual(const GeneratorPool& pool, const Hamiltonian& h, const EnsembleState& ens,
                                const ShotPlan& plan, std::int64_t shots_per_entry, double eta, const RngStream& rng);

// Same quantity measured on the purification: n_total * shots_per_entry
// shots per Pauli term on |rho+->.
ResidualTensor purified_sampled_residual(const GeneratorPool& pool, const Hamiltonian& h, const EnsembleState& ens,
                                         std::int64_t n_total, std::int64_t shots_per_entry, double eta,
                                         const RngStream& rng);

struct EstimatorStatistics {
  ResidualTensor mean;
  // Unbiased sample variance of each complex entry, Var(Re) + Var(Im).
  std::vector<double> variance;
};

EstimatorStatistics estimator_statistics(const std::vector<ResidualTensor>& trials);

}  // namespace cqe
