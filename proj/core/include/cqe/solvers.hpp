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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cqe/acse.hpp"
#include "cqe/sampling.hpp"

namespace cqe {

enum class ResidualMode { exact, finite_eta, sampled };

std::string to_string(ResidualMode m);
ResidualMode residual_mode_from_string(const std::string& s);

struct SamplingConfig {
  std::int64_t n_total = 64;
  std::int64_t shots_per_entry = 1;
  std::uint64_t seed = 0;
  // Use the exact expectation of the sampled estimator instead of drawing.
  bool infinite_shots = false;
};

struct SolverConfig {
  double eta = 0.3;
  double delta = 1e-8;
  int max_iterations = 500;
  double theta_bound = 1.0;
  double theta_tolerance = 1e-6;
  ResidualMode mode = ResidualMode::exact;
  SamplingConfig sampling;

  void validate() const;
};

struct IterationRecord {
  int iteration = 0;
  double ensemble_energy = 0.0;
  std::vector<double> state_energies;
  double residual_frobenius_sq = 0.0;
  double theta_star = 0.0;  // step applied after this record; 0 on the last one
  double orthonormality_error = 0.0;
  double norm_error = 0.0;
  std::optional<std::vector<double>> overlaps;
};

struct Trajectory {
  std::vector<IterationRecord> records;
  bool converged = false;
  std::vector<StateVector> final_states;
  WeightVector weights = WeightVector::uniform(1);

  // Number of updates applied.
  int iterations() const noexcept { return records.empty() ? 0 : static_cast<int>(records.size()) - 1; }
};

struct LineSearchResult {
  double theta = 0.0;
  double energy = 0.0;
  double initial_energy = 0.0;
  int evaluations = 0;
};

// Minimizes the ensemble energy of exp(theta A) over [-bound, bound]: a
// 33-point scan followed by golden-section refinement around the best point.
// Never returns a step that raises the energy.
LineSearchResult line_search_theta(const Hamiltonian& h, const SparseOperator& a, const EnsembleState& ens,
                                   double bound, double tol);

// The K basis states with lowest diagonal energy, restricted to `allowed`
// indices when given. Ties within 1e-12 go to the lower index.
std::vector<StateVector> initial_guesses(const Hamiltonian& h, int k, std::span<const std::uint64_t> allowed = {});

// Keeps the `keep` largest-|amplitude| components of each state, then
// orthonormalizes in order. A state that collapses onto its predecessors gets
// one more component before giving up.
std::vector<StateVector> warm_start(const std::vector<StateVector>& previous, int keep = 2);

inline constexpr std::size_t kMaxDenseDimension = std::size_t{1} << 12;

Eigensystem exact_diagonalize(const Eigen::MatrixXcd& h, int k);
Eigensystem exact_diagonalize(const Hamiltonian& h, int k);

// Purified-ensemble algorithm: one residual on |rho> per iteration.
Trajectory parallel_cqe(const GeneratorPool& pool, const Hamiltonian& h, const std::vector<StateVector>& initial,
                        const WeightVector& w, const SolverConfig& config, const Eigensystem* oracle = nullptr);

// Separate-state algorithm: multinomial shot plan over the members.
Trajectory weighted_random_cqe(const GeneratorPool& pool, const Hamiltonian& h,
                               const std::vector<StateVector>& initial, const WeightVector& w,
                               const SolverConfig& config, const Eigensystem* oracle = nullptr);

}  // namespace cqe
