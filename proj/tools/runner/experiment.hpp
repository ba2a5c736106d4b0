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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cqe/errors.hpp"
#include "cqe/fcidump.hpp"
#include "cqe/integrals.hpp"
#include "cqe/solvers.hpp"

namespace cqe::runner {

enum class ExperimentKind { random_model, h2_curve, h4_curve, generic };
enum class Algorithm { parallel, weighted_random };

std::string to_string(ExperimentKind k);
std::string to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& s);

// Bad or inconsistent configuration document.
class ConfigError : public Error {
 public:
  using Error::Error;
};

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::random_model;
  int n_qubits = 2;                 // random-model
  std::vector<double> distances;    // Angstrom
  std::vector<double> weights;      // raw; empty selects the experiment default
  int n_states = 0;                 // generic; 0 means the size of `weights` or 4
  std::string fcidump;              // generic
  bool spin_adapted = true;         // sector experiments
  int warm_start_keep = 2;          // h4-curve
  Algorithm algorithm = Algorithm::parallel;
  std::uint64_t seed = 1;
  std::string output_path = "results";
  SolverConfig solver;

  static ExperimentConfig from_json(const nlohmann::json& j);
  static ExperimentConfig load(const std::filesystem::path& path);
  nlohmann::json to_json() const;
  void validate() const;
  // FNV-1a of the canonical JSON echo without output_path, as 16 hex digits.
  std::string hash() const;
};

struct PointResult {
  double distance = 0.0;  // Angstrom; 0 for models without geometry
  std::vector<double> exact;
  std::vector<double> computed;  // state order
  double exact_ensemble_energy = 0.0;
  double max_abs_error = 0.0;  // sorted computed vs exact
  int iterations = 0;
  bool converged = false;
  double seconds = 0.0;
  std::optional<std::string> error;
  Trajectory trajectory;
};

struct ResultBundle {
  ExperimentConfig config;
  std::string config_hash;
  std::vector<PointResult> points;
  double seconds = 0.0;

  bool all_converged() const;
  nlohmann::json to_json() const;
  // result.json, trace.csv, curve.csv and the timing.json sidecar.
  void write(const std::filesystem::path& dir) const;
};

ResultBundle run_random_model(const ExperimentConfig& config);
ResultBundle run_h2_curve(const ExperimentConfig& config);
ResultBundle run_h4_curve(const ExperimentConfig& config);
ResultBundle run_generic(const ExperimentConfig& config);
ResultBundle run_experiment(const ExperimentConfig& config);

// Exact eigenvalues only; no solver run.
ResultBundle run_oracle(const ExperimentConfig& config);

// Molecular pieces shared by the curve runners.
struct SectorProblem {
  Hamiltonian h;
  GeneratorPool pool;
  SectorBasis basis;
  Eigensystem oracle;  // eigenpairs inside the sector, on the problem register
  std::vector<std::uint64_t> allowed;  // register indices spanning the sector
};

SectorProblem compressed_sector_problem(const IntegralSet& mo, int n_states, bool spin_adapted);
IntegralSet hydrogen_chain_integrals(int n_atoms, double distance_angstrom);

// Trajectory table: one row per iteration.
std::string trace_csv(const ResultBundle& bundle);
// One row per point with exact, computed and delta columns.
std::string curve_csv(const ResultBundle& bundle);

}  // namespace cqe::runner
