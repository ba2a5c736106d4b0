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


#include "experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <numeric>
#include <sstream>

#include <Eigen/Core>

#include "cqe/rng.hpp"

#ifndef CQE_VERSION
#define CQE_VERSION "unknown"
#endif

namespace cqe::runner {

using nlohmann::json;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

void reject_unknown(const json& j, std::initializer_list<const char*> known, const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    if (std::none_of(known.begin(), known.end(), [&](const char* k) { return key == k; }))
      throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

ExperimentKind experiment_from_string(const std::string& s) {
  if (s == "random-model") return ExperimentKind::random_model;
  if (s == "h2-curve") return ExperimentKind::h2_curve;
  if (s == "h4-curve") return ExperimentKind::h4_curve;
  if (s == "generic") return ExperimentKind::generic;
  throw ConfigError("unknown experiment '" + s + "'");
}

WeightVector weights_for(const ExperimentConfig& c, int k) {
  if (c.weights.empty()) return WeightVector::descending(k);
  if (static_cast<int>(c.weights.size()) != k)
    throw ConfigError("expected " + std::to_string(k) + " weights, got " + std::to_string(c.weights.size()));
  return WeightVector::from_raw(c.weights);
}

SolverConfig point_solver(const ExperimentConfig& c) {
  SolverConfig s = c.solver;
  s.sampling.seed = c.seed;
  return s;
}

Trajectory solve(const ExperimentConfig& c, const GeneratorPool& pool, const Hamiltonian& h,
                 const std::vector<StateVector>& initial, const WeightVector& w, const Eigensystem& oracle) {
  const SolverConfig s = point_solver(c);
  if (c.algorithm == Algorithm::weighted_random) return weighted_random_cqe(pool, h, initial, w, s, &oracle);
  return parallel_cqe(pool, h, initial, w, s, &oracle);
}

void fill_point(PointResult& p, const Eigensystem& oracle, const WeightVector& w) {
  p.exact.assign(oracle.values.data(), oracle.values.data() + oracle.values.size());
  p.exact_ensemble_energy = 0.0;
  for (int i = 0; i < w.size(); ++i) p.exact_ensemble_energy += w[static_cast<std::size_t>(i)] * p.exact[static_cast<std::size_t>(i)];
  if (p.trajectory.records.empty()) return;
  p.computed = p.trajectory.records.back().state_energies;
  p.iterations = p.trajectory.iterations();
  p.converged = p.trajectory.converged;
  std::vector<double> sorted = p.computed;
  std::sort(sorted.begin(), sorted.end());
  p.max_abs_error = 0.0;
  for (std::size_t i = 0; i < sorted.size() && i < p.exact.size(); ++i)
    p.max_abs_error = std::max(p.max_abs_error, std::abs(sorted[i] - p.exact[i]));
}

// Sector eigenpairs placed on the register rows listed in `rows`.
Eigensystem embedded_oracle(const Eigen::MatrixXcd& block, int k, std::size_t register_dim,
                            const std::vector<std::uint64_t>& rows) {
  Eigensystem sector = exact_diagonalize(block, k);
  Eigensystem out;
  out.values = sector.values;
  out.vectors = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(register_dim), k);
  for (std::size_t i = 0; i < rows.size(); ++i)
    out.vectors.row(static_cast<Eigen::Index>(rows[i])) = sector.vectors.row(static_cast<Eigen::Index>(i));
  return out;
}

struct FullRegisterProblem {
  Hamiltonian h;
  GeneratorPool pool;
  SectorBasis basis;
  Eigensystem oracle;
};

FullRegisterProblem full_register_problem(const IntegralSet& mo, int n_states) {
  const FermionOperator f = build_hamiltonian(mo);
  const int n_modes = 2 * mo.n_spatial;
  SectorBasis basis = sector_basis(n_modes, mo.n_electrons, mo.ms2);
  if (n_states > static_cast<int>(basis.size())) throw DomainError("more states requested than the sector holds");
  const CompressedHamiltonian comp = compress_to_sector(f, basis);
  const auto d = static_cast<Eigen::Index>(basis.size());
  Eigensystem oracle = embedded_oracle(comp.matrix.topLeftCorner(d, d), n_states, std::size_t{1} << n_modes,
                                       basis.determinants);
  return {Hamiltonian(jordan_wigner(f)), GeneratorPool::fermionic(n_modes), std::move(basis), std::move(oracle)};
}

void stamp(ResultBundle& b) { b.config_hash = b.config.hash(); }

}  // namespace

std::string to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::random_model: return "random-model";
    case ExperimentKind::h2_curve: return "h2-curve";
    case ExperimentKind::h4_curve: return "h4-curve";
    case ExperimentKind::generic: return "generic";
  }
  return "?";
}

std::string to_string(Algorithm a) { return a == Algorithm::parallel ? "parallel" : "weighted-random"; }

Algorithm algorithm_from_string(const std::string& s) {
  if (s == "parallel") return Algorithm::parallel;
  if (s == "weighted-random") return Algorithm::weighted_random;
  throw ConfigError("unknown algorithm '" + s + "'");
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  try {
    reject_unknown(j,
                   {"experiment", "n_qubits", "distances", "weights", "n_states", "fcidump", "spin_adapted",
                    "warm_start_keep", "algorithm", "seed", "output_path", "solver"},
                   "config");
    ExperimentConfig c;
    if (!j.contains("experiment")) throw ConfigError("missing 'experiment'");
    c.experiment = experiment_from_string(j.at("experiment").get<std::string>());
    c.n_qubits = get_or(j, "n_qubits", c.n_qubits);
    c.distances = get_or(j, "distances", c.distances);
    c.weights = get_or(j, "weights", c.weights);
    c.n_states = get_or(j, "n_states", c.n_states);
    c.fcidump = get_or(j, "fcidump", c.fcidump);
    c.spin_adapted = get_or(j, "spin_adapted", c.spin_adapted);
    c.warm_start_keep = get_or(j, "warm_start_keep", c.warm_start_keep);
    c.algorithm = algorithm_from_string(get_or<std::string>(j, "algorithm", "parallel"));
    c.seed = get_or(j, "seed", c.seed);
    c.output_path = get_or(j, "output_path", c.output_path);
    if (j.contains("solver")) {
      const json& s = j.at("solver");
      if (!s.is_object()) throw ConfigError("'solver' must be an object");
      reject_unknown(s,
                     {"eta", "delta", "max_iterations", "theta_bound", "theta_tolerance", "mode", "n_total",
                      "shots_per_entry", "infinite_shots"},
                     "solver");
      SolverConfig& sc = c.solver;
      sc.eta = get_or(s, "eta", sc.eta);
      sc.delta = get_or(s, "delta", sc.delta);
      sc.max_iterations = get_or(s, "max_iterations", sc.max_iterations);
      sc.theta_bound = get_or(s, "theta_bound", sc.theta_bound);
      sc.theta_tolerance = get_or(s, "theta_tolerance", sc.theta_tolerance);
      if (s.contains("mode")) {
        try {
          sc.mode = residual_mode_from_string(s.at("mode").get<std::string>());
        } catch (const Error& e) {
          throw ConfigError(e.what());
        }
      }
      sc.sampling.n_total = get_or(s, "n_total", sc.sampling.n_total);
      sc.sampling.shots_per_entry = get_or(s, "shots_per_entry", sc.sampling.shots_per_entry);
      sc.sampling.infinite_shots = get_or(s, "infinite_shots", sc.sampling.infinite_shots);
    }
    c.validate();
    return c;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  ExperimentConfig c = from_json(j);
  if (!c.fcidump.empty() && std::filesystem::path(c.fcidump).is_relative())
    c.fcidump = (path.parent_path() / c.fcidump).lexically_normal().string();
  return c;
}

json ExperimentConfig::to_json() const {
  const SolverConfig& s = solver;
  return json{{"experiment", to_string(experiment)},
              {"n_qubits", n_qubits},
              {"distances", distances},
              {"weights", weights},
              {"n_states", n_states},
              {"fcidump", fcidump},
              {"spin_adapted", spin_adapted},
              {"warm_start_keep", warm_start_keep},
              {"algorithm", to_string(algorithm)},
              {"seed", seed},
              {"output_path", output_path},
              {"solver",
               {{"eta", s.eta},
                {"delta", s.delta},
                {"max_iterations", s.max_iterations},
                {"theta_bound", s.theta_bound},
                {"theta_tolerance", s.theta_tolerance},
                {"mode", cqe::to_string(s.mode)},
                {"n_total", s.sampling.n_total},
                {"shots_per_entry", s.sampling.shots_per_entry},
                {"infinite_shots", s.sampling.infinite_shots}}}};
}

void ExperimentConfig::validate() const {
  try {
    solver.validate();
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  for (double d : distances)
    if (!(d > 0.0)) throw ConfigError("distances must be positive");
  if (!weights.empty()) {
    double sum = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (!(weights[i] >= 0.0)) throw ConfigError("weights must be non-negative");
      if (i > 0 && weights[i] > weights[i - 1]) throw ConfigError("weights must be non-increasing");
      sum += weights[i];
    }
    if (!(sum > 0.0)) throw ConfigError("weights must not all be zero");
  }
  if (warm_start_keep < 1) throw ConfigError("warm_start_keep must be at least 1");
  if (solver.mode == ResidualMode::sampled && algorithm == Algorithm::parallel && !solver.sampling.infinite_shots &&
      solver.sampling.n_total < 1)
    throw ConfigError("n_total must be positive");
  switch (experiment) {
    case ExperimentKind::random_model:
      if (n_qubits < 1) throw ConfigError("n_qubits must be positive");
      break;
    case ExperimentKind::h2_curve:
      for (double d : distances)
        if (d < 0.3 || d > 6.0) throw ConfigError("h2-curve distances must lie in [0.3, 6.0] Angstrom");
      break;
    case ExperimentKind::h4_curve:
      for (double d : distances)
        if (d < 0.5 || d > 4.0) throw ConfigError("h4-curve distances must lie in [0.5, 4.0] Angstrom");
      break;
    case ExperimentKind::generic:
      if (fcidump.empty()) throw ConfigError("generic experiments need 'fcidump'");
      if (n_states < 0) throw ConfigError("n_states must be non-negative");
      break;
  }
}

std::string ExperimentConfig::hash() const {
  json j = to_json();
  j.erase("output_path");
  const std::string text = j.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

bool ResultBundle::all_converged() const {
  return std::all_of(points.begin(), points.end(), [](const PointResult& p) { return !p.error && p.converged; });
}

IntegralSet hydrogen_chain_integrals(int n_atoms, double distance_angstrom) {
  const AoIntegrals ao = build_ao_integrals(Geometry::hydrogen_chain(n_atoms, distance_angstrom * kAngstromToBohr));
  const MolecularOrbitals mos = scf_with_fallback(ao.overlap, ao.integrals, n_atoms);
  IntegralSet mo = transform_to_mo(ao.integrals, mos);
  mo.n_electrons = n_atoms;
  mo.ms2 = 0;
  return mo;
}

SectorProblem compressed_sector_problem(const IntegralSet& mo, int n_states, bool spin_adapted) {
  const FermionOperator f = build_hamiltonian(mo);
  SectorBasis basis = sector_basis(2 * mo.n_spatial, mo.n_electrons, mo.ms2);
  if (basis.size() == 0) throw DomainError("empty particle-number sector");
  if (n_states < 1 || n_states > static_cast<int>(basis.size()))
    throw DomainError("requested " + std::to_string(n_states) + " states from a sector of " +
                      std::to_string(basis.size()));
  CompressedHamiltonian comp = compress_to_sector(f, basis);
  std::optional<GeneratorPool> pool;
  if (spin_adapted && mo.ms2 == 0) {
    const Eigen::MatrixXd q = spin_flip_adapted_basis(basis);
    comp = rotate_sector(comp, q);
    pool = GeneratorPool::sector(basis, q);
  } else {
    pool = GeneratorPool::sector(basis);
  }
  std::vector<std::uint64_t> rows(basis.size());
  std::iota(rows.begin(), rows.end(), std::uint64_t{0});
  const auto d = static_cast<Eigen::Index>(basis.size());
  Eigensystem oracle = embedded_oracle(comp.matrix.topLeftCorner(d, d), n_states, comp.matrix.rows(), rows);
  return {Hamiltonian::from_dense(comp.matrix), std::move(*pool), std::move(basis), std::move(oracle),
          std::move(rows)};
}

ResultBundle run_random_model(const ExperimentConfig& config) {
  if (config.n_qubits < 1 || config.n_qubits > 5)
    throw CapacityError("random-model supports 1 to 5 qubits, got " + std::to_string(config.n_qubits));
  const auto t0 = std::chrono::steady_clock::now();
  ResultBundle b{config, {}, {}, 0.0};
  stamp(b);
  const int k = 1 << config.n_qubits;
  const WeightVector w = weights_for(config, k);
  const Hamiltonian h(random_hamiltonian(config.n_qubits, config.seed));
  const GeneratorPool pool = GeneratorPool::transition(config.n_qubits);
  const Eigensystem oracle = exact_diagonalize(h, k);
  std::vector<StateVector> initial;
  for (int i = 0; i < k; ++i) initial.push_back(basis_state(QubitRegister(config.n_qubits), static_cast<std::size_t>(i)));

  PointResult p;
  p.trajectory = solve(config, pool, h, initial, w, oracle);
  fill_point(p, oracle, w);
  p.seconds = seconds_since(t0);
  b.points.push_back(std::move(p));
  b.seconds = seconds_since(t0);
  return b;
}

ResultBundle run_h2_curve(const ExperimentConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  ResultBundle b{config, {}, {}, 0.0};
  stamp(b);
  const std::vector<double> distances = config.distances.empty() ? std::vector<double>{0.7} : config.distances;
  const WeightVector w = config.weights.empty() ? WeightVector::from_raw(std::vector<double>{9, 9, 1, 1})
                                                : weights_for(config, 4);

  auto run_point = [&](double d) {
    const auto tp = std::chrono::steady_clock::now();
    PointResult p;
    p.distance = d;
    try {
      const SectorProblem prob = compressed_sector_problem(hydrogen_chain_integrals(2, d), 4, config.spin_adapted);
      p.trajectory = solve(config, prob.pool, prob.h, initial_guesses(prob.h, 4, prob.allowed), w, prob.oracle);
      fill_point(p, prob.oracle, w);
    } catch (const Error& e) {
      p.error = e.what();
    }
    p.seconds = seconds_since(tp);
    return p;
  };

  std::vector<std::future<PointResult>> jobs;
  for (double d : distances) jobs.push_back(std::async(std::launch::async, run_point, d));
  for (auto& j : jobs) b.points.push_back(j.get());
  b.seconds = seconds_since(t0);
  return b;
}

ResultBundle run_h4_curve(const ExperimentConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  ResultBundle b{config, {}, {}, 0.0};
  stamp(b);
  std::vector<double> distances = config.distances;
  if (distances.empty())
    for (int i = 0; i < 8; ++i) distances.push_back(0.7 + 0.4 * i);
  std::sort(distances.begin(), distances.end(), std::greater<>());
  const int k = 8;
  const WeightVector w = weights_for(config, k);

  std::optional<std::vector<StateVector>> previous;
  for (double d : distances) {
    const auto tp = std::chrono::steady_clock::now();
    PointResult p;
    p.distance = d;
    try {
      const FullRegisterProblem prob = full_register_problem(hydrogen_chain_integrals(4, d), k);
      std::vector<StateVector> initial = previous ? warm_start(*previous, config.warm_start_keep)
                                                  : initial_guesses(prob.h, k, prob.basis.determinants);
      p.trajectory = solve(config, prob.pool, prob.h, initial, w, prob.oracle);
      fill_point(p, prob.oracle, w);
      previous = p.trajectory.final_states;
    } catch (const Error& e) {
      p.error = e.what();
      previous.reset();
    }
    p.seconds = seconds_since(tp);
    b.points.push_back(std::move(p));
  }
  std::reverse(b.points.begin(), b.points.end());
  b.seconds = seconds_since(t0);
  return b;
}

ResultBundle run_generic(const ExperimentConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  ResultBundle b{config, {}, {}, 0.0};
  stamp(b);
  const IntegralSet ints = read_fcidump_file(config.fcidump);
  const std::size_t sector = sector_basis(2 * ints.n_spatial, ints.n_electrons, ints.ms2).size();
  int k = config.n_states;
  if (k == 0) k = config.weights.empty() ? static_cast<int>(std::min<std::size_t>(4, sector))
                                        : static_cast<int>(config.weights.size());
  const WeightVector w = weights_for(config, k);
  const SectorProblem prob = compressed_sector_problem(ints, k, config.spin_adapted);

  PointResult p;
  p.trajectory = solve(config, prob.pool, prob.h, initial_guesses(prob.h, k, prob.allowed), w, prob.oracle);
  fill_point(p, prob.oracle, w);
  p.seconds = seconds_since(t0);
  b.points.push_back(std::move(p));
  b.seconds = seconds_since(t0);
  return b;
}

ResultBundle run_experiment(const ExperimentConfig& config) {
  config.validate();
  switch (config.experiment) {
    case ExperimentKind::random_model: return run_random_model(config);
    case ExperimentKind::h2_curve: return run_h2_curve(config);
    case ExperimentKind::h4_curve: return run_h4_curve(config);
    case ExperimentKind::generic: return run_generic(config);
  }
  throw ConfigError("unknown experiment");
}

ResultBundle run_oracle(const ExperimentConfig& config) {
  config.validate();
  const auto t0 = std::chrono::steady_clock::now();
  ResultBundle b{config, {}, {}, 0.0};
  stamp(b);
  auto add = [&](double d, const Eigensystem& oracle, const WeightVector& w) {
    PointResult p;
    p.distance = d;
    fill_point(p, oracle, w);
    b.points.push_back(std::move(p));
  };
  switch (config.experiment) {
    case ExperimentKind::random_model: {
      if (config.n_qubits < 1 || config.n_qubits > 5) throw CapacityError("random-model supports 1 to 5 qubits");
      const int k = 1 << config.n_qubits;
      add(0.0, exact_diagonalize(Hamiltonian(random_hamiltonian(config.n_qubits, config.seed)), k),
          weights_for(config, k));
      break;
    }
    case ExperimentKind::h2_curve: {
      const WeightVector w = config.weights.empty() ? WeightVector::from_raw(std::vector<double>{9, 9, 1, 1})
                                                    : weights_for(config, 4);
      for (double d : config.distances.empty() ? std::vector<double>{0.7} : config.distances)
        add(d, compressed_sector_problem(hydrogen_chain_integrals(2, d), 4, config.spin_adapted).oracle, w);
      break;
    }
    case ExperimentKind::h4_curve: {
      std::vector<double> distances = config.distances;
      if (distances.empty())
        for (int i = 0; i < 8; ++i) distances.push_back(0.7 + 0.4 * i);
      std::sort(distances.begin(), distances.end());
      const WeightVector w = weights_for(config, 8);
      for (double d : distances) add(d, full_register_problem(hydrogen_chain_integrals(4, d), 8).oracle, w);
      break;
    }
    case ExperimentKind::generic: {
      const IntegralSet ints = read_fcidump_file(config.fcidump);
      const std::size_t sector = sector_basis(2 * ints.n_spatial, ints.n_electrons, ints.ms2).size();
      int k = config.n_states;
      if (k == 0) k = config.weights.empty() ? static_cast<int>(std::min<std::size_t>(4, sector))
                                            : static_cast<int>(config.weights.size());
      add(0.0, compressed_sector_problem(ints, k, config.spin_adapted).oracle, weights_for(config, k));
      break;
    }
  }
  b.seconds = seconds_since(t0);
  return b;
}

json ResultBundle::to_json() const {
  json pts = json::array();
  for (const PointResult& p : points) {
    json jp{{"distance", p.distance},     {"seed", config.seed},
            {"config_hash", config_hash}, {"exact", p.exact},
            {"exact_ensemble_energy", p.exact_ensemble_energy}};
    if (p.error) {
      jp["error"] = *p.error;
    } else if (!p.trajectory.records.empty()) {
      const IterationRecord& last = p.trajectory.records.back();
      std::vector<double> sorted = p.computed;
      std::sort(sorted.begin(), sorted.end());
      std::vector<double> delta;
      for (std::size_t i = 0; i < sorted.size() && i < p.exact.size(); ++i) delta.push_back(sorted[i] - p.exact[i]);
      jp["computed"] = p.computed;
      jp["delta_sorted"] = delta;
      jp["max_abs_error"] = p.max_abs_error;
      jp["ensemble_energy"] = last.ensemble_energy;
      jp["iterations"] = p.iterations;
      jp["converged"] = p.converged;
      jp["residual_frobenius_sq"] = last.residual_frobenius_sq;
      if (last.overlaps) jp["overlaps"] = *last.overlaps;
    }
    pts.push_back(std::move(jp));
  }
  return json{{"config", config.to_json()},
              {"config_hash", config_hash},
              {"provenance",
               {{"cqe_version", CQE_VERSION},
                {"eigen_version", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                                      "." + std::to_string(EIGEN_MINOR_VERSION)},
                {"compiler", __VERSION__}}},
              {"points", std::move(pts)}};
}

std::string trace_csv(const ResultBundle& b) {
  std::size_t k = 0;
  bool overlaps = false;
  for (const auto& p : b.points)
    for (const auto& r : p.trajectory.records) {
      k = std::max(k, r.state_energies.size());
      overlaps = overlaps || r.overlaps.has_value();
    }
  std::ostringstream out;
  out << "seed,config_hash,distance,iteration,ensemble_energy,residual_frobenius_sq,theta_star,"
         "orthonormality_error,norm_error";
  for (std::size_t i = 0; i < k; ++i) out << ",energy_" << i;
  if (overlaps)
    for (std::size_t i = 0; i < k; ++i) out << ",overlap_" << i;
  out << '\n';
  for (const auto& p : b.points)
    for (const auto& r : p.trajectory.records) {
      out << b.config.seed << ',' << b.config_hash << ',' << num(p.distance) << ',' << r.iteration << ','
          << num(r.ensemble_energy) << ',' << num(r.residual_frobenius_sq) << ',' << num(r.theta_star) << ','
          << num(r.orthonormality_error) << ',' << num(r.norm_error);
      for (std::size_t i = 0; i < k; ++i) out << ',' << (i < r.state_energies.size() ? num(r.state_energies[i]) : "");
      if (overlaps)
        for (std::size_t i = 0; i < k; ++i)
          out << ',' << (r.overlaps && i < r.overlaps->size() ? num((*r.overlaps)[i]) : "");
      out << '\n';
    }
  return out.str();
}

std::string curve_csv(const ResultBundle& b) {
  std::size_t k = 0;
  for (const auto& p : b.points) k = std::max(k, p.exact.size());
  std::ostringstream out;
  out << "seed,config_hash,distance,converged,iterations,max_abs_error";
  for (const char* col : {"exact_", "computed_", "delta_"})
    for (std::size_t i = 0; i < k; ++i) out << ',' << col << i;
  out << '\n';
  for (const auto& p : b.points) {
    std::vector<double> sorted = p.computed;
    std::sort(sorted.begin(), sorted.end());
    const bool solved = !p.error && !p.computed.empty();
    out << b.config.seed << ',' << b.config_hash << ',' << num(p.distance) << ',' << (p.converged ? 1 : 0) << ','
        << p.iterations << ',' << (solved ? num(p.max_abs_error) : "");
    for (std::size_t i = 0; i < k; ++i) out << ',' << (i < p.exact.size() ? num(p.exact[i]) : "");
    for (std::size_t i = 0; i < k; ++i) out << ',' << (i < sorted.size() ? num(sorted[i]) : "");
    for (std::size_t i = 0; i < k; ++i)
      out << ',' << (i < sorted.size() && i < p.exact.size() ? num(sorted[i] - p.exact[i]) : "");
    out << '\n';
  }
  return out.str();
}

void ResultBundle::write(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  auto put = [&](const char* name, const std::string& text) {
    std::ofstream f(dir / name, std::ios::binary);
    if (!f) throw Error("cannot write " + (dir / name).string());
    f << text;
  };
  put("result.json", to_json().dump(2) + "\n");
  put("trace.csv", trace_csv(*this));
  put("curve.csv", curve_csv(*this));
  json timing{{"config_hash", config_hash}, {"total_seconds", seconds}, {"points", json::array()}};
  for (const auto& p : points) timing["points"].push_back({{"distance", p.distance}, {"seconds", p.seconds}});
  put("timing.json", timing.dump(2) + "\n");
}

}  // namespace cqe::runner
