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


#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cqe/fcidump.hpp"
#include "experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitConvergence = 3;
constexpr int kExitParse = 4;

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> output_dir;
  std::optional<std::string> algorithm;
};

cqe::runner::ExperimentConfig load(const std::string& path, const Overrides& o) {
  auto c = cqe::runner::ExperimentConfig::load(path);
  if (o.seed) c.seed = *o.seed;
  if (o.output_dir) c.output_path = *o.output_dir;
  if (o.algorithm) c.algorithm = cqe::runner::algorithm_from_string(*o.algorithm);
  c.validate();
  return c;
}

void summarize(const cqe::runner::ResultBundle& b) {
  for (const auto& p : b.points) {
    if (p.error) {
      std::printf("  d=%-7.4f error: %s\n", p.distance, p.error->c_str());
    } else if (p.computed.empty()) {
      std::printf("  d=%-7.4f E0=%.10f\n", p.distance, p.exact.empty() ? 0.0 : p.exact.front());
    } else {
      std::printf("  d=%-7.4f iterations=%d converged=%s max|dE|=%.3e\n", p.distance, p.iterations,
                  p.converged ? "yes" : "no", p.max_abs_error);
    }
  }
}

int validate_fcidump(const std::string& path) {
  const cqe::IntegralSet ints = cqe::read_fcidump_file(path);
  std::printf("%s: norb=%d nelec=%d ms2=%d e_nuc=%.12f\n", path.c_str(), ints.n_spatial, ints.n_electrons, ints.ms2,
              ints.e_nuc);
  std::printf("max |h_pq - h_qp| = %.3e, max eri asymmetry = %.3e\n", ints.max_h_asymmetry(),
              ints.max_eri_asymmetry());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ensemble contracted Schroedinger equation solver"};
  app.require_subcommand(1);

  Overrides overrides;
  std::string config_path;
  std::string fcidump_path;

  auto add_overrides = [&](CLI::App* sub) {
    sub->add_option("config", config_path, "experiment config (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--seed", overrides.seed, "override the config seed");
    sub->add_option("--output-dir", overrides.output_dir, "override the output directory");
    sub->add_option("--algorithm", overrides.algorithm, "parallel | weighted-random")
        ->check(CLI::IsMember({"parallel", "weighted-random"}));
  };
  CLI::App* run = app.add_subcommand("run", "run an experiment and write results");
  add_overrides(run);
  CLI::App* oracle = app.add_subcommand("oracle", "exact diagonalization only");
  add_overrides(oracle);
  CLI::App* validate = app.add_subcommand("validate", "parse and check an FCIDUMP file");
  validate->add_option("fcidump", fcidump_path, "FCIDUMP path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*validate) return validate_fcidump(fcidump_path);

    const auto config = load(config_path, overrides);
    const bool solve = static_cast<bool>(*run);
    const auto bundle = solve ? cqe::runner::run_experiment(config) : cqe::runner::run_oracle(config);
    const std::filesystem::path out = config.output_path;
    bundle.write(out);
    std::printf("%s %s (config %s) -> %s\n", solve ? "run" : "oracle", cqe::runner::to_string(config.experiment).c_str(),
                bundle.config_hash.c_str(), out.string().c_str());
    summarize(bundle);
    if (solve && !bundle.all_converged()) {
      std::fprintf(stderr, "cqe: not every point converged\n");
      return kExitConvergence;
    }
    return kExitOk;
  } catch (const cqe::runner::ConfigError& e) {
    std::fprintf(stderr, "cqe: config error: %s\n", e.what());
    return kExitConfig;
  } catch (const cqe::ParseError& e) {
    std::fprintf(stderr, "cqe: parse error: %s\n", e.what());
    return kExitParse;
  } catch (const cqe::Error& e) {
    std::fprintf(stderr, "cqe: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "cqe: %s\n", e.what());
    return 1;
  }
}
