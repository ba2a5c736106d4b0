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

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "cqe/acse.hpp"
#include "cqe/solvers.hpp"

namespace cqe::detail {

// E(theta) = sum_c <v_c| exp(-theta A) H exp(theta A) |v_c> in the eigenbasis
// of iA, so each evaluation costs one dense (s x s)(s x c) product. Work is
// restricted to the basis states reachable from the block under H and A.
class EnergyCurve {
 public:
  EnergyCurve(const Hamiltonian& h, const SparseOperator& a, std::span<const cplx> block, std::size_t columns);

  double energy(double theta) const;
  Amplitudes propagate(double theta, std::span<const cplx> block, std::size_t columns) const;

 private:
  using Block = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  std::vector<std::size_t> support_;
  SpectralPropagator prop_;
  Eigen::MatrixXcd h_rot_;
  Block w_;
};

LineSearchResult minimize_curve(const EnergyCurve& curve, double bound, double tol);

}  // namespace cqe::detail
