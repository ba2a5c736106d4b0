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

#include <array>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "cqe/fermion.hpp"
#include "cqe/pauli.hpp"
#include "cqe/sparse_operator.hpp"

namespace cqe {

// The set of Gamma operators indexing the residual. Every pool is closed
// under adjoint: Gamma(row, col)^dagger = Gamma(col, row).
//
//  - fermionic: f+_p f+_q f_t f_s on the JW register, rows (p<q), cols (s<t).
//  - sector:    the same operators projected onto a compressed (N, S_z)
//               sector register; operators that vanish there are dropped.
//  - transition: |i><j| on a bare qubit register, for Hamiltonians with no
//               fermionic structure. For a two-electron sector this is the
//               same set as the projected Gamma operators.
enum class PoolKind { fermionic, sector, transition };

struct PoolGenerator {
  int row;
  int col;
  SparseOperator op;
};

class GeneratorPool {
 public:
  static GeneratorPool fermionic(int n_modes);
  static GeneratorPool sector(const SectorBasis& basis);
  // Sector pool expressed in the rotated basis R^T Gamma R (see rotate_sector).
  static GeneratorPool sector(const SectorBasis& basis, const Eigen::MatrixXd& rotation);
  static GeneratorPool transition(int n_qubits);

  PoolKind kind() const noexcept { return kind_; }
  int n_qubits() const noexcept { return n_qubits_; }
  std::size_t dim() const noexcept { return std::size_t{1} << n_qubits_; }
  int n_modes() const noexcept { return n_modes_; }
  int n_rows() const noexcept { return static_cast<int>(row_labels_.size()); }
  int n_cols() const noexcept { return n_rows(); }
  const std::vector<PoolGenerator>& generators() const noexcept { return generators_; }

  // Row label: the mode pair (p, q) for fermionic and sector pools, the
  // basis index (i, -1) for transition pools.
  std::array<int, 2> row_label(int row) const { return row_labels_[static_cast<std::size_t>(row)]; }
  // Row of the ordered pair p < q; -1 if not a pair pool.
  int pair_row(int p, int q) const;
  std::string describe(int row, int col) const;

  // Qubit image of generator k, built on first use.
  std::shared_ptr<const PauliSum> pauli(std::size_t k) const;

 private:
  GeneratorPool(PoolKind kind, int n_qubits, int n_modes);
  static GeneratorPool build_sector(const SectorBasis& basis, const Eigen::MatrixXd* rotation);

  PoolKind kind_;
  int n_qubits_;
  int n_modes_;
  std::vector<std::array<int, 2>> row_labels_;
  std::vector<PoolGenerator> generators_;
  std::vector<std::shared_ptr<const PauliSum>> jw_images_;  // fermionic only
  mutable std::shared_ptr<std::mutex> pauli_mutex_ = std::make_shared<std::mutex>();
  mutable std::vector<std::shared_ptr<const PauliSum>> pauli_cache_;
};

}  // namespace cqe
