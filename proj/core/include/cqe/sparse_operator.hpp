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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "cqe/hilbert.hpp"

namespace cqe {

class PauliSum;

struct Triplet {
  std::size_t row;
  std::size_t col;
  cplx value;
};

// Compressed-row complex matrix acting on a 2^n amplitude vector. Built once
// from a PauliSum and reused for repeated application.
class SparseOperator {
 public:
  SparseOperator() = default;
  SparseOperator(std::size_t dim, std::vector<Triplet> triplets);
  static SparseOperator from_pauli(const PauliSum& p);
  static SparseOperator from_dense(const Eigen::MatrixXcd& m, double drop = 0.0);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t nnz() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }

  // out = M v
  void apply(std::span<const cplx> v, std::span<cplx> out) const;
  Amplitudes apply(std::span<const cplx> v) const;
  // v holds `columns` vectors interleaved as a row-major (dim x columns)
  // block, i.e. v[i * columns + c]; applies M (x) I.
  void apply_block(std::span<const cplx> v, std::size_t columns, std::span<cplx> out) const;

  // sum_c <v_c| M |u_c> over the columns of two (dim x columns) blocks.
  cplx sandwich(std::span<const cplx> bra, std::span<const cplx> ket, std::size_t columns = 1) const;

  SparseOperator adjoint() const;
  SparseOperator scaled(cplx factor) const;
  Eigen::MatrixXcd dense() const;
  std::vector<Triplet> triplets() const;

  // Visit stored entries as (row, col, value).
  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t r = 0; r < dim_; ++r)
      for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) f(r, cols_[k], values_[k]);
  }

 private:
  std::size_t dim_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::size_t> cols_;
  std::vector<cplx> values_;
};

struct ExpActionOptions {
  double tol = 1e-12;
  int max_terms = 200;
};

// exp(g) v for anti-Hermitian g via a scaled truncated Taylor series; each
// sub-step adds terms until the tail bound drops below tol / steps. The
// result is renormalized.
StateVector exp_action(const PauliSum& g, const StateVector& v, double tol = 1e-12);
// Same on a raw block of `columns` interleaved vectors (exp(g) (x) I); the
// caller supplies the one-norm bound of g. No renormalization.
Amplitudes exp_action(const SparseOperator& g, double norm_bound, std::span<const cplx> v,
                      std::size_t columns = 1, const ExpActionOptions& opts = {});

// exp(theta * A) for a fixed anti-Hermitian A, from the eigendecomposition
// of the Hermitian matrix iA = U diag(lambda) U^dagger.
class SpectralPropagator {
 public:
  explicit SpectralPropagator(const Eigen::MatrixXcd& anti_hermitian);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(eigenvalues_.size()); }
  const Eigen::VectorXd& eigenvalues() const noexcept { return eigenvalues_; }
  const Eigen::MatrixXcd& eigenvectors() const noexcept { return u_; }

  // Applies exp(theta A) (x) I to a (dim x columns) row-major block.
  Amplitudes apply(double theta, std::span<const cplx> v, std::size_t columns = 1) const;

 private:
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXcd u_;
};

}  // namespace cqe
