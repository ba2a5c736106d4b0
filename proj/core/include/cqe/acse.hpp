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

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "cqe/fermion.hpp"
#include "cqe/hilbert.hpp"
#include "cqe/pauli.hpp"
#include "cqe/pool.hpp"
#include "cqe/sparse_operator.hpp"

namespace cqe {

// A Hermitian Hamiltonian compiled for repeated application. The identity
// component is split off so that time evolution only sees the traceless part.
class Hamiltonian {
 public:
  explicit Hamiltonian(PauliSum h);
  static Hamiltonian from_dense(const Eigen::MatrixXcd& m);

  int n_qubits() const noexcept { return pauli_.n_qubits(); }
  std::size_t dim() const noexcept { return op_.dim(); }
  const PauliSum& pauli() const noexcept { return pauli_; }
  const SparseOperator& op() const noexcept { return op_; }
  const SparseOperator& traceless() const noexcept { return traceless_; }
  double shift() const noexcept { return shift_; }
  double traceless_norm() const noexcept { return traceless_norm_; }
  Eigen::MatrixXcd dense() const { return op_.dense(); }

 private:
  PauliSum pauli_;
  SparseOperator op_;
  SparseOperator traceless_;
  double shift_ = 0.0;
  double traceless_norm_ = 0.0;
};

// K orthonormal states with weights, held either as separate vectors or as a
// purification on an ancilla register.
class EnsembleState {
 public:
  static EnsembleState separate(std::vector<StateVector> states, WeightVector weights);
  static EnsembleState purified(PurifiedState rho);

  bool is_purified() const noexcept { return purified_.has_value(); }
  int size() const noexcept { return weights_.size(); }
  const WeightVector& weights() const noexcept { return weights_; }
  const QubitRegister& physical() const noexcept { return physical_; }
  std::size_t dim() const noexcept { return physical_.dim(); }

  // Member states; for the purified form branches with zero weight throw.
  std::vector<StateVector> states() const;
  const PurifiedState& purified_state() const;
  EnsembleState to_purified() const;
  EnsembleState to_separate() const;

  // Row-major (dim x columns) block. Separate form: column nu holds
  // sqrt(w_nu) phi_nu. Purified form: the purified amplitudes themselves.
  // In both cases <X> = sum over columns of <col|X|col>.
  const Amplitudes& block() const noexcept { return block_; }
  std::size_t columns() const noexcept { return columns_; }

 private:
  EnsembleState(QubitRegister physical, WeightVector weights) : physical_(physical), weights_(std::move(weights)) {}

  QubitRegister physical_;
  WeightVector weights_;
  std::vector<StateVector> states_;
  std::optional<PurifiedState> purified_;
  Amplitudes block_;
  std::size_t columns_ = 0;
};

// r(row, col) = <[H, Gamma(row, col)]>. Anti-Hermitian as a matrix:
// r(a, b) = -conj(r(b, a)).
class ResidualTensor {
 public:
  ResidualTensor() = default;
  ResidualTensor(int n_rows, int n_cols);

  int n_rows() const noexcept { return n_rows_; }
  int n_cols() const noexcept { return n_cols_; }
  std::size_t size() const noexcept { return entries_.size(); }
  cplx operator()(int row, int col) const { return entries_[index(row, col)]; }
  cplx& at(int row, int col) { return entries_[index(row, col)]; }
  std::span<const cplx> entries() const noexcept { return entries_; }
  std::span<cplx> entries() noexcept { return entries_; }

  double frobenius_sq() const;
  double max_abs() const;
  double max_imag() const;
  bool same_shape(const ResidualTensor& o) const noexcept { return n_rows_ == o.n_rows_ && n_cols_ == o.n_cols_; }

  ResidualTensor& operator+=(const ResidualTensor& o);
  ResidualTensor& operator*=(double s);

 private:
  std::size_t index(int row, int col) const;

  int n_rows_ = 0;
  int n_cols_ = 0;
  std::vector<cplx> entries_;
};

double max_abs_difference(const ResidualTensor& a, const ResidualTensor& b);

// Residual of a raw (dim x columns) block, summed over columns.
ResidualTensor block_residual(const GeneratorPool& pool, const Hamiltonian& h, std::span<const cplx> block,
                              std::size_t columns);

ResidualTensor exact_state_residual(const GeneratorPool& pool, const Hamiltonian& h, const StateVector& phi);
ResidualTensor ensemble_residual(const GeneratorPool& pool, const Hamiltonian& h, const EnsembleState& ens);

// (<L-|G|L-> - <L+|G|L+>) / (2 i eta) with |L+-> = exp(+-i eta H)|.>; equals
// the exact residual up to O(eta^2).
ResidualTensor finite_eta_residual(const GeneratorPool& pool, const Hamiltonian& h, const EnsembleState& ens,
                                   double eta);
ResidualTensor finite_eta_state_residual(const GeneratorPool& pool, const Hamiltonian& h, const StateVector& phi,
                                         double eta);

// Exact evolution exp(+-i eta H) (x) I of a block.
Amplitudes evolve_block(const Hamiltonian& h, double time, std::span<const cplx> block, std::size_t columns);

// A = sum_k conj(r_k) Gamma_k - r_k Gamma_k^dagger over the pool. For real
// r this is sum r (Gamma^{pq}_{st} - Gamma^{st}_{pq}).
SparseOperator build_a_operator(const GeneratorPool& pool, const ResidualTensor& r);
// Second-quantized form; fermionic and sector pools only.
FermionOperator build_a_fermion_operator(const GeneratorPool& pool, const ResidualTensor& r);

double ensemble_energy(const Hamiltonian& h, const EnsembleState& ens);
// Per-member <phi_nu|H|phi_nu>; NaN for zero-weight purified branches.
std::vector<double> state_energies(const Hamiltonian& h, const EnsembleState& ens);

struct Eigensystem {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXcd vectors;  // columns
};

// Entry nu: |<psi_nu|phi_nu>|^2, or the summed projection onto the degenerate
// cluster containing level nu when neighbouring gaps fall below degeneracy_tol.
std::vector<double> eigenstate_overlaps(const std::vector<StateVector>& states, const Eigensystem& eig,
                                        double degeneracy_tol = 1e-8);

}  // namespace cqe
