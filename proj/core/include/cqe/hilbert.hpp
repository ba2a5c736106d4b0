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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace cqe {

using cplx = std::complex<double>;
using Amplitudes = std::vector<cplx>;

class PauliSum;

struct QubitRegister {
  int n_qubits = 1;

  explicit QubitRegister(int n);
  std::size_t dim() const noexcept { return std::size_t{1} << n_qubits; }
  friend bool operator==(const QubitRegister&, const QubitRegister&) = default;
};

// Amplitudes over a qubit register in big-endian order: qubit 0 is the most
// significant bit of the basis index.
class StateVector {
 public:
  StateVector(QubitRegister reg, Amplitudes amplitudes);

  const QubitRegister& reg() const noexcept { return reg_; }
  int n_qubits() const noexcept { return reg_.n_qubits; }
  std::size_t dim() const noexcept { return amplitudes_.size(); }
  std::span<const cplx> amplitudes() const noexcept { return amplitudes_; }
  const cplx& operator[](std::size_t i) const { return amplitudes_[i]; }

  double norm() const;
  StateVector normalized() const;

 private:
  QubitRegister reg_;
  Amplitudes amplitudes_;
};

// Ensemble weights: non-negative, non-increasing, summing to one.
class WeightVector {
 public:
  explicit WeightVector(std::vector<double> weights);

  // Normalizes arbitrary non-negative raw weights, e.g. (9, 9, 1, 1).
  static WeightVector from_raw(std::span<const double> raw);
  // (K, K-1, ..., 1) / sum.
  static WeightVector descending(int k);
  static WeightVector uniform(int k);

  int size() const noexcept { return static_cast<int>(weights_.size()); }
  double operator[](std::size_t i) const { return weights_[i]; }
  std::span<const double> values() const noexcept { return weights_; }
  double min() const noexcept { return weights_.back(); }

 private:
  std::vector<double> weights_;
};

// |rho(w)> = sum_nu sqrt(w_nu) |phi_nu> (x) |a_nu> with |a_nu> = e_nu.
// Basis index = physical_index * 2^n_ancilla + ancilla_index.
struct PurifiedState {
  QubitRegister physical;
  int n_ancilla;
  StateVector state;
  WeightVector weights;

  std::size_t ancilla_dim() const noexcept { return std::size_t{1} << n_ancilla; }
  // Unnormalized slice sqrt(w_nu) |phi_nu> for branch nu.
  Amplitudes branch(int nu) const;
  // Normalized |phi_nu>; throws UndefinedBranchError when w_nu = 0.
  StateVector branch_state(int nu) const;
};

StateVector basis_state(QubitRegister reg, std::size_t index);
cplx inner_product(const StateVector& a, const StateVector& b);
cplx inner_product(std::span<const cplx> a, std::span<const cplx> b);
StateVector tensor_product(const StateVector& a, const StateVector& b);

// Modified Gram-Schmidt with one re-orthogonalization pass.
std::vector<StateVector> gram_schmidt(const std::vector<StateVector>& states);

// Largest |<a|b> - delta_ab| over the set.
double orthonormality_error(const std::vector<StateVector>& states);

int ancilla_qubits_for(int k);
PurifiedState purify(const std::vector<StateVector>& states, const WeightVector& weights);
double branch_expectation(const PurifiedState& rho, const PauliSum& observable, int branch);

}  // namespace cqe
