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
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>

#include <Eigen/Dense>

#include "cqe/hilbert.hpp"

namespace cqe {

// Tensor product of single-qubit Paulis, stored as X and Z bitmasks so that
// P = i^{|x & z|} X^x Z^z. Mask bit (n - 1 - q) belongs to qubit q, matching
// the big-endian amplitude order.
class PauliString {
 public:
  explicit PauliString(int n_qubits, std::uint64_t x = 0, std::uint64_t z = 0);
  // Letters from {I, X, Y, Z}, qubit 0 first: "XIZ".
  static PauliString parse(std::string_view letters);
  static PauliString single(int n_qubits, int qubit, char letter);

  int n_qubits() const noexcept { return n_; }
  std::uint64_t x() const noexcept { return x_; }
  std::uint64_t z() const noexcept { return z_; }
  char letter(int qubit) const;
  bool is_identity() const noexcept { return x_ == 0 && z_ == 0; }
  std::string str() const;

  // P|j> = phase(j) |j ^ x>.
  cplx phase_on(std::uint64_t basis_index) const noexcept;

  friend auto operator<=>(const PauliString&, const PauliString&) = default;

 private:
  int n_;
  std::uint64_t x_;
  std::uint64_t z_;
};

struct PhasedString {
  cplx phase;
  PauliString string;
};

// a * b = phase * c with phase in {+-1, +-i}.
PhasedString compose(const PauliString& a, const PauliString& b);

// Sparse weighted sum of Pauli strings; terms below `kPruneThreshold` are dropped.
class PauliSum {
 public:
  static constexpr double kPruneThreshold = 1e-14;
  using TermMap = std::map<PauliString, cplx>;

  explicit PauliSum(int n_qubits);
  PauliSum(const PauliString& s, cplx coefficient);
  static PauliSum identity(int n_qubits, cplx coefficient = 1.0);
  static PauliSum parse(std::string_view letters, cplx coefficient = 1.0) {
    return PauliSum(PauliString::parse(letters), coefficient);
  }

  int n_qubits() const noexcept { return n_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }
  cplx coefficient(const PauliString& s) const;

  void add_term(const PauliString& s, cplx coefficient);
  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator*=(cplx scale);

  bool is_hermitian(double tol = 1e-12) const;
  bool is_anti_hermitian(double tol = 1e-12) const;
  // Sum of |c|; an upper bound on the spectral norm.
  double one_norm() const;

 private:
  int n_;
  TermMap terms_;
};

PauliSum add_scaled(const PauliSum& a, cplx c, const PauliSum& b);
PauliSum adjoint(const PauliSum& a);
PauliSum multiply(const PauliSum& a, const PauliSum& b);
PauliSum commutator(const PauliSum& a, const PauliSum& b);

inline PauliSum operator+(const PauliSum& a, const PauliSum& b) { return add_scaled(a, 1.0, b); }
inline PauliSum operator-(const PauliSum& a, const PauliSum& b) { return add_scaled(a, -1.0, b); }
inline PauliSum operator*(const PauliSum& a, const PauliSum& b) { return multiply(a, b); }
inline PauliSum operator*(cplx c, PauliSum a) { return a *= c; }

Amplitudes apply(const PauliSum& a, std::span<const cplx> v);
Amplitudes apply(const PauliSum& a, const StateVector& v);
cplx expectation(const PauliSum& a, const StateVector& v);
cplx expectation(const PauliSum& a, std::span<const cplx> v);

// Extends each string with identity letters on `n_ancilla` trailing
// (least-significant) qubits: O -> O (x) I.
PauliSum lift_to_physical(const PauliSum& a, int n_ancilla);

// All 4^M strings with independent standard-normal real coefficients.
PauliSum random_hamiltonian(int n_qubits, std::uint64_t seed);

Eigen::MatrixXcd dense_matrix(const PauliSum& a);
// c_P = Tr(P M) / 2^n for a 2^n x 2^n matrix.
PauliSum pauli_decompose(const Eigen::MatrixXcd& m);

}  // namespace cqe
