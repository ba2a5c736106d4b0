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

#include "cqe/pauli.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "cqe/errors.hpp"
#include "cqe/rng.hpp"

namespace cqe {
namespace {

constexpr cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

cplx i_pow(int k) { return kIPow[((k % 4) + 4) % 4]; }

std::uint64_t bit_of(int n, int qubit) { return std::uint64_t{1} << (n - 1 - qubit); }

void require_same_size(int a, int b, const char* op) {
  if (a != b)
    throw DomainError(std::string(op) + ": qubit counts differ (" + std::to_string(a) + " vs " +
                      std::to_string(b) + ")");
}

}  // namespace

PauliString::PauliString(int n_qubits, std::uint64_t x, std::uint64_t z) : n_(n_qubits), x_(x), z_(z) {
  if (n_qubits < 1 || n_qubits > 62) throw DomainError("Pauli string size must be in [1, 62]");
  const std::uint64_t mask = (std::uint64_t{1} << n_qubits) - 1;
  if ((x & ~mask) || (z & ~mask)) throw DomainError("Pauli mask exceeds qubit count");
}

PauliString PauliString::parse(std::string_view letters) {
  const int n = static_cast<int>(letters.size());
  std::uint64_t x = 0, z = 0;
  for (int q = 0; q < n; ++q) {
    const std::uint64_t b = bit_of(n, q);
    switch (letters[static_cast<std::size_t>(q)]) {
      case 'I': break;
      case 'X': x |= b; break;
      case 'Y': x |= b; z |= b; break;
      case 'Z': z |= b; break;
      default: throw DomainError("invalid Pauli letter in '" + std::string(letters) + "'");
    }
  }
  return PauliString(n, x, z);
}

PauliString PauliString::single(int n_qubits, int qubit, char letter) {
  if (qubit < 0 || qubit >= n_qubits) throw DomainError("qubit index out of range");
  std::string s(static_cast<std::size_t>(n_qubits), 'I');
  s[static_cast<std::size_t>(qubit)] = letter;
  return parse(s);
}

char PauliString::letter(int qubit) const {
  const std::uint64_t b = bit_of(n_, qubit);
  const bool xb = x_ & b, zb = z_ & b;
  return xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
}

std::string PauliString::str() const {
  std::string s(static_cast<std::size_t>(n_), 'I');
  for (int q = 0; q < n_; ++q) s[static_cast<std::size_t>(q)] = letter(q);
  return s;
}

cplx PauliString::phase_on(std::uint64_t j) const noexcept {
  const int k = std::popcount(x_ & z_) + 2 * std::popcount(j & z_);
  return kIPow[k & 3];
}

PhasedString compose(const PauliString& a, const PauliString& b) {
  require_same_size(a.n_qubits(), b.n_qubits(), "compose");
  const PauliString c(a.n_qubits(), a.x() ^ b.x(), a.z() ^ b.z());
  const int k = std::popcount(a.x() & a.z()) + std::popcount(b.x() & b.z()) -
                std::popcount(c.x() & c.z()) + 2 * std::popcount(a.z() & b.x());
  return {i_pow(k), c};
}

PauliSum::PauliSum(int n_qubits) : n_(n_qubits) {
  if (n_qubits < 1 || n_qubits > 62) throw DomainError("Pauli sum size must be in [1, 62]");
}

PauliSum::PauliSum(const PauliString& s, cplx coefficient) : n_(s.n_qubits()) { add_term(s, coefficient); }

PauliSum PauliSum::identity(int n_qubits, cplx coefficient) {
  return PauliSum(PauliString(n_qubits), coefficient);
}

cplx PauliSum::coefficient(const PauliString& s) const {
  const auto it = terms_.find(s);
  return it == terms_.end() ? cplx{} : it->second;
}

void PauliSum::add_term(const PauliString& s, cplx coefficient) {
  require_same_size(n_, s.n_qubits(), "add_term");
  auto [it, inserted] = terms_.try_emplace(s, coefficient);
  if (!inserted) it->second += coefficient;
  if (std::abs(it->second) < kPruneThreshold) terms_.erase(it);
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  require_same_size(n_, other.n_, "add");
  for (const auto& [s, c] : other.terms_) add_term(s, c);
  return *this;
}

PauliSum& PauliSum::operator*=(cplx scale) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= scale;
    if (std::abs(it->second) < kPruneThreshold)
      it = terms_.erase(it);
    else
      ++it;
  }
  return *this;
}

bool PauliSum::is_hermitian(double tol) const {
  for (const auto& [s, c] : terms_)
    if (std::abs(c.imag()) > tol) return false;
  return true;
}

bool PauliSum::is_anti_hermitian(double tol) const {
  for (const auto& [s, c] : terms_)
    if (std::abs(c.real()) > tol) return false;
  return true;
}

double PauliSum::one_norm() const {
  double s = 0.0;
  for (const auto& [p, c] : terms_) s += std::abs(c);
  return s;
}

PauliSum add_scaled(const PauliSum& a, cplx c, const PauliSum& b) {
  require_same_size(a.n_qubits(), b.n_qubits(), "add_scaled");
  PauliSum out = a;
  if (c != cplx{})
    for (const auto& [s, v] : b.terms()) out.add_term(s, c * v);
  return out;
}

PauliSum adjoint(const PauliSum& a) {
  PauliSum out(a.n_qubits());
  for (const auto& [s, c] : a.terms()) out.add_term(s, std::conj(c));
  return out;
}

PauliSum multiply(const PauliSum& a, const PauliSum& b) {
  require_same_size(a.n_qubits(), b.n_qubits(), "multiply");
  PauliSum out(a.n_qubits());
  for (const auto& [sa, ca] : a.terms())
    for (const auto& [sb, cb] : b.terms()) {
      const auto [phase, sc] = compose(sa, sb);
      out.add_term(sc, phase * ca * cb);
    }
  return out;
}

PauliSum commutator(const PauliSum& a, const PauliSum& b) {
  require_same_size(a.n_qubits(), b.n_qubits(), "commutator");
  PauliSum out(a.n_qubits());
  for (const auto& [sa, ca] : a.terms())
    for (const auto& [sb, cb] : b.terms()) {
      // Strings either commute or anticommute; only anticommuting pairs survive.
      const auto [phase, sc] = compose(sa, sb);
      const auto [phase_rev, sc_rev] = compose(sb, sa);
      const cplx diff = phase - phase_rev;
      if (diff != cplx{}) out.add_term(sc, diff * ca * cb);
    }
  return out;
}

Amplitudes apply(const PauliSum& a, std::span<const cplx> v) {
  const std::size_t dim = std::size_t{1} << a.n_qubits();
  if (v.size() != dim) throw DomainError("apply: vector dimension does not match operator");
  Amplitudes out(dim);
  for (const auto& [s, c] : a.terms())
    for (std::size_t j = 0; j < dim; ++j) out[j ^ s.x()] += c * s.phase_on(j) * v[j];
  return out;
}

Amplitudes apply(const PauliSum& a, const StateVector& v) {
  require_same_size(a.n_qubits(), v.n_qubits(), "apply");
  return apply(a, v.amplitudes());
}

cplx expectation(const PauliSum& a, std::span<const cplx> v) {
  const Amplitudes av = apply(a, v);
  return inner_product(v, av);
}

cplx expectation(const PauliSum& a, const StateVector& v) {
  require_same_size(a.n_qubits(), v.n_qubits(), "expectation");
  return expectation(a, v.amplitudes());
}

PauliSum lift_to_physical(const PauliSum& a, int n_ancilla) {
  if (n_ancilla < 0) throw DomainError("ancilla count must be non-negative");
  if (n_ancilla == 0) return a;
  PauliSum out(a.n_qubits() + n_ancilla);
  for (const auto& [s, c] : a.terms())
    out.add_term(PauliString(out.n_qubits(), s.x() << n_ancilla, s.z() << n_ancilla), c);
  return out;
}

PauliSum random_hamiltonian(int n_qubits, std::uint64_t seed) {
  if (n_qubits < 1 || n_qubits > 8) throw DomainError("random_hamiltonian supports 1..8 qubits");
  RngStream rng(seed);
  PauliSum out(n_qubits);
  const std::uint64_t count = std::uint64_t{1} << (2 * n_qubits);
  std::string letters(static_cast<std::size_t>(n_qubits), 'I');
  for (std::uint64_t code = 0; code < count; ++code) {
    for (int q = 0; q < n_qubits; ++q)
      letters[static_cast<std::size_t>(q)] = "IXYZ"[(code >> (2 * (n_qubits - 1 - q))) & 3];
    out.add_term(PauliString::parse(letters), rng.normal());
  }
  return out;
}

Eigen::MatrixXcd dense_matrix(const PauliSum& a) {
  const std::size_t dim = std::size_t{1} << a.n_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (const auto& [s, c] : a.terms())
    for (std::size_t j = 0; j < dim; ++j)
      m(static_cast<Eigen::Index>(j ^ s.x()), static_cast<Eigen::Index>(j)) += c * s.phase_on(j);
  return m;
}

PauliSum pauli_decompose(const Eigen::MatrixXcd& m) {
  const auto dim = static_cast<std::size_t>(m.rows());
  if (m.rows() != m.cols() || dim < 2 || !std::has_single_bit(dim))
    throw DomainError("pauli_decompose needs a square 2^n matrix");
  const int n = std::countr_zero(dim);
  PauliSum out(n);
  for (std::uint64_t x = 0; x < dim; ++x)
    for (std::uint64_t z = 0; z < dim; ++z) {
      const PauliString s(n, x, z);
      cplx tr = 0.0;
      for (std::size_t k = 0; k < dim; ++k)
        tr += s.phase_on(k) * m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k ^ x));
      out.add_term(s, tr / static_cast<double>(dim));
    }
  return out;
}

}  // namespace cqe
