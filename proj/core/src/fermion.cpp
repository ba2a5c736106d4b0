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

#include "cqe/fermion.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <string>

#include "cqe/errors.hpp"
#include "cqe/sparse_operator.hpp"

namespace cqe {

FermionOperator::FermionOperator(int n_modes) : n_modes_(n_modes) {
  if (n_modes < 1 || n_modes > 30) throw DomainError("mode count must be in [1, 30]");
}

void FermionOperator::add(LadderTerm term) {
  for (const auto& f : term.factors)
    if (f.mode < 0 || f.mode >= n_modes_) throw DomainError("ladder mode " + std::to_string(f.mode) + " out of range");
  if (term.coefficient == cplx{}) return;
  terms_.push_back(std::move(term));
}

FermionOperator& FermionOperator::operator+=(const FermionOperator& other) {
  if (other.n_modes_ != n_modes_) throw DomainError("fermion operators on different mode counts");
  for (const auto& t : other.terms_) terms_.push_back(t);
  return *this;
}

FermionOperator& FermionOperator::operator*=(cplx c) {
  for (auto& t : terms_) t.coefficient *= c;
  return *this;
}

FermionOperator adjoint(const FermionOperator& f) {
  FermionOperator out(f.n_modes());
  for (const auto& t : f.terms()) {
    LadderTerm a{{}, std::conj(t.coefficient)};
    for (auto it = t.factors.rbegin(); it != t.factors.rend(); ++it)
      a.factors.push_back({it->mode, it->kind == Ladder::create ? Ladder::annihilate : Ladder::create});
    out.add(std::move(a));
  }
  return out;
}

FermionOperator number_operator(int n_modes) {
  FermionOperator n(n_modes);
  for (int p = 0; p < n_modes; ++p) n.add({{{p, Ladder::create}, {p, Ladder::annihilate}}, 1.0});
  return n;
}

FermionOperator gamma_operator(int p, int q, int s, int t, int n_modes) {
  FermionOperator g(n_modes);
  for (int m : {p, q, s, t})
    if (m < 0 || m >= n_modes) throw DomainError("gamma index out of range");
  if (p == q || s == t) return g;
  g.add({{{p, Ladder::create}, {q, Ladder::create}, {t, Ladder::annihilate}, {s, Ladder::annihilate}}, 1.0});
  return g;
}

PauliSum jordan_wigner_ladder(int mode, Ladder kind, int n_modes) {
  if (mode < 0 || mode >= n_modes) throw DomainError("ladder mode out of range");
  std::uint64_t z_string = 0;
  for (int m = 0; m < mode; ++m) z_string |= mode_bit(n_modes, m);
  const std::uint64_t b = mode_bit(n_modes, mode);
  PauliSum out(n_modes);
  // X_p and Y_p = i X_p Z_p in the (x, z) encoding, both carrying the Z string.
  out.add_term(PauliString(n_modes, b, z_string), 0.5);
  out.add_term(PauliString(n_modes, b, z_string | b), kind == Ladder::create ? cplx(0, -0.5) : cplx(0, 0.5));
  return out;
}

PauliSum map_fermion_operator(const FermionOperator& f, const LadderMapping& mapping) {
  const int n = f.n_modes();
  std::vector<PauliSum> create, annihilate;
  for (int m = 0; m < n; ++m) {
    create.push_back(mapping(m, Ladder::create, n));
    annihilate.push_back(mapping(m, Ladder::annihilate, n));
  }
  PauliSum out(n);
  for (const auto& t : f.terms()) {
    PauliSum prod = PauliSum::identity(n, t.coefficient);
    for (const auto& fac : t.factors)
      prod = multiply(prod, fac.kind == Ladder::create ? create[static_cast<std::size_t>(fac.mode)]
                                                       : annihilate[static_cast<std::size_t>(fac.mode)]);
    out += prod;
  }
  return out;
}

PauliSum jordan_wigner(const FermionOperator& f) { return map_fermion_operator(f, jordan_wigner_ladder); }

bool anticommutation_check(int n_modes, const LadderMapping& mapping) {
  if (n_modes < 1 || n_modes > 4) throw DomainError("anticommutation_check is exhaustive for 1..4 modes");
  std::vector<Eigen::MatrixXcd> a, ad;
  for (int m = 0; m < n_modes; ++m) {
    a.push_back(dense_matrix(mapping(m, Ladder::annihilate, n_modes)));
    ad.push_back(dense_matrix(mapping(m, Ladder::create, n_modes)));
  }
  const auto dim = a.front().rows();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim, dim);
  for (int p = 0; p < n_modes; ++p)
    for (int q = 0; q < n_modes; ++q) {
      const auto P = static_cast<std::size_t>(p), Q = static_cast<std::size_t>(q);
      const Eigen::MatrixXcd mixed = a[P] * ad[Q] + ad[Q] * a[P] - (p == q ? id : Eigen::MatrixXcd::Zero(dim, dim));
      const Eigen::MatrixXcd same = a[P] * a[Q] + a[Q] * a[P];
      if (mixed.cwiseAbs().maxCoeff() > 1e-12 || same.cwiseAbs().maxCoeff() > 1e-12) return false;
    }
  return true;
}

int SectorBasis::compressed_qubits() const {
  int n = 1;
  while ((std::size_t{1} << n) < determinants.size()) ++n;
  return n;
}

SectorBasis sector_basis(int n_modes, int n_particles, int twice_sz) {
  if (n_modes < 1 || n_modes > 30) throw DomainError("mode count must be in [1, 30]");
  if (n_particles < 0 || n_particles > n_modes) throw DomainError("particle number out of range");
  SectorBasis b{n_modes, n_particles, twice_sz, {}};
  const std::uint64_t dim = std::uint64_t{1} << n_modes;
  for (std::uint64_t det = 0; det < dim; ++det) {
    if (std::popcount(det) != n_particles) continue;
    int sz2 = 0;
    for (int m = 0; m < n_modes; ++m)
      if (det & mode_bit(n_modes, m)) sz2 += spin_of_mode(m);
    if (sz2 == twice_sz) b.determinants.push_back(det);
  }
  return b;
}

CompressedHamiltonian compress_to_sector(const PauliSum& h_jw, const SectorBasis& basis) {
  if (h_jw.n_qubits() != basis.n_modes) throw DomainError("operator and sector mode counts differ");
  if (basis.determinants.empty()) throw DomainError("cannot compress onto an empty sector");
  const SparseOperator op = SparseOperator::from_pauli(h_jw);
  std::map<std::uint64_t, std::size_t> position;
  for (std::size_t i = 0; i < basis.size(); ++i) position[basis.determinants[i]] = i;

  CompressedHamiltonian out;
  out.n_qubits = basis.compressed_qubits();
  out.sector_dim = basis.size();
  const auto padded = static_cast<Eigen::Index>(std::size_t{1} << out.n_qubits);
  out.matrix = Eigen::MatrixXcd::Zero(padded, padded);
  double leak = 0.0;
  op.for_each([&](std::size_t r, std::size_t c, cplx v) {
    const auto rc = position.find(c);
    if (rc == position.end()) return;
    const auto rr = position.find(r);
    if (rr == position.end()) {
      leak = std::max(leak, std::abs(v));
      return;
    }
    out.matrix(static_cast<Eigen::Index>(rr->second), static_cast<Eigen::Index>(rc->second)) = v;
  });
  if (leak > 1e-12) throw PreconditionError("operator does not conserve the requested symmetry sector");
  return out;
}

CompressedHamiltonian compress_to_sector(const FermionOperator& h, const SectorBasis& basis) {
  if (h.n_modes() != basis.n_modes) throw DomainError("operator and sector mode counts differ");
  return compress_to_sector(jordan_wigner(h), basis);
}

std::uint64_t spin_flip(std::uint64_t determinant, int n_modes) {
  std::uint64_t out = 0;
  for (int m = 0; m + 1 < n_modes; m += 2) {
    if (determinant & mode_bit(n_modes, m)) out |= mode_bit(n_modes, m + 1);
    if (determinant & mode_bit(n_modes, m + 1)) out |= mode_bit(n_modes, m);
  }
  return out;
}

Eigen::MatrixXd spin_flip_adapted_basis(const SectorBasis& basis) {
  if (basis.n_modes % 2 != 0) throw DomainError("spin adaptation needs an even mode count");
  std::map<std::uint64_t, std::size_t> position;
  for (std::size_t i = 0; i < basis.size(); ++i) position[basis.determinants[i]] = i;
  const auto d = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(d, d);
  const double s = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto it = position.find(spin_flip(basis.determinants[i], basis.n_modes));
    if (it == position.end()) throw DomainError("sector is not closed under spin flip");
    const auto a = static_cast<Eigen::Index>(i), b = static_cast<Eigen::Index>(it->second);
    if (a == b) {
      q(a, a) = 1.0;
    } else if (a < b) {
      q(a, a) = s;
      q(b, a) = s;
      q(a, b) = s;
      q(b, b) = -s;
    }
  }
  return q;
}

CompressedHamiltonian rotate_sector(const CompressedHamiltonian& h, const Eigen::MatrixXd& rotation) {
  const auto d = static_cast<Eigen::Index>(h.sector_dim);
  if (rotation.rows() != d || rotation.cols() != d) throw DomainError("rotation does not match the sector dimension");
  CompressedHamiltonian out = h;
  const Eigen::MatrixXcd r = rotation.cast<cplx>();
  out.matrix.topLeftCorner(d, d) = r.transpose() * h.matrix.topLeftCorner(d, d) * r;
  return out;
}

Amplitudes embed_sector_vector(const SectorBasis& basis, std::span<const cplx> compressed) {
  if (compressed.size() < basis.size()) throw DomainError("compressed vector shorter than sector");
  for (std::size_t i = basis.size(); i < compressed.size(); ++i)
    if (std::abs(compressed[i]) > 1e-12) throw DomainError("compressed vector has weight on padding states");
  Amplitudes full(std::size_t{1} << basis.n_modes);
  for (std::size_t i = 0; i < basis.size(); ++i) full[basis.determinants[i]] = compressed[i];
  return full;
}

Amplitudes project_to_sector(const SectorBasis& basis, std::span<const cplx> full) {
  if (full.size() != (std::size_t{1} << basis.n_modes)) throw DomainError("full vector has wrong dimension");
  Amplitudes out(std::size_t{1} << basis.compressed_qubits());
  for (std::size_t i = 0; i < basis.size(); ++i) out[i] = full[basis.determinants[i]];
  return out;
}

std::shared_ptr<const PauliSum> GammaCache::get(int p, int q, int s, int t) {
  const std::array<int, 4> key{p, q, s, t};
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  auto mapped = std::make_shared<const PauliSum>(jordan_wigner(gamma_operator(p, q, s, t, n_modes_)));
  std::lock_guard lock(mutex_);
  return cache_.try_emplace(key, std::move(mapped)).first->second;
}

std::size_t GammaCache::size() const {
  std::lock_guard lock(mutex_);
  return cache_.size();
}

}  // namespace cqe
