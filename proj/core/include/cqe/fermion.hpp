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
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include <Eigen/Dense>

#include "cqe/hilbert.hpp"
#include "cqe/pauli.hpp"

namespace cqe {

enum class Ladder { create, annihilate };

struct LadderFactor {
  int mode;
  Ladder kind;
  friend bool operator==(const LadderFactor&, const LadderFactor&) = default;
};

// Ordered product of ladder operators; order is significant.
struct LadderTerm {
  std::vector<LadderFactor> factors;
  cplx coefficient = 1.0;
};

class FermionOperator {
 public:
  explicit FermionOperator(int n_modes);

  int n_modes() const noexcept { return n_modes_; }
  const std::vector<LadderTerm>& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }

  void add(LadderTerm term);
  void add_constant(cplx c) { add(LadderTerm{{}, c}); }
  FermionOperator& operator+=(const FermionOperator& other);
  FermionOperator& operator*=(cplx c);

 private:
  int n_modes_;
  std::vector<LadderTerm> terms_;
};

FermionOperator adjoint(const FermionOperator& f);
FermionOperator number_operator(int n_modes);

// f+_p f+_q f_t f_s; the zero operator when p == q or s == t.
FermionOperator gamma_operator(int p, int q, int s, int t, int n_modes);

// Qubit image of a single ladder operator.
using LadderMapping = std::function<PauliSum(int mode, Ladder kind, int n_modes)>;

// f+_p -> Z_0 ... Z_{p-1} (X_p - i Y_p) / 2; mode p is qubit p.
PauliSum jordan_wigner_ladder(int mode, Ladder kind, int n_modes);
PauliSum jordan_wigner(const FermionOperator& f);
PauliSum map_fermion_operator(const FermionOperator& f, const LadderMapping& mapping);

// Exhaustive dense check of {f_p, f+_q} = delta_pq and {f_p, f_q} = 0.
bool anticommutation_check(int n_modes, const LadderMapping& mapping = jordan_wigner_ladder);

// Spin-orbital ordering is interleaved: even modes alpha, odd modes beta.
inline int spin_of_mode(int mode) { return (mode % 2 == 0) ? +1 : -1; }

// Occupation bitstrings are stored as computational-basis indices of the JW
// register: mode p occupies bit (n_modes - 1 - p).
inline std::uint64_t mode_bit(int n_modes, int mode) { return std::uint64_t{1} << (n_modes - 1 - mode); }

struct SectorBasis {
  int n_modes = 0;
  int n_particles = 0;
  int twice_sz = 0;
  std::vector<std::uint64_t> determinants;

  std::size_t size() const noexcept { return determinants.size(); }
  // Register width after compression: ceil(log2 size), at least one qubit.
  int compressed_qubits() const;
};

// All bitstrings with the given popcount and 2*S_z in increasing order.
SectorBasis sector_basis(int n_modes, int n_particles, int twice_sz);

struct CompressedHamiltonian {
  Eigen::MatrixXcd matrix;  // 2^n_qubits square, zero-padded beyond sector_dim
  int n_qubits = 0;
  std::size_t sector_dim = 0;
};

// Projects a symmetry-conserving operator onto the sector; throws
// PreconditionError when it couples the sector to its complement.
CompressedHamiltonian compress_to_sector(const FermionOperator& h, const SectorBasis& basis);
CompressedHamiltonian compress_to_sector(const PauliSum& h_jw, const SectorBasis& basis);

// Orthogonal change of sector basis pairing each open-shell determinant D
// with its spin-flipped partner F(D) (alpha <-> beta on every spatial orbital):
// (D + F)/sqrt(2) at the lower position, (D - F)/sqrt(2) at the higher one.
// Closed-shell determinants are kept. Columns are the new basis vectors.
// Needs a sector closed under spin flip (twice_sz = 0).
Eigen::MatrixXd spin_flip_adapted_basis(const SectorBasis& basis);
std::uint64_t spin_flip(std::uint64_t determinant, int n_modes);

// R^T H R on the sector block; padding is left untouched.
CompressedHamiltonian rotate_sector(const CompressedHamiltonian& h, const Eigen::MatrixXd& rotation);

// Compressed sector vector -> full Fock-space vector and back.
Amplitudes embed_sector_vector(const SectorBasis& basis, std::span<const cplx> compressed);
Amplitudes project_to_sector(const SectorBasis& basis, std::span<const cplx> full);

// Memoized JW images of Gamma operators keyed by (p, q, s, t). Safe for
// concurrent lookup.
class GammaCache {
 public:
  explicit GammaCache(int n_modes) : n_modes_(n_modes) {}
  int n_modes() const noexcept { return n_modes_; }
  std::shared_ptr<const PauliSum> get(int p, int q, int s, int t);
  std::size_t size() const;

 private:
  int n_modes_;
  mutable std::mutex mutex_;
  std::map<std::array<int, 4>, std::shared_ptr<const PauliSum>> cache_;
};

}  // namespace cqe
