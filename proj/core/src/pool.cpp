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

#include "cqe/pool.hpp"

#include <map>

#include "cqe/errors.hpp"

namespace cqe {
namespace {

std::vector<std::array<int, 2>> mode_pairs(int n_modes) {
  std::vector<std::array<int, 2>> out;
  for (int p = 0; p < n_modes; ++p)
    for (int q = p + 1; q < n_modes; ++q) out.push_back({p, q});
  return out;
}

}  // namespace

GeneratorPool::GeneratorPool(PoolKind kind, int n_qubits, int n_modes)
    : kind_(kind), n_qubits_(n_qubits), n_modes_(n_modes) {}

GeneratorPool GeneratorPool::fermionic(int n_modes) {
  if (n_modes < 2) throw DomainError("fermionic pool needs at least two modes");
  GeneratorPool pool(PoolKind::fermionic, n_modes, n_modes);
  pool.row_labels_ = mode_pairs(n_modes);
  GammaCache cache(n_modes);
  const int rows = pool.n_rows();
  for (int a = 0; a < rows; ++a)
    for (int b = 0; b < rows; ++b) {
      const auto [p, q] = pool.row_labels_[static_cast<std::size_t>(a)];
      const auto [s, t] = pool.row_labels_[static_cast<std::size_t>(b)];
      auto image = cache.get(p, q, s, t);
      pool.generators_.push_back({a, b, SparseOperator::from_pauli(*image)});
      pool.jw_images_.push_back(std::move(image));
    }
  pool.pauli_cache_ = pool.jw_images_;
  return pool;
}

GeneratorPool GeneratorPool::sector(const SectorBasis& basis) { return build_sector(basis, nullptr); }

GeneratorPool GeneratorPool::sector(const SectorBasis& basis, const Eigen::MatrixXd& rotation) {
  return build_sector(basis, &rotation);
}

GeneratorPool GeneratorPool::build_sector(const SectorBasis& basis, const Eigen::MatrixXd* rotation) {
  if (basis.determinants.empty()) throw DomainError("sector pool needs a non-empty sector");
  const int n_modes = basis.n_modes;
  GeneratorPool pool(PoolKind::sector, basis.compressed_qubits(), n_modes);
  pool.row_labels_ = mode_pairs(n_modes);
  std::map<std::uint64_t, std::size_t> position;
  for (std::size_t i = 0; i < basis.size(); ++i) position[basis.determinants[i]] = i;

  GammaCache cache(n_modes);
  const int rows = pool.n_rows();
  for (int a = 0; a < rows; ++a)
    for (int b = 0; b < rows; ++b) {
      const auto [p, q] = pool.row_labels_[static_cast<std::size_t>(a)];
      const auto [s, t] = pool.row_labels_[static_cast<std::size_t>(b)];
      const SparseOperator full = SparseOperator::from_pauli(*cache.get(p, q, s, t));
      std::vector<Triplet> projected;
      full.for_each([&](std::size_t r, std::size_t c, cplx v) {
        const auto rr = position.find(r), cc = position.find(c);
        if (rr != position.end() && cc != position.end()) projected.push_back({rr->second, cc->second, v});
      });
      if (projected.empty()) continue;
      if (rotation) {
        const auto d = static_cast<Eigen::Index>(basis.size());
        if (rotation->rows() != d || rotation->cols() != d) throw DomainError("rotation does not match the sector");
        Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(d, d);
        for (const auto& t : projected) g(static_cast<Eigen::Index>(t.row), static_cast<Eigen::Index>(t.col)) += t.value;
        const Eigen::MatrixXcd r = rotation->cast<cplx>();
        g = r.transpose() * g * r;
        projected.clear();
        for (Eigen::Index i = 0; i < d; ++i)
          for (Eigen::Index j = 0; j < d; ++j)
            if (std::abs(g(i, j)) > 1e-14)
              projected.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), g(i, j)});
        if (projected.empty()) continue;
      }
      pool.generators_.push_back({a, b, SparseOperator(pool.dim(), std::move(projected))});
    }
  pool.pauli_cache_.resize(pool.generators_.size());
  return pool;
}

GeneratorPool GeneratorPool::transition(int n_qubits) {
  if (n_qubits < 1 || n_qubits > 6) throw DomainError("transition pool supports 1..6 qubits");
  GeneratorPool pool(PoolKind::transition, n_qubits, 0);
  const int d = 1 << n_qubits;
  for (int i = 0; i < d; ++i) pool.row_labels_.push_back({i, -1});
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      pool.generators_.push_back(
          {i, j, SparseOperator(pool.dim(), {{static_cast<std::size_t>(i), static_cast<std::size_t>(j), 1.0}})});
  pool.pauli_cache_.resize(pool.generators_.size());
  return pool;
}

int GeneratorPool::pair_row(int p, int q) const {
  if (kind_ == PoolKind::transition) return -1;
  for (std::size_t r = 0; r < row_labels_.size(); ++r)
    if (row_labels_[r][0] == p && row_labels_[r][1] == q) return static_cast<int>(r);
  return -1;
}

std::string GeneratorPool::describe(int row, int col) const {
  const auto a = row_label(row), b = row_label(col);
  if (kind_ == PoolKind::transition) return "|" + std::to_string(a[0]) + "><" + std::to_string(b[0]) + "|";
  return "G^{" + std::to_string(a[0]) + std::to_string(a[1]) + "}_{" + std::to_string(b[0]) +
         std::to_string(b[1]) + "}";
}

std::shared_ptr<const PauliSum> GeneratorPool::pauli(std::size_t k) const {
  if (k >= generators_.size()) throw DomainError("generator index out of range");
  std::lock_guard lock(*pauli_mutex_);
  auto& slot = pauli_cache_[k];
  if (!slot) slot = std::make_shared<const PauliSum>(pauli_decompose(generators_[k].op.dense()));
  return slot;
}

}  // namespace cqe
