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

#include "cqe/sparse_operator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "cqe/errors.hpp"
#include "cqe/pauli.hpp"

namespace cqe {
namespace {

using RowMajorBlock = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

constexpr double kDropThreshold = 1e-14;

double block_norm(std::span<const cplx> v) {
  double s = 0.0;
  for (const auto& a : v) s += std::norm(a);
  return std::sqrt(s);
}

}  // namespace

SparseOperator::SparseOperator(std::size_t dim, std::vector<Triplet> triplets) : dim_(dim) {
  std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  row_ptr_.assign(dim + 1, 0);
  for (std::size_t k = 0; k < triplets.size();) {
    const std::size_t r = triplets[k].row, c = triplets[k].col;
    if (r >= dim || c >= dim) throw DomainError("sparse entry outside operator dimension");
    cplx v = 0.0;
    for (; k < triplets.size() && triplets[k].row == r && triplets[k].col == c; ++k) v += triplets[k].value;
    if (std::abs(v) < kDropThreshold) continue;
    cols_.push_back(c);
    values_.push_back(v);
    ++row_ptr_[r + 1];
  }
  for (std::size_t r = 0; r < dim; ++r) row_ptr_[r + 1] += row_ptr_[r];
}

SparseOperator SparseOperator::from_pauli(const PauliSum& p) {
  const std::size_t dim = std::size_t{1} << p.n_qubits();
  // Strings sharing an X mask map column j to the same row j ^ x.
  std::map<std::uint64_t, std::vector<cplx>> diagonals;
  for (const auto& [s, c] : p.terms()) {
    auto& d = diagonals[s.x()];
    if (d.empty()) d.assign(dim, 0.0);
    for (std::size_t j = 0; j < dim; ++j) d[j] += c * s.phase_on(j);
  }
  std::vector<Triplet> t;
  for (const auto& [x, d] : diagonals)
    for (std::size_t j = 0; j < dim; ++j)
      if (std::abs(d[j]) >= kDropThreshold) t.push_back({j ^ x, j, d[j]});
  return SparseOperator(dim, std::move(t));
}

SparseOperator SparseOperator::from_dense(const Eigen::MatrixXcd& m, double drop) {
  if (m.rows() != m.cols()) throw DomainError("from_dense needs a square matrix");
  std::vector<Triplet> t;
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      if (std::abs(m(r, c)) > drop && m(r, c) != cplx{})
        t.push_back({static_cast<std::size_t>(r), static_cast<std::size_t>(c), m(r, c)});
  return SparseOperator(static_cast<std::size_t>(m.rows()), std::move(t));
}

void SparseOperator::apply(std::span<const cplx> v, std::span<cplx> out) const {
  apply_block(v, 1, out);
}

Amplitudes SparseOperator::apply(std::span<const cplx> v) const {
  Amplitudes out(v.size());
  apply_block(v, 1, out);
  return out;
}

void SparseOperator::apply_block(std::span<const cplx> v, std::size_t columns, std::span<cplx> out) const {
  if (v.size() != dim_ * columns || out.size() != v.size())
    throw DomainError("sparse apply: dimension mismatch (" + std::to_string(v.size()) + " vs " +
                      std::to_string(dim_ * columns) + ")");
  for (std::size_t r = 0; r < dim_; ++r) {
    cplx* o = out.data() + r * columns;
    for (std::size_t c = 0; c < columns; ++c) o[c] = 0.0;
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      const cplx* in = v.data() + cols_[k] * columns;
      const cplx val = values_[k];
      for (std::size_t c = 0; c < columns; ++c) o[c] += val * in[c];
    }
  }
}

cplx SparseOperator::sandwich(std::span<const cplx> bra, std::span<const cplx> ket, std::size_t columns) const {
  if (bra.size() != dim_ * columns || ket.size() != bra.size())
    throw DomainError("sparse sandwich: dimension mismatch");
  cplx s = 0.0;
  for (std::size_t r = 0; r < dim_; ++r) {
    const cplx* b = bra.data() + r * columns;
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      const cplx* in = ket.data() + cols_[k] * columns;
      cplx acc = 0.0;
      for (std::size_t c = 0; c < columns; ++c) acc += std::conj(b[c]) * in[c];
      s += values_[k] * acc;
    }
  }
  return s;
}

SparseOperator SparseOperator::adjoint() const {
  std::vector<Triplet> t;
  t.reserve(nnz());
  for_each([&](std::size_t r, std::size_t c, cplx v) { t.push_back({c, r, std::conj(v)}); });
  return SparseOperator(dim_, std::move(t));
}

SparseOperator SparseOperator::scaled(cplx factor) const {
  SparseOperator out = *this;
  for (auto& v : out.values_) v *= factor;
  return out;
}

Eigen::MatrixXcd SparseOperator::dense() const {
  const auto n = static_cast<Eigen::Index>(dim_);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for_each([&](std::size_t r, std::size_t c, cplx v) {
    m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
  });
  return m;
}

std::vector<Triplet> SparseOperator::triplets() const {
  std::vector<Triplet> t;
  t.reserve(nnz());
  for_each([&](std::size_t r, std::size_t c, cplx v) { t.push_back({r, c, v}); });
  return t;
}

Amplitudes exp_action(const SparseOperator& g, double norm_bound, std::span<const cplx> v,
                      std::size_t columns, const ExpActionOptions& opts) {
  Amplitudes result(v.begin(), v.end());
  if (g.empty() || norm_bound == 0.0) return result;
  const int steps = std::max(1, static_cast<int>(std::ceil(norm_bound)));
  const double h = 1.0 / steps;
  const double step_tol = opts.tol / steps;
  Amplitudes term(v.size()), next(v.size());
  for (int s = 0; s < steps; ++s) {
    term = result;
    const double scale0 = block_norm(term);
    bool converged = false;
    for (int k = 1; k <= opts.max_terms; ++k) {
      g.apply_block(term, columns, next);
      const double f = h / k;
      for (std::size_t i = 0; i < next.size(); ++i) term[i] = next[i] * f;
      for (std::size_t i = 0; i < term.size(); ++i) result[i] += term[i];
      // Remaining terms shrink at least geometrically with ratio norm_bound*h/(k+1) <= 1/2.
      if (block_norm(term) <= step_tol * std::max(1.0, scale0) * 0.5) {
        converged = true;
        break;
      }
    }
    if (!converged) throw NumericalError("exp_action: Taylor series did not converge");
  }
  return result;
}

StateVector exp_action(const PauliSum& g, const StateVector& v, double tol) {
  if (g.n_qubits() != v.n_qubits()) throw DomainError("exp_action: register mismatch");
  if (!g.is_anti_hermitian(1e-12)) throw PreconditionError("exp_action: generator must be anti-Hermitian");
  const SparseOperator op = SparseOperator::from_pauli(g);
  ExpActionOptions opts;
  opts.tol = tol;
  Amplitudes out = exp_action(op, g.one_norm(), v.amplitudes(), 1, opts);
  return StateVector(v.reg(), std::move(out)).normalized();
}

SpectralPropagator::SpectralPropagator(const Eigen::MatrixXcd& a) {
  if (a.rows() != a.cols()) throw DomainError("propagator generator must be square");
  const Eigen::MatrixXcd h = cplx(0, 1) * a;
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, h.cwiseAbs().maxCoeff()))
    throw PreconditionError("propagator generator must be anti-Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (h + h.adjoint()));
  if (es.info() != Eigen::Success) throw NumericalError("propagator eigendecomposition failed");
  eigenvalues_ = es.eigenvalues();
  u_ = es.eigenvectors();
}

Amplitudes SpectralPropagator::apply(double theta, std::span<const cplx> v, std::size_t columns) const {
  const auto d = static_cast<Eigen::Index>(dim());
  if (v.size() != dim() * columns) throw DomainError("propagator: dimension mismatch");
  const auto c = static_cast<Eigen::Index>(columns);
  Eigen::Map<const RowMajorBlock> in(v.data(), d, c);
  RowMajorBlock tmp = u_.adjoint() * in;
  for (Eigen::Index i = 0; i < d; ++i) tmp.row(i) *= std::exp(cplx(0, -theta * eigenvalues_(i)));
  Amplitudes out(v.size());
  Eigen::Map<RowMajorBlock>(out.data(), d, c) = u_ * tmp;
  return out;
}

}  // namespace cqe
