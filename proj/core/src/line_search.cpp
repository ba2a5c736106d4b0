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

#include "line_search.hpp"

#include <array>
#include <cmath>

#include "cqe/errors.hpp"

namespace cqe::detail {

namespace {

std::vector<std::size_t> reachable(const SparseOperator& h, const SparseOperator& a, std::span<const cplx> block,
                                   std::size_t columns) {
  const std::size_t dim = h.dim();
  std::vector<std::vector<std::size_t>> adj(dim);
  const auto link = [&](std::size_t r, std::size_t c, cplx) {
    if (r != c) {
      adj[r].push_back(c);
      adj[c].push_back(r);
    }
  };
  h.for_each(link);
  a.for_each(link);
  std::vector<char> seen(dim, 0);
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t c = 0; c < columns; ++c)
      if (block[i * columns + c] != cplx{}) {
        seen[i] = 1;
        stack.push_back(i);
        break;
      }
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    for (auto j : adj[i])
      if (!seen[j]) {
        seen[j] = 1;
        stack.push_back(j);
      }
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < dim; ++i)
    if (seen[i]) out.push_back(i);
  return out;
}

Eigen::MatrixXcd restrict(const SparseOperator& op, const std::vector<std::size_t>& support) {
  std::vector<std::ptrdiff_t> pos(op.dim(), -1);
  for (std::size_t k = 0; k < support.size(); ++k) pos[support[k]] = static_cast<std::ptrdiff_t>(k);
  const auto s = static_cast<Eigen::Index>(support.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(s, s);
  op.for_each([&](std::size_t r, std::size_t c, cplx v) {
    if (pos[r] >= 0 && pos[c] >= 0) m(pos[r], pos[c]) += v;
  });
  return m;
}

}  // namespace

EnergyCurve::EnergyCurve(const Hamiltonian& h, const SparseOperator& a, std::span<const cplx> block,
                         std::size_t columns)
    : support_(reachable(h.op(), a, block, columns)), prop_(restrict(a, support_)) {
  const Eigen::MatrixXcd& u = prop_.eigenvectors();
  h_rot_ = u.adjoint() * restrict(h.op(), support_) * u;
  const auto s = static_cast<Eigen::Index>(support_.size());
  const auto c = static_cast<Eigen::Index>(columns);
  Block v(s, c);
  for (Eigen::Index k = 0; k < s; ++k)
    for (Eigen::Index j = 0; j < c; ++j) v(k, j) = block[support_[static_cast<std::size_t>(k)] * columns + static_cast<std::size_t>(j)];
  w_ = u.adjoint() * v;
}

double EnergyCurve::energy(double theta) const {
  const Eigen::VectorXd& lambda = prop_.eigenvalues();
  Block w = w_;
  for (Eigen::Index i = 0; i < w.rows(); ++i) w.row(i) *= std::exp(cplx(0, -theta * lambda(i)));
  const Block hw = h_rot_ * w;
  return (w.conjugate().cwiseProduct(hw)).sum().real();
}

Amplitudes EnergyCurve::propagate(double theta, std::span<const cplx> block, std::size_t columns) const {
  Amplitudes sub(support_.size() * columns);
  for (std::size_t k = 0; k < support_.size(); ++k)
    for (std::size_t j = 0; j < columns; ++j) sub[k * columns + j] = block[support_[k] * columns + j];
  const Amplitudes moved = prop_.apply(theta, sub, columns);
  Amplitudes out(block.begin(), block.end());
  for (std::size_t k = 0; k < support_.size(); ++k)
    for (std::size_t j = 0; j < columns; ++j) out[support_[k] * columns + j] = moved[k * columns + j];
  return out;
}

LineSearchResult minimize_curve(const EnergyCurve& curve, double bound, double tol) {
  constexpr int kScan = 33;
  LineSearchResult out;
  out.initial_energy = curve.energy(0.0);
  out.energy = out.initial_energy;
  std::array<double, kScan> thetas{}, energies{};
  int best = kScan / 2;
  for (int k = 0; k < kScan; ++k) {
    thetas[k] = k == kScan / 2 ? 0.0 : -bound + 2.0 * bound * k / (kScan - 1);
    energies[k] = k == kScan / 2 ? out.initial_energy : curve.energy(thetas[k]);
    if (energies[k] < energies[best]) best = k;
  }
  out.evaluations = kScan;

  double lo = best > 0 ? thetas[best - 1] : thetas[0];
  double hi = best < kScan - 1 ? thetas[best + 1] : thetas[kScan - 1];
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = curve.energy(x1), f2 = curve.energy(x2);
  out.evaluations += 2;
  while (hi - lo > tol) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = curve.energy(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = curve.energy(x2);
    }
    ++out.evaluations;
  }
  double theta = thetas[best], energy = energies[best];
  if (f1 < energy) theta = x1, energy = f1;
  if (f2 < energy) theta = x2, energy = f2;
  if (energy < out.initial_energy) {
    out.theta = theta;
    out.energy = energy;
  }
  return out;
}

}  // namespace cqe::detail

namespace cqe {

LineSearchResult line_search_theta(const Hamiltonian& h, const SparseOperator& a, const EnsembleState& ens,
                                   double bound, double tol) {
  if (!(bound > 0.0)) throw PreconditionError("line search bound must be positive");
  if (a.dim() != ens.dim() || h.dim() != ens.dim()) throw DomainError("register mismatch in line search");
  if (a.empty()) {
    const double e = ensemble_energy(h, ens);
    return {0.0, e, e, 0};
  }
  const detail::EnergyCurve curve(h, a, ens.block(), ens.columns());
  return detail::minimize_curve(curve, bound, tol);
}

}  // namespace cqe
