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

#include "cqe/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "cqe/errors.hpp"
#include "cqe/pauli.hpp"

namespace cqe {

QubitRegister::QubitRegister(int n) : n_qubits(n) {
  if (n < 1 || n > 30) throw DomainError("qubit register size must be in [1, 30], got " + std::to_string(n));
}

StateVector::StateVector(QubitRegister reg, Amplitudes amplitudes)
    : reg_(reg), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != reg_.dim())
    throw DomainError("amplitude count " + std::to_string(amplitudes_.size()) +
                      " does not match register dimension " + std::to_string(reg_.dim()));
}

double StateVector::norm() const {
  double s = 0.0;
  for (const auto& a : amplitudes_) s += std::norm(a);
  return std::sqrt(s);
}

StateVector StateVector::normalized() const {
  const double n = norm();
  if (n == 0.0) throw DomainError("cannot normalize the zero vector");
  Amplitudes out(amplitudes_);
  for (auto& a : out) a /= n;
  return {reg_, std::move(out)};
}

WeightVector::WeightVector(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw DomainError("weight vector must be non-empty");
  double sum = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (!(weights_[i] >= 0.0)) throw DomainError("weights must be non-negative");
    if (i > 0 && weights_[i] > weights_[i - 1] + 1e-15)
      throw DomainError("weights must be non-increasing");
    sum += weights_[i];
  }
  if (std::abs(sum - 1.0) > 1e-12) throw DomainError("weights must sum to one");
}

WeightVector WeightVector::from_raw(std::span<const double> raw) {
  const double sum = std::accumulate(raw.begin(), raw.end(), 0.0);
  if (!(sum > 0.0)) throw DomainError("raw weights must have a positive sum");
  std::vector<double> w(raw.begin(), raw.end());
  for (auto& x : w) x /= sum;
  return WeightVector(std::move(w));
}

WeightVector WeightVector::descending(int k) {
  std::vector<double> raw(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) raw[static_cast<std::size_t>(i)] = k - i;
  return from_raw(raw);
}

WeightVector WeightVector::uniform(int k) {
  std::vector<double> raw(static_cast<std::size_t>(k), 1.0);
  return from_raw(raw);
}

Amplitudes PurifiedState::branch(int nu) const {
  const std::size_t da = ancilla_dim();
  const std::size_t dp = physical.dim();
  if (nu < 0 || static_cast<std::size_t>(nu) >= da) throw DomainError("branch index out of range");
  Amplitudes out(dp);
  const auto amps = state.amplitudes();
  for (std::size_t i = 0; i < dp; ++i) out[i] = amps[i * da + static_cast<std::size_t>(nu)];
  return out;
}

StateVector PurifiedState::branch_state(int nu) const {
  if (nu < 0 || nu >= weights.size()) throw DomainError("branch index out of range");
  const double w = weights[static_cast<std::size_t>(nu)];
  if (w <= 0.0) throw UndefinedBranchError("branch " + std::to_string(nu) + " has zero weight");
  Amplitudes slice = branch(nu);
  const double s = 1.0 / std::sqrt(w);
  for (auto& a : slice) a *= s;
  return {physical, std::move(slice)};
}

StateVector basis_state(QubitRegister reg, std::size_t index) {
  if (index >= reg.dim()) throw DomainError("basis index " + std::to_string(index) + " out of range");
  Amplitudes a(reg.dim());
  a[index] = 1.0;
  return {reg, std::move(a)};
}

cplx inner_product(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.size() != b.size()) throw DomainError("inner product of vectors with different dimensions");
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

cplx inner_product(const StateVector& a, const StateVector& b) {
  if (!(a.reg() == b.reg())) throw DomainError("inner product across different registers");
  return inner_product(a.amplitudes(), b.amplitudes());
}

StateVector tensor_product(const StateVector& a, const StateVector& b) {
  const auto x = a.amplitudes();
  const auto y = b.amplitudes();
  Amplitudes out(x.size() * y.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) out[i * y.size() + j] = x[i] * y[j];
  return {QubitRegister(a.n_qubits() + b.n_qubits()), std::move(out)};
}

std::vector<StateVector> gram_schmidt(const std::vector<StateVector>& states) {
  std::vector<Amplitudes> basis;
  basis.reserve(states.size());
  for (const auto& s : states) {
    if (!basis.empty() && !(s.reg() == states.front().reg()))
      throw DomainError("gram_schmidt inputs live on different registers");
    Amplitudes v(s.amplitudes().begin(), s.amplitudes().end());
    const double original = s.norm();
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : basis) {
        const cplx c = inner_product(q, v);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * q[i];
      }
    }
    double n = 0.0;
    for (const auto& a : v) n += std::norm(a);
    n = std::sqrt(n);
    if (n < 1e-10 * std::max(1.0, original))
      throw DegeneracyError("linearly dependent input at position " + std::to_string(basis.size()));
    for (auto& a : v) a /= n;
    basis.push_back(std::move(v));
  }
  std::vector<StateVector> out;
  out.reserve(basis.size());
  for (auto& b : basis) out.emplace_back(states.front().reg(), std::move(b));
  return out;
}

double orthonormality_error(const std::vector<StateVector>& states) {
  double worst = 0.0;
  for (std::size_t a = 0; a < states.size(); ++a)
    for (std::size_t b = a; b < states.size(); ++b) {
      const cplx g = inner_product(states[a], states[b]);
      worst = std::max(worst, std::abs(g - (a == b ? 1.0 : 0.0)));
    }
  return worst;
}

int ancilla_qubits_for(int k) {
  if (k < 1) throw DomainError("ensemble size must be positive");
  int n = 0;
  while ((1 << n) < k) ++n;
  return n;
}

PurifiedState purify(const std::vector<StateVector>& states, const WeightVector& weights) {
  const int k = static_cast<int>(states.size());
  if (k == 0 || k != weights.size()) throw DomainError("purify needs one weight per state");
  if (orthonormality_error(states) > 1e-8) throw PreconditionError("purify requires orthonormal states");
  const int na = ancilla_qubits_for(k);
  const std::size_t da = std::size_t{1} << na;
  const QubitRegister phys = states.front().reg();
  Amplitudes out(phys.dim() * da);
  for (int nu = 0; nu < k; ++nu) {
    const double s = std::sqrt(weights[static_cast<std::size_t>(nu)]);
    const auto amps = states[static_cast<std::size_t>(nu)].amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) out[i * da + static_cast<std::size_t>(nu)] = s * amps[i];
  }
  return PurifiedState{phys, na, StateVector(QubitRegister(phys.n_qubits + na), std::move(out)), weights};
}

double branch_expectation(const PurifiedState& rho, const PauliSum& observable, int branch) {
  if (observable.n_qubits() != rho.physical.n_qubits)
    throw DomainError("observable must act on the physical register");
  if (branch < 0 || branch >= rho.weights.size()) throw DomainError("branch index out of range");
  const double w = rho.weights[static_cast<std::size_t>(branch)];
  if (w <= 0.0) throw UndefinedBranchError("branch " + std::to_string(branch) + " has zero weight");
  const Amplitudes slice = rho.branch(branch);
  return expectation(observable, std::span<const cplx>(slice)).real() / w;
}

}  // namespace cqe
