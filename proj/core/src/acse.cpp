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

#include "cqe/acse.hpp"

#include <cmath>
#include <limits>

#include "cqe/errors.hpp"

namespace cqe {
namespace {

PauliSum without_identity(const PauliSum& h) {
  PauliSum out(h.n_qubits());
  for (const auto& [s, c] : h.terms())
    if (!s.is_identity()) out.add_term(s, c);
  return out;
}

void check_register(const GeneratorPool& pool, const Hamiltonian& h, std::size_t dim) {
  if (pool.dim() != h.dim() || h.dim() != dim) throw DomainError("register mismatch between pool, Hamiltonian and state");
}

}  // namespace

Hamiltonian::Hamiltonian(PauliSum h) : pauli_(std::move(h)) {
  if (!pauli_.is_hermitian(1e-10)) throw PreconditionError("Hamiltonian must be Hermitian");
  op_ = SparseOperator::from_pauli(pauli_);
  shift_ = pauli_.coefficient(PauliString(pauli_.n_qubits())).real();
  const PauliSum rest = without_identity(pauli_);
  traceless_ = SparseOperator::from_pauli(rest);
  traceless_norm_ = rest.one_norm();
}

Hamiltonian Hamiltonian::from_dense(const Eigen::MatrixXcd& m) { return Hamiltonian(pauli_decompose(m)); }

EnsembleState EnsembleState::separate(std::vector<StateVector> states, WeightVector weights) {
  if (states.empty()) throw DomainError("ensemble needs at least one state");
  if (static_cast<int>(states.size()) != weights.size()) throw DomainError("ensemble: weight count differs from state count");
  const QubitRegister reg = states.front().reg();
  for (const auto& s : states)
    if (s.reg() != reg) throw DomainError("ensemble: states live on different registers");
  if (orthonormality_error(states) > 1e-8) throw PreconditionError("ensemble states are not orthonormal");
  EnsembleState e(reg, std::move(weights));
  const std::size_t k = states.size(), d = reg.dim();
  e.columns_ = k;
  e.block_.assign(d * k, 0.0);
  for (std::size_t nu = 0; nu < k; ++nu) {
    const double sw = std::sqrt(e.weights_[nu]);
    for (std::size_t i = 0; i < d; ++i) e.block_[i * k + nu] = sw * states[nu][i];
  }
  e.states_ = std::move(states);
  return e;
}

EnsembleState EnsembleState::purified(PurifiedState rho) {
  EnsembleState e(rho.physical, rho.weights);
  e.columns_ = rho.ancilla_dim();
  const auto amps = rho.state.amplitudes();
  e.block_.assign(amps.begin(), amps.end());
  e.purified_ = std::move(rho);
  return e;
}

std::vector<StateVector> EnsembleState::states() const {
  if (!purified_) return states_;
  std::vector<StateVector> out;
  for (int nu = 0; nu < size(); ++nu) out.push_back(purified_->branch_state(nu));
  return out;
}

const PurifiedState& EnsembleState::purified_state() const {
  if (!purified_) throw DomainError("ensemble is not in purified form");
  return *purified_;
}

EnsembleState EnsembleState::to_purified() const {
  if (purified_) return *this;
  return purified(purify(states_, weights_));
}

EnsembleState EnsembleState::to_separate() const {
  if (!purified_) return *this;
  return separate(states(), weights_);
}

ResidualTensor::ResidualTensor(int n_rows, int n_cols)
    : n_rows_(n_rows), n_cols_(n_cols), entries_(static_cast<std::size_t>(n_rows) * static_cast<std::size_t>(n_cols)) {
  if (n_rows < 0 || n_cols < 0) throw DomainError("residual tensor shape must be non-negative");
}

std::size_t ResidualTensor::index(int row, int col) const {
  if (row < 0 || row >= n_rows_ || col < 0 || col >= n_cols_) throw DomainError("residual index out of range");
  return static_cast<std::size_t>(row) * static_cast<std::size_t>(n_cols_) + static_cast<std::size_t>(col);
}

double ResidualTensor::frobenius_sq() const {
  double s = 0.0;
  for (const auto& e : entries_) s += std::norm(e);
  return s;
}

double ResidualTensor::max_abs() const {
  double m = 0.0;
  for (const auto& e : entries_) m = std::max(m, std::abs(e));
  return m;
}

double ResidualTensor::max_imag() const {
  double m = 0.0;
  for (const auto& e : entries_) m = std::max(m, std::abs(e.imag()));
  return m;
}

ResidualTensor& ResidualTensor::operator+=(const ResidualTensor& o) {
  if (!same_shape(o)) throw DomainError("residual tensor shape mismatch");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += o.entries_[k];
  return *this;
}

ResidualTensor& ResidualTensor::operator*=(double s) {
  for (auto& e : entries_) e *= s;
  return *this;
}

double max_abs_difference(const ResidualTensor& a, const ResidualTensor& b) {
  if (!a.same_shape(b)) throw DomainError("residual tensor shape mismatch");
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a.entries()[k] - b.entries()[k]));
  return m;
}

ResidualTensor block_residual(const GeneratorPool& pool, const Hamiltonian& h, std::span<const cplx> block,
                              std::size_t columns) {
  check_register(pool, h, block.size() / columns);
  Amplitudes hv(block.size());
  h.op().apply_block(block, columns, hv);
  ResidualTensor r(pool.n_rows(), pool.n_cols());
  for (const auto& g : pool.generators()) {
    cplx acc = 0.0;
    g.op.for_each([&](std::size_t i, std::size_t j, cplx val) {
      const cplx* vi = block.data() + i * columns;
      const cplx* vj = block.data() + j * columns;
      const cplx* hi = hv.data() + i * columns;
      const cplx* hj = hv.data() + j * columns;
      cplx s = 0.0;
      for (std::size_t c = 0; c < columns; ++c) s += std::conj(hi[c]) * vj[c] - std::conj(vi[c]) * hj[c];
      acc += val * s;
    });
    r.at(g.row, g.col) = acc;
  }
  return r;
}

ResidualTensor exact_state_residual(const GeneratorPool& pool, const Hamiltonian& h, const StateVector& phi) {
  return block_residual(pool, h, phi.amplitudes(), 1);
}

ResidualTensor ensemble_residual(const GeneratorPool& pool, const Hamiltonian& h, const EnsembleState& ens) {
  return block_residual(pool, h, ens.block(), ens.columns());
}

Amplitudes evolve_block(const Hamiltonian& h, double time, std::span<const cplx> block, std::size_t columns) {
  const double bound = std::abs(time) * h.traceless_norm();
  ExpActionOptions opts;
  opts.tol = 1e-14;
  Amplitudes out = exp_action(h.traceless().scaled(cplx(0, time)), bound, block, columns, opts);
  const cplx phase = std::exp(cplx(0, time * h.shift()));
  for (auto& a : out) a *= phase;
  return out;
}

namespace {

ResidualTensor finite_eta_block(const GeneratorPool& pool, const Hamiltonian& h, std::span<const cplx> block,
                                std::size_t columns, double eta) {
  if (!(eta > 0.0 && eta < 1.0)) throw PreconditionError("eta must lie in (0, 1)");
  check_register(pool, h, block.size() / columns);
  const Amplitudes minus = evolve_block(h, -eta, block, columns);
  const Amplitudes plus = evolve_block(h, eta, block, columns);
  ResidualTensor r(pool.n_rows(), pool.n_cols());
  const cplx denom(0, 2.0 * eta);
  for (const auto& g : pool.generators())
    r.at(g.row, g.col) = (g.op.sandwich(minus, minus, columns) - g.op.sandwich(plus, plus, columns)) / denom;
  return r;
}

}  // namespace

ResidualTensor finite_eta_residual(const GeneratorPool& pool, const Hamiltonian& h, const EnsembleState& ens,
                                   double eta) {
  return finite_eta_block(pool, h, ens.block(), ens.columns(), eta);
}

ResidualTensor finite_eta_state_residual(const GeneratorPool& pool, const Hamiltonian& h, const StateVector& phi,
                                         double eta) {
  return finite_eta_block(pool, h, phi.amplitudes(), 1, eta);
}

SparseOperator build_a_operator(const GeneratorPool& pool, const ResidualTensor& r) {
  if (r.n_rows() != pool.n_rows() || r.n_cols() != pool.n_cols()) throw DomainError("residual does not match pool");
  std::vector<Triplet> t;
  for (const auto& g : pool.generators()) {
    const cplx rk = r(g.row, g.col);
    if (rk == cplx{}) continue;
    g.op.for_each([&](std::size_t i, std::size_t j, cplx v) {
      t.push_back({i, j, std::conj(rk) * v});
      t.push_back({j, i, -rk * std::conj(v)});
    });
  }
  return SparseOperator(pool.dim(), std::move(t));
}

FermionOperator build_a_fermion_operator(const GeneratorPool& pool, const ResidualTensor& r) {
  if (pool.kind() == PoolKind::transition) throw DomainError("transition pools have no second-quantized form");
  if (r.n_rows() != pool.n_rows() || r.n_cols() != pool.n_cols()) throw DomainError("residual does not match pool");
  FermionOperator a(pool.n_modes());
  for (const auto& g : pool.generators()) {
    const cplx rk = r(g.row, g.col);
    if (rk == cplx{}) continue;
    const auto [p, q] = pool.row_label(g.row);
    const auto [s, t] = pool.row_label(g.col);
    FermionOperator fwd = gamma_operator(p, q, s, t, pool.n_modes());
    FermionOperator back = gamma_operator(s, t, p, q, pool.n_modes());
    fwd *= std::conj(rk);
    back *= -rk;
    a += fwd;
    a += back;
  }
  return a;
}

double ensemble_energy(const Hamiltonian& h, const EnsembleState& ens) {
  if (h.dim() != ens.dim()) throw DomainError("register mismatch between Hamiltonian and ensemble");
  return h.op().sandwich(ens.block(), ens.block(), ens.columns()).real();
}

std::vector<double> state_energies(const Hamiltonian& h, const EnsembleState& ens) {
  if (h.dim() != ens.dim()) throw DomainError("register mismatch between Hamiltonian and ensemble");
  std::vector<double> out;
  if (!ens.is_purified()) {
    for (const auto& s : ens.states()) out.push_back(h.op().sandwich(s.amplitudes(), s.amplitudes()).real());
    return out;
  }
  const auto& rho = ens.purified_state();
  for (int nu = 0; nu < ens.size(); ++nu) {
    const double w = ens.weights()[static_cast<std::size_t>(nu)];
    if (w == 0.0) {
      out.push_back(std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    const Amplitudes b = rho.branch(nu);
    out.push_back(h.op().sandwich(b, b).real() / w);
  }
  return out;
}

std::vector<double> eigenstate_overlaps(const std::vector<StateVector>& states, const Eigensystem& eig,
                                        double degeneracy_tol) {
  const auto n_levels = eig.values.size();
  if (static_cast<Eigen::Index>(states.size()) > n_levels || eig.vectors.cols() != n_levels)
    throw DomainError("overlap table needs at least as many eigenpairs as states");
  std::vector<double> out;
  for (std::size_t nu = 0; nu < states.size(); ++nu) {
    if (static_cast<Eigen::Index>(states[nu].dim()) != eig.vectors.rows())
      throw DomainError("overlap table: state dimension differs from eigenvectors");
    auto lo = static_cast<Eigen::Index>(nu), hi = lo;
    while (lo > 0 && eig.values(lo) - eig.values(lo - 1) < degeneracy_tol) --lo;
    while (hi + 1 < n_levels && eig.values(hi + 1) - eig.values(hi) < degeneracy_tol) ++hi;
    double s = 0.0;
    for (Eigen::Index mu = lo; mu <= hi; ++mu) {
      cplx ov = 0.0;
      for (Eigen::Index i = 0; i < eig.vectors.rows(); ++i)
        ov += std::conj(eig.vectors(i, mu)) * states[nu][static_cast<std::size_t>(i)];
      s += std::norm(ov);
    }
    out.push_back(s);
  }
  return out;
}

}  // namespace cqe
