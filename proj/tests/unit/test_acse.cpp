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


#include <cmath>

#include <gtest/gtest.h>

#include "cqe/acse.hpp"
#include "cqe/errors.hpp"
#include "cqe/integrals.hpp"
#include "cqe/solvers.hpp"
#include "test_util.hpp"

namespace cqe {
namespace {

using test::random_state;
using test::real_random_state;
using test::to_eigen;

PauliSum h2_qubit_hamiltonian(double angstrom) {
  const AoIntegrals ao = build_ao_integrals(Geometry::hydrogen_chain(2, angstrom * kAngstromToBohr));
  const IntegralSet mo = transform_to_mo(ao.integrals, restricted_hartree_fock(ao.overlap, ao.integrals, 2));
  return jordan_wigner(build_hamiltonian(mo));
}

std::vector<StateVector> eigenstates(const Eigensystem& eig, std::vector<int> which, int n_qubits) {
  std::vector<StateVector> out;
  for (int k : which) {
    Amplitudes a(static_cast<std::size_t>(eig.vectors.rows()));
    for (Eigen::Index i = 0; i < eig.vectors.rows(); ++i) a[static_cast<std::size_t>(i)] = eig.vectors(i, k);
    out.emplace_back(QubitRegister(n_qubits), std::move(a));
  }
  return out;
}

std::vector<StateVector> random_orthonormal(int n_qubits, int k, RngStream& rng) {
  std::vector<StateVector> raw;
  for (int i = 0; i < k; ++i) raw.push_back(random_state(n_qubits, rng));
  return gram_schmidt(raw);
}

TEST(Hamiltonian, RejectsNonHermitianInput) {
  EXPECT_THROW(Hamiltonian(PauliSum::parse("X", cplx(0, 1))), PreconditionError);
  const Hamiltonian h(PauliSum::parse("Z") + PauliSum::identity(1, 2.5));
  EXPECT_DOUBLE_EQ(h.shift(), 2.5);
  EXPECT_DOUBLE_EQ(h.traceless_norm(), 1.0);
}

TEST(ExactStateResidual, VanishesOnEigenvectors) {
  const Hamiltonian h(random_hamiltonian(2, 3));
  const auto pool = GeneratorPool::transition(2);
  const Eigensystem eig = exact_diagonalize(h, 4);
  for (const auto& v : eigenstates(eig, {0, 1, 2, 3}, 2))
    EXPECT_LT(std::sqrt(exact_state_residual(pool, h, v).frobenius_sq()), 1e-10);
}

TEST(ExactStateResidual, DeterminantMatchesDenseCommutator) {
  const PauliSum hp = h2_qubit_hamiltonian(0.7);
  const Hamiltonian h(hp);
  const auto pool = GeneratorPool::fermionic(4);
  const StateVector phi = basis_state(QubitRegister(4), 0b1100);
  const ResidualTensor r = exact_state_residual(pool, h, phi);
  const Eigen::MatrixXcd dh = dense_matrix(hp);
  const Eigen::VectorXcd v = to_eigen(phi.amplitudes());
  double largest = 0.0;
  for (int a = 0; a < pool.n_rows(); ++a)
    for (int b = 0; b < pool.n_cols(); ++b) {
      const auto [p, q] = pool.row_label(a);
      const auto [s, t] = pool.row_label(b);
      const Eigen::MatrixXcd g = dense_matrix(jordan_wigner(gamma_operator(p, q, s, t, 4)));
      const cplx expected = v.dot((dh * g - g * dh) * v);
      EXPECT_NEAR(std::abs(r(a, b) - expected), 0.0, 1e-12) << pool.describe(a, b);
      largest = std::max(largest, std::abs(expected));
    }
  EXPECT_GT(largest, 1e-3);
  EXPECT_LT(r.max_imag(), 1e-10);
}

TEST(EnsembleResidual, ZeroForAnySetOfEigenstates) {
  const Hamiltonian h(random_hamiltonian(2, 5));
  const auto pool = GeneratorPool::transition(2);
  const Eigensystem eig = exact_diagonalize(h, 4);
  for (auto subset : {std::vector<int>{0, 1}, std::vector<int>{3, 1}, std::vector<int>{2}, std::vector<int>{2, 3, 0}}) {
    const auto states = eigenstates(eig, subset, 2);
    const auto ens = EnsembleState::separate(states, WeightVector::descending(static_cast<int>(subset.size())));
    EXPECT_LT(std::sqrt(ensemble_residual(pool, h, ens).frobenius_sq()), 1e-10);
    EXPECT_LT(std::sqrt(ensemble_residual(pool, h, ens.to_purified()).frobenius_sq()), 1e-10);
  }
}

TEST(EnsembleResidual, SingleStateReduction) {
  RngStream rng(4);
  const Hamiltonian h(random_hamiltonian(2, 6));
  const auto pool = GeneratorPool::transition(2);
  const StateVector v = random_state(2, rng);
  const auto ens = EnsembleState::separate({v}, WeightVector({1.0}));
  EXPECT_LT(max_abs_difference(ensemble_residual(pool, h, ens), exact_state_residual(pool, h, v)), 1e-14);
}

TEST(EnsembleResidual, SeparateAndPurifiedAgree) {
  RngStream rng(8);
  const Hamiltonian h(h2_qubit_hamiltonian(1.1));
  const auto pool = GeneratorPool::fermionic(4);
  const auto ens = EnsembleState::separate(random_orthonormal(4, 3, rng), WeightVector({0.5, 0.3, 0.2}));
  const auto pur = ens.to_purified();
  EXPECT_LT(max_abs_difference(ensemble_residual(pool, h, ens), ensemble_residual(pool, h, pur)), 1e-10);
  EXPECT_NEAR(ensemble_energy(h, ens), ensemble_energy(h, pur), 1e-10);
  const auto a = state_energies(h, ens), b = state_energies(h, pur);
  for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(a[k], b[k], 1e-10);
}

TEST(EnsembleResidual, WeightedSumOfStateResiduals) {
  RngStream rng(9);
  const Hamiltonian h(random_hamiltonian(2, 7));
  const auto pool = GeneratorPool::transition(2);
  const auto states = random_orthonormal(2, 2, rng);
  const WeightVector w({0.75, 0.25});
  ResidualTensor expected = exact_state_residual(pool, h, states[0]);
  expected *= 0.75;
  ResidualTensor second = exact_state_residual(pool, h, states[1]);
  second *= 0.25;
  expected += second;
  EXPECT_LT(max_abs_difference(ensemble_residual(pool, h, EnsembleState::separate(states, w)), expected), 1e-12);
}

TEST(EnsembleResidual, RealInputsGiveRealEntries) {
  RngStream rng(10);
  const Hamiltonian h(h2_qubit_hamiltonian(0.9));
  const auto pool = GeneratorPool::fermionic(4);
  const auto states = gram_schmidt({real_random_state(4, rng), real_random_state(4, rng)});
  const auto r = ensemble_residual(pool, h, EnsembleState::separate(states, WeightVector({0.6, 0.4})));
  EXPECT_LT(r.max_imag(), 1e-10);
  EXPECT_GT(r.max_abs(), 1e-3);
}

TEST(EnsembleResidual, NonzeroUnlessEveryMemberIsEigenvector) {
  const Hamiltonian h(random_hamiltonian(2, 12));
  const auto pool = GeneratorPool::transition(2);
  const Eigensystem eig = exact_diagonalize(h, 4);
  auto states = eigenstates(eig, {0, 1}, 2);
  // Rotate within {psi_1, psi_2}: member 1 stops being an eigenvector.
  const auto extra = eigenstates(eig, {2}, 2)[0];
  Amplitudes mixed(4);
  for (std::size_t i = 0; i < 4; ++i) mixed[i] = std::cos(0.3) * states[1][i] + std::sin(0.3) * extra[i];
  states[1] = StateVector(QubitRegister(2), mixed);
  const auto r = ensemble_residual(pool, h, EnsembleState::separate(states, WeightVector({0.6, 0.4})));
  EXPECT_GT(std::sqrt(r.frobenius_sq()), 1e-3);
}

TEST(FiniteEtaResidual, ConvergesQuadratically) {
  RngStream rng(14);
  const Hamiltonian h(h2_qubit_hamiltonian(0.7));
  const auto pool = GeneratorPool::fermionic(4);
  const auto ens = EnsembleState::separate(random_orthonormal(4, 2, rng), WeightVector({0.7, 0.3}));
  const ResidualTensor exact = ensemble_residual(pool, h, ens);
  const double e2 = max_abs_difference(finite_eta_residual(pool, h, ens, 0.02), exact);
  const double e1 = max_abs_difference(finite_eta_residual(pool, h, ens, 0.01), exact);
  EXPECT_GT(e2 / e1, 3.0);
  EXPECT_LT(e2 / e1, 5.0);
  EXPECT_LT(e1, 1e-3 * exact.max_abs());
}

TEST(FiniteEtaResidual, EigenstatesStayNearZero) {
  const PauliSum hp = random_hamiltonian(2, 2);
  const Hamiltonian h(hp);
  const auto pool = GeneratorPool::transition(2);
  const Eigensystem eig = exact_diagonalize(h, 4);
  const auto ens = EnsembleState::separate(eigenstates(eig, {0, 2}, 2), WeightVector({0.5, 0.5}));
  const double eta = 0.2;
  EXPECT_LT(finite_eta_residual(pool, h, ens, eta).max_abs(), eta * eta * hp.one_norm());
}

TEST(FiniteEtaResidual, RejectsEtaOutsideUnitInterval) {
  const Hamiltonian h(random_hamiltonian(1, 1));
  const auto pool = GeneratorPool::transition(1);
  const auto ens = EnsembleState::separate({basis_state(QubitRegister(1), 0)}, WeightVector({1.0}));
  EXPECT_THROW(finite_eta_residual(pool, h, ens, 0.0), PreconditionError);
  EXPECT_THROW(finite_eta_residual(pool, h, ens, 1.0), PreconditionError);
}

TEST(FiniteEtaResidual, H2InitialEnsembleIsNonzero) {
  const PauliSum hp = h2_qubit_hamiltonian(0.7);
  const Hamiltonian h(hp);
  const auto pool = GeneratorPool::fermionic(4);
  const auto basis = sector_basis(4, 2, 0);
  const auto init = initial_guesses(h, 4, basis.determinants);
  const auto ens = EnsembleState::separate(init, WeightVector::from_raw(std::vector<double>{9, 9, 1, 1}));
  const auto r = finite_eta_residual(pool, h, ens, 0.3);
  EXPECT_GT(r.max_abs(), 1e-2);
  EXPECT_LT(max_abs_difference(r, ensemble_residual(pool, h, ens)), 0.3 * 0.3 * hp.one_norm());
}

TEST(BuildAOperator, ZeroResidualGivesEmptyOperator) {
  const auto pool = GeneratorPool::fermionic(4);
  EXPECT_TRUE(build_a_operator(pool, ResidualTensor(pool.n_rows(), pool.n_cols())).empty());
}

TEST(BuildAOperator, SingleEntryIsAntiHermitianDifference) {
  const auto pool = GeneratorPool::fermionic(4);
  ResidualTensor r(pool.n_rows(), pool.n_cols());
  r.at(pool.pair_row(0, 1), pool.pair_row(2, 3)) = 1.0;
  const Eigen::MatrixXcd a = build_a_operator(pool, r).dense();
  const Eigen::MatrixXcd expected = dense_matrix(jordan_wigner(gamma_operator(0, 1, 2, 3, 4))) -
                                    dense_matrix(jordan_wigner(gamma_operator(2, 3, 0, 1, 4)));
  EXPECT_LT((a - expected).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT((a + a.adjoint()).cwiseAbs().maxCoeff(), 1e-14);
  const FermionOperator af = build_a_fermion_operator(pool, r);
  EXPECT_LT((dense_matrix(jordan_wigner(af)) - expected).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(BuildAOperator, DescentAlignment) {
  RngStream rng(15);
  const PauliSum hp = h2_qubit_hamiltonian(0.8);
  const Hamiltonian h(hp);
  const auto pool = GeneratorPool::fermionic(4);
  const StateVector phi = random_state(4, rng);
  const ResidualTensor r = exact_state_residual(pool, h, phi);
  const Eigen::MatrixXcd a = build_a_operator(pool, r).dense();
  const Eigen::MatrixXcd dh = dense_matrix(hp);
  const Eigen::VectorXcd v = to_eigen(phi.amplitudes());
  const cplx lhs = v.dot((dh * a - a * dh) * v);
  EXPECT_NEAR(lhs.real(), 2.0 * r.frobenius_sq(), 1e-10 * std::max(1.0, r.frobenius_sq()));
  EXPECT_NEAR(lhs.imag(), 0.0, 1e-10);
  EXPECT_LT((a + a.adjoint()).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(BuildAOperator, ShapeMismatchThrows) {
  EXPECT_THROW(build_a_operator(GeneratorPool::fermionic(4), ResidualTensor(2, 2)), DomainError);
  const auto t = GeneratorPool::transition(1);
  EXPECT_THROW(build_a_fermion_operator(t, ResidualTensor(2, 2)), DomainError);
}

TEST(EnsembleEnergy, SaturatesBoundOnEigenstates) {
  const Hamiltonian h(random_hamiltonian(3, 4));
  const Eigensystem eig = exact_diagonalize(h, 8);
  const WeightVector w = WeightVector::descending(4);
  const auto ens = EnsembleState::separate(eigenstates(eig, {0, 1, 2, 3}, 3), w);
  double bound = 0.0;
  for (std::size_t k = 0; k < 4; ++k) bound += w[k] * eig.values(static_cast<Eigen::Index>(k));
  EXPECT_NEAR(ensemble_energy(h, ens), bound, 1e-12);
  RngStream rng(16);
  for (int trial = 0; trial < 20; ++trial) {
    const auto random = EnsembleState::separate(random_orthonormal(3, 4, rng), w);
    EXPECT_GE(ensemble_energy(h, random), bound - 1e-9);
  }
}

TEST(EnsembleEnergy, SingleStateIsPlainExpectation) {
  RngStream rng(18);
  const PauliSum hp = random_hamiltonian(2, 9);
  const StateVector v = random_state(2, rng);
  EXPECT_NEAR(ensemble_energy(Hamiltonian(hp), EnsembleState::separate({v}, WeightVector({1.0}))),
              expectation(hp, v).real(), 1e-13);
}

TEST(EnsembleEnergy, GradientIsTwiceTheResidual) {
  RngStream rng(19);
  const PauliSum hp = h2_qubit_hamiltonian(0.9);
  const Hamiltonian h(hp);
  const auto pool = GeneratorPool::fermionic(4);
  const WeightVector w({0.5, 0.3, 0.2});
  const auto states = gram_schmidt({random_state(4, rng), random_state(4, rng), random_state(4, rng)});
  const auto ens = EnsembleState::separate(states, w);
  const ResidualTensor r = ensemble_residual(pool, h, ens);
  const auto row = pool.pair_row(0, 1), col = pool.pair_row(2, 3);
  ResidualTensor unit(pool.n_rows(), pool.n_cols());
  unit.at(row, col) = 1.0;
  const SparseOperator b = build_a_operator(pool, unit);
  auto energy = [&](double eps) {
    std::vector<StateVector> moved;
    for (const auto& s : states)
      moved.emplace_back(s.reg(), exp_action(b.scaled(eps), 1.0, s.amplitudes(), 1, {1e-15, 200}));
    return ensemble_energy(h, EnsembleState::separate(moved, w));
  };
  const double g4 = (energy(1e-4) - energy(-1e-4)) / 2e-4;
  const double g5 = (energy(1e-5) - energy(-1e-5)) / 2e-5;
  const double expected = 2.0 * r(row, col).real();
  EXPECT_GT(std::abs(expected), 1e-3);
  EXPECT_NEAR(g4, expected, 1e-6);
  EXPECT_NEAR(g5, expected, 1e-6);
}

TEST(EigenstateOverlaps, ExactAndRandomStates) {
  const Hamiltonian h(random_hamiltonian(2, 20));
  const Eigensystem eig = exact_diagonalize(h, 4);
  for (double o : eigenstate_overlaps(eigenstates(eig, {0, 1, 2, 3}, 2), eig)) EXPECT_NEAR(o, 1.0, 1e-12);
  RngStream rng(21);
  const auto states = random_orthonormal(2, 4, rng);
  const auto ov = eigenstate_overlaps(states, eig);
  for (double o : ov) {
    EXPECT_GE(o, 0.0);
    EXPECT_LE(o, 1.0 + 1e-12);
  }
}

TEST(EigenstateOverlaps, DegenerateClusterUsesProjector) {
  Eigensystem eig;
  eig.values = Eigen::Vector3d(-1.0, -1.0, 2.0);
  eig.vectors = Eigen::MatrixXcd::Identity(4, 3);
  const double c = 1.0 / std::sqrt(2.0);
  const StateVector mixed(QubitRegister(2), {c, c, 0.0, 0.0});
  const auto ov = eigenstate_overlaps({mixed}, eig);
  EXPECT_NEAR(ov[0], 1.0, 1e-14);
  EXPECT_THROW(eigenstate_overlaps({basis_state(QubitRegister(1), 0)}, eig), DomainError);
}

TEST(GeneratorPool, Shapes) {
  const auto f = GeneratorPool::fermionic(4);
  EXPECT_EQ(f.n_rows(), 6);
  EXPECT_EQ(f.generators().size(), 36u);
  EXPECT_EQ(f.pair_row(1, 3), 4);
  EXPECT_EQ(f.describe(0, 5), "G^{01}_{23}");
  const auto t = GeneratorPool::transition(2);
  EXPECT_EQ(t.n_rows(), 4);
  EXPECT_EQ(t.pair_row(0, 1), -1);
  EXPECT_THROW(GeneratorPool::transition(7), DomainError);
  const auto s = GeneratorPool::sector(sector_basis(4, 2, 0));
  EXPECT_EQ(s.n_qubits(), 2);
  EXPECT_EQ(s.n_rows(), 6);
  // Every surviving generator acts inside the four-determinant sector.
  for (const auto& g : s.generators()) EXPECT_FALSE(g.op.empty());
  const auto p = f.pauli(5);
  EXPECT_LT((dense_matrix(*p) - f.generators()[5].op.dense()).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(GeneratorPool, SectorPoolMatchesProjectedFermionicResidual) {
  const PauliSum hp = h2_qubit_hamiltonian(0.7);
  const auto basis = sector_basis(4, 2, 0);
  const auto comp = compress_to_sector(hp, basis);
  const Hamiltonian hs = Hamiltonian::from_dense(comp.matrix);
  const Hamiltonian hf(hp);
  RngStream rng(22);
  const StateVector small = real_random_state(2, rng);
  const StateVector big(QubitRegister(4), embed_sector_vector(basis, small.amplitudes()));
  const auto sector_pool = GeneratorPool::sector(basis);
  const auto full_pool = GeneratorPool::fermionic(4);
  const auto rs = exact_state_residual(sector_pool, hs, small);
  const auto rf = exact_state_residual(full_pool, hf, big);
  EXPECT_LT(max_abs_difference(rs, rf), 1e-12);
}

}  // namespace
}  // namespace cqe
