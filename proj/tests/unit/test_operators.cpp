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

#include "cqe/errors.hpp"
#include "cqe/pauli.hpp"
#include "cqe/sparse_operator.hpp"
#include "test_util.hpp"

namespace cqe {
namespace {

using test::kron_letters;
using test::random_complex_sum;
using test::random_state;
using test::to_eigen;

const cplx I(0, 1);

TEST(Compose, SingleQubitAlgebra) {
  auto xy = compose(PauliString::parse("X"), PauliString::parse("Y"));
  EXPECT_EQ(xy.phase, I);
  EXPECT_EQ(xy.string.str(), "Z");
  auto zz = compose(PauliString::parse("Z"), PauliString::parse("Z"));
  EXPECT_EQ(zz.phase, cplx(1.0));
  EXPECT_TRUE(zz.string.is_identity());
  auto two = compose(PauliString::parse("XZ"), PauliString::parse("ZX"));
  EXPECT_EQ(two.phase, cplx(1.0));
  EXPECT_EQ(two.string.str(), "YY");
}

TEST(Compose, ExhaustiveAgainstDenseUpToTwoQubits) {
  const std::string letters = "IXYZ";
  for (int n = 1; n <= 2; ++n) {
    const int count = n == 1 ? 4 : 16;
    auto word = [&](int k) {
      std::string s;
      for (int q = 0; q < n; ++q) {
        s += letters[static_cast<std::size_t>(k % 4)];
        k /= 4;
      }
      return s;
    };
    for (int a = 0; a < count; ++a)
      for (int b = 0; b < count; ++b) {
        const auto r = compose(PauliString::parse(word(a)), PauliString::parse(word(b)));
        EXPECT_NEAR(std::abs(std::abs(r.phase) - 1.0), 0.0, 1e-15);
        EXPECT_TRUE(std::abs(r.phase.real()) < 1e-15 || std::abs(r.phase.imag()) < 1e-15);
        const Eigen::MatrixXcd lhs = kron_letters(word(a)) * kron_letters(word(b));
        const Eigen::MatrixXcd rhs = r.phase * kron_letters(r.string.str());
        EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-14);
      }
  }
}

TEST(Compose, SizeMismatchThrows) {
  EXPECT_THROW(compose(PauliString::parse("X"), PauliString::parse("XX")), DomainError);
}

TEST(PauliString, DenseMatchesKronecker) {
  for (const char* s : {"XIZ", "YXI", "ZZY", "IYX"})
    EXPECT_LT((dense_matrix(PauliSum::parse(s)) - kron_letters(s)).cwiseAbs().maxCoeff(), 1e-15) << s;
}

TEST(AddScaled, Examples) {
  const auto x = PauliSum::parse("X"), z = PauliSum::parse("Z");
  const auto a = add_scaled(x, 0.0, z);
  EXPECT_EQ(a.size(), 1u);
  EXPECT_TRUE(add_scaled(x, -1.0, x).empty());
  const auto b = add_scaled(2.0 * x, 1.0, 3.0 * z);
  EXPECT_EQ(b.coefficient(PauliString::parse("X")), cplx(2.0));
  EXPECT_EQ(b.coefficient(PauliString::parse("Z")), cplx(3.0));
  EXPECT_THROW(add_scaled(x, 1.0, PauliSum::parse("XX")), DomainError);
}

TEST(Adjoint, ConjugatesCoefficients) {
  const auto a = adjoint(PauliSum::parse("X", I));
  EXPECT_EQ(a.coefficient(PauliString::parse("X")), -I);
  const PauliSum h = random_hamiltonian(2, 4);
  EXPECT_LT(dense_matrix(adjoint(h) - h).cwiseAbs().maxCoeff(), 1e-15);
  RngStream rng(5);
  const PauliSum c = random_complex_sum(2, rng);
  EXPECT_TRUE((adjoint(adjoint(c)) - c).empty());
}

TEST(Commutator, Examples) {
  const auto c = commutator(PauliSum::parse("X"), PauliSum::parse("Z"));
  EXPECT_EQ(c.size(), 1u);
  EXPECT_EQ(c.coefficient(PauliString::parse("Y")), cplx(0, -2));
  const PauliSum h = random_hamiltonian(2, 1);
  EXPECT_TRUE(commutator(h, h).empty());
  EXPECT_THROW(commutator(h, PauliSum::parse("X")), DomainError);
}

TEST(Commutator, MatchesDenseAndIsAntisymmetric) {
  RngStream rng(11);
  const PauliSum a = random_complex_sum(3, rng), b = random_complex_sum(3, rng);
  const Eigen::MatrixXcd da = dense_matrix(a), db = dense_matrix(b);
  const Eigen::MatrixXcd expected = da * db - db * da;
  EXPECT_LT((dense_matrix(commutator(a, b)) - expected).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT(dense_matrix(commutator(a, b) + commutator(b, a)).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Apply, Examples) {
  const QubitRegister r(1);
  const auto e0 = basis_state(r, 0);
  const auto z = apply(PauliSum::parse("Z"), e0);
  EXPECT_EQ(z[0], cplx(1.0));
  const auto x = apply(PauliSum::parse("X"), e0);
  EXPECT_EQ(x[1], cplx(1.0));
  EXPECT_EQ(x[0], cplx(0.0));
  const auto id = apply(PauliSum::identity(1), e0);
  EXPECT_EQ(id[0], cplx(1.0));
  EXPECT_THROW(apply(PauliSum::parse("XX"), e0), DomainError);
}

TEST(Apply, MatchesDenseOracle) {
  RngStream rng(12);
  const PauliSum a = random_complex_sum(3, rng);
  const StateVector v = random_state(3, rng);
  const Eigen::VectorXcd expected = dense_matrix(a) * to_eigen(v.amplitudes());
  const Amplitudes got = apply(a, v);
  for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(std::abs(got[i] - expected(static_cast<Eigen::Index>(i))), 0.0, 1e-12);
}

TEST(Expectation, Examples) {
  const auto e0 = basis_state(QubitRegister(1), 0);
  EXPECT_EQ(expectation(PauliSum::parse("Z"), e0), cplx(1.0));
  EXPECT_EQ(expectation(PauliSum::parse("X"), e0), cplx(0.0));
}

TEST(Expectation, EigenvectorGivesEigenvalue) {
  const PauliSum h = random_hamiltonian(2, 8);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense_matrix(h));
  for (Eigen::Index k = 0; k < 4; ++k) {
    Amplitudes v(4);
    for (Eigen::Index i = 0; i < 4; ++i) v[static_cast<std::size_t>(i)] = es.eigenvectors()(i, k);
    const cplx e = expectation(h, StateVector(QubitRegister(2), v));
    EXPECT_NEAR(e.real(), es.eigenvalues()(k), 1e-10);
    EXPECT_NEAR(e.imag(), 0.0, 1e-12);
  }
}

TEST(ExpAction, RotationAboutX) {
  const auto out = exp_action(PauliSum::parse("X", I * (M_PI / 2)), basis_state(QubitRegister(1), 0));
  EXPECT_NEAR(std::abs(out[0]), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(out[1] - I), 0.0, 1e-12);
}

TEST(ExpAction, ZeroGeneratorIsIdentity) {
  RngStream rng(2);
  const auto v = random_state(2, rng);
  const auto out = exp_action(PauliSum(2), v);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(out[i], v[i]);
}

TEST(ExpAction, MatchesDenseExponentialAndIsUnitary) {
  RngStream rng(13);
  const PauliSum g = I * random_hamiltonian(3, 21);
  const StateVector u = random_state(3, rng), v = random_state(3, rng);
  const Eigen::MatrixXcd e = test::dense_expm(dense_matrix(g));
  const Eigen::VectorXcd expected = e * to_eigen(v.amplitudes());
  const StateVector got = exp_action(g, v, 1e-13);
  for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(std::abs(got[i] - expected(static_cast<Eigen::Index>(i))), 0.0, 1e-10);
  EXPECT_NEAR(got.norm(), 1.0, 1e-12);
  const StateVector gu = exp_action(g, u, 1e-13);
  EXPECT_NEAR(std::abs(inner_product(gu, got) - inner_product(u, v)), 0.0, 1e-10);
}

TEST(ExpAction, RejectsHermitianGenerator) {
  EXPECT_THROW(exp_action(PauliSum::parse("X"), basis_state(QubitRegister(1), 0)), PreconditionError);
}

TEST(RandomHamiltonian, StructureAndDeterminism) {
  const PauliSum h1 = random_hamiltonian(1, 42);
  EXPECT_EQ(h1.size(), 4u);
  for (const auto& [s, c] : h1.terms()) EXPECT_EQ(c.imag(), 0.0);
  const PauliSum h2 = random_hamiltonian(2, 42);
  EXPECT_EQ(h2.size(), 16u);
  const Eigen::MatrixXcd d = dense_matrix(h2);
  EXPECT_LT((d - d.adjoint()).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_EQ(random_hamiltonian(2, 42).terms(), h2.terms());
  EXPECT_NE(random_hamiltonian(2, 43).terms(), h2.terms());
}

TEST(LiftToPhysical, AppendsIdentity) {
  const auto lifted = lift_to_physical(PauliSum::parse("Z"), 1);
  EXPECT_EQ(lifted.n_qubits(), 2);
  EXPECT_EQ(lifted.coefficient(PauliString::parse("ZI")), cplx(1.0));
  const PauliSum h = random_hamiltonian(2, 3);
  EXPECT_EQ(lift_to_physical(h, 0).terms(), h.terms());
}

TEST(PauliDecompose, RoundTrip) {
  RngStream rng(31);
  const PauliSum a = random_complex_sum(3, rng);
  const PauliSum b = pauli_decompose(dense_matrix(a));
  EXPECT_LT(dense_matrix(a - b).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(SparseOperator, AgreesWithPauliSum) {
  RngStream rng(7);
  const PauliSum a = random_complex_sum(3, rng);
  const SparseOperator op = SparseOperator::from_pauli(a);
  EXPECT_LT((op.dense() - dense_matrix(a)).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((op.adjoint().dense() - dense_matrix(a).adjoint()).cwiseAbs().maxCoeff(), 1e-12);
  const StateVector v = random_state(3, rng), w = random_state(3, rng);
  const Eigen::VectorXcd ev = to_eigen(v.amplitudes()), ew = to_eigen(w.amplitudes());
  EXPECT_NEAR(std::abs(op.sandwich(w.amplitudes(), v.amplitudes()) - ew.dot(dense_matrix(a) * ev)), 0.0, 1e-12);
}

TEST(SparseOperator, BlockApplyActsColumnwise) {
  RngStream rng(8);
  const PauliSum a = random_complex_sum(2, rng);
  const SparseOperator op = SparseOperator::from_pauli(a);
  const StateVector u = random_state(2, rng), v = random_state(2, rng);
  Amplitudes block(8);
  for (std::size_t i = 0; i < 4; ++i) {
    block[2 * i] = u[i];
    block[2 * i + 1] = v[i];
  }
  Amplitudes out(8);
  op.apply_block(block, 2, out);
  const Amplitudes au = apply(a, u), av = apply(a, v);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(std::abs(out[2 * i] - au[i]), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(out[2 * i + 1] - av[i]), 0.0, 1e-12);
  }
}

TEST(SpectralPropagator, MatchesDenseExponential) {
  const PauliSum g = I * random_hamiltonian(2, 19);
  const SpectralPropagator prop(dense_matrix(g));
  RngStream rng(4);
  const StateVector v = random_state(2, rng);
  const Eigen::VectorXcd expected = test::dense_expm(0.37 * dense_matrix(g)) * to_eigen(v.amplitudes());
  const Amplitudes got = prop.apply(0.37, v.amplitudes());
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(std::abs(got[i] - expected(static_cast<Eigen::Index>(i))), 0.0, 1e-12);
  EXPECT_THROW(SpectralPropagator(dense_matrix(PauliSum::parse("XX"))), PreconditionError);
}

}  // namespace
}  // namespace cqe
