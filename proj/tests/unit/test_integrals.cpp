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
#include <fstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "cqe/errors.hpp"
#include "cqe/fcidump.hpp"
#include "cqe/integrals.hpp"
#include "cqe/pauli.hpp"
#include "cqe/rng.hpp"

namespace cqe {
namespace {

nlohmann::json golden(const std::string& name) {
  std::ifstream in(std::string(CQE_GOLDEN_DIR) + "/" + name);
  return nlohmann::json::parse(in);
}

struct Molecule {
  AoIntegrals ao;
  MolecularOrbitals mos;
  IntegralSet mo;
};

Molecule chain(int n, double spacing_bohr) {
  Molecule m{build_ao_integrals(Geometry::hydrogen_chain(n, spacing_bohr)), {}, {}};
  m.mos = restricted_hartree_fock(m.ao.overlap, m.ao.integrals, n);
  m.mo = transform_to_mo(m.ao.integrals, m.mos);
  return m;
}

double max_eri_diff(const IntegralSet& a, const IntegralSet& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.eri.size(); ++i) d = std::max(d, std::abs(a.eri[i] - b.eri[i]));
  return d;
}

TEST(BoysFunction, Limits) {
  EXPECT_DOUBLE_EQ(boys_f0(0.0), 1.0);
  EXPECT_NEAR(boys_f0(1e-12), 1.0, 1e-12);
  EXPECT_NEAR(boys_f0(50.0), 0.5 * std::sqrt(M_PI / 50.0), 1e-14);
  EXPECT_NEAR(boys_f0(1.0), 0.746824132812427, 1e-14);
  EXPECT_THROW(boys_f0(-1.0), DomainError);
}

TEST(AoIntegrals, SingleAtomIsNormalized) {
  const auto ao = build_ao_integrals(Geometry{{{"H", {0, 0, 0}}}});
  EXPECT_NEAR(ao.overlap(0, 0), 1.0, 1e-8);
  EXPECT_EQ(ao.integrals.e_nuc, 0.0);
}

TEST(AoIntegrals, NuclearRepulsion) {
  const auto ao = build_ao_integrals(Geometry::hydrogen_chain(2, 1.4));
  EXPECT_NEAR(ao.integrals.e_nuc, 1.0 / 1.4, 1e-15);
}

TEST(AoIntegrals, RejectsUnsupportedInput) {
  EXPECT_THROW(build_ao_integrals(Geometry{{{"He", {0, 0, 0}}}}), UnsupportedElementError);
  EXPECT_THROW(build_ao_integrals(Geometry{{{"H", {0, 0, 0}}, {"H", {0, 0, 1e-9}}}}), GeometryError);
}

TEST(AoIntegrals, EightFoldSymmetryAndTranslationInvariance) {
  Geometry g = Geometry::hydrogen_chain(4, 1.7);
  const auto a = build_ao_integrals(g);
  EXPECT_LT(a.integrals.max_eri_asymmetry(), 1e-12);
  EXPECT_LT(a.integrals.max_h_asymmetry(), 1e-12);
  for (auto& atom : g.atoms) {
    atom.position[0] += 0.3;
    atom.position[1] -= 1.1;
    atom.position[2] += 2.5;
  }
  const auto b = build_ao_integrals(g);
  EXPECT_LT((a.overlap - b.overlap).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LT((a.integrals.h_core - b.integrals.h_core).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LT(max_eri_diff(a.integrals, b.integrals), 1e-10);
}

TEST(RestrictedHartreeFock, H2MatchesGolden) {
  const auto ref = golden("scf.json").at("h2_1.4bohr");
  const Molecule m = chain(2, 1.4);
  EXPECT_EQ(m.mos.orbital_energies.size(), 2);
  EXPECT_LT(m.mos.orbital_energies(0), m.mos.orbital_energies(1));
  EXPECT_NEAR(m.mos.scf_energy, ref.at("scf_energy").get<double>(), 1e-8);
  EXPECT_NEAR(m.ao.integrals.e_nuc, ref.at("e_nuc").get<double>(), 1e-12);
  const Eigen::MatrixXd c = m.mos.coefficients;
  EXPECT_LT((c.transpose() * m.ao.overlap * c - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(RestrictedHartreeFock, H4OrbitalEnergiesMatchGolden) {
  const auto ref = golden("scf.json").at("h4_1.0A");
  const Molecule m = chain(4, 1.0 * kAngstromToBohr);
  const auto e = ref.at("orbital_energies").get<std::vector<double>>();
  ASSERT_EQ(m.mos.orbital_energies.size(), 4);
  for (Eigen::Index k = 0; k < 4; ++k) {
    if (k > 0) EXPECT_GT(m.mos.orbital_energies(k), m.mos.orbital_energies(k - 1));
    EXPECT_NEAR(m.mos.orbital_energies(k), e[static_cast<std::size_t>(k)], 1e-6);
  }
  EXPECT_NEAR(m.mos.scf_energy, ref.at("scf_energy").get<double>(), 1e-8);
}

TEST(RestrictedHartreeFock, RejectsOpenShell) {
  const auto ao = build_ao_integrals(Geometry::hydrogen_chain(3, 1.4));
  EXPECT_THROW(restricted_hartree_fock(ao.overlap, ao.integrals, 3), PreconditionError);
}

TEST(RestrictedHartreeFock, FallbackAtDissociation) {
  const auto ao = build_ao_integrals(Geometry::hydrogen_chain(4, 4.0 * kAngstromToBohr));
  const MolecularOrbitals mos = scf_with_fallback(ao.overlap, ao.integrals, 4);
  const Eigen::MatrixXd c = mos.coefficients;
  EXPECT_LT((c.transpose() * ao.overlap * c - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(TransformToMo, IdentityCoefficientsLeaveIntegralsUnchanged) {
  const auto ao = build_ao_integrals(Geometry::hydrogen_chain(3, 1.5)).integrals;
  const IntegralSet same = transform_to_mo(ao, Eigen::MatrixXd::Identity(3, 3));
  EXPECT_LT((same.h_core - ao.h_core).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT(max_eri_diff(same, ao), 1e-15);
  EXPECT_THROW(transform_to_mo(ao, Eigen::MatrixXd::Identity(2, 2)), DomainError);
}

TEST(TransformToMo, RotationKeepsTraceAndSymmetry) {
  const auto ao = build_ao_integrals(Geometry::hydrogen_chain(3, 1.5)).integrals;
  const double a = 0.4;
  Eigen::MatrixXd r = Eigen::MatrixXd::Identity(3, 3);
  r(0, 0) = std::cos(a);
  r(0, 2) = -std::sin(a);
  r(2, 0) = std::sin(a);
  r(2, 2) = std::cos(a);
  const IntegralSet rot = transform_to_mo(ao, r);
  EXPECT_NEAR(rot.h_core.trace(), ao.h_core.trace(), 1e-12);
  EXPECT_LT(rot.max_eri_asymmetry(), 1e-10);
}

TEST(TransformToMo, H2SymmetryZeros) {
  const IntegralSet mo = chain(2, 1.4).mo;
  EXPECT_NEAR(mo.h_core(0, 1), 0.0, 1e-10);
  EXPECT_NEAR(mo.eri_at(0, 0, 0, 1), 0.0, 1e-10);
  EXPECT_NEAR(mo.eri_at(0, 1, 1, 1), 0.0, 1e-10);
  EXPECT_GT(std::abs(mo.eri_at(0, 1, 0, 1)), 1e-3);
  EXPECT_GT(std::abs(mo.eri_at(0, 0, 1, 1)), 1e-3);
}

TEST(BuildHamiltonian, OneOrbitalToy) {
  IntegralSet toy(1, "toy");
  toy.h_core(0, 0) = -1.0;
  toy.set_eri_symmetric(0, 0, 0, 0, 1.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense_matrix(jordan_wigner(build_hamiltonian(toy))));
  EXPECT_NEAR(es.eigenvalues()(0), -1.0, 1e-14);
  EXPECT_NEAR(es.eigenvalues()(1), -1.0, 1e-14);
  EXPECT_NEAR(es.eigenvalues()(2), -1.0, 1e-14);
  EXPECT_NEAR(es.eigenvalues()(3), 0.0, 1e-14);
}

TEST(BuildHamiltonian, ConservesParticleNumberAndIsHermitian) {
  const IntegralSet mo = chain(4, 1.0 * kAngstromToBohr).mo;
  const Eigen::MatrixXcd h = dense_matrix(jordan_wigner(build_hamiltonian(mo)));
  const Eigen::MatrixXcd n = dense_matrix(jordan_wigner(number_operator(8)));
  EXPECT_LT((h * n - n * h).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LT((h - h.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(BuildHamiltonian, RejectsAsymmetricIntegrals) {
  IntegralSet bad(2, "bad");
  bad.h_core(0, 1) = 0.5;
  EXPECT_THROW(build_hamiltonian(bad), PreconditionError);
}

TEST(BuildHamiltonian, SectorSpectraMatchGolden) {
  const auto h2 = golden("h2_sector.json").at("levels").at("0.7000").get<std::vector<double>>();
  {
    const Molecule m = chain(2, 0.7 * kAngstromToBohr);
    const auto comp = compress_to_sector(build_hamiltonian(m.mo), sector_basis(4, 2, 0));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(comp.matrix);
    for (Eigen::Index k = 0; k < 4; ++k) EXPECT_NEAR(es.eigenvalues()(k), h2[static_cast<std::size_t>(k)], 1e-8);
    EXPECT_GE(m.mos.scf_energy, es.eigenvalues()(0));
  }
  const auto h4 = golden("h4_sector.json").at("levels").at("1.5000").get<std::vector<double>>();
  const Molecule m = chain(4, 1.5 * kAngstromToBohr);
  const auto comp = compress_to_sector(build_hamiltonian(m.mo), sector_basis(8, 4, 0));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(comp.matrix.topLeftCorner(36, 36));
  for (Eigen::Index k = 0; k < 8; ++k) EXPECT_NEAR(es.eigenvalues()(k), h4[static_cast<std::size_t>(k)], 1e-8);
  EXPECT_GE(m.mos.scf_energy, es.eigenvalues()(0));
}

TEST(Fcidump, ParsesMinimalText) {
  const IntegralSet s = parse_fcidump("&FCI NORB=1,NELEC=2,MS2=0,&END\n0.5 1 1 1 1\n-1.0 1 1 0 0\n0.7 0 0 0 0");
  EXPECT_EQ(s.n_spatial, 1);
  EXPECT_EQ(s.n_electrons, 2);
  EXPECT_EQ(s.ms2, 0);
  EXPECT_DOUBLE_EQ(s.eri_at(0, 0, 0, 0), 0.5);
  EXPECT_DOUBLE_EQ(s.h_core(0, 0), -1.0);
  EXPECT_DOUBLE_EQ(s.e_nuc, 0.7);
}

TEST(Fcidump, RoundTripsH2) {
  IntegralSet mo = chain(2, 1.4).mo;
  mo.n_electrons = 2;
  const IntegralSet back = parse_fcidump(write_fcidump(mo));
  EXPECT_EQ(back.n_spatial, 2);
  EXPECT_EQ(back.n_electrons, 2);
  EXPECT_NEAR(back.e_nuc, mo.e_nuc, 1e-12);
  EXPECT_LT((back.h_core - mo.h_core).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT(max_eri_diff(back, mo), 1e-12);
}

TEST(Fcidump, FiveIndexRecordNamesTheLine) {
  try {
    parse_fcidump("&FCI NORB=1,NELEC=2,MS2=0,&END\n0.5 1 1 1 1\n0.25 1 1 1 1 1\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST(Fcidump, MalformedInputs) {
  EXPECT_THROW(parse_fcidump("NORB=1\n"), ParseError);
  EXPECT_THROW(parse_fcidump("&FCI NORB=1,NELEC=2,&END\nabc 1 1 1 1\n"), ParseError);
  EXPECT_THROW(parse_fcidump("&FCI NORB=1,NELEC=2,&END\n1.0 2 1 1 1\n"), ParseError);
  EXPECT_THROW(read_fcidump_file("/nonexistent/FCIDUMP"), ParseError);
}

}  // namespace
}  // namespace cqe
