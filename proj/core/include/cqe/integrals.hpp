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
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cqe/fermion.hpp"

namespace cqe {

inline constexpr double kAngstromToBohr = 1.8897259886;

struct Atom {
  std::string element;
  std::array<double, 3> position;  // Bohr
};

struct Geometry {
  std::vector<Atom> atoms;
  int charge = 0;
  int multiplicity = 1;

  int nuclear_charge() const;
  // Equally spaced atoms on the z axis; spacing in Bohr.
  static Geometry hydrogen_chain(int n_atoms, double spacing_bohr);
};

// One- and two-electron integrals, chemists' notation (pq|rs), Hartree.
struct IntegralSet {
  int n_spatial = 0;
  double e_nuc = 0.0;
  Eigen::MatrixXd h_core;
  std::vector<double> eri;  // n^4, index ((p*n + q)*n + r)*n + s
  std::string basis_label;
  int n_electrons = 0;
  int ms2 = 0;

  IntegralSet() = default;
  IntegralSet(int n, std::string label);

  double& eri_at(int p, int q, int r, int s) { return eri[index(p, q, r, s)]; }
  double eri_at(int p, int q, int r, int s) const { return eri[index(p, q, r, s)]; }
  // Writes v to all eight permutation-related slots.
  void set_eri_symmetric(int p, int q, int r, int s, double v);

  double max_h_asymmetry() const;
  double max_eri_asymmetry() const;

 private:
  std::size_t index(int p, int q, int r, int s) const {
    const auto n = static_cast<std::size_t>(n_spatial);
    return ((static_cast<std::size_t>(p) * n + static_cast<std::size_t>(q)) * n + static_cast<std::size_t>(r)) * n +
           static_cast<std::size_t>(s);
  }
};

struct AoIntegrals {
  Eigen::MatrixXd overlap;
  IntegralSet integrals;
};

// Boys function F0(x) = (1/2) sqrt(pi/x) erf(sqrt(x)), F0(0) = 1.
double boys_f0(double x);

// Contracted STO-3G s functions on hydrogen atoms.
AoIntegrals build_ao_integrals(const Geometry& geometry);

struct ScfConfig {
  int max_cycles = 200;
  double damping = 0.5;  // weight of the previous density
  double energy_tol = 1e-10;
  double density_tol = 1e-8;
};

struct MolecularOrbitals {
  Eigen::MatrixXd coefficients;  // AO x MO
  Eigen::VectorXd orbital_energies;
  double scf_energy = 0.0;
  int cycles = 0;
  bool from_core_guess = false;
};

// Closed-shell damped fixed-point SCF; throws ScfError on non-convergence.
MolecularOrbitals restricted_hartree_fock(const Eigen::MatrixXd& overlap, const IntegralSet& ao, int n_electrons,
                                          const ScfConfig& config = {});
// Orbitals of the core Hamiltonian in the Lowdin-orthogonalized basis.
MolecularOrbitals core_hamiltonian_orbitals(const Eigen::MatrixXd& overlap, const IntegralSet& ao, int n_electrons);
// RHF, falling back to core-Hamiltonian orbitals when SCF fails.
MolecularOrbitals scf_with_fallback(const Eigen::MatrixXd& overlap, const IntegralSet& ao, int n_electrons,
                                    const ScfConfig& config = {});

IntegralSet transform_to_mo(const IntegralSet& ao, const MolecularOrbitals& mos);
IntegralSet transform_to_mo(const IntegralSet& ao, const Eigen::MatrixXd& coefficients);

// e_nuc + sum h_pq f+_{p s} f_{q s} + 1/2 sum (pq|rs) f+_{p s} f+_{r t} f_{s t} f_{q s}
// over interleaved spin orbitals (mode = 2 * spatial + spin).
FermionOperator build_hamiltonian(const IntegralSet& mo);

}  // namespace cqe
