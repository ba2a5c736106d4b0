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

#include "cqe/integrals.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cqe/errors.hpp"

namespace cqe {
namespace {

struct Primitive {
  double exponent;
  double coefficient;  // contraction coefficient times primitive normalization
};

// Standard STO-3G hydrogen 1s contraction (zeta = 1.24).
std::array<Primitive, 3> sto3g_hydrogen() {
  constexpr std::array<double, 3> alpha{3.42525091, 0.62391373, 0.16885540};
  constexpr std::array<double, 3> d{0.15432897, 0.53532814, 0.44463454};
  std::array<Primitive, 3> out{};
  for (std::size_t i = 0; i < 3; ++i)
    out[i] = {alpha[i], d[i] * std::pow(2.0 * alpha[i] / std::numbers::pi, 0.75)};
  return out;
}

using Vec3 = std::array<double, 3>;

double dist2(const Vec3& a, const Vec3& b) {
  double s = 0.0;
  for (int k = 0; k < 3; ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return s;
}

Vec3 weighted_center(double a, const Vec3& A, double b, const Vec3& B) {
  Vec3 p{};
  for (int k = 0; k < 3; ++k) p[k] = (a * A[k] + b * B[k]) / (a + b);
  return p;
}

double prim_overlap(double a, double b, double r2) {
  const double p = a + b;
  return std::pow(std::numbers::pi / p, 1.5) * std::exp(-a * b / p * r2);
}

double prim_kinetic(double a, double b, double r2) {
  const double p = a + b;
  const double mu = a * b / p;
  return mu * (3.0 - 2.0 * mu * r2) * std::pow(std::numbers::pi / p, 1.5) * std::exp(-mu * r2);
}

double prim_nuclear(double a, const Vec3& A, double b, const Vec3& B, const Vec3& C, double z) {
  const double p = a + b;
  const Vec3 P = weighted_center(a, A, b, B);
  return -2.0 * std::numbers::pi / p * z * std::exp(-a * b / p * dist2(A, B)) * boys_f0(p * dist2(P, C));
}

double prim_eri(double a, const Vec3& A, double b, const Vec3& B, double c, const Vec3& C, double d, const Vec3& D) {
  const double p = a + b, q = c + d;
  const Vec3 P = weighted_center(a, A, b, B);
  const Vec3 Q = weighted_center(c, C, d, D);
  const double pre = 2.0 * std::pow(std::numbers::pi, 2.5) / (p * q * std::sqrt(p + q));
  return pre * std::exp(-a * b / p * dist2(A, B) - c * d / q * dist2(C, D)) * boys_f0(p * q / (p + q) * dist2(P, Q));
}

Eigen::MatrixXd lowdin(const Eigen::MatrixXd& s) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
  if (es.eigenvalues().minCoeff() <= 1e-8) throw PreconditionError("overlap matrix is numerically singular");
  return es.eigenvectors() * es.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
}

Eigen::MatrixXd two_electron_part(const IntegralSet& ao, const Eigen::MatrixXd& density) {
  const int n = ao.n_spatial;
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
  for (int m = 0; m < n; ++m)
    for (int v = 0; v < n; ++v)
      for (int l = 0; l < n; ++l)
        for (int s = 0; s < n; ++s)
          g(m, v) += density(l, s) * (ao.eri_at(m, v, s, l) - 0.5 * ao.eri_at(m, l, s, v));
  return g;
}

void fix_signs(Eigen::MatrixXd& c) {
  for (Eigen::Index j = 0; j < c.cols(); ++j) {
    Eigen::Index imax = 0;
    c.col(j).cwiseAbs().maxCoeff(&imax);
    if (c(imax, j) < 0) c.col(j) *= -1.0;
  }
}

struct Diagonalized {
  Eigen::MatrixXd coefficients;
  Eigen::VectorXd energies;
};

Diagonalized diagonalize_fock(const Eigen::MatrixXd& f, const Eigen::MatrixXd& x) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(x.transpose() * f * x);
  Diagonalized d{x * es.eigenvectors(), es.eigenvalues()};
  fix_signs(d.coefficients);
  return d;
}

Eigen::MatrixXd closed_shell_density(const Eigen::MatrixXd& c, int n_occ) {
  const Eigen::MatrixXd occ = c.leftCols(n_occ);
  return 2.0 * occ * occ.transpose();
}

double electronic_energy(const IntegralSet& ao, const Eigen::MatrixXd& density) {
  const Eigen::MatrixXd f = ao.h_core + two_electron_part(ao, density);
  return 0.5 * (density.cwiseProduct(ao.h_core + f)).sum();
}

int occupied_count(const IntegralSet& ao, int n_electrons) {
  if (n_electrons <= 0 || n_electrons % 2 != 0) throw PreconditionError("closed-shell SCF needs an even electron count");
  if (n_electrons / 2 > ao.n_spatial) throw PreconditionError("more electron pairs than orbitals");
  return n_electrons / 2;
}

}  // namespace

int Geometry::nuclear_charge() const {
  int z = 0;
  for (const auto& a : atoms) {
    if (a.element != "H") throw UnsupportedElementError("unsupported element '" + a.element + "' (only H)");
    z += 1;
  }
  return z;
}

Geometry Geometry::hydrogen_chain(int n_atoms, double spacing_bohr) {
  Geometry g;
  for (int i = 0; i < n_atoms; ++i) g.atoms.push_back({"H", {0.0, 0.0, i * spacing_bohr}});
  return g;
}

IntegralSet::IntegralSet(int n, std::string label)
    : n_spatial(n),
      h_core(Eigen::MatrixXd::Zero(n, n)),
      eri(static_cast<std::size_t>(n) * n * n * n, 0.0),
      basis_label(std::move(label)) {}

void IntegralSet::set_eri_symmetric(int p, int q, int r, int s, double v) {
  for (auto [a, b, c, d] : {std::array{p, q, r, s}, std::array{q, p, r, s}, std::array{p, q, s, r},
                            std::array{q, p, s, r}, std::array{r, s, p, q}, std::array{s, r, p, q},
                            std::array{r, s, q, p}, std::array{s, r, q, p}})
    eri_at(a, b, c, d) = v;
}

double IntegralSet::max_h_asymmetry() const { return (h_core - h_core.transpose()).cwiseAbs().maxCoeff(); }

double IntegralSet::max_eri_asymmetry() const {
  const int n = n_spatial;
  double worst = 0.0;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          const double v = eri_at(p, q, r, s);
          for (double w : {eri_at(q, p, r, s), eri_at(p, q, s, r), eri_at(r, s, p, q)})
            worst = std::max(worst, std::abs(v - w));
        }
  return worst;
}

double boys_f0(double x) {
  if (x < 0.0) throw DomainError("Boys function argument must be non-negative");
  if (x < 1e-6) return 1.0 - x / 3.0 + x * x / 10.0;
  const double r = std::sqrt(x);
  return 0.5 * std::sqrt(std::numbers::pi) / r * std::erf(r);
}

AoIntegrals build_ao_integrals(const Geometry& geometry) {
  const int n = static_cast<int>(geometry.atoms.size());
  if (n == 0) throw GeometryError("geometry has no atoms");
  geometry.nuclear_charge();  // rejects non-hydrogen elements
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (std::sqrt(dist2(geometry.atoms[static_cast<std::size_t>(a)].position,
                          geometry.atoms[static_cast<std::size_t>(b)].position)) <= 1e-6)
        throw GeometryError("atoms " + std::to_string(a) + " and " + std::to_string(b) + " coincide");

  const auto basis = sto3g_hydrogen();
  auto pos = [&](int i) -> const Vec3& { return geometry.atoms[static_cast<std::size_t>(i)].position; };

  AoIntegrals out{Eigen::MatrixXd::Zero(n, n), IntegralSet(n, "STO-3G")};
  IntegralSet& ints = out.integrals;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) ints.e_nuc += 1.0 / std::sqrt(dist2(pos(a), pos(b)));

  for (int m = 0; m < n; ++m)
    for (int v = 0; v <= m; ++v) {
      double s = 0.0, t = 0.0, vne = 0.0;
      const double r2 = dist2(pos(m), pos(v));
      for (const auto& pa : basis)
        for (const auto& pb : basis) {
          const double cc = pa.coefficient * pb.coefficient;
          s += cc * prim_overlap(pa.exponent, pb.exponent, r2);
          t += cc * prim_kinetic(pa.exponent, pb.exponent, r2);
          for (int c = 0; c < n; ++c) vne += cc * prim_nuclear(pa.exponent, pos(m), pb.exponent, pos(v), pos(c), 1.0);
        }
      out.overlap(m, v) = out.overlap(v, m) = s;
      ints.h_core(m, v) = ints.h_core(v, m) = t + vne;
    }

  for (int p = 0; p < n; ++p)
    for (int q = 0; q <= p; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s <= r; ++s) {
          if (p * (p + 1) / 2 + q < r * (r + 1) / 2 + s) continue;
          double v = 0.0;
          for (const auto& a : basis)
            for (const auto& b : basis)
              for (const auto& c : basis)
                for (const auto& d : basis)
                  v += a.coefficient * b.coefficient * c.coefficient * d.coefficient *
                       prim_eri(a.exponent, pos(p), b.exponent, pos(q), c.exponent, pos(r), d.exponent, pos(s));
          ints.set_eri_symmetric(p, q, r, s, v);
        }
  ints.n_electrons = geometry.nuclear_charge() - geometry.charge;
  ints.ms2 = geometry.multiplicity - 1;
  return out;
}

MolecularOrbitals restricted_hartree_fock(const Eigen::MatrixXd& overlap, const IntegralSet& ao, int n_electrons,
                                          const ScfConfig& config) {
  const int n_occ = occupied_count(ao, n_electrons);
  const Eigen::MatrixXd x = lowdin(overlap);
  Diagonalized d = diagonalize_fock(ao.h_core, x);
  Eigen::MatrixXd density = closed_shell_density(d.coefficients, n_occ);
  double energy = electronic_energy(ao, density);

  for (int cycle = 1; cycle <= config.max_cycles; ++cycle) {
    const Eigen::MatrixXd fock = ao.h_core + two_electron_part(ao, density);
    d = diagonalize_fock(fock, x);
    const Eigen::MatrixXd fresh = closed_shell_density(d.coefficients, n_occ);
    const double fresh_energy = electronic_energy(ao, fresh);
    const double dp = (fresh - density).cwiseAbs().maxCoeff();
    const double de = std::abs(fresh_energy - energy);
    if (de < config.energy_tol && dp < config.density_tol) {
      MolecularOrbitals mo;
      mo.coefficients = d.coefficients;
      mo.orbital_energies = d.energies;
      mo.scf_energy = fresh_energy + ao.e_nuc;
      mo.cycles = cycle;
      return mo;
    }
    density = (1.0 - config.damping) * fresh + config.damping * density;
    energy = fresh_energy;
  }
  throw ScfError("SCF did not converge in " + std::to_string(config.max_cycles) + " cycles", energy + ao.e_nuc);
}

MolecularOrbitals core_hamiltonian_orbitals(const Eigen::MatrixXd& overlap, const IntegralSet& ao, int n_electrons) {
  const int n_occ = occupied_count(ao, n_electrons);
  const Diagonalized d = diagonalize_fock(ao.h_core, lowdin(overlap));
  MolecularOrbitals mo;
  mo.coefficients = d.coefficients;
  mo.orbital_energies = d.energies;
  mo.scf_energy = electronic_energy(ao, closed_shell_density(d.coefficients, n_occ)) + ao.e_nuc;
  mo.from_core_guess = true;
  return mo;
}

MolecularOrbitals scf_with_fallback(const Eigen::MatrixXd& overlap, const IntegralSet& ao, int n_electrons,
                                    const ScfConfig& config) {
  try {
    return restricted_hartree_fock(overlap, ao, n_electrons, config);
  } catch (const ScfError&) {
    return core_hamiltonian_orbitals(overlap, ao, n_electrons);
  }
}

IntegralSet transform_to_mo(const IntegralSet& ao, const Eigen::MatrixXd& c) {
  const int n = ao.n_spatial;
  if (c.rows() != n || c.cols() != n) throw DomainError("MO coefficient matrix does not match the AO basis");
  IntegralSet mo(n, ao.basis_label);
  mo.e_nuc = ao.e_nuc;
  mo.n_electrons = ao.n_electrons;
  mo.ms2 = ao.ms2;
  mo.h_core = c.transpose() * ao.h_core * c;

  const auto N = static_cast<std::size_t>(n);
  std::vector<double> a(ao.eri), b(a.size(), 0.0);
  // Four quarter transformations, each rotating the leading index into the
  // trailing position: (pqrs) -> (qrs i).
  for (int pass = 0; pass < 4; ++pass) {
    std::fill(b.begin(), b.end(), 0.0);
    for (std::size_t p = 0; p < N; ++p)
      for (std::size_t rest = 0; rest < N * N * N; ++rest) {
        const double v = a[p * N * N * N + rest];
        if (v == 0.0) continue;
        for (std::size_t i = 0; i < N; ++i)
          b[rest * N + i] += c(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(i)) * v;
      }
    std::swap(a, b);
  }
  mo.eri = std::move(a);
  return mo;
}

IntegralSet transform_to_mo(const IntegralSet& ao, const MolecularOrbitals& mos) {
  return transform_to_mo(ao, mos.coefficients);
}

FermionOperator build_hamiltonian(const IntegralSet& mo) {
  const int n = mo.n_spatial;
  if (mo.max_h_asymmetry() > 1e-10 || mo.max_eri_asymmetry() > 1e-10)
    throw PreconditionError("integrals lack the required permutational symmetry");
  constexpr double kSkip = 1e-14;
  FermionOperator h(2 * n);
  if (mo.e_nuc != 0.0) h.add_constant(mo.e_nuc);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      const double v = mo.h_core(p, q);
      if (std::abs(v) < kSkip) continue;
      for (int sigma = 0; sigma < 2; ++sigma)
        h.add({{{2 * p + sigma, Ladder::create}, {2 * q + sigma, Ladder::annihilate}}, v});
    }
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          const double v = mo.eri_at(p, q, r, s);
          if (std::abs(v) < kSkip) continue;
          for (int sigma = 0; sigma < 2; ++sigma)
            for (int tau = 0; tau < 2; ++tau) {
              const int ps = 2 * p + sigma, qs = 2 * q + sigma, rt = 2 * r + tau, st = 2 * s + tau;
              if (ps == rt || qs == st) continue;
              h.add({{{ps, Ladder::create}, {rt, Ladder::create}, {st, Ladder::annihilate}, {qs, Ladder::annihilate}},
                     0.5 * v});
            }
        }
  return h;
}

}  // namespace cqe
