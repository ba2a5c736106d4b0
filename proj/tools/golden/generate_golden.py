# Copyright 2026 The CQE Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Regenerates the reference values under golden/ with PySCF.

Run once and commit the output; the C++ tests only read the JSON files.

    python3 tools/golden/generate_golden.py --out golden
"""

import argparse
import json
import pathlib

import numpy as np
from pyscf import fci, gto, scf

ANGSTROM = 1.8897259886


def chain(n_atoms, spacing_bohr):
    atoms = [("H", (0.0, 0.0, i * spacing_bohr)) for i in range(n_atoms)]
    mol = gto.M(atom=atoms, basis="sto-3g", unit="Bohr", verbose=0)
    return mol


def rhf(mol):
    mf = scf.RHF(mol)
    mf.conv_tol = 1e-12
    mf.kernel()
    if not mf.converged:
        raise RuntimeError("RHF did not converge")
    return mf


def sector_levels(mf, n_alpha, n_beta, nroots):
    mol = mf.mol
    h1 = mf.mo_coeff.T @ mf.get_hcore() @ mf.mo_coeff
    eri = mol.ao2mo(mf.mo_coeff, aosym=1).reshape([mol.nao] * 4)
    solver = fci.direct_spin1.FCI()
    solver.conv_tol = 1e-13
    solver.nroots = nroots
    energies, _ = solver.kernel(h1, eri, mol.nao, (n_alpha, n_beta), ecore=mol.energy_nuc(), nroots=nroots)
    return sorted(float(e) for e in np.atleast_1d(energies))


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--out", default="golden")
    args = parser.parse_args()
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    h2 = rhf(chain(2, 1.4))
    h4 = rhf(chain(4, 1.0 * ANGSTROM))
    (out / "scf.json").write_text(json.dumps({
        "program": "pyscf",
        "basis": "sto-3g",
        "h2_1.4bohr": {"e_nuc": float(h2.mol.energy_nuc()), "scf_energy": float(h2.e_tot),
                       "orbital_energies": [float(e) for e in h2.mo_energy]},
        "h4_1.0A": {"e_nuc": float(h4.mol.energy_nuc()), "scf_energy": float(h4.e_tot),
                    "orbital_energies": [float(e) for e in h4.mo_energy]},
    }, indent=2) + "\n")

    h2_distances = sorted(set([round(x, 10) for x in np.linspace(0.5, 5.0, 10)] + [0.7]))
    h2_levels = {f"{d:.4f}": sector_levels(rhf(chain(2, d * ANGSTROM)), 1, 1, 4) for d in h2_distances}
    (out / "h2_sector.json").write_text(json.dumps({
        "program": "pyscf", "basis": "sto-3g", "sector": "N=2, Sz=0", "unit": "hartree",
        "distance_unit": "angstrom", "levels": h2_levels}, indent=2) + "\n")

    h4_distances = [0.7 + 0.4 * i for i in range(8)]
    h4_levels = {f"{d:.4f}": sector_levels(rhf(chain(4, d * ANGSTROM)), 2, 2, 8) for d in h4_distances}
    (out / "h4_sector.json").write_text(json.dumps({
        "program": "pyscf", "basis": "sto-3g", "sector": "N=4, Sz=0", "unit": "hartree",
        "distance_unit": "angstrom", "levels": h4_levels}, indent=2) + "\n")


if __name__ == "__main__":
    main()
