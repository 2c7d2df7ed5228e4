"""Shared test fixtures and helpers."""

from __future__ import annotations

import random

from drugdesk.molgraph import Molecule, write_smiles
from drugdesk.molgraph.parser import Bond, _cycle_basis

# A spread of valid structures: chains, rings, aromatics, charges, brackets.
FIXTURE_SMILES = [
    "C",
    "CC",
    "CCO",
    "C=C",
    "C#C",
    "CC#N",
    "COC",
    "CCl",
    "CBr",
    "CI",
    "CF",
    "C1CC1",
    "C1CCCCC1",
    "C1COCCN1",
    "C1CNCCN1",
    "c1ccccc1",
    "c1ccncc1",
    "c1ccoc1",
    "c1ccsc1",
    "c1cc[nH]c1",
    "c1cncnc1",
    "c1c[nH]cn1",
    "c1ccc2ccccc2c1",
    "Cc1ccccc1",
    "Oc1ccccc1",
    "Nc1ccccc1",
    "O=C(O)c1ccccc1",
    "c1ccccc1-c1ccccc1",
    "C=Cc1ccccc1",
    "FC(F)(F)c1ccccc1",
    "CC(O)C",
    "CC(C)(C)O",
    "CS(=O)(=O)C",
    "CS(C)=O",
    "COP(=O)(O)O",
    "CC(=O)[O-]",
    "CC[NH3+]",
    "C(=O)[O-]",
    "NCC(=O)O",
    "CC(N)C(=O)O",
    "OCC(N)C(=O)O",
    "OCC1OC(O)C(O)C(O)C1O",
    "CC(=O)Oc1ccccc1C(=O)O",
    "CC(C)Cc1ccc(cc1)C(C)C(=O)O",
    "O=C(O)CN1CCC(O)CC1",
    "O=C(O)CN1CCC(O)CO1",
    "COC1CC(O)(c2ccncc2)CON1CC(=O)O",
    "Oc1cnc([C@@H]2CCON2)c(O)c1",
    "CC1=C2CNC[C@H]2C(=O)N=C1",
    "N[C@H](C[C@H](CO)C(=O)CC[C@@H](O)C(=O)O)C(=O)O",
]


def permute_molecule(mol: Molecule, perm: list[int]) -> Molecule:
    """Relabel atoms by perm (old index -> new index); same graph."""
    atoms: list = [None] * len(mol.atoms)
    for old, new in enumerate(perm):
        atoms[new] = mol.atoms[old]
    bonds = [
        Bond(perm[b.a1], perm[b.a2], b.order, b.aromatic, b.stereo)
        for b in mol.bonds
    ]
    rings = tuple(_cycle_basis(len(atoms), bonds))
    return Molecule(tuple(atoms), tuple(bonds), rings)


def random_respelling(mol: Molecule, rng: random.Random) -> str:
    """A valid SMILES for mol with a randomized atom visit order."""
    ranks = list(range(len(mol.atoms)))
    rng.shuffle(ranks)
    return write_smiles(mol, ranks)


# Drug-like low-clearance ADMET records (ppb, vss L, t_half h) for which the
# 5-minute output grid resolves the concentration curve well enough that a
# trapezoid AUC closes the elimination balance within 1%. Faster-clearance
# compounds concentrate AUC mass inside the first sample interval, which no
# quadrature over the fixed grid can recover; the grid-free identity is
# covered separately by an independent ODE oracle.
AUC_IDENTITY_SETS = [
    (0.98, 10.0, 24.0),
    (0.95, 8.0, 12.0),
    (0.99, 15.0, 36.0),
    (0.90, 6.0, 18.0),
    (0.97, 12.0, 30.0),
    (0.95, 20.0, 40.0),
    (0.92, 10.0, 30.0),
    (0.98, 30.0, 60.0),
    (0.90, 5.0, 10.0),
    (0.96, 15.0, 25.0),
]
