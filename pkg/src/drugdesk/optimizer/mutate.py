"""Fragment-based structural mutations.

Each operation edits the atom/bond lists of a parsed molecule, rebuilds the
implicit-hydrogen counts a bare SMILES atom would get, renders the result,
and re-parses it. Anything the parser rejects (valence, aromaticity) is an
InvalidMutation; callers redraw.
"""

from __future__ import annotations

import random
from math import ceil
from typing import Sequence

from drugdesk.molgraph import Molecule, parse_smiles, write_smiles
from drugdesk.molgraph.parser import AROMATIC_ELEMENTS, VALENCES, Atom, Bond, SmilesError


class InvalidMutation(ValueError):
    pass


class NoValidMutants(RuntimeError):
    """Every attempted mutation was invalid. When raised by an optimization
    run, carries the result of the generations that did complete."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


# Attachable fragments: (element, aromatic) atom rows plus bonds among them
# as (row, row, order, aromatic); row -1 is the anchor atom.
FRAGMENTS: dict[str, tuple[tuple[tuple[str, bool], ...], tuple[tuple[int, int, int, bool], ...]]] = {
    "hydroxyl": ((("O", False),), ((-1, 0, 1, False),)),
    "methoxy": ((("O", False), ("C", False)), ((-1, 0, 1, False), (0, 1, 1, False))),
    "amino": ((("N", False),), ((-1, 0, 1, False),)),
    "fluoro": ((("F", False),), ((-1, 0, 1, False),)),
    "carboxyl": (
        (("C", False), ("O", False), ("O", False)),
        ((-1, 0, 1, False), (0, 1, 2, False), (0, 2, 1, False)),
    ),
    "phenyl": (
        tuple([("C", True)] * 6),
        ((-1, 0, 1, False), (0, 1, 1, True), (1, 2, 1, True), (2, 3, 1, True),
         (3, 4, 1, True), (4, 5, 1, True), (5, 0, 1, True)),
    ),
    # attached para to the ring nitrogen
    "pyridyl": (
        (("C", True), ("C", True), ("C", True), ("N", True), ("C", True), ("C", True)),
        ((-1, 0, 1, False), (0, 1, 1, True), (1, 2, 1, True), (2, 3, 1, True),
         (3, 4, 1, True), (4, 5, 1, True), (5, 0, 1, True)),
    ),
}

FRAGMENT_NAMES = tuple(FRAGMENTS)
OPERATIONS = ("attach", "delete", "swap_ring_co", "swap_cn")
MAX_ATTEMPTS = 10


def _bare_h(element: str, aromatic: bool, bond_sum: float) -> int | None:
    """Hydrogens a bracket-free SMILES atom gets at parse time; None if the
    bond sum exceeds every allowed valence. Mirrors the parser's rule."""
    allowed = VALENCES[element]
    need = ceil(bond_sum - 1e-9)
    if aromatic:
        if element not in AROMATIC_ELEMENTS:
            return None
        return max(0, min(allowed) - need)
    for v in allowed:
        if v >= need:
            return v - need
    return None


def _rebuild(
    parent: Molecule,
    atoms: list[Atom],
    bonds: list[Bond],
    touched: set[int],
) -> Molecule:
    """Recompute hydrogen counts on touched atoms, render, and re-parse."""
    sums = [0.0] * len(atoms)
    for bond in bonds:
        sums[bond.a1] += bond.valence_order
        sums[bond.a2] += bond.valence_order
    rebuilt: list[Atom] = []
    for i, atom in enumerate(atoms):
        if i not in touched:
            rebuilt.append(atom)
            continue
        if atom.charge != 0:
            raise InvalidMutation("will not edit the environment of a charged atom")
        h = _bare_h(atom.element, atom.aromatic, sums[i])
        if h is None:
            raise InvalidMutation(
                f"{atom.element} cannot carry a bond sum of {sums[i]}"
            )
        rebuilt.append(Atom(atom.element, atom.aromatic, 0, h, ""))
    shell = Molecule(tuple(rebuilt), tuple(bonds), ())
    try:
        return parse_smiles(write_smiles(shell))
    except SmilesError as exc:
        raise InvalidMutation(str(exc)) from None


def attach_anchors(mol: Molecule) -> list[int]:
    """Carbons with at least one spare hydrogen to give up."""
    return [
        i for i, atom in enumerate(mol.atoms)
        if atom.element == "C" and atom.charge == 0 and atom.implicit_h >= 1
    ]


def attach_fragment(mol: Molecule, anchor: int, fragment: str) -> Molecule:
    if fragment not in FRAGMENTS:
        raise InvalidMutation(f"unknown fragment {fragment!r}")
    if anchor not in attach_anchors(mol):
        raise InvalidMutation(f"atom {anchor} cannot anchor a fragment")
    rows, links = FRAGMENTS[fragment]
    base = len(mol.atoms)
    atoms = list(mol.atoms)
    touched = {anchor}
    for element, aromatic in rows:
        touched.add(len(atoms))
        atoms.append(Atom(element, aromatic, 0, 0, ""))
    bonds = list(mol.bonds)
    for a, b, order, aromatic in links:
        a_idx = anchor if a == -1 else base + a
        b_idx = anchor if b == -1 else base + b
        bonds.append(Bond(a_idx, b_idx, order, aromatic, ""))
    return _rebuild(mol, atoms, bonds, touched)


def terminal_atoms(mol: Molecule) -> list[int]:
    """Atoms with exactly one heavy neighbor; deleting one cannot split the
    molecule."""
    if len(mol.atoms) < 2:
        return []
    degree = [0] * len(mol.atoms)
    for bond in mol.bonds:
        degree[bond.a1] += 1
        degree[bond.a2] += 1
    return [i for i, d in enumerate(degree) if d == 1]


def delete_terminal(mol: Molecule, idx: int) -> Molecule:
    if idx not in terminal_atoms(mol):
        raise InvalidMutation(f"atom {idx} is not terminal")
    atoms = [atom for i, atom in enumerate(mol.atoms) if i != idx]
    bonds = []
    touched = set()
    for bond in mol.bonds:
        if idx in (bond.a1, bond.a2):
            touched.add(bond.other(idx) - (1 if bond.other(idx) > idx else 0))
            continue
        bonds.append(
            Bond(
                bond.a1 - (1 if bond.a1 > idx else 0),
                bond.a2 - (1 if bond.a2 > idx else 0),
                bond.order,
                bond.aromatic,
                bond.stereo,
            )
        )
    return _rebuild(mol, atoms, bonds, touched)


def co_swap_sites(mol: Molecule) -> list[int]:
    ring = mol.ring_atoms()
    return [
        i for i, atom in enumerate(mol.atoms)
        if i in ring and atom.element in ("C", "O") and atom.charge == 0
    ]


def swap_ring_co(mol: Molecule, idx: int) -> Molecule:
    if idx not in co_swap_sites(mol):
        raise InvalidMutation(f"atom {idx} is not a ring C or O")
    old = mol.atoms[idx]
    atoms = list(mol.atoms)
    atoms[idx] = Atom("O" if old.element == "C" else "C", old.aromatic, 0, 0, "")
    return _rebuild(mol, atoms, list(mol.bonds), {idx})


def cn_swap_sites(mol: Molecule) -> list[int]:
    return [
        i for i, atom in enumerate(mol.atoms)
        if atom.element in ("C", "N") and atom.charge == 0
    ]


def swap_cn(mol: Molecule, idx: int) -> Molecule:
    if idx not in cn_swap_sites(mol):
        raise InvalidMutation(f"atom {idx} is not a C or N")
    old = mol.atoms[idx]
    atoms = list(mol.atoms)
    atoms[idx] = Atom("N" if old.element == "C" else "C", old.aromatic, 0, 0, "")
    return _rebuild(mol, atoms, list(mol.bonds), {idx})


def _draw(mol: Molecule, rng: random.Random) -> Molecule:
    op = rng.choice(OPERATIONS)
    if op == "attach":
        sites = attach_anchors(mol)
        if not sites:
            raise InvalidMutation("no attachment anchors")
        return attach_fragment(mol, rng.choice(sites), rng.choice(FRAGMENT_NAMES))
    if op == "delete":
        sites = terminal_atoms(mol)
        if not sites:
            raise InvalidMutation("no terminal atoms")
        return delete_terminal(mol, rng.choice(sites))
    if op == "swap_ring_co":
        sites = co_swap_sites(mol)
        if not sites:
            raise InvalidMutation("no ring C/O sites")
        return swap_ring_co(mol, rng.choice(sites))
    sites = cn_swap_sites(mol)
    if not sites:
        raise InvalidMutation("no C/N sites")
    return swap_cn(mol, rng.choice(sites))


def generate_mutants(
    parents: Sequence[Molecule], n_per_parent: int, seed: int
) -> list[Molecule]:
    """Draw n_per_parent mutations per parent, redrawing invalid ones up to
    MAX_ATTEMPTS times per slot. A slot whose every attempt fails yields
    nothing; a run where every slot fails raises NoValidMutants."""
    if n_per_parent < 1:
        raise ValueError(f"n_per_parent must be at least 1, got {n_per_parent}")
    rng = random.Random(seed)
    out: list[Molecule] = []
    for parent in parents:
        for _ in range(n_per_parent):
            for _ in range(MAX_ATTEMPTS):
                try:
                    out.append(_draw(parent, rng))
                    break
                except InvalidMutation:
                    continue
    if parents and not out:
        raise NoValidMutants("every mutation attempt was invalid")
    return out
