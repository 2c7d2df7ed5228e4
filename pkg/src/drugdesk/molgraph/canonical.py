"""Canonical SMILES via Morgan-style rank refinement.

canonical_form() produces one deterministic spelling per molecular graph,
independent of input atom order. Atom ranks are refined iteratively from
local invariants; remaining ties are resolved by individualize-and-refine
search, taking the lexicographically smallest emitted string over all
completions. Stereo annotations are dropped.
"""

from __future__ import annotations

from math import ceil

from drugdesk.molgraph.parser import (
    AROMATIC_ELEMENTS,
    VALENCES,
    Bond,
    Molecule,
    bond_code,
)


def canonical_smiles(text: str) -> str:
    from drugdesk.molgraph.parser import parse_smiles

    return canonical_form(parse_smiles(text))


def canonical_form(mol: Molecule) -> str:
    n = len(mol.atoms)
    if n == 1:
        return _atom_text(mol, 0)
    ranks = _refine(mol, _initial_ranks(mol))
    best: list[str | None] = [None]
    _explore(mol, ranks, best)
    assert best[0] is not None
    return best[0]


def _explore(mol: Molecule, ranks: list[int], best: list[str | None]) -> None:
    n = len(mol.atoms)
    if len(set(ranks)) == n:
        text = write_smiles(mol, ranks)
        if best[0] is None or text < best[0]:
            best[0] = text
        return
    # Split the lowest-ranked tied class; every member gets a turn so the
    # minimum over branches cannot depend on input atom order.
    counts: dict[int, int] = {}
    for r in ranks:
        counts[r] = counts.get(r, 0) + 1
    target = min(r for r, c in counts.items() if c > 1)
    for atom in range(n):
        if ranks[atom] != target:
            continue
        child = [r + 1 if r > target else r for r in ranks]
        for other in range(n):
            if other != atom and ranks[other] == target:
                child[other] = target + 1
        _explore(mol, _refine(mol, child), best)


def _initial_ranks(mol: Molecule) -> list[int]:
    adj = mol.neighbors()
    keys = [
        (a.element, a.aromatic, a.charge, a.implicit_h, len(adj[i]))
        for i, a in enumerate(mol.atoms)
    ]
    return _dense(keys)


def _refine(mol: Molecule, ranks: list[int]) -> list[int]:
    adj = mol.neighbors()
    ranks = _dense(list(ranks))
    while True:
        keys = []
        for i in range(len(mol.atoms)):
            around = sorted((bond_code(b), ranks[j]) for j, b in adj[i])
            keys.append((ranks[i], tuple(around)))
        new = _dense(keys)
        if new == ranks:
            return ranks
        ranks = new


def _dense(keys: list) -> list[int]:
    lookup = {key: i for i, key in enumerate(sorted(set(keys)))}
    return [lookup[key] for key in keys]


def write_smiles(mol: Molecule, ranks: list[int] | None = None) -> str:
    """Emit a SMILES string visiting atoms in rank order (index order if None).

    Any rank vector yields a valid spelling of the same molecule, which makes
    this double as a respelling generator for invariance tests.
    """
    n = len(mol.atoms)
    if ranks is None:
        ranks = list(range(n))
    adj = mol.neighbors()
    for i in range(n):
        adj[i].sort(key=lambda pair: (ranks[pair[0]], pair[0]))
    start = min(range(n), key=lambda i: (ranks[i], i))

    visit_index = [-1] * n
    children: list[list[tuple[int, Bond]]] = [[] for _ in range(n)]
    ring_bonds: list[tuple[int, int, Bond]] = []  # (earlier, later, bond)

    stack: list[tuple[int, int]] = [(start, -1)]
    counter = 0
    while stack:
        atom, parent = stack.pop()
        if visit_index[atom] >= 0:
            continue
        visit_index[atom] = counter
        counter += 1
        # push in reverse so lowest-ranked neighbor is visited first
        for nbr, bond in reversed(adj[atom]):
            if nbr == parent and visit_index[nbr] >= 0:
                continue
            if visit_index[nbr] >= 0:
                if visit_index[nbr] < visit_index[atom]:
                    ring_bonds.append((nbr, atom, bond))
            else:
                stack.append((nbr, atom))

    # The stack-based DFS above marks children lazily; rebuild the tree by
    # a second pass so branch emission sees them in visit order.
    ring_pairs = {(min(u, v), max(u, v)) for u, v, _ in ring_bonds}
    for i in range(n):
        for nbr, bond in adj[i]:
            if visit_index[nbr] > visit_index[i] and (min(i, nbr), max(i, nbr)) not in ring_pairs:
                children[i].append((nbr, bond))
    for i in range(n):
        children[i].sort(key=lambda pair: visit_index[pair[0]])

    opens: list[list[tuple[int, Bond, int]]] = [[] for _ in range(n)]
    closes: list[list[tuple[int, Bond, int]]] = [[] for _ in range(n)]
    by_open: list[list[tuple[int, int, Bond]]] = [[] for _ in range(n)]
    for u, v, bond in ring_bonds:
        by_open[u].append((u, v, bond))
    free = list(range(1, 100))
    in_use: dict[tuple[int, int], int] = {}
    for atom in sorted(range(n), key=lambda i: visit_index[i]):
        for u, v, bond in sorted(by_open[atom], key=lambda t: visit_index[t[1]]):
            digit = free.pop(0)
            in_use[(u, v)] = digit
            opens[u].append((v, bond, digit))
        for u, v, bond in ring_bonds:
            if v == atom:
                digit = in_use.pop((u, v))
                closes[v].append((u, bond, digit))
                free.append(digit)
                free.sort()

    out: list[str] = []

    def emit(atom: int) -> None:
        out.append(_atom_text(mol, atom))
        for partner, bond, digit in closes[atom]:
            out.append(_digit_text(digit))
        for partner, bond, digit in opens[atom]:
            out.append(_bond_text(mol, bond) + _digit_text(digit))
        kids = children[atom]
        for pos, (child, bond) in enumerate(kids):
            if pos < len(kids) - 1:
                out.append("(")
                out.append(_bond_text(mol, bond))
                emit(child)
                out.append(")")
            else:
                out.append(_bond_text(mol, bond))
                emit(child)

    emit(start)
    return "".join(out)


def _digit_text(digit: int) -> str:
    return str(digit) if digit < 10 else f"%{digit:02d}"


def _bond_text(mol: Molecule, bond: Bond) -> str:
    both_aromatic = mol.atoms[bond.a1].aromatic and mol.atoms[bond.a2].aromatic
    if bond.aromatic:
        return "" if both_aromatic else ":"
    if bond.order == 1:
        return "-" if both_aromatic else ""
    return {2: "=", 3: "#"}[bond.order]


def _atom_text(mol: Molecule, idx: int) -> str:
    atom = mol.atoms[idx]
    sym = atom.element.lower() if atom.aromatic else atom.element
    bond_sum = 0.0
    for bond in mol.bonds:
        if idx in (bond.a1, bond.a2):
            bond_sum += bond.valence_order
    if atom.charge == 0 and atom.implicit_h == _default_h(atom.element, atom.aromatic, bond_sum):
        return sym
    h = "" if atom.implicit_h == 0 else ("H" if atom.implicit_h == 1 else f"H{atom.implicit_h}")
    if atom.charge == 0:
        charge = ""
    elif atom.charge in (1, -1):
        charge = "+" if atom.charge == 1 else "-"
    else:
        charge = f"{atom.charge:+d}"
    return f"[{sym}{h}{charge}]"


def _default_h(element: str, aromatic: bool, bond_sum: float) -> int | None:
    """Hydrogen count a bare (bracket-free) atom would get at parse time."""
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
