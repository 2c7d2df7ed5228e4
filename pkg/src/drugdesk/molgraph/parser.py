"""SMILES parser for the organic subset plus bracket atoms.

Supported grammar: atoms B,C,N,O,P,S,F,Cl,Br,I (aromatic lowercase for
b,c,n,o,p,s), bracket atoms with optional isotope, stereo (@, @@), explicit
H count and charge, ring-bond digits 0-9 and %nn, branches, and the bond
symbols - = # : / \\. Stereo markers are parsed and recorded but carry no
meaning downstream. Dots (multi-fragment input) are rejected.

Aromaticity is taken from the input (lowercase atoms, ':' bonds); there is
no perception pass. Aromatic bonds count as order 1.5 for valence
bookkeeping only.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil


class SmilesError(ValueError):
    """Base class for all SMILES parse and validation failures."""


class EmptySmiles(SmilesError):
    pass


class UnclosedRing(SmilesError):
    pass


class UnbalancedParen(SmilesError):
    pass


class UnknownAtom(SmilesError):
    pass


class ValenceViolation(SmilesError):
    pass


class StrayStereo(SmilesError):
    pass


class MultiFragment(SmilesError):
    pass


# Allowed valence states per element. The smallest state that fits the bond
# sum decides the implicit hydrogen count.
VALENCES: dict[str, tuple[int, ...]] = {
    "B": (3,),
    "C": (4,),
    "N": (3,),
    "O": (2,),
    "P": (3, 5),
    "S": (2, 4, 6),
    "F": (1,),
    "Cl": (1,),
    "Br": (1,),
    "I": (1,),
}

ORGANIC_SUBSET = set(VALENCES)
AROMATIC_ELEMENTS = {"B", "C", "N", "O", "P", "S"}


@dataclass(frozen=True)
class Atom:
    element: str
    aromatic: bool = False
    charge: int = 0
    implicit_h: int = 0
    stereo: str = ""


@dataclass(frozen=True)
class Bond:
    a1: int
    a2: int
    order: int = 1
    aromatic: bool = False
    stereo: str = ""

    def other(self, idx: int) -> int:
        return self.a2 if idx == self.a1 else self.a1

    @property
    def valence_order(self) -> float:
        return 1.5 if self.aromatic else float(self.order)


@dataclass(frozen=True)
class Molecule:
    atoms: tuple[Atom, ...]
    bonds: tuple[Bond, ...]
    rings: tuple[tuple[int, ...], ...]

    @property
    def heavy_atoms(self) -> int:
        return len(self.atoms)

    def neighbors(self) -> list[list[tuple[int, Bond]]]:
        """Adjacency list: for each atom, (neighbor index, bond) pairs."""
        adj: list[list[tuple[int, Bond]]] = [[] for _ in self.atoms]
        for bond in self.bonds:
            adj[bond.a1].append((bond.a2, bond))
            adj[bond.a2].append((bond.a1, bond))
        return adj

    def ring_atoms(self) -> set[int]:
        return {idx for cycle in self.rings for idx in cycle}


# A parsed-but-unvalidated atom. implicit_h None means "derive from valence".
@dataclass
class _RawAtom:
    element: str
    aromatic: bool
    charge: int = 0
    explicit_h: int | None = None
    stereo: str = ""


_BOND_SYMBOLS = {"-": (1, False), "=": (2, False), "#": (3, False), ":": (1, True)}


def parse_smiles(text: str) -> Molecule:
    """Parse a SMILES string into a validated, connected Molecule."""
    if text is None or not text.strip():
        raise EmptySmiles("empty SMILES input")
    text = text.strip()

    atoms: list[_RawAtom] = []
    bonds: list[tuple[int, int, tuple[int, bool] | None, str]] = []
    prev: int | None = None
    branch_stack: list[int] = []
    pending: tuple[int, bool] | None = None
    pending_stereo = ""
    open_rings: dict[int, tuple[int, tuple[int, bool] | None, str]] = {}

    def attach(raw: _RawAtom) -> None:
        nonlocal prev, pending, pending_stereo
        atoms.append(raw)
        idx = len(atoms) - 1
        if prev is not None:
            bonds.append((prev, idx, pending, pending_stereo))
        prev = idx
        pending = None
        pending_stereo = ""

    def close_ring(digit: int) -> None:
        nonlocal pending, pending_stereo
        if prev is None:
            raise SmilesError("ring-bond digit before any atom")
        if digit in open_rings:
            other, obond, ostereo = open_rings.pop(digit)
            if other == prev:
                raise SmilesError(f"ring bond {digit} connects an atom to itself")
            if obond is not None and pending is not None and obond != pending:
                raise SmilesError(f"conflicting bond orders on ring bond {digit}")
            bonds.append((other, prev, pending if pending is not None else obond,
                          pending_stereo or ostereo))
        else:
            open_rings[digit] = (prev, pending, pending_stereo)
        pending = None
        pending_stereo = ""

    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "(":
            if prev is None:
                raise UnbalancedParen("branch opened before any atom")
            if pending is not None:
                raise SmilesError("bond symbol directly before '('... expected inside")
            branch_stack.append(prev)
            i += 1
        elif ch == ")":
            if not branch_stack:
                raise UnbalancedParen("')' without matching '('")
            if pending is not None:
                raise SmilesError("dangling bond symbol before ')'")
            prev = branch_stack.pop()
            i += 1
        elif ch in _BOND_SYMBOLS:
            if pending is not None:
                raise SmilesError("two bond symbols in a row")
            pending = _BOND_SYMBOLS[ch]
            i += 1
        elif ch in "/\\":
            if pending is not None:
                raise SmilesError("bond symbol followed by a directional bond")
            pending = (1, False)
            pending_stereo = ch
            i += 1
        elif ch == "@":
            raise StrayStereo("stereo marker '@' outside brackets")
        elif ch == ".":
            raise MultiFragment("multi-fragment SMILES (dot) not supported")
        elif ch == "%":
            if n - i < 3 or not text[i + 1 : i + 3].isdigit():
                raise SmilesError("'%' must be followed by two digits")
            close_ring(int(text[i + 1 : i + 3]))
            i += 3
        elif ch.isdigit():
            close_ring(int(ch))
            i += 1
        elif ch == "[":
            end = text.find("]", i)
            if end < 0:
                raise SmilesError("unterminated bracket atom")
            attach(_parse_bracket(text[i + 1 : end]))
            i = end + 1
        else:
            raw, width = _parse_organic(text, i)
            attach(raw)
            i += width

    if branch_stack:
        raise UnbalancedParen(f"{len(branch_stack)} unclosed '('")
    if open_rings:
        raise UnclosedRing(f"ring digit(s) {sorted(open_rings)} never closed")
    if pending is not None:
        raise SmilesError("dangling bond symbol at end of input")
    if not atoms:
        raise EmptySmiles("no atoms in input")

    return _build_molecule(atoms, bonds)


def _parse_organic(text: str, i: int) -> tuple[_RawAtom, int]:
    two = text[i : i + 2]
    if two in ("Cl", "Br"):
        return _RawAtom(two, aromatic=False), 2
    ch = text[i]
    if ch in ORGANIC_SUBSET and len(ch) == 1:
        return _RawAtom(ch, aromatic=False), 1
    if ch.islower():
        upper = ch.upper()
        if upper in AROMATIC_ELEMENTS:
            return _RawAtom(upper, aromatic=True), 1
    raise UnknownAtom(f"unrecognized atom symbol at position {i}: {text[i:i+2]!r}")


def _parse_bracket(body: str) -> _RawAtom:
    if not body:
        raise UnknownAtom("empty bracket atom")
    j = 0
    while j < len(body) and body[j].isdigit():  # isotope label, ignored
        j += 1
    rest = body[j:]
    symbol = None
    aromatic = False
    for cand in ("Cl", "Br"):
        if rest.startswith(cand):
            symbol = cand
            j = 2
            break
    if symbol is None:
        if not rest:
            raise UnknownAtom(f"bracket atom without element: [{body}]")
        ch = rest[0]
        if ch.isupper():
            symbol, aromatic, j = ch, False, 1
        elif ch.islower() and ch.upper() in AROMATIC_ELEMENTS:
            symbol, aromatic, j = ch.upper(), True, 1
        else:
            raise UnknownAtom(f"unrecognized element in bracket: [{body}]")
    if symbol not in ORGANIC_SUBSET:
        raise UnknownAtom(f"element {symbol!r} outside the supported set")

    stereo = ""
    if rest[j : j + 2] == "@@":
        stereo, j = "@@", j + 2
    elif rest[j : j + 1] == "@":
        stereo, j = "@", j + 1

    explicit_h = 0
    if rest[j : j + 1] == "H":
        j += 1
        digits = ""
        while j < len(rest) and rest[j].isdigit():
            digits += rest[j]
            j += 1
        explicit_h = int(digits) if digits else 1

    charge = 0
    while j < len(rest) and rest[j] in "+-":
        sign = 1 if rest[j] == "+" else -1
        j += 1
        digits = ""
        while j < len(rest) and rest[j].isdigit():
            digits += rest[j]
            j += 1
        charge += sign * (int(digits) if digits else 1)

    if j != len(rest):
        raise UnknownAtom(f"unparsed bracket content: [{body}]")
    return _RawAtom(symbol, aromatic, charge, explicit_h, stereo)


def _allowed_valences(raw: _RawAtom) -> tuple[int, ...]:
    base = VALENCES[raw.element]
    if raw.charge == 0:
        return base
    # Charge shifts capacity: N+ gains a bond, O- loses one, B- gains one,
    # C loses capacity either way (carbanion keeps a lone pair).
    if raw.element in ("N", "O", "P", "S"):
        shift = raw.charge
    elif raw.element == "B":
        shift = -raw.charge
    else:
        shift = -abs(raw.charge)
    return tuple(max(0, v + shift) for v in base)


def _derive_implicit_h(raw: _RawAtom, bond_sum: float, atom_pos: int) -> int:
    allowed = _allowed_valences(raw)
    need = ceil(bond_sum - 1e-9)
    if raw.explicit_h is not None:
        # Bracket atoms keep their written hydrogen count; only overbonding
        # is an error. Aromatic atoms get a half-bond of slack.
        total = bond_sum + raw.explicit_h
        slack = 1.0 if raw.aromatic else 0.0
        if total > max(allowed) + slack + 1e-9:
            raise ValenceViolation(
                f"atom {atom_pos} ({raw.element}{'+' if raw.charge > 0 else ''}) "
                f"carries {total:g} bonds+H, above its capacity"
            )
        return raw.explicit_h
    if raw.aromatic:
        if bond_sum > max(allowed) + 1.0 + 1e-9:
            raise ValenceViolation(
                f"aromatic atom {atom_pos} ({raw.element.lower()}) is overbonded"
            )
        return max(0, min(allowed) - need)
    for v in allowed:
        if v >= need:
            return v - need
    raise ValenceViolation(
        f"atom {atom_pos} ({raw.element}) has bond order sum {bond_sum:g} "
        f"but allows only {allowed}"
    )


def _build_molecule(
    raws: list[_RawAtom],
    raw_bonds: list[tuple[int, int, tuple[int, bool] | None, str]],
) -> Molecule:
    bonds: list[Bond] = []
    seen_pairs: set[tuple[int, int]] = set()
    for a1, a2, spec, stereo in raw_bonds:
        pair = (min(a1, a2), max(a1, a2))
        if pair in seen_pairs:
            raise SmilesError(f"duplicate bond between atoms {pair}")
        seen_pairs.add(pair)
        if spec is None:
            # Unmarked bond between two aromatic atoms is aromatic.
            if raws[a1].aromatic and raws[a2].aromatic:
                order, aromatic = 1, True
            else:
                order, aromatic = 1, False
        else:
            order, aromatic = spec
        bonds.append(Bond(a1, a2, order, aromatic, stereo))

    # Connectivity check (multi-fragment without dots, e.g. unreachable atoms,
    # cannot actually occur with this grammar, but keep the guarantee explicit).
    if raws:
        reached = {0}
        frontier = [0]
        adj: dict[int, list[int]] = {i: [] for i in range(len(raws))}
        for b in bonds:
            adj[b.a1].append(b.a2)
            adj[b.a2].append(b.a1)
        while frontier:
            cur = frontier.pop()
            for nxt in adj[cur]:
                if nxt not in reached:
                    reached.add(nxt)
                    frontier.append(nxt)
        if len(reached) != len(raws):
            raise MultiFragment("molecule graph is not connected")

    bond_sums = [0.0] * len(raws)
    for b in bonds:
        bond_sums[b.a1] += b.valence_order
        bond_sums[b.a2] += b.valence_order

    atoms = tuple(
        Atom(
            element=raw.element,
            aromatic=raw.aromatic,
            charge=raw.charge,
            implicit_h=_derive_implicit_h(raw, bond_sums[i], i),
            stereo=raw.stereo,
        )
        for i, raw in enumerate(raws)
    )
    rings = tuple(_cycle_basis(len(atoms), bonds))
    return Molecule(atoms=atoms, bonds=tuple(bonds), rings=rings)


def bond_code(bond: Bond) -> int:
    """1/2/3 for plain orders, 4 for aromatic; shared by ranking and hashing."""
    return 4 if bond.aromatic else bond.order


def _cycle_basis(n_atoms: int, bonds: list[Bond]) -> list[tuple[int, ...]]:
    """Fundamental cycles from a BFS spanning tree; one per non-tree edge."""
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n_atoms)]
    for bi, b in enumerate(bonds):
        adj[b.a1].append((b.a2, bi))
        adj[b.a2].append((b.a1, bi))

    parent = [-1] * n_atoms
    depth = [-1] * n_atoms
    tree_edges: set[int] = set()
    order = [0]
    depth[0] = 0
    qi = 0
    while qi < len(order):
        cur = order[qi]
        qi += 1
        for nxt, bi in adj[cur]:
            if depth[nxt] < 0:
                depth[nxt] = depth[cur] + 1
                parent[nxt] = cur
                tree_edges.add(bi)
                order.append(nxt)

    cycles: list[tuple[int, ...]] = []
    for bi, b in enumerate(bonds):
        if bi in tree_edges:
            continue
        u, v = b.a1, b.a2
        path_u, path_v = [u], [v]
        while depth[path_u[-1]] > depth[path_v[-1]]:
            path_u.append(parent[path_u[-1]])
        while depth[path_v[-1]] > depth[path_u[-1]]:
            path_v.append(parent[path_v[-1]])
        while path_u[-1] != path_v[-1]:
            path_u.append(parent[path_u[-1]])
            path_v.append(parent[path_v[-1]])
        cycles.append(tuple(path_u + path_v[-2::-1]))
    return cycles
