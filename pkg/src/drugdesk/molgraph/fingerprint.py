"""Circular (Morgan-style) fingerprints and Tanimoto similarity.

Each atom contributes one environment hash per radius 0..r; hashes are
folded modulo the bit width. The per-atom invariant and the neighborhood
mix both go through the documented 64-bit hash, so fingerprints are
bit-identical across processes and languages.
"""

from __future__ import annotations

from dataclasses import dataclass

from drugdesk.hashing import hash64
from drugdesk.molgraph.parser import Molecule, bond_code


class WidthMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Fingerprint:
    bits: int
    width: int = 2048

    def __post_init__(self):
        if self.width <= 0:
            raise ValueError("fingerprint width must be positive")
        if self.bits < 0 or self.bits >> self.width:
            raise ValueError("bit pattern exceeds declared width")
        object.__setattr__(self, "_popcount", self.bits.bit_count())

    @property
    def popcount(self) -> int:
        return self._popcount  # type: ignore[attr-defined]

    def indices(self) -> tuple[int, ...]:
        """Positions of set bits, ascending."""
        return tuple(i for i in range(self.width) if (self.bits >> i) & 1)

    def to_hex(self) -> str:
        """Big-endian hex rendering, fixed width (width/4 characters)."""
        return format(self.bits, f"0{self.width // 4}x")

    @classmethod
    def from_hex(cls, text: str, width: int = 2048) -> "Fingerprint":
        return cls(int(text, 16), width)


def morgan_fingerprint(mol: Molecule, radius: int = 2, nbits: int = 2048) -> Fingerprint:
    adj = mol.neighbors()
    ring_atoms = mol.ring_atoms()
    invariants = [
        hash64(
            "atom",
            atom.element,
            int(atom.aromatic),
            atom.charge,
            atom.implicit_h,
            len(adj[i]),
            int(i in ring_atoms),
        )
        for i, atom in enumerate(mol.atoms)
    ]

    acc = 0
    for h in invariants:
        acc |= 1 << (h % nbits)
    for r in range(1, radius + 1):
        fresh = []
        for i in range(len(mol.atoms)):
            parts: list[str | int] = ["env", r, invariants[i]]
            for code, nbr_inv in sorted((bond_code(b), invariants[j]) for j, b in adj[i]):
                parts.append(code)
                parts.append(nbr_inv)
            fresh.append(hash64(*parts))
        invariants = fresh
        for h in invariants:
            acc |= 1 << (h % nbits)
    return Fingerprint(acc, nbits)


def tanimoto(a: Fingerprint, b: Fingerprint) -> float:
    if a.width != b.width:
        raise WidthMismatch(f"fingerprint widths differ: {a.width} vs {b.width}")
    union = (a.bits | b.bits).bit_count()
    if union == 0:
        return 1.0
    return (a.bits & b.bits).bit_count() / union
