"""Binding-pocket descriptions and the one-pocket-per-line file format."""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path


class MalformedPocket(ValueError):
    pass


@dataclass(frozen=True)
class Pocket:
    """A pocket is reduced to what the surrogate score needs: counts of
    complementary sites and a seed that individualizes the pocket's noise
    term. Coordinates are carried through for reporting only."""

    center: tuple[float, float, float]
    polar_sites: int
    acceptor_sites: int
    seed: int

    def __post_init__(self):
        if not all(math.isfinite(c) for c in self.center):
            raise MalformedPocket(f"non-finite pocket center {self.center}")
        if self.polar_sites < 0 or self.acceptor_sites < 0:
            raise MalformedPocket("site counts must be >= 0")


def load_pockets(path: str | Path) -> list[Pocket]:
    """Read pockets from a text file, one per line:
    `x y z polar_sites acceptor_sites seed` (whitespace separated,
    # starts a comment)."""
    pockets = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 6:
            raise MalformedPocket(f"{path}:{lineno}: expected 6 fields, got {len(parts)}")
        try:
            x, y, z = (float(v) for v in parts[:3])
            polar, acceptor, seed = (int(v) for v in parts[3:])
        except ValueError as exc:
            raise MalformedPocket(f"{path}:{lineno}: {exc}") from None
        pockets.append(Pocket((x, y, z), polar, acceptor, seed))
    return pockets
