"""Deterministic 64-bit hashing shared across the whole pipeline.

Every place the code needs a reproducible pseudo-random value (fingerprint
bits, canonical-rank seeds, docking jitter, tie-breaks) goes through this
module, never through Python's salted ``hash()``.

The mix is FNV-1a with 64-bit wraparound, applied to a byte serialization
of the inputs:

* offset basis ``0xcbf29ce484222325``, prime ``0x100000001b3``
* ``str`` parts contribute their UTF-8 bytes
* ``int`` parts contribute 8 bytes, little-endian, two's-complement
* every part is terminated by a single ``0xff`` byte so that
  ``("ab", "c")`` and ``("a", "bc")`` differ

The same recipe is easy to reproduce in any language with 64-bit integer
arithmetic, which keeps browser-side code bit-compatible.
"""

from __future__ import annotations

FNV_OFFSET = 0xCBF29CE484222325
FNV_PRIME = 0x100000001B3
_MASK = 0xFFFFFFFFFFFFFFFF


def hash64(*parts: str | int) -> int:
    """Hash a sequence of strings and integers to an unsigned 64-bit value."""
    h = FNV_OFFSET
    for part in parts:
        if isinstance(part, bool):  # bool is an int subclass; keep it explicit
            data = (b"\x01" if part else b"\x00")
        elif isinstance(part, int):
            data = (part & _MASK).to_bytes(8, "little")
        elif isinstance(part, str):
            data = part.encode("utf-8")
        else:
            raise TypeError(f"hash64 accepts str and int parts, got {type(part).__name__}")
        for byte in data:
            h ^= byte
            h = (h * FNV_PRIME) & _MASK
        h ^= 0xFF
        h = (h * FNV_PRIME) & _MASK
    return h


def jitter(*parts: str | int) -> float:
    """Map a hash of the parts linearly onto [-1.0, 1.0).

    h / 2**63 - 1 where h is the unsigned 64-bit hash, so the value is
    uniform over representable outputs and reproducible everywhere.
    """
    return hash64(*parts) / 2.0**63 - 1.0
