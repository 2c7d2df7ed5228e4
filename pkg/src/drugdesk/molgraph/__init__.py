"""Molecular graphs: SMILES parsing, canonical forms, descriptors, fingerprints."""

from drugdesk.molgraph.parser import (
    Atom,
    Bond,
    EmptySmiles,
    Molecule,
    MultiFragment,
    SmilesError,
    StrayStereo,
    UnbalancedParen,
    UnclosedRing,
    UnknownAtom,
    ValenceViolation,
    parse_smiles,
)
from drugdesk.molgraph.canonical import canonical_form, canonical_smiles, write_smiles
from drugdesk.molgraph.descriptors import (
    ATOMIC_WEIGHTS,
    DEFAULT_LOGP_TABLE,
    DescriptorSet,
    descriptors,
    load_logp_table,
)
from drugdesk.molgraph.fingerprint import (
    Fingerprint,
    WidthMismatch,
    morgan_fingerprint,
    tanimoto,
)

__all__ = [
    "Atom",
    "Bond",
    "Molecule",
    "SmilesError",
    "EmptySmiles",
    "UnclosedRing",
    "UnbalancedParen",
    "UnknownAtom",
    "ValenceViolation",
    "StrayStereo",
    "MultiFragment",
    "parse_smiles",
    "canonical_form",
    "canonical_smiles",
    "write_smiles",
    "DescriptorSet",
    "descriptors",
    "load_logp_table",
    "ATOMIC_WEIGHTS",
    "DEFAULT_LOGP_TABLE",
    "Fingerprint",
    "WidthMismatch",
    "morgan_fingerprint",
    "tanimoto",
]
