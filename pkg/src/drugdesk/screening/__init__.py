"""Surrogate docking scores, library screening, and screening analytics."""

from drugdesk.screening.adapter import (
    AdapterParseError,
    ExternalCommandTemplate,
    parse_engine_stdout,
)
from drugdesk.screening.analytics import (
    SCAFFOLD_HOP_CUTOFF,
    EmptyReference,
    EnrichmentPoint,
    NoActives,
    NoveltyRecord,
    ZeroAtoms,
    enrichment_analysis,
    ligand_efficiency,
    novelty_report,
    write_enrichment_csv,
)
from drugdesk.screening.library import (
    BadLabel,
    EmptyLibrary,
    ScoredCandidate,
    ScreenResult,
    SkipRecord,
    load_library,
    screen_library,
    write_ranked_csv,
)
from drugdesk.screening.pocket import MalformedPocket, Pocket, load_pockets
from drugdesk.screening.surrogate import surrogate_affinity

__all__ = [
    "AdapterParseError",
    "BadLabel",
    "EmptyLibrary",
    "EmptyReference",
    "EnrichmentPoint",
    "ExternalCommandTemplate",
    "MalformedPocket",
    "NoActives",
    "NoveltyRecord",
    "Pocket",
    "SCAFFOLD_HOP_CUTOFF",
    "ScoredCandidate",
    "ScreenResult",
    "SkipRecord",
    "ZeroAtoms",
    "enrichment_analysis",
    "ligand_efficiency",
    "load_library",
    "load_pockets",
    "novelty_report",
    "parse_engine_stdout",
    "screen_library",
    "surrogate_affinity",
    "write_enrichment_csv",
    "write_ranked_csv",
]
