"""Bundled data files: graph edge lists, synonym tables, pockets, seeds, profiles.

Everything here ships inside the wheel so the library works offline with no
configuration.  ``fixture_path`` resolves a bundled file to a real filesystem
path; callers that want their own data just pass their own paths instead.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path


class UnknownFixture(KeyError):
    """Requested a bundled file that does not exist."""


def fixture_path(name: str) -> Path:
    """Return the on-disk path of a bundled data file by filename."""
    ref = resources.files(__package__).joinpath(name)
    with resources.as_file(ref) as path:
        if not path.is_file():
            raise UnknownFixture(name)
        return Path(path)


# Named datasets used by the CLI and service.  Each maps a short handle to
# the files that make up one disease neighborhood.
DATASETS = {
    "diabetes": {
        "edges": "diabetes_edges.tsv",
        "synonyms": "diabetes_synonyms.tsv",
    },
    "pancreatic": {
        "edges": "pancreatic_edges.tsv",
        "synonyms": "pancreatic_synonyms.tsv",
    },
}


def dataset_paths(handle: str) -> dict[str, Path]:
    """Resolve a dataset handle to {'edges': Path, 'synonyms': Path}."""
    try:
        spec = DATASETS[handle]
    except KeyError:
        raise UnknownFixture(handle) from None
    return {key: fixture_path(fname) for key, fname in spec.items()}
