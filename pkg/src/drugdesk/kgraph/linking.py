"""Entity linking: free text to graph nodes.

Four steps: tokenize and lowercase; expand through the synonym table;
exact-name match, then substring match; optional node-type filter. Bare
tokens participate in exact matching and synonym lookup but never in
substring matching, so short words cannot flood the contains list.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from drugdesk.kgraph.store import GraphStore, Node


@dataclass(frozen=True)
class LinkResult:
    exact_matches: tuple[Node, ...]
    contains_matches: tuple[Node, ...]
    expanded_terms: tuple[str, ...]


def _normalize(text: str) -> str:
    return re.sub(r"[^a-z0-9 ]+", " ", text.lower()).strip()


def _tokens(text: str) -> list[str]:
    return [t for t in _normalize(text).split() if t]


def entity_linking(
    query: str,
    store: GraphStore,
    node_types: tuple[str, ...] | None = None,
) -> LinkResult:
    if not query or not query.strip():
        return LinkResult((), (), ())

    full = re.sub(r"\s+", " ", _normalize(query))
    tokens = _tokens(query)

    canonical_terms: list[str] = []
    for probe in [full, *tokens]:
        for canonical in store.synonyms.get(probe, []):
            lowered = canonical.lower()
            if lowered not in canonical_terms:
                canonical_terms.append(lowered)

    exact_terms = {full, *tokens, *canonical_terms}
    contains_terms = [full, *canonical_terms]  # no bare tokens here

    def admitted(node: Node) -> bool:
        return node_types is None or node.type in node_types

    exact: list[Node] = []
    seen: set[str] = set()
    for term in sorted(exact_terms):
        for nid in store.name_index.get(term, []):
            node = store.nodes[nid]
            if admitted(node) and nid not in seen:
                seen.add(nid)
                exact.append(node)

    contains: list[Node] = []
    for node in store.nodes.values():
        if node.id in seen or not admitted(node):
            continue
        name = node.name.lower()
        if any(term and term in name for term in contains_terms):
            contains.append(node)

    order = lambda node: (node.type, node.name)
    return LinkResult(
        exact_matches=tuple(sorted(exact, key=order)),
        contains_matches=tuple(sorted(contains, key=order)),
        expanded_terms=tuple(sorted({full, *tokens, *canonical_terms})),
    )
