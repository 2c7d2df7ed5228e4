"""Bounded multi-hop path search and relation-absence filtering.

Paths are simple (no repeated nodes) and at most three hops. A search whose
strict pass returns nothing is retried once with every relation constraint
relaxed to a wildcard; the result carries relaxed=True so callers can tell.
"""

from __future__ import annotations

from dataclasses import dataclass

from drugdesk.kgraph.store import GraphStore

MAX_HOPS = 3


class UnknownStartNode(ValueError):
    pass


class PatternTooLong(ValueError):
    pass


@dataclass(frozen=True)
class EvidencePath:
    nodes: tuple[str, ...]      # node ids, start first
    relations: tuple[str, ...]  # one per hop

    @property
    def hops(self) -> int:
        return len(self.relations)

    def __post_init__(self):
        if len(self.nodes) != len(self.relations) + 1:
            raise ValueError("node count must be hop count + 1")
        if len(self.relations) > MAX_HOPS:
            raise ValueError(f"paths are bounded at {MAX_HOPS} hops")


@dataclass(frozen=True)
class PathSearchResult:
    paths: tuple[EvidencePath, ...]
    relaxed: bool


def find_related_paths(
    start_ids: list[str],
    pattern: list[frozenset[str] | set[str] | str | None],
    store: GraphStore,
    node_types: list[str | None] | None = None,
) -> PathSearchResult:
    """All simple paths from the start nodes matching the relation pattern.

    pattern: one entry per hop; each is a relation name, a set of allowed
    relation names, or None for a wildcard. node_types optionally constrains
    the node type after each hop (same length as pattern). Deterministic
    ordering: by the tuple of node names along the path.
    """
    if not 1 <= len(pattern) <= MAX_HOPS:
        raise PatternTooLong(f"pattern must have 1..{MAX_HOPS} hops, got {len(pattern)}")
    if node_types is not None and len(node_types) != len(pattern):
        raise ValueError("node_types must align with pattern hops")
    for nid in start_ids:
        if nid not in store.nodes:
            raise UnknownStartNode(f"start node {nid!r} not in store")

    constraints = [
        None if hop is None else frozenset([hop] if isinstance(hop, str) else hop)
        for hop in pattern
    ]

    def run(active: list[frozenset[str] | None]) -> list[EvidencePath]:
        found: list[EvidencePath] = []
        for start in start_ids:
            stack: list[tuple[tuple[str, ...], tuple[str, ...]]] = [((start,), ())]
            while stack:
                nodes, rels = stack.pop()
                depth = len(rels)
                if depth == len(active):
                    found.append(EvidencePath(nodes, rels))
                    continue
                allowed = active[depth]
                for edge, other in store.neighbors(nodes[-1]):
                    if other in nodes:
                        continue
                    if allowed is not None and edge.relation not in allowed:
                        continue
                    if node_types is not None and node_types[depth] is not None \
                            and store.nodes[other].type != node_types[depth]:
                        continue
                    stack.append((nodes + (other,), rels + (edge.relation,)))
        names = lambda p: tuple(store.nodes[n].name for n in p.nodes)
        return sorted(set(found), key=lambda p: (p.hops, names(p), p.relations))

    strict = run(constraints)
    if strict:
        return PathSearchResult(tuple(strict), relaxed=False)
    relaxed = run([None] * len(constraints))
    return PathSearchResult(tuple(relaxed), relaxed=True)


def filter_nodes_without_relation(
    node_ids: list[str],
    forbidden_relation: str,
    counterpart_type: str,
    store: GraphStore,
) -> list[str]:
    """Subset of node_ids with no incident edge of the forbidden relation
    toward the counterpart type; input order preserved."""
    kept = []
    for nid in node_ids:
        if nid not in store.nodes:
            raise UnknownStartNode(f"node {nid!r} not in store")
        if store.degree(nid, forbidden_relation, counterpart_type) == 0:
            kept.append(nid)
    return kept
