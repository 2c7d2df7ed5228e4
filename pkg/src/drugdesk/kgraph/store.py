"""Typed property-graph store: ingest, indexes, schema summary.

The store is immutable after ingest. Edge direction follows the data file
(source -> target) and is preserved for reporting, but traversal and
degree counting treat edges as undirected, matching how the relation
vocabulary names both endpoint types.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from drugdesk.kgraph.schema import NODE_TYPE_SET, RELATION_SET


class KgraphError(ValueError):
    pass


class MalformedRow(KgraphError):
    def __init__(self, path, lineno, message):
        super().__init__(f"{path}:{lineno}: {message}")
        self.lineno = lineno


class UnknownNodeType(KgraphError):
    pass


class UnknownRelation(KgraphError):
    pass


@dataclass(frozen=True)
class Node:
    id: str
    type: str
    name: str


@dataclass(frozen=True)
class Edge:
    source: str
    relation: str
    target: str
    multiplicity: int = 1


def node_id(node_type: str, name: str) -> str:
    return f"{node_type}:{name}"


@dataclass
class GraphStore:
    nodes: dict[str, Node] = field(default_factory=dict)
    edges: list[Edge] = field(default_factory=list)
    name_index: dict[str, list[str]] = field(default_factory=dict)
    synonyms: dict[str, list[str]] = field(default_factory=dict)
    # node id -> list of (edge, other node id); undirected incidence
    incidence: dict[str, list[tuple[Edge, str]]] = field(default_factory=dict)

    def node_by_name(self, node_type: str, name: str) -> Node | None:
        return self.nodes.get(node_id(node_type, name))

    def neighbors(self, nid: str) -> list[tuple[Edge, str]]:
        return self.incidence.get(nid, [])

    def degree(self, nid: str, relation: str | None = None,
               counterpart_type: str | None = None) -> int:
        """Number of incident edges, optionally restricted by relation and
        by the type of the node at the other end."""
        count = 0
        for edge, other in self.neighbors(nid):
            if relation is not None and edge.relation != relation:
                continue
            if counterpart_type is not None and self.nodes[other].type != counterpart_type:
                continue
            count += 1
        return count


def ingest_edges(edge_path: str | Path, synonym_path: str | Path | None = None) -> GraphStore:
    """Load a `source_type<TAB>source_name<TAB>relation<TAB>target_type<TAB>target_name`
    TSV (and optional `alias<TAB>canonical` synonym TSV) into a GraphStore.

    Duplicate edges collapse into one record with multiplicity.
    """
    store = GraphStore()
    edge_index: dict[tuple[str, str, str], int] = {}

    def ensure_node(node_type: str, name: str, path, lineno) -> str:
        if node_type not in NODE_TYPE_SET:
            raise UnknownNodeType(f"{path}:{lineno}: unknown node type {node_type!r}")
        nid = node_id(node_type, name)
        if nid not in store.nodes:
            store.nodes[nid] = Node(id=nid, type=node_type, name=name)
            store.name_index.setdefault(name.lower(), []).append(nid)
        return nid

    edge_path = Path(edge_path)
    for lineno, line in enumerate(edge_path.read_text().splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.rstrip("\n").split("\t")
        if len(parts) != 5:
            raise MalformedRow(edge_path, lineno, f"expected 5 tab-separated fields, got {len(parts)}")
        source_type, source_name, relation, target_type, target_name = parts
        if not source_name or not target_name:
            raise MalformedRow(edge_path, lineno, "empty node name")
        if relation not in RELATION_SET:
            raise UnknownRelation(f"{edge_path}:{lineno}: unknown relation {relation!r}")
        src = ensure_node(source_type, source_name, edge_path, lineno)
        tgt = ensure_node(target_type, target_name, edge_path, lineno)
        key = (src, relation, tgt)
        if key in edge_index:
            pos = edge_index[key]
            old = store.edges[pos]
            store.edges[pos] = Edge(old.source, old.relation, old.target, old.multiplicity + 1)
        else:
            edge_index[key] = len(store.edges)
            store.edges.append(Edge(src, relation, tgt))

    for ids in store.name_index.values():
        ids.sort()
    for edge in store.edges:
        store.incidence.setdefault(edge.source, []).append((edge, edge.target))
        if edge.target != edge.source:
            store.incidence.setdefault(edge.target, []).append((edge, edge.source))

    if synonym_path is not None:
        synonym_path = Path(synonym_path)
        for lineno, line in enumerate(synonym_path.read_text().splitlines(), start=1):
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.rstrip("\n").split("\t")
            if len(parts) != 2:
                raise MalformedRow(synonym_path, lineno, "expected alias<TAB>canonical")
            alias, canonical = parts[0].strip().lower(), parts[1].strip()
            if not alias or not canonical:
                raise MalformedRow(synonym_path, lineno, "empty alias or canonical name")
            bucket = store.synonyms.setdefault(alias, [])
            if canonical not in bucket:
                bucket.append(canonical)

    return store


def get_graph_schema(store: GraphStore) -> dict:
    """Node types with counts; relations with counts (multiplicity included)
    and observed endpoint-type signatures."""
    node_counts: dict[str, int] = {}
    for node in store.nodes.values():
        node_counts[node.type] = node_counts.get(node.type, 0) + 1

    relations: dict[str, dict] = {}
    for edge in store.edges:
        entry = relations.setdefault(edge.relation, {"count": 0, "signatures": {}})
        entry["count"] += edge.multiplicity
        sig = (store.nodes[edge.source].type, store.nodes[edge.target].type)
        entry["signatures"][sig] = entry["signatures"].get(sig, 0) + edge.multiplicity

    return {
        "node_types": dict(sorted(node_counts.items())),
        "relations": {
            rel: {
                "count": data["count"],
                "signatures": {
                    f"{src}->{tgt}": n
                    for (src, tgt), n in sorted(data["signatures"].items())
                },
            }
            for rel, data in sorted(relations.items())
        },
    }
