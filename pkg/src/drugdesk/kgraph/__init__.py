"""Biomedical knowledge graph: store, linking, paths, ranking."""

from drugdesk.kgraph.schema import NODE_TYPES, RELATIONS, NODE_TYPE_SET, RELATION_SET
from drugdesk.kgraph.store import (
    Edge,
    GraphStore,
    KgraphError,
    MalformedRow,
    Node,
    UnknownNodeType,
    UnknownRelation,
    get_graph_schema,
    ingest_edges,
    node_id,
)
from drugdesk.kgraph.linking import LinkResult, entity_linking
from drugdesk.kgraph.paths import (
    MAX_HOPS,
    EvidencePath,
    PathSearchResult,
    PatternTooLong,
    UnknownStartNode,
    filter_nodes_without_relation,
    find_related_paths,
)
from drugdesk.kgraph.critic import TargetCandidate, critic_rank, load_pdb_map
from drugdesk.kgraph.pattern import PathPattern, PatternSyntaxError, parse_pattern

__all__ = [
    "NODE_TYPES",
    "RELATIONS",
    "NODE_TYPE_SET",
    "RELATION_SET",
    "Node",
    "Edge",
    "GraphStore",
    "KgraphError",
    "MalformedRow",
    "UnknownNodeType",
    "UnknownRelation",
    "ingest_edges",
    "get_graph_schema",
    "node_id",
    "LinkResult",
    "entity_linking",
    "EvidencePath",
    "PathSearchResult",
    "MAX_HOPS",
    "PatternTooLong",
    "UnknownStartNode",
    "find_related_paths",
    "filter_nodes_without_relation",
    "TargetCandidate",
    "critic_rank",
    "load_pdb_map",
    "PathPattern",
    "PatternSyntaxError",
    "parse_pattern",
]
