"""Textual path-pattern mini-grammar for the CLI and service.

    (Disease:"pancreatic adenocarcinoma")-[DISEASE_PROTEIN]->(Gene_protein)

Pattern  := Node (Hop Node)+
Node     := '(' [Type] [':' '"' Name '"'] ')'
Hop      := '-[' RelSpec ']->'
RelSpec  := '*' | Relation ('|' Relation)*

'*' is a wildcard hop. Only the first node may carry a name; it selects the
start nodes. Later node types act as per-hop type constraints.
"""

from __future__ import annotations

import re
from dataclasses import dataclass


class PatternSyntaxError(ValueError):
    pass


@dataclass(frozen=True)
class PathPattern:
    start_type: str | None
    start_name: str | None
    relations: tuple[frozenset[str] | None, ...]
    node_types: tuple[str | None, ...]  # one per hop, type after that hop


_NODE = re.compile(r'\(\s*([A-Za-z_][A-Za-z_0-9]*)?\s*(?::\s*"([^"]*)")?\s*\)')
_HOP = re.compile(r"-\[\s*([^\]]+?)\s*\]->")


def parse_pattern(text: str) -> PathPattern:
    text = text.strip()
    pos = 0
    node = _NODE.match(text, pos)
    if not node:
        raise PatternSyntaxError(f"expected a node group at position {pos}")
    start_type, start_name = node.group(1), node.group(2)
    pos = node.end()

    relations: list[frozenset[str] | None] = []
    node_types: list[str | None] = []
    while pos < len(text):
        hop = _HOP.match(text, pos)
        if not hop:
            raise PatternSyntaxError(f"expected '-[REL]->' at position {pos}")
        spec = hop.group(1)
        if spec == "*":
            relations.append(None)
        else:
            rels = frozenset(part.strip() for part in spec.split("|") if part.strip())
            if not rels:
                raise PatternSyntaxError(f"empty relation spec at position {pos}")
            relations.append(rels)
        pos = hop.end()
        node = _NODE.match(text, pos)
        if not node:
            raise PatternSyntaxError(f"expected a node group at position {pos}")
        if node.group(2) is not None:
            raise PatternSyntaxError("only the first node may carry a name")
        node_types.append(node.group(1))
        pos = node.end()

    if not relations:
        raise PatternSyntaxError("pattern needs at least one hop")
    return PathPattern(
        start_type=start_type,
        start_name=start_name,
        relations=tuple(relations),
        node_types=tuple(node_types),
    )
