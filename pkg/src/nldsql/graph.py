"""In-memory property graph: labeled nodes, typed directed relationships.

The graph is immutable once built (construction is single-threaded, reads are
safe from any number of threads). Node and relationship ids are dense
integers starting at 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import SchemaConflict

Scalar = str | int | float


@dataclass(frozen=True)
class Node:
    node_id: int
    label: str
    properties: dict[str, Scalar]


@dataclass(frozen=True)
class Relationship:
    rel_id: int
    type: str
    source_id: int
    target_id: int
    properties: dict[str, Scalar] = field(default_factory=dict)


class PropertyGraph:
    """Append-only builder that is frozen after loading finishes."""

    def __init__(self):
        self.nodes: list[Node] = []
        self.relationships: list[Relationship] = []
        self._by_label: dict[str, list[int]] = {}
        self._by_type: dict[str, list[int]] = {}

    def add_node(self, label: str, properties: dict[str, Scalar]) -> int:
        node_id = len(self.nodes)
        self.nodes.append(Node(node_id, label, properties))
        self._by_label.setdefault(label, []).append(node_id)
        return node_id

    def add_relationship(
        self,
        rel_type: str,
        source_id: int,
        target_id: int,
        properties: dict[str, Scalar] | None = None,
    ) -> int:
        if not (0 <= source_id < len(self.nodes)):
            raise ValueError(f"source id {source_id} does not reference a node")
        if not (0 <= target_id < len(self.nodes)):
            raise ValueError(f"target id {target_id} does not reference a node")
        rel_id = len(self.relationships)
        self.relationships.append(
            Relationship(rel_id, rel_type, source_id, target_id, properties or {})
        )
        self._by_type.setdefault(rel_type, []).append(rel_id)
        return rel_id

    # -- read side -------------------------------------------------------

    def node(self, node_id: int) -> Node:
        return self.nodes[node_id]

    def nodes_with_label(self, label: str) -> list[int]:
        return self._by_label.get(label, [])

    def relationships_of_type(self, rel_type: str) -> list[Relationship]:
        return [self.relationships[i] for i in self._by_type.get(rel_type, [])]

    def labels(self) -> list[str]:
        return sorted(self._by_label)

    def relationship_types(self) -> list[str]:
        return sorted(self._by_type)

    def __repr__(self):
        return f"PropertyGraph(nodes={len(self.nodes)}, relationships={len(self.relationships)})"


@dataclass(frozen=True)
class GraphSchema:
    """Labels, relationship types with their endpoint labels, and property
    names per label. This is the vocabulary source for the question lexicon."""

    labels: frozenset[str]
    relationship_types: dict[str, tuple[str, str]]
    properties: dict[str, frozenset[str]]

    def label_has_property(self, label: str, prop: str) -> bool:
        return prop in self.properties.get(label, frozenset())

    def types_connecting(self, label_a: str, label_b: str) -> list[str]:
        """Relationship types whose endpoints cover both labels, either way."""
        out = []
        for name, (src, tgt) in self.relationship_types.items():
            if {src, tgt} == {label_a, label_b} or (
                label_a == label_b and src == tgt == label_a
            ):
                out.append(name)
        return sorted(out)

    def type_touches(self, rel_type: str, label: str) -> bool:
        ends = self.relationship_types.get(rel_type)
        return ends is not None and label in ends

    def to_dict(self) -> dict:
        return {
            "labels": sorted(self.labels),
            "relationship_types": {
                t: {"source": s, "target": g}
                for t, (s, g) in sorted(self.relationship_types.items())
            },
            "properties": {l: sorted(ps) for l, ps in sorted(self.properties.items())},
        }


def extract_schema(graph: PropertyGraph) -> GraphSchema:
    """Derive the schema that lists exactly the labels, relationship types and
    properties present in the graph.

    Raises SchemaConflict when one relationship type is observed with two
    different endpoint label pairs.
    """
    labels = set()
    properties: dict[str, set[str]] = {}
    for node in graph.nodes:
        labels.add(node.label)
        properties.setdefault(node.label, set()).update(node.properties)

    rel_types: dict[str, tuple[str, str]] = {}
    for rel in graph.relationships:
        pair = (graph.node(rel.source_id).label, graph.node(rel.target_id).label)
        seen = rel_types.get(rel.type)
        if seen is None:
            rel_types[rel.type] = pair
        elif seen != pair:
            raise SchemaConflict(
                f"relationship type {rel.type} observed with endpoints "
                f"{seen[0]}->{seen[1]} and {pair[0]}->{pair[1]}"
            )

    return GraphSchema(
        labels=frozenset(labels),
        relationship_types=rel_types,
        properties={l: frozenset(ps) for l, ps in properties.items()},
    )


@dataclass(frozen=True)
class GraphSummary:
    node_count: int
    relationship_count: int
    label_counts: dict[str, int]
    type_counts: dict[str, int]

    def to_dict(self) -> dict:
        return {
            "node_count": self.node_count,
            "relationship_count": self.relationship_count,
            "labels": dict(sorted(self.label_counts.items())),
            "types": dict(sorted(self.type_counts.items())),
        }


def graph_summary(graph: PropertyGraph) -> GraphSummary:
    """Counts shown when the user asks about the graph itself."""
    label_counts: dict[str, int] = {}
    for node in graph.nodes:
        label_counts[node.label] = label_counts.get(node.label, 0) + 1
    type_counts: dict[str, int] = {}
    for rel in graph.relationships:
        type_counts[rel.type] = type_counts.get(rel.type, 0) + 1
    return GraphSummary(
        node_count=len(graph.nodes),
        relationship_count=len(graph.relationships),
        label_counts=label_counts,
        type_counts=type_counts,
    )
