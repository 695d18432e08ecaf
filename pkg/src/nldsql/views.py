"""Named in-memory graph views and their deterministic memory estimates.

A view projects one node label and one relationship type out of the graph.
Membership rule: nodes are all nodes of the label; relationships are the
edges of the type whose source and target are both members (cross-label
endpoints are dropped). UNDIRECTED views store a symmetric adjacency but
report the underlying relationship count.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

from .errors import ViewDefinitionError, ViewExists, ViewNotFound
from .graph import PropertyGraph

ORIENTATIONS = ("NATURAL", "UNDIRECTED")

# invented but fixed cost model: per-node record, per-relationship record,
# one float score per node; max is twice min
BYTES_PER_NODE = 40
BYTES_PER_REL = 24
BYTES_PER_SCORE = 8


class GraphView:
    def __init__(
        self,
        name: str,
        node_label: str,
        rel_type: str,
        orientation: str,
        node_ids: list[int],
        edges: list[tuple[int, int]],
    ):
        """`node_ids` maps dense index -> original node id; `edges` hold dense
        index pairs, one entry per underlying relationship."""
        if orientation not in ORIENTATIONS:
            raise ViewDefinitionError(f"unknown orientation {orientation!r}")
        self.name = name
        self.node_label = node_label
        self.rel_type = rel_type
        self.orientation = orientation
        self.node_ids = list(node_ids)
        self.index = {node_id: i for i, node_id in enumerate(self.node_ids)}
        self.edges = [tuple(e) for e in edges]

    @property
    def node_count(self) -> int:
        return len(self.node_ids)

    @property
    def relationship_count(self) -> int:
        return len(self.edges)

    def out_adjacency(self) -> list[list[int]]:
        """Directed adjacency used by score propagation; UNDIRECTED views
        traverse every edge both ways (self-loops once)."""
        adjacency = [[] for _ in self.node_ids]
        for u, v in self.edges:
            adjacency[u].append(v)
            if self.orientation == "UNDIRECTED" and u != v:
                adjacency[v].append(u)
        return adjacency

    def symmetric_adjacency(self) -> list[list[int]]:
        """Neighbor lists ignoring direction, used by community detection."""
        adjacency = [[] for _ in self.node_ids]
        for u, v in self.edges:
            adjacency[u].append(v)
            if u != v:
                adjacency[v].append(u)
        return adjacency


def create_view(
    name: str,
    node_label: str,
    rel_type: str,
    orientation: str,
    graph: PropertyGraph,
) -> GraphView:
    """Project a view out of the graph. Raises ViewDefinitionError for a
    label or relationship type the graph does not contain."""
    if node_label not in graph.labels():
        raise ViewDefinitionError(f"unknown node label {node_label!r}")
    if rel_type not in graph.relationship_types():
        raise ViewDefinitionError(f"unknown relationship type {rel_type!r}")
    node_ids = list(graph.nodes_with_label(node_label))
    index = {node_id: i for i, node_id in enumerate(node_ids)}
    edges = [
        (index[rel.source_id], index[rel.target_id])
        for rel in graph.relationships_of_type(rel_type)
        if rel.source_id in index and rel.target_id in index
    ]
    return GraphView(name, node_label, rel_type, orientation, node_ids, edges)


class ViewCatalog:
    """Shared registry of views: serialized create/lookup, one per session."""

    def __init__(self):
        self._views: dict[str, GraphView] = {}
        self._lock = threading.Lock()

    def create(self, name, node_label, rel_type, orientation, graph) -> GraphView:
        with self._lock:
            if name in self._views:
                raise ViewExists(f"graph view {name!r} already exists")
            view = create_view(name, node_label, rel_type, orientation, graph)
            self._views[name] = view
            return view

    def get(self, name: str) -> GraphView:
        with self._lock:
            view = self._views.get(name)
        if view is None:
            raise ViewNotFound(f"no graph view named {name!r}")
        return view

    def __contains__(self, name: str) -> bool:
        with self._lock:
            return name in self._views

    def names(self) -> frozenset[str]:
        with self._lock:
            return frozenset(self._views)


@dataclass(frozen=True)
class MemoryEstimate:
    node_count: int
    relationship_count: int
    bytes_min: int
    bytes_max: int
    required_memory: str

    def to_dict(self) -> dict:
        return {
            "nodeCount": self.node_count,
            "relationshipCount": self.relationship_count,
            "bytesMin": self.bytes_min,
            "bytesMax": self.bytes_max,
            "requiredMemory": self.required_memory,
        }


def estimate_memory(view: GraphView, algorithm=None, params=None) -> MemoryEstimate:
    """Deterministic size estimate of running an algorithm on the view.

    The cost model depends only on the view's size; `algorithm` and `params`
    (writeProperty and friends) are accepted for call-shape compatibility.
    """
    n, r = view.node_count, view.relationship_count
    bytes_min = BYTES_PER_NODE * n + BYTES_PER_REL * r + BYTES_PER_SCORE * n
    bytes_max = 2 * bytes_min
    return MemoryEstimate(
        node_count=n,
        relationship_count=r,
        bytes_min=bytes_min,
        bytes_max=bytes_max,
        required_memory=f"[{bytes_min} Bytes ... {bytes_max} Bytes]",
    )
