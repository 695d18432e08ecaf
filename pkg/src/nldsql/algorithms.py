"""Graph analytics over views: PageRank, label propagation, degree centrality.

PageRank runs synchronous power iterations with uniform start and uniform
redistribution of dangling mass, so scores always sum to 1. Label propagation
runs synchronous updates where each node adopts the most frequent label among
its neighbors and itself (the node's own vote keeps the synchronous schedule
from oscillating on bipartite structures), ties broken by smallest label.
Both are deterministic.
"""

from __future__ import annotations

import numpy as np

from .graph import PropertyGraph
from .table import ResultTable
from .views import GraphView

PAGERANK_TOLERANCE = 1e-7  # L1 change between iterations


def pagerank(
    view: GraphView, max_iterations: int = 20, damping: float = 0.85
) -> list[tuple[int, float]]:
    """(node id, score) pairs in the view's node order."""
    if max_iterations < 1:
        raise ValueError("max_iterations must be >= 1")
    if not 0 < damping < 1:
        raise ValueError("damping must be strictly between 0 and 1")
    n = view.node_count
    if n == 0:
        return []

    sources, targets = [], []
    for u, neighbors in enumerate(view.out_adjacency()):
        for v in neighbors:
            sources.append(u)
            targets.append(v)
    sources = np.asarray(sources, dtype=np.int64)
    targets = np.asarray(targets, dtype=np.int64)
    out_degree = np.bincount(sources, minlength=n)
    dangling = out_degree == 0

    scores = np.full(n, 1.0 / n)
    for _ in range(max_iterations):
        if len(sources):
            incoming = np.bincount(
                targets, weights=scores[sources] / out_degree[sources], minlength=n
            )
        else:
            incoming = np.zeros(n)
        dangling_mass = scores[dangling].sum()
        updated = (1.0 - damping) / n + damping * (incoming + dangling_mass / n)
        delta = np.abs(updated - scores).sum()
        scores = updated
        if delta < PAGERANK_TOLERANCE:
            break

    return [(view.node_ids[i], float(scores[i])) for i in range(n)]


def label_propagation(
    view: GraphView, max_iterations: int = 10
) -> list[tuple[int, int]]:
    """(node id, community id) pairs; community ids are surviving node ids.

    Synchronous majority dynamics always admit period-2 cycles (a single
    undirected edge already swaps labels forever), so two guards keep the
    schedule deterministic AND convergent: the node's own label gets one vote
    alongside its neighbors, and a detected period-2 oscillation is resolved
    by merging the two alternating states elementwise with min before
    iterating on.
    """
    if max_iterations < 1:
        raise ValueError("max_iterations must be >= 1")
    n = view.node_count
    if n == 0:
        return []

    neighbors = view.symmetric_adjacency()
    labels = list(view.node_ids)  # initial label: the node's own id
    previous = None

    for _ in range(max_iterations):
        updated = []
        for i in range(n):
            if not neighbors[i]:
                updated.append(labels[i])  # isolated nodes keep their label
                continue
            counts = {labels[i]: 1}
            for j in neighbors[i]:
                counts[labels[j]] = counts.get(labels[j], 0) + 1
            best_count = max(counts.values())
            updated.append(min(l for l, c in counts.items() if c == best_count))
        if updated == labels:
            break
        if previous is not None and updated == previous:
            updated = [min(a, b) for a, b in zip(labels, updated)]
            previous = None
        else:
            previous = labels
        labels = updated

    return [(view.node_ids[i], labels[i]) for i in range(n)]


def degree_centrality(graph: PropertyGraph, label: str, rel_type: str) -> ResultTable:
    """Incident-relationship counts for nodes of the label, matching the
    undirected pattern (n:L)-[r:T]-(): nodes without a match produce no row.
    Ordered by degree descending, ties by node id ascending."""
    counts: dict[int, int] = {}
    for rel in graph.relationships_of_type(rel_type):
        if graph.node(rel.source_id).label == label:
            counts[rel.source_id] = counts.get(rel.source_id, 0) + 1
        if rel.target_id != rel.source_id and graph.node(rel.target_id).label == label:
            counts[rel.target_id] = counts.get(rel.target_id, 0) + 1
    rows = sorted(counts.items(), key=lambda item: (-item[1], item[0]))
    return ResultTable(columns=["id(n)", "degree"], rows=rows)
