import random

import numpy as np
import pytest

from nldsql import GraphView, PropertyGraph, degree_centrality, label_propagation, pagerank

# ---------------------------------------------------------------------------
# independent oracles
# ---------------------------------------------------------------------------


def dense_pagerank_oracle(n, edges, orientation, max_iterations, damping):
    """Dense-matrix power iteration built straight from the raw edge list;
    shares no traversal code with the engine."""
    if n == 0:
        return np.zeros(0)
    counts = np.zeros((n, n))
    for u, v in edges:
        counts[v, u] += 1.0
        if orientation == "UNDIRECTED" and u != v:
            counts[u, v] += 1.0
    out_degree = counts.sum(axis=0)
    transition = np.zeros((n, n))
    for u in range(n):
        if out_degree[u] > 0:
            transition[:, u] = counts[:, u] / out_degree[u]
        else:
            transition[:, u] = 1.0 / n  # dangling: uniform redistribution
    scores = np.full(n, 1.0 / n)
    for _ in range(max_iterations):
        updated = (1.0 - damping) / n + damping * transition.dot(scores)
        if np.abs(updated - scores).sum() < 1e-7:
            scores = updated
            break
        scores = updated
    return scores


def lp_reference(n, edges, max_iterations):
    """Step-by-step reference for the propagation rule: synchronous sweeps,
    own label votes, smallest label on ties, period-2 states merged
    elementwise-min."""
    neighbors = [[] for _ in range(n)]
    for u, v in edges:
        neighbors[u].append(v)
        if u != v:
            neighbors[v].append(u)
    labels = list(range(n))
    previous = None
    for _ in range(max_iterations):
        from collections import Counter

        updated = []
        for i in range(n):
            if not neighbors[i]:
                updated.append(labels[i])
                continue
            counter = Counter(labels[j] for j in neighbors[i])
            counter[labels[i]] += 1
            top = max(counter.values())
            updated.append(min(l for l, c in counter.items() if c == top))
        if updated == labels:
            break
        if previous is not None and updated == previous:
            updated = [min(a, b) for a, b in zip(labels, updated)]
            previous = None
        else:
            previous = labels
        labels = updated
    return labels


def brute_force_degrees(graph, label, rel_type):
    rows = []
    for node in graph.nodes:
        if node.label != label:
            continue
        degree = sum(
            1
            for rel in graph.relationships
            if rel.type == rel_type
            and (rel.source_id == node.node_id or rel.target_id == node.node_id)
        )
        if degree > 0:
            rows.append((node.node_id, degree))
    return sorted(rows, key=lambda r: (-r[1], r[0]))


def random_view(seed, max_nodes=50, orientation=None):
    rng = random.Random(seed)
    n = rng.randint(1, max_nodes)
    m = rng.randint(0, 2 * n)
    edges = []
    for _ in range(m):
        u, v = rng.randrange(n), rng.randrange(n)
        if u != v:
            edges.append((u, v))
    orientation = orientation or rng.choice(["NATURAL", "UNDIRECTED"])
    return GraphView(f"v{seed}", "L", "T", orientation, list(range(n)), edges)


# ---------------------------------------------------------------------------
# PageRank
# ---------------------------------------------------------------------------


def test_pagerank_three_cycle_symmetry():
    view = GraphView("v", "L", "T", "NATURAL", [0, 1, 2], [(0, 1), (1, 2), (2, 0)])
    scores = dict(pagerank(view, 50, 0.85))
    for node in range(3):
        assert scores[node] == pytest.approx(1 / 3, abs=1e-9)
    assert sum(scores.values()) == pytest.approx(1.0, abs=1e-9)


def test_pagerank_single_step_hand_computed():
    # edges 0->1, 1->2, 2->0, 2->1; node 3 dangling; d=0.85, one iteration:
    #   base (1-d)/4 = 0.0375, dangling mass 0.25 spreads 0.0625 to each node
    #   in(0)=0.125, in(1)=0.375, in(2)=0.25, in(3)=0
    view = GraphView("v", "L", "T", "NATURAL", [0, 1, 2, 3],
                     [(0, 1), (1, 2), (2, 0), (2, 1)])
    scores = dict(pagerank(view, 1, 0.85))
    assert scores[0] == pytest.approx(0.196875, abs=1e-12)
    assert scores[1] == pytest.approx(0.409375, abs=1e-12)
    assert scores[2] == pytest.approx(0.303125, abs=1e-12)
    assert scores[3] == pytest.approx(0.090625, abs=1e-12)
    oracle = dense_pagerank_oracle(4, view.edges, "NATURAL", 1, 0.85)
    for node in range(4):
        assert scores[node] == pytest.approx(oracle[node], abs=1e-12)


@pytest.mark.parametrize("seed", range(25))
def test_pagerank_matches_dense_oracle(seed):
    view = random_view(seed)
    scores = pagerank(view, 40, 0.85)
    oracle = dense_pagerank_oracle(view.node_count, view.edges, view.orientation,
                                   40, 0.85)
    for node_id, score in scores:
        assert score == pytest.approx(oracle[node_id], abs=1e-6)
    assert sum(s for _, s in scores) == pytest.approx(1.0, abs=1e-9)


def test_pagerank_empty_view():
    view = GraphView("v", "L", "T", "NATURAL", [], [])
    assert pagerank(view) == []


def test_pagerank_all_dangling_uniform():
    view = GraphView("v", "L", "T", "NATURAL", [0, 1, 2, 3], [])
    for _, score in pagerank(view, 10, 0.85):
        assert score == pytest.approx(0.25, abs=1e-12)


def test_pagerank_validation():
    view = GraphView("v", "L", "T", "NATURAL", [0], [])
    with pytest.raises(ValueError):
        pagerank(view, 0, 0.85)
    with pytest.raises(ValueError):
        pagerank(view, 5, 1.0)
    with pytest.raises(ValueError):
        pagerank(view, 5, 0.0)


# ---------------------------------------------------------------------------
# Label propagation
# ---------------------------------------------------------------------------


def test_lp_two_triangles_two_communities():
    edges = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]
    view = GraphView("v", "L", "T", "UNDIRECTED", list(range(6)), edges)
    result = dict(label_propagation(view, 20))
    assert len(set(result.values())) == 2
    assert result[0] == result[1] == result[2]
    assert result[3] == result[4] == result[5]
    assert result[0] != result[3]


def test_lp_single_node_keeps_label():
    view = GraphView("v", "L", "T", "UNDIRECTED", [7], [])
    assert label_propagation(view, 5) == [(7, 7)]


def test_lp_two_cliques_with_bridge_frozen():
    edges = [(a, b) for a in range(4) for b in range(a + 1, 4)]
    edges += [(a, b) for a in range(4, 8) for b in range(a + 1, 8)]
    edges.append((3, 4))
    view = GraphView("v", "L", "T", "UNDIRECTED", list(range(8)), edges)
    result = [cid for _, cid in label_propagation(view, 20)]
    # frozen from the step-by-step reference: first clique keeps label 0,
    # second keeps label 4
    assert result == [0, 0, 0, 0, 4, 4, 4, 4]
    assert result == lp_reference(8, edges, 20)


@pytest.mark.parametrize("seed", range(25))
def test_lp_matches_reference_and_converges(seed):
    view = random_view(seed + 1000, orientation="UNDIRECTED")
    result = [cid for _, cid in label_propagation(view, 20)]
    assert result == lp_reference(view.node_count, view.edges, 20)
    # converged: one more synchronous sweep changes nothing
    neighbors = view.symmetric_adjacency()
    from collections import Counter

    for i in range(view.node_count):
        if not neighbors[i]:
            continue
        counter = Counter(result[j] for j in neighbors[i])
        counter[result[i]] += 1
        top = max(counter.values())
        assert min(l for l, c in counter.items() if c == top) == result[i]


def test_lp_deterministic_across_runs():
    view = random_view(4242, orientation="UNDIRECTED")
    runs = [label_propagation(view, 20) for _ in range(5)]
    assert all(run == runs[0] for run in runs)


@pytest.mark.parametrize("seed", range(10))
def test_lp_community_count_never_increases(seed):
    """Distinct label count is non-increasing across sweeps (labels are only
    ever copies of existing labels)."""
    view = random_view(seed + 3000, orientation="UNDIRECTED")
    neighbors = view.symmetric_adjacency()
    labels = list(view.node_ids)
    from collections import Counter

    previous_count = len(set(labels))
    for _ in range(20):
        updated = []
        for i in range(view.node_count):
            if not neighbors[i]:
                updated.append(labels[i])
                continue
            counter = Counter(labels[j] for j in neighbors[i])
            counter[labels[i]] += 1
            top = max(counter.values())
            updated.append(min(l for l, c in counter.items() if c == top))
        count = len(set(updated))
        assert count <= previous_count
        previous_count = count
        if updated == labels:
            break
        labels = updated


def test_lp_components_never_share_community():
    view = random_view(77, orientation="UNDIRECTED")
    result = dict(label_propagation(view, 20))
    # union-find over the raw edges
    parent = list(range(view.node_count))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in view.edges:
        parent[find(u)] = find(v)
    component_of_community = {}
    for node, community in result.items():
        component = find(node)
        assert component_of_community.setdefault(community, component) == component


def test_lp_empty_and_validation():
    view = GraphView("v", "L", "T", "UNDIRECTED", [], [])
    assert label_propagation(view) == []
    with pytest.raises(ValueError):
        label_propagation(GraphView("v", "L", "T", "UNDIRECTED", [0], []), 0)


def test_lp_community_ids_are_node_ids():
    view = GraphView("v", "L", "T", "UNDIRECTED", [10, 11, 12], [(0, 1), (1, 2)])
    result = dict(label_propagation(view, 20))
    assert set(result.values()) <= {10, 11, 12}


# ---------------------------------------------------------------------------
# Degree centrality
# ---------------------------------------------------------------------------


def _random_graph(seed):
    rng = random.Random(seed)
    graph = PropertyGraph()
    n = rng.randint(1, 40)
    for _ in range(n):
        graph.add_node("Nodes", {})
    for _ in range(rng.randint(0, 3 * n)):
        graph.add_relationship("LINKS", rng.randrange(n), rng.randrange(n))
    return graph


def test_degree_ordering(fixture_graph):
    table = degree_centrality(fixture_graph, "Patients", "PATIENT_HAS_MEDICATION")
    assert table.columns == ["id(n)", "degree"]
    assert table.rows == [(0, 2)]  # P1 has both medications; P2/P3 unmatched


def test_degree_no_relationships_no_rows(fixture_graph):
    table = degree_centrality(fixture_graph, "Patients", "NO_SUCH_TYPE")
    assert table.rows == []


def test_degree_matches_brute_force(fixture_graph):
    table = degree_centrality(fixture_graph, "Medications", "PATIENT_HAS_MEDICATION")
    assert table.rows == brute_force_degrees(
        fixture_graph, "Medications", "PATIENT_HAS_MEDICATION"
    )


@pytest.mark.parametrize("seed", range(20))
def test_degree_random_graphs(seed):
    graph = _random_graph(seed)
    table = degree_centrality(graph, "Nodes", "LINKS")
    assert table.rows == brute_force_degrees(graph, "Nodes", "LINKS")
    degrees = [d for _, d in table.rows]
    assert degrees == sorted(degrees, reverse=True)
