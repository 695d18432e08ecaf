import pytest

from nldsql import (
    GraphView,
    ViewCatalog,
    ViewDefinitionError,
    ViewExists,
    ViewNotFound,
    create_view,
    estimate_memory,
)


def test_fixture_view_membership(fixture_graph):
    # PATIENT_HAS_MEDICATION endpoints leave the Medications label, so the
    # single-label view keeps the nodes and drops every relationship
    view = create_view("my_graph", "Medications", "PATIENT_HAS_MEDICATION",
                       "NATURAL", fixture_graph)
    assert view.node_count == 2
    assert view.relationship_count == 0


def test_view_unknown_label(fixture_graph):
    with pytest.raises(ViewDefinitionError):
        create_view("v", "Unknown", "PATIENT_HAS_MEDICATION", "NATURAL", fixture_graph)
    with pytest.raises(ViewDefinitionError):
        create_view("v", "Patients", "NO_SUCH_TYPE", "NATURAL", fixture_graph)


def test_catalog_duplicate(fixture_graph):
    catalog = ViewCatalog()
    catalog.create("my_graph", "Medications", "PATIENT_HAS_MEDICATION",
                   "NATURAL", fixture_graph)
    with pytest.raises(ViewExists):
        catalog.create("my_graph", "Patients", "PATIENT_HAS_MEDICATION",
                       "NATURAL", fixture_graph)
    assert "my_graph" in catalog
    with pytest.raises(ViewNotFound):
        catalog.get("other")


def test_bad_orientation():
    with pytest.raises(ViewDefinitionError):
        GraphView("v", "L", "T", "SIDEWAYS", [0], [])


def test_estimate_formula():
    view = GraphView("v", "L", "T", "NATURAL", list(range(5)),
                     [(0, 1), (1, 2), (2, 3), (3, 4)])
    estimate = estimate_memory(view)
    assert estimate.node_count == 5 and estimate.relationship_count == 4
    assert estimate.bytes_min == 40 * 5 + 24 * 4 + 8 * 5 == 336
    assert estimate.bytes_max == 672
    assert estimate.required_memory == "[336 Bytes ... 672 Bytes]"


def test_estimate_empty_view():
    view = GraphView("v", "L", "T", "NATURAL", [], [])
    estimate = estimate_memory(view)
    assert (estimate.node_count, estimate.relationship_count) == (0, 0)
    assert (estimate.bytes_min, estimate.bytes_max) == (0, 0)
    assert estimate.required_memory == "[0 Bytes ... 0 Bytes]"


def test_estimate_demo_scale():
    view = GraphView("v", "L", "T", "NATURAL", list(range(100)),
                     [(0, 1)] * 37)
    assert estimate_memory(view).bytes_min == 40 * 100 + 24 * 37 + 8 * 100 == 5688


def test_estimate_monotone():
    previous = -1
    for n, r in [(0, 0), (1, 0), (1, 1), (5, 2), (5, 9), (20, 9), (20, 50)]:
        view = GraphView("v", "L", "T", "NATURAL", list(range(n)),
                         [(0, 0)] * r if n else [])
        current = estimate_memory(view).bytes_min
        assert current >= previous
        previous = current


def test_undirected_adjacency_symmetric():
    view = GraphView("v", "L", "T", "UNDIRECTED", [0, 1, 2], [(0, 1), (1, 2)])
    adjacency = view.out_adjacency()
    for u, neighbors in enumerate(adjacency):
        for v in neighbors:
            assert u in adjacency[v]


def test_natural_adjacency_directed():
    view = GraphView("v", "L", "T", "NATURAL", [0, 1], [(0, 1)])
    assert view.out_adjacency() == [[1], []]
    assert view.symmetric_adjacency() == [[1], [0]]
