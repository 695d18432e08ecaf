import pytest

from nldsql import FeedbackStore, ValidationError, generate, rank_candidates
from nldsql.questions import AlgorithmKind, Centrality


@pytest.fixture
def centrality_candidates(demo_schema, demo_lexicon):
    ast = Centrality("most popular", "Encounters", "ENCOUNTER_FOR_MEDICATION")
    return generate(ast, demo_schema, frozenset(), demo_lexicon)


def test_default_score_preserves_order(centrality_candidates):
    ranked = rank_candidates(centrality_candidates, FeedbackStore(), "Centrality")
    assert [c.id for c in ranked] == [c.id for c in centrality_candidates]
    assert all(c.score == 3.0 for c in ranked)


def test_five_star_algorithm_ranks_first(centrality_candidates):
    feedback = FeedbackStore()
    feedback.add("Centrality", "PageRank", 5)
    feedback.add("Centrality", "PageRank", 5)
    ranked = rank_candidates(centrality_candidates, feedback, "Centrality")
    assert ranked[0].algorithm is AlgorithmKind.PAGE_RANK
    assert ranked[0].score == 5.0


def test_low_rated_algorithm_ranks_last(centrality_candidates):
    feedback = FeedbackStore()
    feedback.add("Centrality", "DegreeCentrality", 1)
    feedback.add("Centrality", "DegreeCentrality", 1)
    ranked = rank_candidates(centrality_candidates, feedback, "Centrality")
    assert ranked[-1].algorithm is AlgorithmKind.DEGREE_CENTRALITY
    assert ranked[-1].score == 1.0


def test_permutation_property(centrality_candidates):
    feedback = FeedbackStore()
    feedback.add("Centrality", "PageRank", 4)
    ranked = rank_candidates(centrality_candidates, feedback, "Centrality")
    assert sorted(c.id for c in ranked) == sorted(c.id for c in centrality_candidates)
    assert len(ranked) == len(centrality_candidates)


def test_mean_arithmetic():
    feedback = FeedbackStore()
    feedback.add("Centrality", "PageRank", 4)
    feedback.add("Centrality", "PageRank", 2)
    assert feedback.mean("Centrality", "PageRank") == 3.0
    summary = feedback.summary("Centrality", "PageRank")
    assert summary["count"] == 2 and summary["sum"] == 6


def test_stars_validation():
    feedback = FeedbackStore()
    for bad in (0, 6, -1):
        with pytest.raises(ValidationError):
            feedback.add("Centrality", "PageRank", bad)
    with pytest.raises(ValidationError):
        feedback.add("Centrality", "PageRank", 3.5)


def test_roundtrip_serialization():
    feedback = FeedbackStore()
    feedback.add("Centrality", "PageRank", 5)
    feedback.add("Aggregation", "Navigational", 2)
    restored = FeedbackStore.from_dict(feedback.to_dict())
    assert restored.to_dict() == feedback.to_dict()
    assert restored.mean("Centrality", "PageRank") == 5.0
