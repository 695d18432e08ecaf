"""Star-rating feedback and score-based candidate ranking.

The model is deliberately simple and replaceable: the score of a candidate is
the mean of the stars recorded for its (question production, algorithm-or-
kind) pair, with a 3.0 prior for unseen pairs.
"""

from __future__ import annotations

from dataclasses import replace

from .candidates import QueryCandidate
from .errors import ValidationError

DEFAULT_SCORE = 3.0


def candidate_key(candidate: QueryCandidate) -> str:
    return candidate.algorithm.value if candidate.algorithm else candidate.kind.value


class FeedbackStore:
    """Accumulates (sum of stars, count) per (production, candidate key)."""

    def __init__(self, entries: dict[tuple[str, str], tuple[int, int]] | None = None):
        self._entries: dict[tuple[str, str], list[int]] = {
            k: list(v) for k, v in (entries or {}).items()
        }

    def add(self, production: str, key: str, stars: int):
        if not isinstance(stars, int) or not 1 <= stars <= 5:
            raise ValidationError(f"stars must be an integer in 1..5, got {stars!r}")
        entry = self._entries.setdefault((production, key), [0, 0])
        entry[0] += stars
        entry[1] += 1

    def mean(self, production: str, key: str) -> float:
        entry = self._entries.get((production, key))
        if entry is None or entry[1] == 0:
            return DEFAULT_SCORE
        return entry[0] / entry[1]

    def summary(self, production: str, key: str) -> dict:
        entry = self._entries.get((production, key), [0, 0])
        return {
            "production": production,
            "key": key,
            "sum": entry[0],
            "count": entry[1],
            "mean": self.mean(production, key),
        }

    def to_dict(self) -> dict[str, list[int]]:
        return {f"{p}|{k}": list(v) for (p, k), v in sorted(self._entries.items())}

    @classmethod
    def from_dict(cls, data: dict[str, list[int]]) -> "FeedbackStore":
        entries = {}
        for joined, (total, count) in data.items():
            production, _, key = joined.partition("|")
            entries[(production, key)] = (total, count)
        return cls(entries)

    def __len__(self):
        return len(self._entries)


def rank_candidates(
    candidates: list[QueryCandidate],
    feedback: FeedbackStore,
    production: str,
) -> list[QueryCandidate]:
    """Re-score candidates from feedback and sort descending; ties keep the
    incoming order. The output is a permutation of the input."""
    scored = [
        replace(c, score=feedback.mean(production, candidate_key(c)))
        for c in candidates
    ]
    return sorted(scored, key=lambda c: -c.score)
