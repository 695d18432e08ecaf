"""Expression trees for parsed questions, one dataclass per grammar production.

Every label, relationship type and property inside an AST is a canonical
schema name; surface synonyms are resolved by the parser before construction.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass


class AlgorithmKind(enum.Enum):
    PAGE_RANK = "PageRank"
    DEGREE_CENTRALITY = "DegreeCentrality"
    LABEL_PROPAGATION = "LabelPropagation"

    def __str__(self):
        return self.value


Condition = tuple[str, str]  # (property, value)


@dataclass(frozen=True)
class Selection:
    label: str
    conditions: tuple[Condition, ...]


@dataclass(frozen=True)
class Projection:
    label: str
    property: str


@dataclass(frozen=True)
class SelectionProjection:
    source_label: str
    source_property: str
    target_label: str
    target_conditions: tuple[Condition, ...]


@dataclass(frozen=True)
class Aggregation:
    label: str
    conditions: tuple[Condition, ...]


@dataclass(frozen=True)
class ViewCreation:
    node_label: str
    rel_type: str
    oriented: bool
    base_graph: str | None = None
    view_name: str | None = None


@dataclass(frozen=True)
class EstimateMemory:
    algorithm: AlgorithmKind
    view_name: str


@dataclass(frozen=True)
class Centrality:
    keyword_phrase: str
    node_label: str
    rel_type: str
    graph_name: str | None = None
    max_iterations: int | None = None
    damping_factor: float | None = None

    def __post_init__(self):
        if self.max_iterations is not None and self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if self.damping_factor is not None and not 0 < self.damping_factor < 1:
            raise ValueError("damping_factor must be strictly between 0 and 1")


@dataclass(frozen=True)
class Community:
    keyword_phrase: str
    node_label: str
    view_name: str
    rel_type: str
    max_iterations: int | None = None

    def __post_init__(self):
        if self.max_iterations is not None and self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")


QuestionAST = (
    Selection
    | Projection
    | SelectionProjection
    | Aggregation
    | ViewCreation
    | EstimateMemory
    | Centrality
    | Community
)

# Fixed production order; parse results follow it.
PRODUCTION_ORDER = [
    "Selection",
    "Projection",
    "SelectionProjection",
    "Aggregation",
    "ViewCreation",
    "EstimateMemory",
    "Centrality",
    "Community",
]


def production_name(ast: QuestionAST) -> str:
    return type(ast).__name__
