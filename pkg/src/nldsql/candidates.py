"""Expansion of question ASTs into ranked Cypher candidates.

Navigational questions become one MATCH statement. Analytics questions
become GDS-style pipelines: create the in-memory view (skipped when the
session's catalog already has it), estimate memory, stream the algorithm.
A keyword phrase that maps to several algorithms yields one candidate per
algorithm; the conversational loop picks among them.

Defaults follow the demo listings: view name 'my_graph', PageRank
maxIterations 20 / dampingFactor 0.85, LIMIT 10 for PageRank and 5 for
community sizes, label propagation maxIterations 10 when unspecified. The
stream projection substitutes the label's DESCRIPTION property (or the raw
node id) for the conventional `.name`, which the demo entities lack.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace

from .errors import GenerationError, KeywordError
from .graph import GraphSchema
from .lexicon import Lexicon
from .questions import (
    Aggregation,
    AlgorithmKind,
    Centrality,
    Community,
    EstimateMemory,
    Projection,
    QuestionAST,
    Selection,
    SelectionProjection,
    ViewCreation,
)

DEFAULT_VIEW_NAME = "my_graph"
DEFAULT_MAX_ITERATIONS = 20
DEFAULT_DAMPING = 0.85
DEFAULT_LP_ITERATIONS = 10
PAGERANK_LIMIT = 10
COMMUNITY_LIMIT = 5

FNV_OFFSET = 0xCBF29CE484222325
FNV_PRIME = 0x100000001B3


class CandidateKind(enum.Enum):
    NAVIGATIONAL = "Navigational"
    DATA_SCIENCE = "DataScience"


@dataclass(frozen=True)
class QueryCandidate:
    id: str
    script: tuple[str, ...]
    kind: CandidateKind
    algorithm: AlgorithmKind | None
    explanation: str
    score: float = 3.0

    @property
    def script_text(self) -> str:
        return ";\n".join(self.script)


def fnv1a64(text: str) -> str:
    """Lowercase-hex 64-bit FNV-1a hash; stable candidate identity."""
    value = FNV_OFFSET
    for byte in text.encode("utf-8"):
        value = ((value ^ byte) * FNV_PRIME) & 0xFFFFFFFFFFFFFFFF
    return format(value, "016x")


def _candidate(script, kind, algorithm, explanation) -> QueryCandidate:
    script = tuple(script)
    return QueryCandidate(
        id=fnv1a64(";\n".join(script)),
        script=script,
        kind=kind,
        algorithm=algorithm,
        explanation=explanation,
    )


def _quote(value: str) -> str:
    return "'" + str(value).replace("\\", "\\\\").replace("'", "\\'") + "'"


def _props(conditions) -> str:
    return "{" + ", ".join(f"{p}:{_quote(v)}" for p, v in conditions) + "}"


def format_float(value: float) -> str:
    """Render with at least two decimals so 0.6 prints as 0.60."""
    text = repr(float(value))
    if "e" in text or "E" in text:
        text = f"{value:.10f}".rstrip("0")
    whole, _, frac = text.partition(".")
    return f"{whole}.{frac.ljust(2, '0')}"


def _stream_projection(schema: GraphSchema, label: str) -> str:
    if schema.label_has_property(label, "DESCRIPTION"):
        return "gds.util.asNode(nodeId).DESCRIPTION AS name"
    return "nodeId AS name"


def create_view_statement(view: str, label: str, rel_type: str, orientation: str) -> str:
    return (
        f"CALL gds.graph.create({_quote(view)}, {_quote(label)}, "
        f"{{{rel_type}: {{orientation: {_quote(orientation)}}}}})"
    )


def pagerank_estimate_statement(view: str, max_iterations: int, damping: float) -> str:
    return (
        f"CALL gds.pageRank.write.estimate({_quote(view)}, "
        f"{{writeProperty: 'pageRank', maxIterations: {max_iterations}, "
        f"dampingFactor: {format_float(damping)}}}) "
        "YIELD nodeCount, relationshipCount, bytesMin, bytesMax, requiredMemory"
    )


def pagerank_stream_statement(view: str, projection: str) -> str:
    return (
        f"CALL gds.pageRank.stream({_quote(view)}) YIELD nodeId, score "
        f"RETURN {projection}, score ORDER BY score DESC LIMIT {PAGERANK_LIMIT}"
    )


def lp_estimate_statement(view: str) -> str:
    return (
        f"CALL gds.labelPropagation.write.estimate({_quote(view)}, "
        "{writeProperty: 'community'}) "
        "YIELD nodeCount, relationshipCount, bytesMin, bytesMax, requiredMemory"
    )


def lp_stream_statement(view: str, max_iterations: int) -> str:
    return (
        f"CALL gds.labelPropagation.stream({_quote(view)}, "
        f"{{maxIterations: {max_iterations}}}) "
        "YIELD nodeId, communityId "
        f"RETURN communityId, count(nodeId) AS size ORDER BY size DESC LIMIT {COMMUNITY_LIMIT}"
    )


def degree_statement(label: str, rel_type: str) -> str:
    return (
        f"MATCH (n:{label})-[r:{rel_type}]-() WITH n, count(*) AS degree "
        "RETURN id(n), degree ORDER BY degree DESC"
    )


def map_keyword_to_algorithms(phrase: str, lexicon: Lexicon) -> frozenset[AlgorithmKind]:
    algorithms = lexicon.algorithms_for(phrase)
    if algorithms is None:
        raise KeywordError(f"keyword phrase not in the lexicon: {phrase!r}")
    return algorithms


def generate(
    ast: QuestionAST,
    schema: GraphSchema,
    view_catalog_names: frozenset[str] | set[str] = frozenset(),
    lexicon: Lexicon | None = None,
) -> list[QueryCandidate]:
    """Expand one AST into candidates, ordered by score then kind
    (navigational first) then script text.

    The lexicon supplies the keyword table for centrality questions; when
    omitted, the built-in table semantics apply via the AST's stored phrase.
    """
    candidates = _expand(ast, schema, set(view_catalog_names), lexicon)
    return sorted(
        candidates,
        key=lambda c: (-c.score, c.kind is not CandidateKind.NAVIGATIONAL, c.script_text),
    )


def _expand(ast, schema, views, lexicon) -> list[QueryCandidate]:
    if isinstance(ast, Selection):
        match = f"(n:{ast.label} {_props(ast.conditions)})" if ast.conditions else f"(n:{ast.label})"
        summary = " and ".join(f"{p} = {v!r}" for p, v in ast.conditions)
        return [
            _candidate(
                [f"MATCH {match} RETURN n"],
                CandidateKind.NAVIGATIONAL,
                None,
                f"Returns {ast.label} nodes where {summary}.",
            )
        ]

    if isinstance(ast, Projection):
        return [
            _candidate(
                [f"MATCH (n:{ast.label}) RETURN n.{ast.property}"],
                CandidateKind.NAVIGATIONAL,
                None,
                f"Lists the {ast.property} of every {ast.label} node.",
            )
        ]

    if isinstance(ast, SelectionProjection):
        prop = ast.target_conditions[0][0]
        return [
            _candidate(
                [
                    f"MATCH (n:{ast.source_label})-[*]->"
                    f"(m:{ast.target_label} {_props(ast.target_conditions)}) "
                    f"RETURN n.{ast.source_property}, m.{prop}"
                ],
                CandidateKind.NAVIGATIONAL,
                None,
                f"Finds {ast.source_label} connected to matching "
                f"{ast.target_label} and returns both descriptions.",
            )
        ]

    if isinstance(ast, Aggregation):
        match = f"(n:{ast.label} {_props(ast.conditions)})" if ast.conditions else f"(n:{ast.label})"
        what = (
            " with " + " and ".join(f"{p} = {v!r}" for p, v in ast.conditions)
            if ast.conditions
            else ""
        )
        return [
            _candidate(
                [f"MATCH {match} RETURN count(n)"],
                CandidateKind.NAVIGATIONAL,
                None,
                f"Counts {ast.label} nodes{what}.",
            )
        ]

    if isinstance(ast, ViewCreation):
        view = ast.view_name or DEFAULT_VIEW_NAME
        orientation = "NATURAL" if ast.oriented else "UNDIRECTED"
        script = []
        if view not in views:
            script.append(create_view_statement(view, ast.node_label, ast.rel_type, orientation))
        script.append(pagerank_estimate_statement(view, DEFAULT_MAX_ITERATIONS, DEFAULT_DAMPING))
        return [
            _candidate(
                script,
                CandidateKind.DATA_SCIENCE,
                None,
                f"Creates in-memory view '{view}' over {ast.node_label}/"
                f"{ast.rel_type} and estimates its memory footprint.",
            )
        ]

    if isinstance(ast, EstimateMemory):
        if ast.algorithm is AlgorithmKind.PAGE_RANK:
            stmt = pagerank_estimate_statement(ast.view_name, DEFAULT_MAX_ITERATIONS, DEFAULT_DAMPING)
        elif ast.algorithm is AlgorithmKind.LABEL_PROPAGATION:
            stmt = lp_estimate_statement(ast.view_name)
        else:
            raise GenerationError(
                "no memory-estimation procedure exists for degree centrality"
            )
        return [
            _candidate(
                [stmt],
                CandidateKind.DATA_SCIENCE,
                ast.algorithm,
                f"Estimates the memory needed to run {ast.algorithm} "
                f"on view '{ast.view_name}'.",
            )
        ]

    if isinstance(ast, Centrality):
        if not schema.type_touches(ast.rel_type, ast.node_label):
            raise GenerationError(
                f"relationship {ast.rel_type} does not connect label {ast.node_label}"
            )
        if lexicon is not None:
            algorithms = map_keyword_to_algorithms(ast.keyword_phrase, lexicon)
        else:
            from .lexicon import KEYWORD_TABLE

            algorithms = KEYWORD_TABLE.get(
                ast.keyword_phrase, frozenset({AlgorithmKind.PAGE_RANK})
            )
        out = []
        for algorithm in sorted(algorithms, key=lambda a: a.value):
            if algorithm is AlgorithmKind.DEGREE_CENTRALITY:
                out.append(
                    _candidate(
                        [degree_statement(ast.node_label, ast.rel_type)],
                        CandidateKind.NAVIGATIONAL,
                        algorithm,
                        f"Ranks {ast.node_label} by number of incident "
                        f"{ast.rel_type} relationships.",
                    )
                )
            elif algorithm is AlgorithmKind.PAGE_RANK:
                view = ast.graph_name or DEFAULT_VIEW_NAME
                script = []
                if view not in views:
                    script.append(
                        create_view_statement(view, ast.node_label, ast.rel_type, "NATURAL")
                    )
                script.append(
                    pagerank_estimate_statement(
                        view,
                        ast.max_iterations or DEFAULT_MAX_ITERATIONS,
                        ast.damping_factor or DEFAULT_DAMPING,
                    )
                )
                script.append(
                    pagerank_stream_statement(view, _stream_projection(schema, ast.node_label))
                )
                out.append(
                    _candidate(
                        script,
                        CandidateKind.DATA_SCIENCE,
                        algorithm,
                        f"Scores {ast.node_label} with PageRank over "
                        f"{ast.rel_type} and returns the top {PAGERANK_LIMIT}.",
                    )
                )
        return out

    if isinstance(ast, Community):
        if not schema.type_touches(ast.rel_type, ast.node_label):
            raise GenerationError(
                f"relationship {ast.rel_type} does not connect label {ast.node_label}"
            )
        script = []
        if ast.view_name not in views:
            script.append(
                create_view_statement(ast.view_name, ast.node_label, ast.rel_type, "NATURAL")
            )
        script.append(lp_estimate_statement(ast.view_name))
        script.append(
            lp_stream_statement(ast.view_name, ast.max_iterations or DEFAULT_LP_ITERATIONS)
        )
        return [
            _candidate(
                script,
                CandidateKind.DATA_SCIENCE,
                AlgorithmKind.LABEL_PROPAGATION,
                f"Groups {ast.node_label} into communities by label "
                f"propagation over {ast.rel_type}.",
            )
        ]

    raise TypeError(f"unsupported AST node: {type(ast).__name__}")
