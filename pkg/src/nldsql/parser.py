"""Recursive-descent parser from token streams to question ASTs.

Every production that matches the full token stream contributes its ASTs, so
an ambiguous question yields several trees (the conversational loop is the
resolution mechanism). Results are ordered by grammar production, then by
schema-name lexicographic order. The grammar itself is documented in
grammar.ebnf at the repository root.
"""

from __future__ import annotations

from .errors import ParseError
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
from .tokenizer import Token, TokenKind


class _Fail(Exception):
    pass


class _Cursor:
    __slots__ = ("tokens", "i", "furthest")

    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.i = 0
        self.furthest = 0

    def peek(self) -> Token | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def advance(self) -> Token:
        token = self.tokens[self.i]
        self.i += 1
        self.furthest = max(self.furthest, self.i)
        return token

    def fail(self):
        raise _Fail()

    def save(self) -> int:
        return self.i

    def restore(self, mark: int):
        self.i = mark

    def keyword(self, *norms: str) -> str:
        token = self.peek()
        if token is None or token.kind is not TokenKind.KEYWORD or token.norm not in norms:
            self.fail()
        return self.advance().norm

    def opt_keyword(self, *norms: str) -> str | None:
        token = self.peek()
        if token is not None and token.kind is TokenKind.KEYWORD and token.norm in norms:
            return self.advance().norm
        return None

    def ref(self, kind: TokenKind) -> str:
        token = self.peek()
        if token is None or token.kind is not kind:
            self.fail()
        return self.advance().resolved

    def number(self) -> int:
        token = self.peek()
        if token is None or token.kind is not TokenKind.NUMBER_LITERAL:
            self.fail()
        return self.advance().value

    def float_literal(self) -> float:
        token = self.peek()
        if token is None or token.kind is not TokenKind.FLOAT_LITERAL:
            self.fail()
        return self.advance().value

    def name(self) -> str:
        """View/graph name slot: a bare word or a quoted literal."""
        token = self.peek()
        if token is None or token.kind not in (TokenKind.WORD, TokenKind.VALUE_LITERAL):
            self.fail()
        return self.advance().surface

    def opt_name(self) -> str | None:
        token = self.peek()
        if token is not None and token.kind in (TokenKind.WORD, TokenKind.VALUE_LITERAL):
            return self.advance().surface
        return None

    def end(self):
        if self.i != len(self.tokens):
            self.fail()


def _attempt(cursor: _Cursor, fn):
    mark = cursor.save()
    try:
        return fn()
    except _Fail:
        cursor.restore(mark)
        return None


def _value(cursor: _Cursor) -> tuple[str, bool]:
    """A value slot: a ValueLiteral token, or a run of plain words/numbers
    (how a lowercased question spells an unquoted literal)."""
    token = cursor.peek()
    if token is not None and token.kind is TokenKind.VALUE_LITERAL:
        cursor.advance()
        return token.surface, token.quoted
    parts = []
    while True:
        token = cursor.peek()
        if token is None or token.kind not in (
            TokenKind.WORD,
            TokenKind.NUMBER_LITERAL,
            TokenKind.FLOAT_LITERAL,
        ):
            break
        parts.append(cursor.advance().surface)
    if not parts:
        cursor.fail()
    return " ".join(parts), False


def _resolve_value(lexicon: Lexicon, prop: str, raw: str, quoted: bool) -> str:
    if not quoted:
        canonical = lexicon.value_synonyms.get((prop, raw.lower()))
        if canonical is not None:
            return canonical
    return raw


def _condition(cursor: _Cursor, lexicon: Lexicon, label: str):
    cursor.opt_keyword("the")
    prop = cursor.ref(TokenKind.PROP_REF)
    if not lexicon.schema.label_has_property(label, prop):
        cursor.fail()
    # decorative "of the <term>" as in "the REASON of the DESCRIPTION"
    mark = cursor.save()
    if cursor.opt_keyword("of"):
        cursor.opt_keyword("the")
        token = cursor.peek()
        if token is not None and token.kind in (TokenKind.PROP_REF, TokenKind.LABEL_REF):
            cursor.advance()
        else:
            cursor.restore(mark)
    cursor.keyword("is")
    raw, quoted = _value(cursor)
    return prop, _resolve_value(lexicon, prop, raw, quoted)


def _p_selection(cursor: _Cursor, lexicon: Lexicon):
    cursor.keyword("find")
    cursor.opt_keyword("the")
    label = cursor.ref(TokenKind.LABEL_REF)
    cursor.keyword("for which", "where")
    conditions = [_condition(cursor, lexicon, label)]
    while cursor.opt_keyword("and"):
        conditions.append(_condition(cursor, lexicon, label))
    cursor.end()
    return [Selection(label, tuple(conditions))]


def _p_projection(cursor: _Cursor, lexicon: Lexicon):
    cursor.keyword("which is", "what is")
    cursor.opt_keyword("the")
    prop = cursor.ref(TokenKind.PROP_REF)
    cursor.keyword("of")
    cursor.opt_keyword("the")
    label = cursor.ref(TokenKind.LABEL_REF)
    cursor.opt_keyword("in the study")
    cursor.end()
    if not lexicon.schema.label_has_property(label, prop):
        cursor.fail()
    return [Projection(label, prop)]


def _p_selection_projection(cursor: _Cursor, lexicon: Lexicon):
    cursor.keyword("find")
    cursor.opt_keyword("the")
    source = cursor.ref(TokenKind.LABEL_REF)
    source_prop = cursor.ref(TokenKind.PROP_REF)
    cursor.opt_keyword("node")
    cursor.keyword("where")
    cursor.opt_keyword("the")
    target_prop = cursor.ref(TokenKind.PROP_REF)
    cursor.keyword("of")
    cursor.opt_keyword("the")
    target = cursor.ref(TokenKind.LABEL_REF)
    cursor.keyword("is")
    raw, quoted = _value(cursor)
    cursor.end()
    if not lexicon.schema.label_has_property(source, source_prop):
        cursor.fail()
    if not lexicon.schema.label_has_property(target, target_prop):
        cursor.fail()
    value = _resolve_value(lexicon, target_prop, raw, quoted)
    return [SelectionProjection(source, source_prop, target, ((target_prop, value),))]


def _p_aggregation(cursor: _Cursor, lexicon: Lexicon):
    cursor.keyword("how many")
    label = cursor.ref(TokenKind.LABEL_REF)
    cursor.keyword("are")
    if cursor.opt_keyword("there"):
        cursor.opt_keyword("in the study")
        cursor.end()
        return [Aggregation(label, ())]
    raw, _ = _value(cursor)
    cursor.end()
    # adjective resolves through value synonyms; one AST per owning property
    out = [
        Aggregation(label, ((prop, canonical),))
        for prop, canonical in lexicon.value_candidates(raw)
        if lexicon.schema.label_has_property(label, prop)
    ]
    if not out:
        cursor.fail()
    return out


def _p_view_creation(cursor: _Cursor, lexicon: Lexicon):
    cursor.keyword("create")
    cursor.keyword("and")
    cursor.keyword("estimate")
    cursor.keyword("memory")
    cursor.keyword("for")
    cursor.opt_keyword("the")
    cursor.keyword("graph")
    cursor.keyword("view")
    base_graph = cursor.opt_name()
    view_name = None
    if cursor.opt_keyword("named as"):
        view_name = cursor.name()
    cursor.keyword("with")
    cursor.opt_keyword("the")
    cursor.keyword("node")
    label = cursor.ref(TokenKind.LABEL_REF)
    cursor.keyword("and")
    cursor.opt_keyword("the")
    cursor.keyword("relationship", "relation")
    rel_type = cursor.ref(TokenKind.REL_REF)
    oriented = cursor.opt_keyword("oriented") is not None
    cursor.end()
    return [ViewCreation(label, rel_type, oriented, base_graph, view_name)]


def _p_estimate_memory(cursor: _Cursor, lexicon: Lexicon):
    cursor.keyword("estimate")
    cursor.opt_keyword("the")
    cursor.keyword("required")
    cursor.keyword("memory")
    cursor.keyword("for")
    cursor.keyword("applying")
    token = cursor.peek()
    if token is None or token.kind is not TokenKind.KEYWORD:
        cursor.fail()
    algorithm = lexicon.algorithm_names.get(token.norm)
    if algorithm is None:
        cursor.fail()
    cursor.advance()
    cursor.keyword("on")
    cursor.opt_keyword("the")
    cursor.keyword("graph")
    cursor.keyword("view")
    view_name = cursor.name()
    cursor.end()
    return [EstimateMemory(algorithm, view_name)]


def _iteration_clause(cursor: _Cursor) -> int:
    cursor.keyword("with")
    if cursor.opt_keyword("max iterations"):
        return cursor.number()
    mark = cursor.save()
    try:
        cursor.opt_keyword("a")
        cursor.keyword("maximum")
        cursor.keyword("of")
        n = cursor.number()
        cursor.keyword("iterations", "iteration")
        return n
    except _Fail:
        cursor.restore(mark)
    n = cursor.number()
    cursor.keyword("maximum")
    cursor.keyword("of")
    cursor.keyword("iterations", "iteration")
    return n


def _damping_clause(cursor: _Cursor) -> float:
    cursor.opt_keyword("and")
    cursor.opt_keyword("with")
    cursor.opt_keyword("a")
    cursor.keyword("damping")
    cursor.keyword("factor")
    cursor.opt_keyword("of")
    return cursor.float_literal()


def _relationship_clause(cursor: _Cursor, lexicon: Lexicon, label: str) -> list[str]:
    """Either an explicit relationship, or a second label from which the
    relationship is inferred (every type connecting the two labels)."""
    mark = cursor.save()
    if cursor.opt_keyword("with"):
        cursor.opt_keyword("the")
        cursor.opt_keyword("relationship", "relation")
        token = cursor.peek()
        if token is not None and token.kind is TokenKind.REL_REF:
            cursor.advance()
            return [token.resolved]
        cursor.restore(mark)
    if cursor.opt_keyword("for", "prescribed for", "of"):
        cursor.opt_keyword("the")
        other = cursor.ref(TokenKind.LABEL_REF)
        types = lexicon.schema.types_connecting(label, other)
        if not types:
            cursor.fail()
        return types
    cursor.fail()


def _p_centrality(cursor: _Cursor, lexicon: Lexicon):
    cursor.keyword("find")
    cursor.opt_keyword("the")
    token = cursor.peek()
    if token is None or token.kind is not TokenKind.KEYWORD:
        cursor.fail()
    algorithms = lexicon.algorithms_for(token.norm)
    if not algorithms or algorithms == {AlgorithmKind.LABEL_PROPAGATION}:
        cursor.fail()
    phrase = cursor.advance().norm
    label = cursor.ref(TokenKind.LABEL_REF)
    rel_types = _relationship_clause(cursor, lexicon, label)
    graph_name = None
    if cursor.opt_keyword("in the graph"):
        graph_name = cursor.opt_name()
    iterations = _attempt(cursor, lambda: _iteration_clause(cursor))
    damping = _attempt(cursor, lambda: _damping_clause(cursor))
    cursor.end()
    return [
        Centrality(phrase, label, rel_type, graph_name, iterations, damping)
        for rel_type in rel_types
    ]


def _p_community(cursor: _Cursor, lexicon: Lexicon):
    if cursor.opt_keyword("classify"):
        phrase = "classify"
        cursor.opt_keyword("the")
    else:
        cursor.keyword("find", "get")
        cursor.opt_keyword("the")
        token = cursor.peek()
        if token is None or token.kind is not TokenKind.KEYWORD:
            cursor.fail()
        algorithms = lexicon.algorithms_for(token.norm)
        if not algorithms or AlgorithmKind.LABEL_PROPAGATION not in algorithms:
            cursor.fail()
        phrase = cursor.advance().norm
        cursor.keyword("of")
        cursor.opt_keyword("the")
    label = cursor.ref(TokenKind.LABEL_REF)

    view_name = None
    if cursor.opt_keyword("within"):
        cursor.opt_keyword("the")
        cursor.keyword("view")
        view_name = cursor.name()

    def explicit_rel():
        if cursor.opt_keyword("who have"):
            return cursor.ref(TokenKind.REL_REF)
        cursor.keyword("with")
        cursor.opt_keyword("the")
        cursor.opt_keyword("relation", "relationship")
        return cursor.ref(TokenKind.REL_REF)

    rel_type = _attempt(cursor, explicit_rel)
    if rel_type is None:
        cursor.fail()

    if cursor.opt_keyword("in the graph"):
        graph_name = cursor.opt_name()
        if view_name is None:
            view_name = graph_name
    iterations = _attempt(cursor, lambda: _iteration_clause(cursor))
    cursor.end()
    return [Community(phrase, label, view_name or "my_graph", rel_type, iterations)]


_PRODUCTIONS = [
    ("Selection", _p_selection),
    ("Projection", _p_projection),
    ("SelectionProjection", _p_selection_projection),
    ("Aggregation", _p_aggregation),
    ("ViewCreation", _p_view_creation),
    ("EstimateMemory", _p_estimate_memory),
    ("Centrality", _p_centrality),
    ("Community", _p_community),
]


def parse(tokens: list[Token], lexicon: Lexicon) -> list[QuestionAST]:
    """Return every AST whose production matches the token stream.

    Raises ParseError (with the longest-matched prefix span and the set of
    productions that got furthest) when nothing matches.
    """
    results: list[QuestionAST] = []
    attempts: list[tuple[str, int]] = []
    for name, production in _PRODUCTIONS:
        cursor = _Cursor(tokens)
        try:
            results.extend(production(cursor, lexicon))
            attempts.append((name, len(tokens)))
        except (_Fail, ValueError):
            attempts.append((name, cursor.furthest))
    if results:
        return list(dict.fromkeys(results))

    best = max((at for _, at in attempts), default=0)
    span = (0, tokens[best - 1].span[1]) if best > 0 else (0, 0)
    productions = [name for name, at in attempts if at == best]
    raise ParseError("no grammar production matches the question", span, productions)
