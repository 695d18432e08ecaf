"""Parser, plan types and renderer for the generated Cypher subset.

Accepted statements:

    MATCH <node or chain pattern> [WITH var, count(*) AS alias]
        RETURN items [ORDER BY name [DESC|ASC]] [LIMIT n]
    CALL gds.graph.create(name, label, {TYPE: {orientation: X}})
    CALL gds.pageRank.write.estimate(name, {writeProperty, maxIterations, dampingFactor})
    CALL gds.pageRank.stream(name)
    CALL gds.labelPropagation.write.estimate(name, {writeProperty})
    CALL gds.labelPropagation.stream(name, {maxIterations})

each CALL optionally followed by YIELD and trailing RETURN/ORDER BY/LIMIT.
Chain hops are -[:T]->, -[r:T]- (undirected, bag semantics) and -[*]->
(directed variable-length). Anything else raises CypherSubsetError with the
offending span. Keywords are case-insensitive; quoted values are not.

A parsed statement is a QueryPlan: an ordered pipeline of stages. render()
turns a plan back into canonical text; parse_cypher(render(plan)) == plan.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import CypherSubsetError

# ---------------------------------------------------------------------------
# scanner
# ---------------------------------------------------------------------------

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
    | (?P<string>'(?:[^'\\]|\\.)*'|"(?:[^"\\]|\\.)*")
    | (?P<float>\d+\.\d+)
    | (?P<int>\d+)
    | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
    | (?P<arrow>->)
    | (?P<sym>[(){}\[\]:,.\-*])
    """,
    re.VERBOSE,
)


def _scan(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:
            raise CypherSubsetError(
                f"unexpected character {text[pos]!r}", (pos, pos + 1)
            )
        pos = match.end()
        kind = match.lastgroup
        if kind == "ws":
            continue
        tokens.append((kind, match.group(), match.start(), match.end()))
    return tokens


def _unquote(raw: str) -> str:
    return raw[1:-1].replace("\\'", "'").replace('\\"', '"').replace("\\\\", "\\")


def _quote(value: str) -> str:
    return "'" + str(value).replace("\\", "\\\\").replace("'", "\\'") + "'"


def _format_number(value) -> str:
    if isinstance(value, float):
        text = repr(value)
        whole, _, frac = text.partition(".")
        return f"{whole}.{frac.ljust(2, '0')}" if frac else text
    return str(value)


# ---------------------------------------------------------------------------
# plan types
# ---------------------------------------------------------------------------

Scalar = str | int | float
ConfigMap = tuple  # tuple of (key, Scalar | ConfigMap) pairs


@dataclass(frozen=True)
class NodePattern:
    var: str | None
    label: str | None
    filters: tuple[tuple[str, Scalar], ...] = ()

    def render(self) -> str:
        inner = self.var or ""
        if self.label:
            inner += f":{self.label}"
        if self.filters:
            body = ", ".join(f"{k}:{_render_scalar(v)}" for k, v in self.filters)
            inner += " {" + body + "}"
        return f"({inner})"


@dataclass(frozen=True)
class EdgePattern:
    var: str | None
    rel_type: str | None  # None means variable-length '*'
    directed: bool
    var_length: bool = False

    def render(self) -> str:
        body = self.var or ""
        body += "*" if self.var_length else f":{self.rel_type}"
        return f"-[{body}]" + ("->" if self.directed else "-")


@dataclass(frozen=True)
class NodeScan:
    pattern: NodePattern


@dataclass(frozen=True)
class PathMatch:
    nodes: tuple[NodePattern, ...]
    edges: tuple[EdgePattern, ...]


@dataclass(frozen=True)
class AggregateCount:
    group_var: str
    alias: str


@dataclass(frozen=True)
class ColumnRef:
    name: str

    def render(self) -> str:
        return self.name


@dataclass(frozen=True)
class PropAccess:
    var: str
    prop: str

    def render(self) -> str:
        return f"{self.var}.{self.prop}"


@dataclass(frozen=True)
class IdFunc:
    var: str

    def render(self) -> str:
        return f"id({self.var})"


@dataclass(frozen=True)
class CountFunc:
    arg: str | None  # None for count(*)

    def render(self) -> str:
        return f"count({self.arg or '*'})"


@dataclass(frozen=True)
class AsNodeProp:
    var: str
    prop: str

    def render(self) -> str:
        return f"gds.util.asNode({self.var}).{self.prop}"


Expr = ColumnRef | PropAccess | IdFunc | CountFunc | AsNodeProp


@dataclass(frozen=True)
class ReturnItem:
    expr: Expr
    alias: str | None = None

    def render(self) -> str:
        text = self.expr.render()
        return f"{text} AS {self.alias}" if self.alias else text

    @property
    def column_name(self) -> str:
        return self.alias or self.expr.render()


@dataclass(frozen=True)
class Project:
    items: tuple[ReturnItem, ...]


@dataclass(frozen=True)
class OrderLimit:
    key: str | None
    descending: bool = False
    limit: int | None = None


@dataclass(frozen=True)
class ProcedureCall:
    name: str
    args: tuple
    yield_columns: tuple[str, ...] | None = None


Stage = NodeScan | PathMatch | AggregateCount | Project | OrderLimit | ProcedureCall


@dataclass(frozen=True)
class QueryPlan:
    stages: tuple[Stage, ...]


# Procedures: canonical name -> (yieldable columns, argument validator)
PROCEDURE_YIELDS = {
    "gds.graph.create": ("graphName", "nodeCount", "relationshipCount"),
    "gds.pageRank.write.estimate": (
        "nodeCount", "relationshipCount", "bytesMin", "bytesMax", "requiredMemory",
    ),
    "gds.pageRank.stream": ("nodeId", "score"),
    "gds.labelPropagation.write.estimate": (
        "nodeCount", "relationshipCount", "bytesMin", "bytesMax", "requiredMemory",
    ),
    "gds.labelPropagation.stream": ("nodeId", "communityId"),
}

_ORIENTATIONS = ("NATURAL", "UNDIRECTED")


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _scan(text)
        self.i = 0

    # -- primitives --------------------------------------------------------

    def error(self, message: str):
        if self.i < len(self.tokens):
            _, value, start, end = self.tokens[self.i]
            raise CypherSubsetError(f"{message} (at {value!r})", (start, end))
        raise CypherSubsetError(
            f"{message} (at end of statement)", (len(self.text), len(self.text))
        )

    def peek(self, offset: int = 0):
        j = self.i + offset
        return self.tokens[j] if j < len(self.tokens) else (None, None, -1, -1)

    def at_end(self) -> bool:
        return self.i >= len(self.tokens)

    def accept_sym(self, value: str) -> bool:
        kind, tok, _, _ = self.peek()
        if kind in ("sym", "arrow") and tok == value:
            self.i += 1
            return True
        return False

    def expect_sym(self, value: str):
        if not self.accept_sym(value):
            self.error(f"expected {value!r}")

    def accept_keyword(self, word: str) -> bool:
        kind, tok, _, _ = self.peek()
        if kind == "ident" and tok.lower() == word.lower():
            self.i += 1
            return True
        return False

    def expect_keyword(self, word: str):
        if not self.accept_keyword(word):
            self.error(f"expected keyword {word}")

    def ident(self) -> str:
        kind, tok, _, _ = self.peek()
        if kind != "ident":
            self.error("expected identifier")
        self.i += 1
        return tok

    def scalar(self) -> Scalar:
        kind, tok, _, _ = self.peek()
        if kind == "string":
            self.i += 1
            return _unquote(tok)
        if kind == "int":
            self.i += 1
            return int(tok)
        if kind == "float":
            self.i += 1
            return float(tok)
        self.error("expected a literal")

    def integer(self) -> int:
        kind, tok, _, _ = self.peek()
        if kind != "int":
            self.error("expected an integer")
        self.i += 1
        return int(tok)

    # -- grammar -----------------------------------------------------------

    def statement(self) -> QueryPlan:
        if self.accept_keyword("MATCH"):
            plan = self.match_statement()
        elif self.accept_keyword("CALL"):
            plan = self.call_statement()
        else:
            self.error("statement must start with MATCH or CALL")
        if not self.at_end():
            self.error("unexpected trailing input")
        return plan

    def match_statement(self) -> QueryPlan:
        nodes = [self.node_pattern()]
        edges = []
        while True:
            kind, tok, _, _ = self.peek()
            if kind in ("sym", "arrow") and tok == "-":
                edges.append(self.edge_pattern())
                nodes.append(self.node_pattern())
            else:
                break

        stages: list[Stage] = []
        if edges:
            stages.append(PathMatch(tuple(nodes), tuple(edges)))
        else:
            stages.append(NodeScan(nodes[0]))

        if self.accept_keyword("WITH"):
            stages.append(self.with_count())

        self.expect_keyword("RETURN")
        stages.append(Project(tuple(self.return_items())))

        order_limit = self.order_and_limit()
        if order_limit is not None:
            stages.append(order_limit)
        return QueryPlan(tuple(stages))

    def node_pattern(self) -> NodePattern:
        self.expect_sym("(")
        var = None
        label = None
        filters: tuple = ()
        kind, _, _, _ = self.peek()
        if kind == "ident":
            var = self.ident()
        if self.accept_sym(":"):
            label = self.ident()
        kind, tok, _, _ = self.peek()
        if kind == "sym" and tok == "{":
            filters = self.property_map()
        self.expect_sym(")")
        return NodePattern(var, label, filters)

    def property_map(self) -> tuple:
        self.expect_sym("{")
        entries = []
        while True:
            key = self.ident()
            self.expect_sym(":")
            entries.append((key, self.scalar()))
            if not self.accept_sym(","):
                break
        self.expect_sym("}")
        return tuple(entries)

    def edge_pattern(self) -> EdgePattern:
        self.expect_sym("-")
        self.expect_sym("[")
        var = None
        rel_type = None
        var_length = False
        kind, _, _, _ = self.peek()
        if kind == "ident":
            var = self.ident()
        if self.accept_sym("*"):
            var_length = True
        elif self.accept_sym(":"):
            rel_type = self.ident()
        else:
            self.error("edge must carry a :TYPE or *")
        self.expect_sym("]")
        if self.accept_sym("->"):
            directed = True
        elif self.accept_sym("-"):
            directed = False
        else:
            self.error("expected -> or - after edge")
        if var_length and not directed:
            self.error("variable-length traversal must be directed")
        return EdgePattern(var, rel_type, directed, var_length)

    def with_count(self) -> AggregateCount:
        group_var = self.ident()
        self.expect_sym(",")
        self.expect_keyword("count")
        self.expect_sym("(")
        self.expect_sym("*")
        self.expect_sym(")")
        self.expect_keyword("AS")
        return AggregateCount(group_var, self.ident())

    def return_items(self) -> list[ReturnItem]:
        items = [self.return_item()]
        while self.accept_sym(","):
            items.append(self.return_item())
        return items

    def return_item(self) -> ReturnItem:
        expr = self.expression()
        alias = None
        if self.accept_keyword("AS"):
            alias = self.ident()
        return ReturnItem(expr, alias)

    def expression(self) -> Expr:
        parts = [self.ident()]
        while True:
            kind, tok, _, _ = self.peek()
            nxt_kind, _, _, _ = self.peek(1)
            if kind == "sym" and tok == "." and nxt_kind == "ident":
                self.i += 1
                parts.append(self.ident())
                kind, tok, _, _ = self.peek()
                if kind == "sym" and tok == "(":
                    break
            else:
                break

        kind, tok, _, _ = self.peek()
        if kind == "sym" and tok == "(":
            name = ".".join(parts)
            if name.lower() == "count":
                self.expect_sym("(")
                if self.accept_sym("*"):
                    arg = None
                else:
                    arg = self.ident()
                self.expect_sym(")")
                return CountFunc(arg)
            if name.lower() == "id":
                self.expect_sym("(")
                var = self.ident()
                self.expect_sym(")")
                return IdFunc(var)
            if name == "gds.util.asNode":
                self.expect_sym("(")
                var = self.ident()
                self.expect_sym(")")
                self.expect_sym(".")
                prop = self.ident()
                return AsNodeProp(var, prop)
            self.error(f"unsupported function {name}")

        if len(parts) == 1:
            return ColumnRef(parts[0])
        if len(parts) == 2:
            return PropAccess(parts[0], parts[1])
        self.error("unsupported dotted expression")

    def order_and_limit(self) -> OrderLimit | None:
        key = None
        descending = False
        limit = None
        if self.accept_keyword("ORDER"):
            self.expect_keyword("BY")
            key = self.ident()
            if self.accept_keyword("DESC"):
                descending = True
            elif self.accept_keyword("ASC"):
                descending = False
        if self.accept_keyword("LIMIT"):
            limit = self.integer()
        if key is None and limit is None:
            return None
        return OrderLimit(key, descending, limit)

    def call_statement(self) -> QueryPlan:
        parts = [self.ident()]
        while self.accept_sym("."):
            parts.append(self.ident())
        name = ".".join(parts)
        canonical = next(
            (p for p in PROCEDURE_YIELDS if p.lower() == name.lower()), None
        )
        if canonical is None:
            self.error(f"unsupported procedure {name}")

        self.expect_sym("(")
        args = []
        if not self.accept_sym(")"):
            while True:
                kind, tok, _, _ = self.peek()
                if kind == "sym" and tok == "{":
                    args.append(self.config_map())
                else:
                    args.append(self.scalar())
                if not self.accept_sym(","):
                    break
            self.expect_sym(")")
        self.validate_procedure(canonical, args)

        yield_columns = None
        if self.accept_keyword("YIELD"):
            cols = [self.ident()]
            while self.accept_sym(","):
                cols.append(self.ident())
            for col in cols:
                if col not in PROCEDURE_YIELDS[canonical]:
                    self.error(f"{canonical} cannot YIELD {col}")
            yield_columns = tuple(cols)

        stages: list[Stage] = [ProcedureCall(canonical, tuple(args), yield_columns)]
        if self.accept_keyword("RETURN"):
            stages.append(Project(tuple(self.return_items())))
        order_limit = self.order_and_limit()
        if order_limit is not None:
            stages.append(order_limit)
        return QueryPlan(tuple(stages))

    def config_map(self) -> tuple:
        self.expect_sym("{")
        entries = []
        while True:
            key = self.ident()
            self.expect_sym(":")
            kind, tok, _, _ = self.peek()
            if kind == "sym" and tok == "{":
                entries.append((key, self.config_map()))
            else:
                entries.append((key, self.scalar()))
            if not self.accept_sym(","):
                break
        self.expect_sym("}")
        return tuple(entries)

    def validate_procedure(self, name: str, args: list):
        def is_map(x):
            return isinstance(x, tuple)

        if name == "gds.graph.create":
            ok = (
                len(args) == 3
                and isinstance(args[0], str)
                and isinstance(args[1], str)
                and is_map(args[2])
                and len(args[2]) == 1
                and is_map(args[2][0][1])
                and dict(args[2][0][1]).keys() == {"orientation"}
                and dict(args[2][0][1])["orientation"] in _ORIENTATIONS
            )
            if not ok:
                self.error("gds.graph.create expects (name, label, {TYPE: {orientation: X}})")
        elif name == "gds.pageRank.write.estimate":
            ok = len(args) == 2 and isinstance(args[0], str) and is_map(args[1])
            if ok:
                allowed = {"writeProperty": str, "maxIterations": int, "dampingFactor": (int, float)}
                for key, value in args[1]:
                    if key not in allowed or not isinstance(value, allowed[key]):
                        ok = False
            if not ok:
                self.error(
                    "gds.pageRank.write.estimate expects (name, "
                    "{writeProperty, maxIterations, dampingFactor})"
                )
        elif name == "gds.pageRank.stream":
            if len(args) != 1 or not isinstance(args[0], str):
                self.error("gds.pageRank.stream expects (name)")
        elif name == "gds.labelPropagation.write.estimate":
            ok = len(args) == 2 and isinstance(args[0], str) and is_map(args[1])
            if ok:
                for key, value in args[1]:
                    if key != "writeProperty" or not isinstance(value, str):
                        ok = False
            if not ok:
                self.error(
                    "gds.labelPropagation.write.estimate expects (name, {writeProperty})"
                )
        elif name == "gds.labelPropagation.stream":
            ok = len(args) == 2 and isinstance(args[0], str) and is_map(args[1])
            if ok:
                for key, value in args[1]:
                    if key != "maxIterations" or not isinstance(value, int):
                        ok = False
            if not ok:
                self.error("gds.labelPropagation.stream expects (name, {maxIterations})")


def parse_cypher(text: str) -> QueryPlan:
    """Parse one statement of the subset into a QueryPlan."""
    return _Parser(text).statement()


def split_statements(script: str) -> list[str]:
    """Split a script on semicolons, ignoring semicolons inside strings."""
    statements = []
    current = []
    quote = None
    escaped = False
    for ch in script:
        if quote:
            current.append(ch)
            if escaped:
                escaped = False
            elif ch == "\\":
                escaped = True
            elif ch == quote:
                quote = None
            continue
        if ch in "'\"":
            quote = ch
            current.append(ch)
        elif ch == ";":
            statements.append("".join(current))
            current = []
        else:
            current.append(ch)
    statements.append("".join(current))
    return [s.strip() for s in statements if s.strip()]


# ---------------------------------------------------------------------------
# renderer
# ---------------------------------------------------------------------------


def _render_scalar(value: Scalar) -> str:
    if isinstance(value, str):
        return _quote(value)
    return _format_number(value)


def _render_config(config: tuple) -> str:
    parts = []
    for key, value in config:
        if isinstance(value, tuple):
            parts.append(f"{key}: {_render_config(value)}")
        else:
            parts.append(f"{key}: {_render_scalar(value)}")
    return "{" + ", ".join(parts) + "}"


def render(plan: QueryPlan) -> str:
    """Canonical text of a plan; parse_cypher(render(plan)) == plan."""
    pieces = []
    for stage in plan.stages:
        if isinstance(stage, NodeScan):
            pieces.append(f"MATCH {stage.pattern.render()}")
        elif isinstance(stage, PathMatch):
            chain = stage.nodes[0].render()
            for edge, node in zip(stage.edges, stage.nodes[1:]):
                chain += edge.render() + node.render()
            pieces.append(f"MATCH {chain}")
        elif isinstance(stage, AggregateCount):
            pieces.append(f"WITH {stage.group_var}, count(*) AS {stage.alias}")
        elif isinstance(stage, Project):
            pieces.append("RETURN " + ", ".join(item.render() for item in stage.items))
        elif isinstance(stage, OrderLimit):
            if stage.key is not None:
                pieces.append(
                    f"ORDER BY {stage.key} {'DESC' if stage.descending else 'ASC'}"
                )
            if stage.limit is not None:
                pieces.append(f"LIMIT {stage.limit}")
        elif isinstance(stage, ProcedureCall):
            args = ", ".join(
                _render_config(a) if isinstance(a, tuple) else _render_scalar(a)
                for a in stage.args
            )
            text = f"CALL {stage.name}({args})"
            if stage.yield_columns:
                text += " YIELD " + ", ".join(stage.yield_columns)
            pieces.append(text)
        else:
            raise TypeError(f"cannot render stage {stage!r}")
    return " ".join(pieces)
