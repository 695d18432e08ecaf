"""Evaluation of parsed plans against a PropertyGraph and a view catalog.

Bag semantics throughout: every distinct match (or path, for variable-length
traversal) contributes one row. Unknown labels, types and properties yield
empty results or nulls, matching graph-database behaviour; only procedure
calls over missing views raise.
"""

from __future__ import annotations

from .algorithms import label_propagation, pagerank
from .cypher_parser import (
    AggregateCount,
    AsNodeProp,
    ColumnRef,
    CountFunc,
    IdFunc,
    NodePattern,
    NodeScan,
    OrderLimit,
    PathMatch,
    ProcedureCall,
    PropAccess,
    Project,
    QueryPlan,
    parse_cypher,
    split_statements,
)
from .errors import ExecutionError, NldsError
from .graph import PropertyGraph
from .table import ResultTable
from .views import ViewCatalog, estimate_memory

MAX_PATH_LENGTH = 8  # cap for -[*]-> traversal

# engine-side defaults when a stream call omits parameters (GDS defaults)
STREAM_PAGERANK_ITERATIONS = 20
STREAM_PAGERANK_DAMPING = 0.85
STREAM_LP_ITERATIONS = 10


class _GraphIndex:
    def __init__(self, graph: PropertyGraph):
        self.graph = graph
        self.out: dict[int, list] = {}
        self.incoming: dict[int, list] = {}
        for rel in graph.relationships:
            self.out.setdefault(rel.source_id, []).append(rel)
            self.incoming.setdefault(rel.target_id, []).append(rel)


def _node_matches(graph: PropertyGraph, pattern: NodePattern, node_id: int) -> bool:
    node = graph.node(node_id)
    if pattern.label is not None and node.label != pattern.label:
        return False
    return all(node.properties.get(k) == v for k, v in pattern.filters)


def _scan(graph: PropertyGraph, pattern: NodePattern):
    if pattern.label is not None:
        candidates = graph.nodes_with_label(pattern.label)
    else:
        candidates = range(len(graph.nodes))
    for node_id in candidates:
        if _node_matches(graph, pattern, node_id):
            yield node_id


def _variable_length_targets(index: _GraphIndex, start: int) -> list[int]:
    """Endpoints of every directed path of length 1..MAX_PATH_LENGTH starting
    at `start`, one entry per path (no node revisited within a path)."""
    results: list[int] = []

    def walk(node: int, visited: frozenset[int], depth: int):
        for rel in index.out.get(node, ()):
            target = rel.target_id
            if target in visited:
                continue
            results.append(target)
            if depth + 1 < MAX_PATH_LENGTH:
                walk(target, visited | {target}, depth + 1)

    walk(start, frozenset({start}), 0)
    return results


def _undirected_neighbors(index: _GraphIndex, node: int, rel_type: str):
    seen = set()
    for rel in index.out.get(node, ()):
        if rel.type == rel_type and (rel.rel_id, rel.target_id) not in seen:
            seen.add((rel.rel_id, rel.target_id))
            yield rel.target_id
    for rel in index.incoming.get(node, ()):
        if rel.type == rel_type and (rel.rel_id, rel.source_id) not in seen:
            seen.add((rel.rel_id, rel.source_id))
            yield rel.source_id


def _run_path_match(graph: PropertyGraph, stage: PathMatch) -> list[dict]:
    index = _GraphIndex(graph)
    rows: list[tuple[dict, int]] = []
    first = stage.nodes[0]
    for node_id in _scan(graph, first):
        bindings = {first.var: node_id} if first.var else {}
        rows.append((bindings, node_id))

    for edge, node_pattern in zip(stage.edges, stage.nodes[1:]):
        expanded: list[tuple[dict, int]] = []
        for bindings, current in rows:
            if edge.var_length:
                targets = _variable_length_targets(index, current)
            elif edge.directed:
                targets = [
                    rel.target_id
                    for rel in index.out.get(current, ())
                    if rel.type == edge.rel_type
                ]
            else:
                targets = list(_undirected_neighbors(index, current, edge.rel_type))
            for target in targets:
                if not _node_matches(graph, node_pattern, target):
                    continue
                new_bindings = dict(bindings)
                if node_pattern.var:
                    new_bindings[node_pattern.var] = target
                expanded.append((new_bindings, target))
        rows = expanded

    return [bindings for bindings, _ in rows]


def _eval(expr, row: dict, graph: PropertyGraph):
    if isinstance(expr, ColumnRef):
        if expr.name not in row:
            raise ExecutionError(f"unknown variable {expr.name}")
        return row[expr.name]
    if isinstance(expr, PropAccess):
        if expr.var not in row:
            raise ExecutionError(f"unknown variable {expr.var}")
        return graph.node(row[expr.var]).properties.get(expr.prop)
    if isinstance(expr, IdFunc):
        if expr.var not in row:
            raise ExecutionError(f"unknown variable {expr.var}")
        return row[expr.var]
    if isinstance(expr, AsNodeProp):
        if expr.var not in row:
            raise ExecutionError(f"unknown variable {expr.var}")
        return graph.node(row[expr.var]).properties.get(expr.prop)
    raise ExecutionError(f"cannot evaluate {expr!r} outside aggregation")


def _run_project(stage: Project, rows: list[dict], graph: PropertyGraph):
    columns = [item.column_name for item in stage.items]
    aggregates = [
        (i, item) for i, item in enumerate(stage.items)
        if isinstance(item.expr, CountFunc)
    ]
    plain = [
        (i, item) for i, item in enumerate(stage.items)
        if not isinstance(item.expr, CountFunc)
    ]

    if not aggregates:
        out = [
            {item.column_name: _eval(item.expr, row, graph) for _, item in plain}
            for row in rows
        ]
        return columns, out

    # implicit grouping by the non-aggregate items, first-seen order
    groups: dict[tuple, dict] = {}
    order: list[tuple] = []
    for row in rows:
        key = tuple(_eval(item.expr, row, graph) for _, item in plain)
        if key not in groups:
            groups[key] = {"rows": []}
            order.append(key)
        groups[key]["rows"].append(row)
    if not plain and not order:  # aggregate over empty input yields one row
        order.append(())
        groups[()] = {"rows": []}

    out = []
    for key in order:
        grouped = groups[key]["rows"]
        record = {}
        for (_, item), value in zip(plain, key):
            record[item.column_name] = value
        for _, item in aggregates:
            arg = item.expr.arg
            if arg is None:
                count = len(grouped)
            else:
                count = sum(
                    1 for r in grouped if _eval(ColumnRef(arg), r, graph) is not None
                )
            record[item.column_name] = count
        out.append(record)
    return columns, out


def _run_order_limit(stage: OrderLimit, columns: list[str], rows: list[dict]):
    if stage.key is not None:
        if stage.key not in columns:
            raise ExecutionError(f"ORDER BY references unknown column {stage.key}")
        try:
            rows = sorted(
                rows,
                key=lambda r: (r[stage.key] is None, r[stage.key]),
                reverse=stage.descending,
            )
        except TypeError as exc:
            raise ExecutionError(f"ORDER BY on mixed-type column {stage.key}") from exc
    if stage.limit is not None:
        rows = rows[: stage.limit]
    return rows


def _run_procedure(stage: ProcedureCall, graph: PropertyGraph, views: ViewCatalog):
    name, args = stage.name, stage.args
    estimate = None

    if name == "gds.graph.create":
        view_name, label, config = args
        rel_type, inner = config[0]
        orientation = dict(inner)["orientation"]
        view = views.create(view_name, label, rel_type, orientation, graph)
        columns = ["graphName", "nodeCount", "relationshipCount"]
        rows = [{"graphName": view_name, "nodeCount": view.node_count,
                 "relationshipCount": view.relationship_count}]
    elif name in ("gds.pageRank.write.estimate", "gds.labelPropagation.write.estimate"):
        view = views.get(args[0])
        estimate = estimate_memory(view, name, dict(args[1]) if len(args) > 1 else None)
        columns = ["nodeCount", "relationshipCount", "bytesMin", "bytesMax", "requiredMemory"]
        rows = [estimate.to_dict()]
    elif name == "gds.pageRank.stream":
        view = views.get(args[0])
        scores = pagerank(view, STREAM_PAGERANK_ITERATIONS, STREAM_PAGERANK_DAMPING)
        columns = ["nodeId", "score"]
        rows = [{"nodeId": nid, "score": score} for nid, score in scores]
    elif name == "gds.labelPropagation.stream":
        view = views.get(args[0])
        config = dict(args[1]) if len(args) > 1 else {}
        iterations = config.get("maxIterations", STREAM_LP_ITERATIONS)
        communities = label_propagation(view, iterations)
        columns = ["nodeId", "communityId"]
        rows = [{"nodeId": nid, "communityId": cid} for nid, cid in communities]
    else:
        raise ExecutionError(f"unknown procedure {name}")

    if stage.yield_columns is not None:
        columns = list(stage.yield_columns)
        rows = [{c: r[c] for c in columns} for r in rows]
    return columns, rows, estimate


def execute(plan: QueryPlan, graph: PropertyGraph, views: ViewCatalog) -> ResultTable:
    """Run one plan; returns a ResultTable (procedure estimates attached)."""
    columns: list[str] | None = None
    rows: list[dict] = []
    estimate = None

    for stage in plan.stages:
        if isinstance(stage, NodeScan):
            var = stage.pattern.var
            rows = [
                {var: node_id} if var else {}
                for node_id in _scan(graph, stage.pattern)
            ]
        elif isinstance(stage, PathMatch):
            rows = _run_path_match(graph, stage)
        elif isinstance(stage, AggregateCount):
            order: list = []
            counts: dict = {}
            for row in rows:
                if stage.group_var not in row:
                    raise ExecutionError(f"unknown variable {stage.group_var}")
                key = row[stage.group_var]
                if key not in counts:
                    counts[key] = 0
                    order.append(key)
                counts[key] += 1
            rows = [{stage.group_var: k, stage.alias: counts[k]} for k in order]
        elif isinstance(stage, Project):
            columns, rows = _run_project(stage, rows, graph)
        elif isinstance(stage, OrderLimit):
            rows = _run_order_limit(stage, columns or [], rows)
        elif isinstance(stage, ProcedureCall):
            columns, rows, estimate = _run_procedure(stage, graph, views)
        else:
            raise ExecutionError(f"unsupported stage {stage!r}")

    if columns is None:
        raise ExecutionError("plan produced no projection")
    return ResultTable(
        columns=columns,
        rows=[tuple(row.get(c) for c in columns) for row in rows],
        estimate=estimate,
    )


def run_script(
    script: str | list[str],
    graph: PropertyGraph,
    views: ViewCatalog,
    skip_existing_create: bool = False,
):
    """Execute a multi-statement script in order.

    Returns (tables, estimates). With skip_existing_create, a create call
    whose view name is already registered reports the existing view instead
    of failing (re-running a pipeline candidate reuses its view). Errors are
    wrapped with the 1-based statement index.
    """
    statements = split_statements(script) if isinstance(script, str) else list(script)
    tables: list[ResultTable] = []
    estimates = []
    for position, statement in enumerate(statements):
        try:
            plan = parse_cypher(statement)
            first = plan.stages[0]
            if (
                skip_existing_create
                and isinstance(first, ProcedureCall)
                and first.name == "gds.graph.create"
                and first.args[0] in views
            ):
                view = views.get(first.args[0])
                table = ResultTable(
                    columns=["graphName", "nodeCount", "relationshipCount"],
                    rows=[(view.name, view.node_count, view.relationship_count)],
                )
            else:
                table = execute(plan, graph, views)
        except NldsError as exc:
            raise ExecutionError(
                f"statement {position + 1}: {exc}", statement_index=position
            ) from exc
        tables.append(table)
        if table.estimate is not None:
            estimates.append(table.estimate)
    return tables, estimates
