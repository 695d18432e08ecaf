"""Command-line entry points.

    nlds gen-data --seed S --patients N --out DIR
    nlds translate "QUESTION" --data DIR [--execute] [--synonyms CSV]
    nlds serve --data DIR --port N [--host H] [--log-dir DIR]

translate exits 0 on success and 2 when the question does not parse, so the
golden corpus can be scripted against it.
"""

from __future__ import annotations

import argparse
import json
import sys
import tempfile
from pathlib import Path

from .candidates import generate
from .dataset import generate_synthetic, load_csv_dataset
from .engine import run_script
from .errors import GenerationError, ParseError
from .graph import extract_schema
from .lexicon import bind_vocabulary, load_synonyms_csv
from .parser import parse
from .questions import production_name
from .tokenizer import tokenize
from .views import ViewCatalog

PARSE_FAILURE_EXIT = 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nlds",
        description="Simplified-English questions compiled to Cypher over a patient graph",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen-data", help="write a deterministic synthetic dataset")
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--patients", type=int, required=True)
    gen.add_argument("--out", required=True)

    tr = sub.add_parser("translate", help="translate one question into Cypher candidates")
    tr.add_argument("question")
    tr.add_argument("--data", required=True, help="dataset directory")
    tr.add_argument("--execute", action="store_true", help="also run every candidate")
    tr.add_argument("--synonyms", help="extra synonyms CSV (property,surface,canonical)")
    tr.add_argument("--json", action="store_true", help="machine-readable output")

    srv = sub.add_parser("serve", help="run the conversational HTTP service")
    srv.add_argument("--data", required=True)
    srv.add_argument("--port", type=int, default=8000)
    srv.add_argument("--host", default="127.0.0.1")
    srv.add_argument("--log-dir", default=None, help="session log directory")
    srv.add_argument("--ui", default=None, help="built frontend directory to serve at /")
    return parser


def _cmd_gen_data(args) -> int:
    manifest = generate_synthetic(args.seed, args.patients, args.out)
    for name, count in manifest.row_counts.items():
        print(f"{name}: {count} rows")
    print(f"written to {manifest.directory} (seed {manifest.seed})")
    return 0


def _cmd_translate(args) -> int:
    graph = load_csv_dataset(args.data)
    schema = extract_schema(graph)
    extras = load_synonyms_csv(args.synonyms) if args.synonyms else []
    lexicon = bind_vocabulary(schema, extras)

    try:
        asts = parse(tokenize(args.question, lexicon), lexicon)
    except ParseError as exc:
        payload = {"error": "parse", **exc.diagnostics()}
        if args.json:
            print(json.dumps(payload))
        else:
            print(f"parse error: {exc}", file=sys.stderr)
            print(f"productions that got furthest: {', '.join(exc.productions)}",
                  file=sys.stderr)
        return PARSE_FAILURE_EXIT

    views = ViewCatalog()
    output = []
    for ast in asts:
        try:
            candidates = generate(ast, schema, views.names(), lexicon)
        except GenerationError as exc:
            print(f"generation error: {exc}", file=sys.stderr)
            return 1
        for candidate in candidates:
            entry = {
                "id": candidate.id,
                "production": production_name(ast),
                "kind": candidate.kind.value,
                "algorithm": candidate.algorithm.value if candidate.algorithm else None,
                "explanation": candidate.explanation,
                "script": candidate.script_text,
            }
            if args.execute:
                tables, estimates = run_script(
                    list(candidate.script), graph, views, skip_existing_create=True
                )
                table = tables[-1]
                entry["columns"] = table.columns
                entry["rows"] = [list(r) for r in table.rows]
                entry["estimates"] = [e.to_dict() for e in estimates]
            output.append(entry)

    if args.json:
        print(json.dumps(output, indent=2))
        return 0
    for entry in output:
        print(f"-- candidate {entry['id']} [{entry['kind']}"
              + (f"/{entry['algorithm']}" if entry["algorithm"] else "") + "]")
        print(f"   {entry['explanation']}")
        print(entry["script"])
        if args.execute:
            print(f"   columns: {entry['columns']}")
            for row in entry["rows"][:20]:
                print(f"   {row}")
            if len(entry["rows"]) > 20:
                print(f"   ... {len(entry['rows'])} rows total")
        print()
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .api import create_app

    graph = load_csv_dataset(args.data)
    log_dir = args.log_dir or tempfile.mkdtemp(prefix="nlds-sessions-")
    app = create_app(graph, log_dir, static_dir=args.ui)
    print(f"session logs: {log_dir}")
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "gen-data":
        return _cmd_gen_data(args)
    if args.command == "translate":
        return _cmd_translate(args)
    if args.command == "serve":
        return _cmd_serve(args)
    return 1


if __name__ == "__main__":
    sys.exit(main())
