"""Conversational session service: the engine-facing core behind the HTTP API.

Each session owns its lexicon (so vocabulary extensions stay local), its view
catalog (so concurrent demo sessions do not collide on 'my_graph'), its turn
log and its feedback store. Every mutation is appended to the session's JSONL
log before the call returns; replaying a log against the same dataset
reproduces candidate ids and result tables.
"""

from __future__ import annotations

import json
import threading
import uuid
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from pathlib import Path

from .candidates import QueryCandidate, generate
from .engine import run_script
from .errors import (
    CandidateNotFound,
    ExecutionError,
    GenerationError,
    ParseError,
    SessionNotFound,
    ValidationError,
    VocabularyError,
)
from .feedback import FeedbackStore, candidate_key
from .graph import PropertyGraph, extract_schema, graph_summary
from .lexicon import Lexicon, bind_vocabulary
from .parser import parse
from .questions import production_name
from .table import ResultTable
from .tokenizer import tokenize
from .views import ViewCatalog

RAW_SCRIPT_PRODUCTION = "RawScript"


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


@dataclass
class SessionTurn:
    turn_id: int
    question: str
    ast_count: int
    candidates: list[QueryCandidate]
    productions: dict[str, str]  # candidate id -> question production
    diagnostics: dict | None = None
    chosen: str | None = None
    result: ResultTable | None = None
    stars: int | None = None
    timestamp: str = field(default_factory=_now)


class SessionState:
    def __init__(self, session_id: str, lexicon: Lexicon):
        self.session_id = session_id
        self.lexicon = lexicon
        self.lexicon_version = 1
        self.views = ViewCatalog()
        self.turns: list[SessionTurn] = []
        self.feedback = FeedbackStore()
        self.lock = threading.RLock()

    def turn(self, turn_id: int) -> SessionTurn | None:
        if 1 <= turn_id <= len(self.turns):
            return self.turns[turn_id - 1]
        return None


class SessionService:
    """Shared read-only graph, per-session conversational state."""

    def __init__(self, graph: PropertyGraph, log_dir: str | Path):
        self.graph = graph
        self.schema = extract_schema(graph)
        self.base_lexicon = bind_vocabulary(self.schema)
        self.log_dir = Path(log_dir)
        self.log_dir.mkdir(parents=True, exist_ok=True)
        self._sessions: dict[str, SessionState] = {}
        self._registry_lock = threading.Lock()

    # -- infrastructure ----------------------------------------------------

    def _session(self, session_id: str) -> SessionState:
        with self._registry_lock:
            session = self._sessions.get(session_id)
        if session is None:
            raise SessionNotFound(f"unknown session {session_id!r}")
        return session

    def _log(self, session_id: str, event: dict):
        record = {"ts": _now(), **event}
        path = self.log_dir / f"{session_id}.jsonl"
        with open(path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")

    def log_path(self, session_id: str) -> Path:
        return self.log_dir / f"{session_id}.jsonl"

    # -- session lifecycle ---------------------------------------------------

    def create_session(self, session_id: str | None = None) -> str:
        session_id = session_id or uuid.uuid4().hex
        with self._registry_lock:
            if session_id in self._sessions:
                raise ValidationError(f"session {session_id!r} already exists")
            self._sessions[session_id] = SessionState(session_id, self.base_lexicon)
        self._log(session_id, {"event": "session_created", "session_id": session_id})
        return session_id

    # -- operations ----------------------------------------------------------

    def get_summary(self, session_id: str) -> dict:
        self._session(session_id)
        return {
            "summary": graph_summary(self.graph).to_dict(),
            "schema": self.schema.to_dict(),
        }

    def post_question(self, session_id: str, text: str) -> dict:
        session = self._session(session_id)
        if not text or not text.strip():
            raise ValidationError("question text must be non-empty")
        with session.lock:
            turn_id = len(session.turns) + 1
            diagnostics = None
            candidates: list[QueryCandidate] = []
            productions: dict[str, str] = {}
            ast_count = 0
            try:
                asts = parse(tokenize(text, session.lexicon), session.lexicon)
            except ParseError as exc:
                diagnostics = exc.diagnostics()
            else:
                ast_count = len(asts)
                generation_errors = []
                for ast in asts:
                    try:
                        expanded = generate(
                            ast, self.schema, session.views.names(), session.lexicon
                        )
                    except GenerationError as exc:
                        generation_errors.append(
                            {"production": production_name(ast), "message": str(exc)}
                        )
                        continue
                    for candidate in expanded:
                        if candidate.id not in productions:
                            productions[candidate.id] = production_name(ast)
                            candidates.append(candidate)
                candidates = self._rank(session, candidates, productions)
                if not candidates and generation_errors:
                    diagnostics = {
                        "message": generation_errors[0]["message"],
                        "furthest_span": [0, len(text)],
                        "productions": [e["production"] for e in generation_errors],
                    }

            turn = SessionTurn(
                turn_id=turn_id,
                question=text,
                ast_count=ast_count,
                candidates=candidates,
                productions=productions,
                diagnostics=diagnostics,
            )
            session.turns.append(turn)
            self._log(
                session_id,
                {
                    "event": "question",
                    "turn_id": turn_id,
                    "text": text,
                    "candidate_ids": [c.id for c in candidates],
                    "diagnostics": diagnostics,
                },
            )
            return {
                "turn_id": turn_id,
                "candidates": [self._candidate_payload(c) for c in candidates],
                "diagnostics": diagnostics,
            }

    @staticmethod
    def _candidate_payload(candidate: QueryCandidate) -> dict:
        return {
            "id": candidate.id,
            "script": candidate.script_text,
            "explanation": candidate.explanation,
            "score": candidate.score,
            "kind": candidate.kind.value,
            "algorithm": candidate.algorithm.value if candidate.algorithm else None,
        }

    def _rank(self, session, candidates, productions) -> list[QueryCandidate]:
        scored = [
            replace(
                c,
                score=session.feedback.mean(productions[c.id], candidate_key(c)),
            )
            for c in candidates
        ]
        return sorted(scored, key=lambda c: -c.score)

    def execute_candidate(
        self,
        session_id: str,
        turn_id: int | None = None,
        candidate_id: str | None = None,
        raw_script: str | None = None,
    ) -> dict:
        session = self._session(session_id)
        with session.lock:
            if raw_script is not None:
                return self._execute_raw(session, raw_script)
            if turn_id is None or candidate_id is None:
                raise ValidationError("need either raw_script or turn_id + candidate_id")
            turn = session.turn(turn_id)
            if turn is None:
                raise CandidateNotFound(f"turn {turn_id} does not exist")
            candidate = next((c for c in turn.candidates if c.id == candidate_id), None)
            if candidate is None:
                raise CandidateNotFound(
                    f"candidate {candidate_id!r} does not belong to turn {turn_id}"
                )

            error = None
            tables: list[ResultTable] = []
            estimates = []
            try:
                tables, estimates = run_script(
                    list(candidate.script),
                    self.graph,
                    session.views,
                    skip_existing_create=True,
                )
            except ExecutionError as exc:
                error = {"message": str(exc), "statement_index": exc.statement_index}

            result = tables[-1] if tables else None
            if error is None:
                turn.chosen = candidate_id
                turn.result = result
            payload = {
                "turn_id": turn.turn_id,
                "candidate_id": candidate_id,
                "columns": result.columns if result else [],
                "rows": [list(r) for r in result.rows] if result else [],
                "estimates": [e.to_dict() for e in estimates],
                "error": error,
            }
            self._log(session_id, {"event": "execute", **payload})
            if error is not None:
                raise ExecutionError(error["message"], error["statement_index"])
            return payload

    def _execute_raw(self, session: SessionState, raw_script: str) -> dict:
        turn_id = len(session.turns) + 1
        error = None
        tables: list[ResultTable] = []
        estimates = []
        try:
            tables, estimates = run_script(
                raw_script, self.graph, session.views, skip_existing_create=True
            )
        except ExecutionError as exc:
            error = {"message": str(exc), "statement_index": exc.statement_index}

        result = tables[-1] if tables else None
        kind = "DataScience" if "gds." in raw_script else "Navigational"
        turn = SessionTurn(
            turn_id=turn_id,
            question=raw_script,
            ast_count=0,
            candidates=[],
            productions={},
            chosen=None,
            result=result,
        )
        turn.productions["raw"] = RAW_SCRIPT_PRODUCTION
        session.turns.append(turn)
        payload = {
            "turn_id": turn_id,
            "raw_script": raw_script,
            "raw_kind": kind,
            "columns": result.columns if result else [],
            "rows": [list(r) for r in result.rows] if result else [],
            "estimates": [e.to_dict() for e in estimates],
            "error": error,
        }
        self._log(session.session_id, {"event": "execute", **payload})
        if error is not None:
            raise ExecutionError(error["message"], error["statement_index"])
        return payload

    def record_feedback(self, session_id: str, turn_id: int, stars: int) -> dict:
        session = self._session(session_id)
        with session.lock:
            turn = session.turn(turn_id) if turn_id is not None else None
            if turn is None:
                raise ValidationError(f"turn {turn_id} does not exist")
            if not turn.candidates:
                raise ValidationError(f"turn {turn_id} has no candidates to rate")
            chosen = next(
                (c for c in turn.candidates if c.id == turn.chosen),
                turn.candidates[0],
            )
            production = turn.productions[chosen.id]
            key = candidate_key(chosen)
            session.feedback.add(production, key, stars)
            turn.stars = stars
            summary = session.feedback.summary(production, key)
            self._log(
                session_id,
                {"event": "feedback", "turn_id": turn_id, "stars": stars, **summary},
            )
            return summary

    def add_synonym(
        self, session_id: str, property_name: str, surface: str, canonical: str
    ) -> dict:
        session = self._session(session_id)
        with session.lock:
            entry = (property_name, surface, canonical)
            if entry in session.lexicon.extra_synonyms:
                version = session.lexicon_version  # idempotent
            else:
                session.lexicon = session.lexicon.with_synonyms([entry])
                session.lexicon_version += 1
                version = session.lexicon_version
            self._persist_synonyms(session)
            self._log(
                session_id,
                {
                    "event": "vocabulary",
                    "property": property_name,
                    "surface": surface,
                    "canonical": canonical,
                    "lexicon_version": version,
                },
            )
            return {"lexicon_version": version}

    def _persist_synonyms(self, session: SessionState):
        path = self.log_dir / f"{session.session_id}_synonyms.csv"
        lines = ["property,surface,canonical"]
        for prop, surface, canonical in session.lexicon.extra_synonyms:
            lines.append(f"{prop},{surface},{canonical}")
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")

    # -- replay ----------------------------------------------------------------

    def replay(self, log_path: str | Path) -> dict:
        """Re-run a persisted session log through this service and compare
        candidate ids and result tables. Returns a report."""
        events = []
        with open(log_path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if line:
                    events.append(json.loads(line))

        mismatches = []
        session_id = None
        for event in events:
            kind = event["event"]
            if kind == "session_created":
                session_id = self.create_session()
            elif kind == "question":
                response = self.post_question(session_id, event["text"])
                got = [c["id"] for c in response["candidates"]]
                if got != event["candidate_ids"]:
                    mismatches.append(
                        {
                            "event": "question",
                            "turn_id": event["turn_id"],
                            "expected": event["candidate_ids"],
                            "got": got,
                        }
                    )
            elif kind == "execute":
                try:
                    if event.get("raw_script") is not None:
                        response = self.execute_candidate(
                            session_id, raw_script=event["raw_script"]
                        )
                    else:
                        response = self.execute_candidate(
                            session_id,
                            turn_id=event["turn_id"],
                            candidate_id=event["candidate_id"],
                        )
                    got_rows = response["rows"]
                    got_columns = response["columns"]
                except ExecutionError as exc:
                    if event.get("error") is None:
                        mismatches.append(
                            {"event": "execute", "turn_id": event["turn_id"],
                             "expected": "success", "got": str(exc)}
                        )
                    continue
                if got_columns != event["columns"] or got_rows != event["rows"]:
                    mismatches.append(
                        {
                            "event": "execute",
                            "turn_id": event["turn_id"],
                            "expected": {"columns": event["columns"], "rows": event["rows"]},
                            "got": {"columns": got_columns, "rows": got_rows},
                        }
                    )
            elif kind == "feedback":
                self.record_feedback(session_id, event["turn_id"], event["stars"])
            elif kind == "vocabulary":
                self.add_synonym(
                    session_id, event["property"], event["surface"], event["canonical"]
                )
        return {
            "events": len(events),
            "session_id": session_id,
            "matches": not mismatches,
            "mismatches": mismatches,
        }
