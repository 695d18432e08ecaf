"""HTTP+JSON API over the session service (FastAPI).

    GET  /api/schema
    GET  /api/summary
    POST /api/session                  -> {session_id}
    POST /api/session/{id}/question    {text}
    POST /api/session/{id}/execute     {turn_id, candidate_id} or {raw_script}
    POST /api/session/{id}/feedback    {turn_id, stars}
    POST /api/session/{id}/vocabulary  {property, surface, canonical}

When a built chat UI is present (frontend/dist), it is served at /.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, HTTPException
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .errors import (
    CandidateNotFound,
    ExecutionError,
    SessionNotFound,
    ValidationError,
    VocabularyError,
)
from .graph import PropertyGraph, graph_summary
from .service import SessionService


class QuestionBody(BaseModel):
    text: str


class ExecuteBody(BaseModel):
    turn_id: int | None = None
    candidate_id: str | None = None
    raw_script: str | None = None


class FeedbackBody(BaseModel):
    turn_id: int
    stars: int


class VocabularyBody(BaseModel):
    property: str
    surface: str
    canonical: str


def create_app(
    graph: PropertyGraph,
    log_dir: str | Path,
    static_dir: str | Path | None = None,
) -> FastAPI:
    service = SessionService(graph, log_dir)
    app = FastAPI(title="NLDS-QL", version="0.1.0")
    app.state.service = service

    def _guard(fn, *args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (SessionNotFound, CandidateNotFound) as exc:
            raise HTTPException(status_code=404, detail=str(exc))
        except (ValidationError, VocabularyError) as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        except ExecutionError as exc:
            raise HTTPException(
                status_code=400,
                detail={"message": str(exc), "statement_index": exc.statement_index},
            )

    @app.get("/api/schema")
    def get_schema():
        return service.schema.to_dict()

    @app.get("/api/summary")
    def get_summary():
        return graph_summary(service.graph).to_dict()

    @app.post("/api/session")
    def create_session():
        return {"session_id": _guard(service.create_session)}

    @app.post("/api/session/{session_id}/question")
    def post_question(session_id: str, body: QuestionBody):
        return _guard(service.post_question, session_id, body.text)

    @app.post("/api/session/{session_id}/execute")
    def execute(session_id: str, body: ExecuteBody):
        return _guard(
            service.execute_candidate,
            session_id,
            turn_id=body.turn_id,
            candidate_id=body.candidate_id,
            raw_script=body.raw_script,
        )

    @app.post("/api/session/{session_id}/feedback")
    def feedback(session_id: str, body: FeedbackBody):
        return _guard(service.record_feedback, session_id, body.turn_id, body.stars)

    @app.post("/api/session/{session_id}/vocabulary")
    def vocabulary(session_id: str, body: VocabularyBody):
        return _guard(
            service.add_synonym, session_id, body.property, body.surface, body.canonical
        )

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="ui")

    return app
