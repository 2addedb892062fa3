"""HTTP facade: sessions, messages, event streams, artifacts, search."""

from __future__ import annotations

import json
import sys

from fastapi import FastAPI, Header, Query, Request, Response
from fastapi.responses import JSONResponse, StreamingResponse
from pydantic import BaseModel

from ..sandbox import SpawnFailure, media_type_for
from .config import ServiceConfig
from .manager import BadArtifactName, SessionManager, SessionNotFound, TurnInFlight

STREAM_POLL_S = 0.1
STREAM_IDLE_CLOSE_S = 1.0


class MessageBody(BaseModel):
    text: str


class SearchBody(BaseModel):
    query_text: str
    architecture: str


def create_app(config: ServiceConfig) -> FastAPI:
    app = FastAPI(title="argonaut", version="0.1.0")
    manager = SessionManager(config)
    app.state.manager = manager

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.post("/sessions", status_code=201)
    def create_session(x_test_mode: str | None = Header(default=None)):
        try:
            session = manager.create(test_mode=x_test_mode is not None)
        except SpawnFailure as exc:
            return JSONResponse({"error": str(exc)}, status_code=503)
        return {"session_id": session.session_id}

    @app.post("/sessions/{session_id}/messages", status_code=202)
    def post_message(session_id: str, body: MessageBody):
        try:
            turn_id = manager.post_message(session_id, body.text)
        except SessionNotFound:
            return JSONResponse({"error": "unknown session"}, status_code=404)
        except TurnInFlight:
            return JSONResponse({"error": "turn already running"}, status_code=409)
        return {"turn_id": turn_id}

    @app.get("/sessions/{session_id}/events")
    def stream_events(
        session_id: str,
        request: Request,
        from_: int = Query(0, alias="from"),
        from_seq: int | None = Query(None),  # accepted alias
    ):
        from_seq = from_seq if from_seq is not None else from_
        try:
            session = manager.get(session_id)
        except SessionNotFound:
            return JSONResponse({"error": "unknown session"}, status_code=404)

        def frames():
            last_seq = from_seq - 1
            for event in session.events.since(from_seq):
                last_seq = event.seq
                yield f"data: {json.dumps(event.to_json(), sort_keys=True)}\n\n"
            # live tail: keep delivering while a turn is running, close once
            # the log is drained and the session is idle
            idle = 0.0
            while True:
                fresh = session.events.wait_beyond(last_seq, timeout=STREAM_POLL_S)
                if fresh:
                    idle = 0.0
                    for event in fresh:
                        last_seq = event.seq
                        yield f"data: {json.dumps(event.to_json(), sort_keys=True)}\n\n"
                    continue
                if not session.turn_in_flight:
                    idle += STREAM_POLL_S
                    if idle >= STREAM_IDLE_CLOSE_S:
                        return
                else:
                    idle = 0.0

        return StreamingResponse(frames(), media_type="text/event-stream")

    @app.get("/sessions/{session_id}/artifacts/{name:path}")
    def get_artifact(session_id: str, name: str):
        try:
            path = manager.artifact_path(session_id, name)
        except SessionNotFound:
            return JSONResponse({"error": "unknown session"}, status_code=404)
        except BadArtifactName:
            return JSONResponse({"error": "bad artifact name"}, status_code=400)
        except FileNotFoundError:
            return JSONResponse({"error": "artifact not found"}, status_code=404)
        return Response(content=path.read_bytes(), media_type=media_type_for(path))

    @app.post("/search")
    def search(body: SearchBody):
        try:
            results = manager.search(body.query_text, body.architecture)
        except ValueError as exc:
            return JSONResponse({"error": str(exc)}, status_code=400)
        return {
            "entries": [
                {"dataset_id": e.dataset_id, "relevance_score": e.relevance_score,
                 "rationale": e.rationale}
                for e in results.entries
            ],
            "queries_issued": results.queries_issued,
            "rounds": results.rounds,
        }

    return app


def main() -> None:
    """Console entry: argonaut-serve CONFIG_FILE [--port N]."""
    import uvicorn

    args = sys.argv[1:]
    if not args:
        print("usage: argonaut-serve CONFIG_FILE [--port N]", file=sys.stderr)
        raise SystemExit(2)
    port = 8000
    if "--port" in args:
        i = args.index("--port")
        port = int(args[i + 1])
        args = args[:i] + args[i + 2:]
    config = ServiceConfig.from_file(args[0])
    uvicorn.run(create_app(config), host="127.0.0.1", port=port)


if __name__ == "__main__":
    main()
