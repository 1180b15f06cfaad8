"""HTTP + WebSocket front door for sessions.

REST surface:
    POST   /sessions                   open a session
    GET    /sessions/{sid}/scene       current scene snapshot
    DELETE /sessions/{sid}             close a session
    POST   /sessions/{sid}/commands    apply one command, returns its Feedback

Channels (one JSON command frame in, one JSON feedback frame out):
    WS /sessions/{sid}/channel         channel onto an existing session
    WS /channel                        opens a fresh session; first frame is
                                       {"event": "session_opened", ...} and the
                                       session closes when the socket does

Error outcomes still travel inside Feedback envelopes with HTTP 200; only
unknown sessions surface as HTTP 404.
"""
from __future__ import annotations

import json

from fastapi import FastAPI, HTTPException, Request, WebSocket, WebSocketDisconnect
from fastapi.concurrency import run_in_threadpool
from fastapi.middleware.cors import CORSMiddleware

from .errors import ProtocolError
from .protocol import SceneModel
from .session import Session, SessionManager


def create_app(manager: SessionManager | None = None) -> FastAPI:
    manager = manager if manager is not None else SessionManager()
    app = FastAPI(title="layoutforge", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    app.state.manager = manager

    def session_or_404(session_id: str) -> Session:
        try:
            return manager.get(session_id)
        except ProtocolError as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from None

    @app.post("/sessions", status_code=201)
    def open_session() -> dict:
        session = manager.open()
        return {"session_id": session.id, "revision": session.revision}

    @app.get("/sessions/{session_id}/scene")
    def scene_snapshot(session_id: str) -> SceneModel:
        return SceneModel.from_scene(session_or_404(session_id).scene)

    @app.delete("/sessions/{session_id}")
    def close_session(session_id: str) -> dict:
        session_or_404(session_id)
        manager.close(session_id)
        return {"closed": session_id}

    @app.post("/sessions/{session_id}/commands")
    async def post_command(session_id: str, request: Request) -> dict:
        session = session_or_404(session_id)
        try:
            data = await request.json()
        except json.JSONDecodeError:
            data = None  # apply_raw turns non-commands into ProtocolError feedback
        feedback = await run_in_threadpool(session.apply_raw, data)
        return feedback.model_dump()

    async def pump_frames(websocket: WebSocket, session: Session) -> None:
        while True:
            try:
                raw = await websocket.receive_text()
            except WebSocketDisconnect:
                return
            try:
                data = json.loads(raw)
            except ValueError:
                data = None
            feedback = await run_in_threadpool(session.apply_raw, data)
            await websocket.send_text(feedback.model_dump_json())

    @app.websocket("/sessions/{session_id}/channel")
    async def session_channel(websocket: WebSocket, session_id: str) -> None:
        await websocket.accept()
        try:
            session = manager.get(session_id)
        except ProtocolError as exc:
            await websocket.send_text(json.dumps({"event": "error", "message": str(exc)}))
            await websocket.close(code=4404)
            return
        await pump_frames(websocket, session)

    @app.websocket("/channel")
    async def fresh_channel(websocket: WebSocket) -> None:
        await websocket.accept()
        session = manager.open()
        await websocket.send_text(
            json.dumps({"event": "session_opened", "session_id": session.id, "revision": session.revision})
        )
        try:
            await pump_frames(websocket, session)
        finally:
            try:
                manager.close(session.id)
            except ProtocolError:
                pass

    return app


app = create_app()
