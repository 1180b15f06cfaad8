"""Sessions: one scene per session, commands serialized in arrival order.

A failed command never touches the scene (the engine operations are
atomic), so the feedback revision only moves on mutating ok outcomes,
and then always by exactly 1.
"""
from __future__ import annotations

import itertools
import threading

from .errors import LayoutForgeError, ProtocolError
from .inference import (
    DEFAULT_TOLERANCES,
    Tolerances,
    add_object,
    generate_constraints,
    move_object,
    remove_object,
    scale_object,
)
from .geometry import ObjectKind, Vec3
from .protocol import (
    AddObjectCommand,
    AddPlaneCommand,
    Command,
    ErrorInfo,
    ExportCommand,
    Feedback,
    FeedbackPayload,
    GenerateCommand,
    MoveObjectCommand,
    RemoveObjectCommand,
    ScaleObjectCommand,
    SceneModel,
    SnapshotSceneCommand,
    SolveCommand,
    SolveReportModel,
    StatementModel,
    echoable_request_id,
    parse_command,
)
from .scene import new_scene
from .solver import load_environment, solve
from .statements import export_csv


class Session:
    """A single designer's scene plus the protocol bookkeeping around it."""

    def __init__(self, session_id: str, tolerances: Tolerances = DEFAULT_TOLERANCES):
        self.id = session_id
        self.scene = new_scene()
        self.tolerances = tolerances
        self._seen_request_ids: set[str] = set()
        self._lock = threading.Lock()

    @property
    def revision(self) -> int:
        return self.scene.revision

    def apply(self, command: Command) -> Feedback:
        with self._lock:
            if command.request_id in self._seen_request_ids:
                return self._error(
                    command.request_id,
                    ProtocolError(f"request id {command.request_id!r} was already used in this session"),
                )
            self._seen_request_ids.add(command.request_id)
            try:
                payload = self._execute(command)
            except LayoutForgeError as exc:
                return self._error(command.request_id, exc)
            return Feedback(
                request_id=command.request_id,
                outcome="ok",
                revision=self.scene.revision,
                payload=payload,
            )

    def apply_raw(self, data: object) -> Feedback:
        """Validate one decoded JSON value and apply it.

        Validation failures become error feedback rather than exceptions
        so a channel can always answer the frame it just read.
        """
        try:
            command = parse_command(data)
        except ProtocolError as exc:
            return self._error(echoable_request_id(data), exc)
        return self.apply(command)

    # -- internals ---------------------------------------------------------

    def _error(self, request_id: str | None, exc: LayoutForgeError) -> Feedback:
        return Feedback(
            request_id=request_id,
            outcome="error",
            revision=self.scene.revision,
            error=ErrorInfo(code=exc.code, message=str(exc)),
        )

    def _statements(self) -> list[StatementModel]:
        return [StatementModel.from_statement(s) for s in generate_constraints(self.scene)]

    def _mutated(self, **extra: str) -> FeedbackPayload:
        return FeedbackPayload(
            scene=SceneModel.from_scene(self.scene),
            statements=self._statements(),
            **extra,
        )

    def _execute(self, command: Command) -> FeedbackPayload:
        scene = self.scene
        if isinstance(command, AddPlaneCommand):
            plane_id = scene.add_plane(*command.plane_args())
            return self._mutated(plane_id=plane_id)
        if isinstance(command, AddObjectCommand):
            object_id = add_object(scene, ObjectKind(command.kind), Vec3(*command.position), self.tolerances)
            return self._mutated(object_id=object_id)
        if isinstance(command, MoveObjectCommand):
            move_object(scene, command.id, Vec3(*command.position), self.tolerances)
            return self._mutated()
        if isinstance(command, ScaleObjectCommand):
            scale_object(scene, command.id, command.factor)
            return self._mutated()
        if isinstance(command, RemoveObjectCommand):
            remove_object(scene, command.id)
            return self._mutated()
        if isinstance(command, GenerateCommand):
            return FeedbackPayload(statements=self._statements())
        if isinstance(command, ExportCommand):
            csv = export_csv(generate_constraints(scene))
            return FeedbackPayload(csv=csv.decode("utf-8"))
        if isinstance(command, SolveCommand):
            environment = self._load_environment(command.environment_ref)
            report = solve(generate_constraints(scene), environment, cap=command.cap)
            return FeedbackPayload(report=SolveReportModel.from_report(report))
        if isinstance(command, SnapshotSceneCommand):
            return FeedbackPayload(scene=SceneModel.from_scene(scene))
        raise ProtocolError(f"unknown command {type(command).__name__}")  # pragma: no cover

    @staticmethod
    def _load_environment(reference: str):
        from .errors import InvalidGeometry

        try:
            return load_environment(reference)
        except OSError as exc:
            raise InvalidGeometry(f"cannot read environment {reference!r}: {exc}") from None


class SessionManager:
    """Registry of live sessions; sessions share nothing with each other."""

    def __init__(self, tolerances: Tolerances = DEFAULT_TOLERANCES):
        self._tolerances = tolerances
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()
        self._ids = itertools.count(1)

    def open(self) -> Session:
        with self._lock:
            session = Session(f"s{next(self._ids)}", self._tolerances)
            self._sessions[session.id] = session
            return session

    def get(self, session_id: str) -> Session:
        with self._lock:
            try:
                return self._sessions[session_id]
            except KeyError:
                raise ProtocolError(f"no open session {session_id!r}") from None

    def close(self, session_id: str) -> None:
        with self._lock:
            if self._sessions.pop(session_id, None) is None:
                raise ProtocolError(f"no open session {session_id!r}")

    def session_ids(self) -> list[str]:
        with self._lock:
            return sorted(self._sessions)
