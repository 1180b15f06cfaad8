"""Wire models for the session protocol.

Commands are JSON objects tagged by an ``op`` field and carrying a
client-supplied ``request_id``; every command gets exactly one Feedback
echoing that id.  Mutating feedback carries the refreshed scene snapshot
and statement list so a client never needs a follow-up read.
"""
from __future__ import annotations

from typing import Annotated, Literal, Union

from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, ValidationError

from .errors import ProtocolError
from .geometry import Plane, PlaneOrientation, Vec3
from .scene import Scene
from .solver import DEFAULT_CANDIDATE_CAP, SolveReport
from .statements import ConstraintStatement, ConstraintType

Vector = tuple[float, float, float]


def _vec(values: Vector) -> Vec3:
    return Vec3(*values)


class _Command(BaseModel):
    model_config = ConfigDict(extra="forbid")

    request_id: str


class AddPlaneCommand(_Command):
    op: Literal["add_plane"] = "add_plane"
    orientation: Literal["vertical", "horizontal"]
    origin: Vector
    u_axis: Vector
    extent_u: float
    extent_v: float

    def plane_args(self) -> tuple[PlaneOrientation, Vec3, Vec3, float, float]:
        return (
            PlaneOrientation(self.orientation),
            _vec(self.origin),
            _vec(self.u_axis),
            self.extent_u,
            self.extent_v,
        )


class AddObjectCommand(_Command):
    op: Literal["add_object"] = "add_object"
    kind: Literal["clock", "window", "desk_chair"]
    position: Vector


class MoveObjectCommand(_Command):
    op: Literal["move_object"] = "move_object"
    id: str
    position: Vector


class ScaleObjectCommand(_Command):
    op: Literal["scale_object"] = "scale_object"
    id: str
    factor: float


class RemoveObjectCommand(_Command):
    op: Literal["remove_object"] = "remove_object"
    id: str


class GenerateCommand(_Command):
    op: Literal["generate"] = "generate"


class ExportCommand(_Command):
    op: Literal["export"] = "export"


class SolveCommand(_Command):
    op: Literal["solve"] = "solve"
    environment_ref: str
    cap: int | None = DEFAULT_CANDIDATE_CAP


class SnapshotSceneCommand(_Command):
    op: Literal["snapshot_scene"] = "snapshot_scene"


Command = Annotated[
    Union[
        AddPlaneCommand,
        AddObjectCommand,
        MoveObjectCommand,
        ScaleObjectCommand,
        RemoveObjectCommand,
        GenerateCommand,
        ExportCommand,
        SolveCommand,
        SnapshotSceneCommand,
    ],
    Field(discriminator="op"),
]

MUTATING_OPS = frozenset({"add_plane", "add_object", "move_object", "scale_object", "remove_object"})

_command_adapter: TypeAdapter[Command] = TypeAdapter(Command)


def parse_command(data: object) -> Command:
    """Validate one decoded JSON value into a Command.

    Malformed input of any shape is a ProtocolError; the caller decides
    what request id (if any) to echo.
    """
    try:
        return _command_adapter.validate_python(data)
    except ValidationError as exc:
        first = exc.errors()[0]
        location = ".".join(str(part) for part in first["loc"]) or "command"
        raise ProtocolError(f"{location}: {first['msg']}") from None


def echoable_request_id(data: object) -> str | None:
    """Best-effort request id for feedback on commands that failed validation."""
    if isinstance(data, dict):
        value = data.get("request_id")
        if isinstance(value, str):
            return value
    return None


# -- feedback -------------------------------------------------------------


class StatementModel(BaseModel):
    constraint_type: str
    subject: str
    target: str | None = None

    @classmethod
    def from_statement(cls, statement: ConstraintStatement) -> "StatementModel":
        return cls(
            constraint_type=statement.type_tag.value,
            subject=statement.subject,
            target=statement.target,
        )

    def to_statement(self) -> ConstraintStatement:
        return ConstraintStatement(ConstraintType(self.constraint_type), self.subject, self.target)


class ObjectModel(BaseModel):
    id: str
    kind: str
    position: Vector
    scale: float
    yaw: float
    host_plane: str


class PlaneModel(BaseModel):
    id: str
    orientation: str
    origin: Vector
    u_axis: Vector
    extent_u: float
    extent_v: float
    objects: list[str]


class SceneModel(BaseModel):
    revision: int
    planes: list[PlaneModel]
    objects: list[ObjectModel]

    @classmethod
    def from_scene(cls, scene: Scene) -> "SceneModel":
        planes = [
            _plane_model(scene.planes[plane_id], sorted(scene.plane_objects[plane_id]))
            for plane_id in sorted(scene.planes)
        ]
        objects = [
            ObjectModel(
                id=obj.id,
                kind=obj.kind.value,
                position=obj.position.as_tuple(),
                scale=obj.scale,
                yaw=obj.yaw,
                host_plane=obj.host_plane,
            )
            for obj in (scene.objects[object_id] for object_id in sorted(scene.objects))
        ]
        return cls(revision=scene.revision, planes=planes, objects=objects)


def _plane_model(plane: Plane, occupants: list[str]) -> PlaneModel:
    return PlaneModel(
        id=plane.id,
        orientation=plane.orientation.value,
        origin=plane.origin.as_tuple(),
        u_axis=plane.u_axis.as_tuple(),
        extent_u=plane.extent_u,
        extent_v=plane.extent_v,
        objects=occupants,
    )


class SolveReportModel(BaseModel):
    exhausted: bool
    evaluated_count: int
    candidates: list[dict[str, tuple[str, Vector]]]

    @classmethod
    def from_report(cls, report: SolveReport) -> "SolveReportModel":
        return cls(
            exhausted=report.exhausted,
            evaluated_count=report.evaluated_count,
            candidates=[
                {
                    object_id: (plane_id, position.as_tuple())
                    for object_id, (plane_id, position) in sorted(candidate.placements.items())
                }
                for candidate in report.candidates
            ],
        )


class ErrorInfo(BaseModel):
    code: str
    message: str


class FeedbackPayload(BaseModel):
    scene: SceneModel | None = None
    statements: list[StatementModel] | None = None
    csv: str | None = None
    report: SolveReportModel | None = None
    plane_id: str | None = None
    object_id: str | None = None


class Feedback(BaseModel):
    request_id: str | None
    outcome: Literal["ok", "error"]
    revision: int
    error: ErrorInfo | None = None
    payload: FeedbackPayload | None = None
