"""Placement resolution and incremental constraint maintenance.

Every scene edit flows through here: items snap onto a compatible plane,
pick up an automatic orientation, and have their constraint record (and
every peer record, symmetrically) updated in place.  Moving is
remove-then-reinsert with identity and scale preserved; generation walks
the registry once and emits each fact exactly once.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidGeometry, NoCompatiblePlane, ScaleOutOfRange
from .geometry import ObjectCategory, ObjectKind, Plane, PlaneOrientation, Vec3, perpendicular, yaw_towards
from .scene import DEFAULT_SCALE, SCALE_MAX, SCALE_MIN, ConstraintRecord, Scene, SceneObject
from .statements import ConstraintStatement, ConstraintType


@dataclass(frozen=True)
class Tolerances:
    """Engine distances, in scene units.

    align_eps: coordinates within this are "aligned" (closed bound).
    snap_distance: max point-to-plane distance for attachment.
    corner_distance: proximity to two perpendicular walls that marks a corner.
    """

    align_eps: float = 0.01
    snap_distance: float = 0.25
    corner_distance: float = 0.5

    def __post_init__(self) -> None:
        if not (self.align_eps > 0 and self.snap_distance > 0 and self.corner_distance > 0):
            raise ValueError("tolerances must be strictly positive")
        if not self.align_eps < self.snap_distance:
            raise ValueError("align_eps must be smaller than snap_distance")


DEFAULT_TOLERANCES = Tolerances()


@dataclass(frozen=True)
class PlacementResolution:
    host_plane: str
    snapped_position: Vec3
    yaw: float
    corner_snap: bool


_AXIS_FIELDS = (
    ("align_x_with", ConstraintType.ALIGN_X, "x"),
    ("align_y_with", ConstraintType.ALIGN_Y, "y"),
    ("align_z_with", ConstraintType.ALIGN_Z, "z"),
)

_PEER_FIELD_TAGS = (
    ("same_vertical_plane_with", ConstraintType.SAME_VERTICAL_PLANE),
    ("same_horizontal_plane_with", ConstraintType.SAME_HORIZONTAL_PLANE),
    ("align_x_with", ConstraintType.ALIGN_X),
    ("align_y_with", ConstraintType.ALIGN_Y),
    ("align_z_with", ConstraintType.ALIGN_Z),
)


def _nearest_plane(planes: list[Plane], point: Vec3) -> tuple[Plane, float] | None:
    best: tuple[float, str, Plane] | None = None
    for plane in planes:
        key = (plane.distance_to(point), plane.id)
        if best is None or key < (best[0], best[1]):
            best = (key[0], key[1], plane)
    if best is None:
        return None
    return best[2], best[0]


def _auto_yaw(scene: Scene, host: Plane, snapped: Vec3) -> float:
    if host.orientation is PlaneOrientation.VERTICAL:
        # Wall items face off the wall, opposite its stored normal.
        return yaw_towards(host.normal.scaled(-1.0))
    walls = [p for p in scene.planes.values() if p.orientation is PlaneOrientation.VERTICAL]
    nearest = _nearest_plane(walls, snapped)
    if nearest is None:
        return 0.0
    return yaw_towards(nearest[0].u_axis)


def _is_corner(scene: Scene, snapped: Vec3, corner_distance: float) -> bool:
    nearby = [
        p for p in scene.planes.values()
        if p.orientation is PlaneOrientation.VERTICAL and p.distance_to(snapped) <= corner_distance
    ]
    for i, first in enumerate(nearby):
        for second in nearby[i + 1:]:
            if perpendicular(first.normal, second.normal):
                return True
    return False


def resolve_placement(
    scene: Scene,
    kind: ObjectKind,
    requested_position: Vec3,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> PlacementResolution:
    """Snap a requested item position onto the nearest compatible plane.

    The winner is the closest plane of the kind's required orientation
    within the snap distance (ties go to the lowest plane id); the
    position is the clamped orthogonal projection onto its rectangle.
    """
    if kind.category is not ObjectCategory.ITEM:
        raise ValueError(f"{kind.value} is a structure; only items are placed on planes")
    if not requested_position.is_finite():
        raise InvalidGeometry("requested position must be finite")

    wanted = kind.required_attachment
    compatible = [p for p in scene.planes.values() if p.orientation is wanted]
    nearest = _nearest_plane(compatible, requested_position)
    if nearest is None or nearest[1] > tolerances.snap_distance:
        raise NoCompatiblePlane(
            f"no {wanted.value} plane within {tolerances.snap_distance} of {requested_position.as_tuple()}"
        )
    host, _ = nearest
    snapped = host.closest_point(requested_position)
    return PlacementResolution(
        host_plane=host.id,
        snapped_position=snapped,
        yaw=_auto_yaw(scene, host, snapped),
        corner_snap=_is_corner(scene, snapped, tolerances.corner_distance),
    )


def _insert(
    scene: Scene,
    object_id: str,
    kind: ObjectKind,
    resolution: PlacementResolution,
    scale: float,
    align_eps: float,
) -> None:
    host = scene.planes[resolution.host_plane]
    vertical = host.orientation is PlaneOrientation.VERTICAL
    record = ConstraintRecord(
        attach_to_vertical_plane=vertical,
        attach_to_horizontal_plane=not vertical,
    )

    same_field = "same_vertical_plane_with" if vertical else "same_horizontal_plane_with"
    for peer_id in scene.plane_objects[resolution.host_plane]:
        getattr(record, same_field).add(peer_id)
        getattr(scene.records[peer_id], same_field).add(object_id)

    position = resolution.snapped_position
    for field, _tag, axis in _AXIS_FIELDS:
        coordinate = getattr(position, axis)
        for peer_id, peer in scene.objects.items():
            if abs(getattr(peer.position, axis) - coordinate) <= align_eps:
                getattr(record, field).add(peer_id)
                getattr(scene.records[peer_id], field).add(object_id)

    scene.objects[object_id] = SceneObject(
        id=object_id,
        kind=kind,
        position=position,
        scale=scale,
        yaw=resolution.yaw,
        host_plane=resolution.host_plane,
    )
    scene.records[object_id] = record
    scene.plane_objects[resolution.host_plane].append(object_id)


def _detach(scene: Scene, object_id: str) -> None:
    obj = scene.objects.pop(object_id)
    del scene.records[object_id]
    scene.plane_objects[obj.host_plane].remove(object_id)
    for record in scene.records.values():
        record.drop_peer(object_id)


def add_object(
    scene: Scene,
    kind: ObjectKind,
    requested_position: Vec3,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> str:
    """Place a new item and wire up its constraint record; returns the fresh id."""
    resolution = resolve_placement(scene, kind, requested_position, tolerances)
    object_id = scene.fresh_id(kind.id_prefix)
    _insert(scene, object_id, kind, resolution, DEFAULT_SCALE, tolerances.align_eps)
    scene.revision += 1
    return object_id


def remove_object(scene: Scene, object_id: str) -> None:
    """Delete an object and every reference to it; unknown ids change nothing."""
    scene.require_object(object_id)
    _detach(scene, object_id)
    scene.revision += 1


def move_object(
    scene: Scene,
    object_id: str,
    new_requested_position: Vec3,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> None:
    """Re-place an object: remove plus add again, keeping its id and scale.

    Resolution happens first, so a failed move leaves the scene untouched.
    """
    obj = scene.require_object(object_id)
    resolution = resolve_placement(scene, obj.kind, new_requested_position, tolerances)
    scale = obj.scale
    _detach(scene, object_id)
    _insert(scene, object_id, obj.kind, resolution, scale, tolerances.align_eps)
    scene.revision += 1


def scale_object(scene: Scene, object_id: str, factor: float) -> None:
    """Set an object's uniform scale; position and constraints are untouched.

    The factor is range-checked before the id lookup, so an out-of-range
    factor is reported as such no matter what it targets.
    """
    if not (math.isfinite(factor) and SCALE_MIN <= factor <= SCALE_MAX):
        raise ScaleOutOfRange(f"scale {factor} outside [{SCALE_MIN}, {SCALE_MAX}]")
    obj = scene.require_object(object_id)
    obj.scale = factor
    scene.revision += 1


def generate_constraints(scene: Scene) -> list[ConstraintStatement]:
    """Flatten the registry into the canonical, duplicate-free statement list.

    Unary attachment facts appear once per object; each symmetric fact is
    emitted only from its lexicographically smaller endpoint.
    """
    out: list[ConstraintStatement] = []
    for object_id, record in scene.records.items():
        if record.attach_to_vertical_plane:
            out.append(ConstraintStatement(ConstraintType.ATTACH_VERTICAL, object_id))
        else:
            out.append(ConstraintStatement(ConstraintType.ATTACH_HORIZONTAL, object_id))
        for field, tag in _PEER_FIELD_TAGS:
            for peer_id in getattr(record, field):
                if object_id < peer_id:
                    out.append(ConstraintStatement(tag, object_id, peer_id))
    out.sort(key=ConstraintStatement.sort_key)
    return out
