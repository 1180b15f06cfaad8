"""Scene registries: placed objects, their constraint records, and planes.

A Scene owns the two global dictionaries the whole engine revolves
around: the object registry (object id -> placed object + its constraint
record) and the plane registry (plane id -> plane + ordered occupant
list).  Mutations bump a monotone revision counter; reads never do.
"""
from __future__ import annotations

import copy
from dataclasses import dataclass, field

from .errors import InvalidGeometry, UnknownObject
from .geometry import ObjectKind, Plane, PlaneOrientation, Vec3

SCALE_MIN = 0.5
SCALE_MAX = 2.0
DEFAULT_SCALE = 1.0

# How far a stored position may sit off its host plane.  Placement always
# snaps exactly onto the surface, so this only guards against drift bugs.
_ON_PLANE_EPS = 1e-7


@dataclass
class SceneObject:
    """A placed item: position on a host plane, uniform scale, yaw about up."""

    id: str
    kind: ObjectKind
    position: Vec3
    scale: float
    yaw: float
    host_plane: str


@dataclass
class ConstraintRecord:
    """Per-object constraint state: two attachment flags plus five peer sets.

    Peer sets are kept symmetric across the registry: ``b`` is in one of
    ``a``'s sets exactly when ``a`` is in ``b``'s matching set.
    """

    attach_to_vertical_plane: bool = False
    attach_to_horizontal_plane: bool = False
    same_vertical_plane_with: set[str] = field(default_factory=set)
    same_horizontal_plane_with: set[str] = field(default_factory=set)
    align_x_with: set[str] = field(default_factory=set)
    align_y_with: set[str] = field(default_factory=set)
    align_z_with: set[str] = field(default_factory=set)

    PEER_FIELDS = (
        "same_vertical_plane_with",
        "same_horizontal_plane_with",
        "align_x_with",
        "align_y_with",
        "align_z_with",
    )

    def peers(self) -> set[str]:
        out: set[str] = set()
        for name in self.PEER_FIELDS:
            out |= getattr(self, name)
        return out

    def drop_peer(self, object_id: str) -> None:
        for name in self.PEER_FIELDS:
            getattr(self, name).discard(object_id)


class Scene:
    """Single-writer scene state; mutate under exclusive access, read via snapshots."""

    def __init__(self) -> None:
        self.objects: dict[str, SceneObject] = {}
        self.records: dict[str, ConstraintRecord] = {}
        self.planes: dict[str, Plane] = {}
        self.plane_objects: dict[str, list[str]] = {}
        self.revision = 0
        self._id_counters: dict[str, int] = {}

    # -- identifiers ---------------------------------------------------

    def fresh_id(self, prefix: str) -> str:
        """Next id for a prefix; counters never rewind, so ids are never reused."""
        n = self._id_counters.get(prefix, 0) + 1
        self._id_counters[prefix] = n
        return f"{prefix}{n}"

    # -- plane registry ------------------------------------------------

    def add_plane(
        self,
        orientation: PlaneOrientation | str,
        origin: Vec3,
        u_axis: Vec3,
        extent_u: float,
        extent_v: float,
    ) -> str:
        """Register a new plane and return its fresh id.

        Coincident geometry is allowed: two identical specs yield two planes.
        """
        plane_id = self.fresh_id("p")
        plane = Plane(plane_id, PlaneOrientation(orientation), origin, u_axis, extent_u, extent_v)
        self.planes[plane_id] = plane
        self.plane_objects[plane_id] = []
        self.revision += 1
        return plane_id

    def plane(self, plane_id: str) -> Plane:
        try:
            return self.planes[plane_id]
        except KeyError:
            raise InvalidGeometry(f"unknown plane id {plane_id!r}") from None

    # -- object registry -----------------------------------------------

    def require_object(self, object_id: str) -> SceneObject:
        try:
            return self.objects[object_id]
        except KeyError:
            raise UnknownObject(f"unknown object id {object_id!r}") from None

    def object_snapshot(self, object_id: str) -> tuple[SceneObject, ConstraintRecord]:
        """Deep-copied view of one object and its record; the scene is untouched."""
        obj = self.require_object(object_id)
        return copy.deepcopy(obj), copy.deepcopy(self.records[object_id])


def new_scene() -> Scene:
    """Empty scene: no planes, no objects, revision 0."""
    return Scene()


def validate_scene(scene: Scene, on_plane_eps: float = _ON_PLANE_EPS) -> None:
    """Check every cross-registry invariant; raises AssertionError on violation.

    Test harnesses run this after each mutation; it is not part of any
    hot path.
    """
    assert scene.objects.keys() == scene.records.keys(), "object/record key sets differ"
    assert scene.planes.keys() == scene.plane_objects.keys(), "plane/list key sets differ"

    membership: dict[str, str] = {}
    for plane_id, occupant_ids in scene.plane_objects.items():
        assert len(occupant_ids) == len(set(occupant_ids)), f"duplicate ids in plane {plane_id} list"
        for object_id in occupant_ids:
            assert object_id in scene.objects, f"plane {plane_id} lists dead object {object_id}"
            assert object_id not in membership, f"object {object_id} appears on two planes"
            membership[object_id] = plane_id

    for object_id, obj in scene.objects.items():
        assert membership.get(object_id) == obj.host_plane, f"object {object_id} missing from its host plane list"
        plane = scene.planes[obj.host_plane]
        assert obj.kind.required_attachment is plane.orientation, f"object {object_id} on wrong plane orientation"
        assert plane.distance_to(obj.position) <= on_plane_eps, f"object {object_id} is off its host plane"
        assert SCALE_MIN <= obj.scale <= SCALE_MAX, f"object {object_id} scale {obj.scale} out of range"

        record = scene.records[object_id]
        assert not (record.attach_to_vertical_plane and record.attach_to_horizontal_plane), \
            f"object {object_id} attached to both orientations"
        expected_vertical = plane.orientation is PlaneOrientation.VERTICAL
        assert record.attach_to_vertical_plane == expected_vertical, f"object {object_id} vertical flag wrong"
        assert record.attach_to_horizontal_plane == (not expected_vertical), f"object {object_id} horizontal flag wrong"

        for name in ConstraintRecord.PEER_FIELDS:
            peers: set[str] = getattr(record, name)
            assert object_id not in peers, f"object {object_id} references itself in {name}"
            for peer_id in peers:
                assert peer_id in scene.objects, f"{object_id}.{name} references dead object {peer_id}"
                assert object_id in getattr(scene.records[peer_id], name), \
                    f"asymmetric {name} between {object_id} and {peer_id}"
