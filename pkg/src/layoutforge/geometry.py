"""Geometric primitives: vectors, planes, and the object-kind taxonomy.

Coordinate convention: right-handed, y is up, one scene unit is roughly a
meter.  A plane is a bounded rectangle described by a corner ``origin``,
an in-plane horizontal unit vector ``u_axis``, and two positive extents.
The second in-plane axis is derived, never stored:

* vertical planes (walls):   ``v_axis`` is straight up, ``normal = u x up``
* horizontal planes (floors): ``normal`` is straight up, ``v_axis = u x up``

so surface points are ``origin + a*u_axis + b*v_axis`` with
``a in [0, extent_u]`` and ``b in [0, extent_v]``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import InvalidGeometry

# Slack for unit-length / horizontality checks on supplied axes.
_AXIS_EPS = 1e-9


@dataclass(frozen=True)
class Vec3:
    x: float
    y: float
    z: float

    def __add__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x - other.x, self.y - other.y, self.z - other.z)

    def scaled(self, k: float) -> "Vec3":
        return Vec3(self.x * k, self.y * k, self.z * k)

    def dot(self, other: "Vec3") -> float:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def norm(self) -> float:
        return math.sqrt(self.dot(self))

    def distance_to(self, other: "Vec3") -> float:
        return (self - other).norm()

    def is_finite(self) -> bool:
        return all(math.isfinite(c) for c in (self.x, self.y, self.z))

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)


UP = Vec3(0.0, 1.0, 0.0)


class PlaneOrientation(Enum):
    VERTICAL = "vertical"
    HORIZONTAL = "horizontal"


class ObjectCategory(Enum):
    STRUCTURE = "structure"
    ITEM = "item"


class ObjectKind(Enum):
    """The five placeable kinds.  Structures become planes; items attach to them."""

    WALL = "wall"
    FLOOR = "floor"
    DESK_CHAIR = "desk_chair"
    CLOCK = "clock"
    WINDOW = "window"

    @property
    def category(self) -> ObjectCategory:
        if self in (ObjectKind.WALL, ObjectKind.FLOOR):
            return ObjectCategory.STRUCTURE
        return ObjectCategory.ITEM

    @property
    def required_attachment(self) -> PlaneOrientation | None:
        """Plane orientation this kind must sit on; None for structures."""
        if self is ObjectKind.DESK_CHAIR:
            return PlaneOrientation.HORIZONTAL
        if self in (ObjectKind.CLOCK, ObjectKind.WINDOW):
            return PlaneOrientation.VERTICAL
        return None

    @property
    def id_prefix(self) -> str:
        return {"wall": "p", "floor": "p", "desk_chair": "d", "clock": "c", "window": "w"}[self.value]


def _horizontal_perp(u: Vec3) -> Vec3:
    # u x up for a horizontal unit u: rotates u a quarter turn about the up axis.
    return Vec3(-u.z, 0.0, u.x)


@dataclass(frozen=True)
class Plane:
    """A bounded wall or floor rectangle; the key type of the plane registry."""

    id: str
    orientation: PlaneOrientation
    origin: Vec3
    u_axis: Vec3
    extent_u: float
    extent_v: float

    def __post_init__(self) -> None:
        if not (self.origin.is_finite() and self.u_axis.is_finite()):
            raise InvalidGeometry(f"plane {self.id}: non-finite coordinates")
        if not (self.extent_u > 0 and self.extent_v > 0 and math.isfinite(self.extent_u) and math.isfinite(self.extent_v)):
            raise InvalidGeometry(f"plane {self.id}: extents must be positive, got {self.extent_u} x {self.extent_v}")
        n = self.u_axis.norm()
        if abs(n - 1.0) > 1e-6:
            raise InvalidGeometry(f"plane {self.id}: u_axis must be unit length, |u| = {n}")
        if abs(self.u_axis.y) > _AXIS_EPS:
            raise InvalidGeometry(f"plane {self.id}: u_axis must be horizontal (zero y component)")

    @property
    def v_axis(self) -> Vec3:
        if self.orientation is PlaneOrientation.VERTICAL:
            return UP
        return _horizontal_perp(self.u_axis)

    @property
    def normal(self) -> Vec3:
        if self.orientation is PlaneOrientation.VERTICAL:
            return _horizontal_perp(self.u_axis)
        return UP

    def point_at(self, a: float, b: float) -> Vec3:
        return self.origin + self.u_axis.scaled(a) + self.v_axis.scaled(b)

    def local_coords(self, point: Vec3) -> tuple[float, float]:
        d = point - self.origin
        return d.dot(self.u_axis), d.dot(self.v_axis)

    def closest_point(self, point: Vec3) -> Vec3:
        """Orthogonal projection of ``point`` clamped to the rectangle."""
        a, b = self.local_coords(point)
        a = min(max(a, 0.0), self.extent_u)
        b = min(max(b, 0.0), self.extent_v)
        return self.point_at(a, b)

    def distance_to(self, point: Vec3) -> float:
        return point.distance_to(self.closest_point(point))

    def grid_shape(self, resolution: float) -> tuple[int, int]:
        """Grid point counts along u and v; edges included when on the lattice."""
        nu = int(math.floor(self.extent_u / resolution + 1e-9)) + 1
        nv = int(math.floor(self.extent_v / resolution + 1e-9)) + 1
        return nu, nv

    def grid_point(self, index: int, resolution: float) -> Vec3:
        """World position of lattice point ``index`` (u-major order)."""
        nu, nv = self.grid_shape(resolution)
        if not 0 <= index < nu * nv:
            raise IndexError(f"grid index {index} out of range for {nu}x{nv} lattice")
        i, j = divmod(index, nv)
        return self.point_at(i * resolution, j * resolution)

    def grid_count(self, resolution: float) -> int:
        nu, nv = self.grid_shape(resolution)
        return nu * nv


def unit_horizontal(x: float, z: float) -> Vec3:
    """Normalize an (x, z) direction into a horizontal unit axis."""
    n = math.hypot(x, z)
    if n == 0.0 or not math.isfinite(n):
        raise InvalidGeometry("axis direction must be a nonzero finite horizontal vector")
    return Vec3(x / n, 0.0, z / n)


def perpendicular(a: Vec3, b: Vec3, eps: float = 1e-6) -> bool:
    return abs(a.dot(b)) <= eps


def yaw_towards(direction: Vec3) -> float:
    """Yaw (radians about up) whose facing matches a horizontal direction.

    Facing convention: yaw 0 looks along +z, and ``facing = (sin yaw, 0, cos yaw)``.
    """
    return math.atan2(direction.x, direction.z)
