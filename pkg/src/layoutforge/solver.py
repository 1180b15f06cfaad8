"""Layout enumeration: place constrained objects into a new environment.

The environment is a finite set of planes with a grid discretization, so
"all satisfying layouts" is a finite enumeration.  ``solve`` runs a
backtracking search with upfront propagation (orientation requirements,
same-plane equivalence classes, per-axis alignment pruning);
``brute_force_enumerate`` is the deliberately naive oracle that checks
the full Cartesian product with ``verify``.  Both emit candidates in the
same lexicographic order: objects sorted by id, each assignment ordered
by (plane id, grid index).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product
from pathlib import Path

from .errors import ContradictoryStatements, InvalidGeometry, SearchSpaceTooLarge, UnplacedObject
from .geometry import Plane, PlaneOrientation, Vec3, unit_horizontal
from .inference import DEFAULT_TOLERANCES
from .statements import ConstraintStatement, ConstraintType

DEFAULT_CANDIDATE_CAP = 10_000
BRUTE_FORCE_GUARD = 10_000_000

_ATTACH_ORIENTATION = {
    ConstraintType.ATTACH_VERTICAL: PlaneOrientation.VERTICAL,
    ConstraintType.ATTACH_HORIZONTAL: PlaneOrientation.HORIZONTAL,
}
_SAME_PLANE_ORIENTATION = {
    ConstraintType.SAME_VERTICAL_PLANE: PlaneOrientation.VERTICAL,
    ConstraintType.SAME_HORIZONTAL_PLANE: PlaneOrientation.HORIZONTAL,
}
_ALIGN_AXIS = {
    ConstraintType.ALIGN_X: "x",
    ConstraintType.ALIGN_Y: "y",
    ConstraintType.ALIGN_Z: "z",
}


@dataclass(frozen=True)
class Environment:
    """Target planes plus the lattice step used to discretize their surfaces."""

    planes: tuple[Plane, ...]
    grid_resolution: float

    def __post_init__(self) -> None:
        if not self.planes:
            raise InvalidGeometry("environment needs at least one plane")
        ids = [p.id for p in self.planes]
        if len(ids) != len(set(ids)):
            raise InvalidGeometry("duplicate plane ids in environment")
        if not (math.isfinite(self.grid_resolution) and self.grid_resolution > 0):
            raise InvalidGeometry("grid resolution must be positive")
        smallest = min(min(p.extent_u, p.extent_v) for p in self.planes)
        if self.grid_resolution > smallest:
            raise InvalidGeometry(
                f"grid resolution {self.grid_resolution} exceeds the smallest plane extent {smallest}"
            )

    def plane_map(self) -> dict[str, Plane]:
        return {p.id: p for p in self.planes}


@dataclass(frozen=True)
class LayoutCandidate:
    """One complete assignment of every constrained object to (plane, position)."""

    placements: dict[str, tuple[str, Vec3]] = field(default_factory=dict)

    def position_of(self, object_id: str) -> Vec3:
        return self.placements[object_id][1]

    def plane_of(self, object_id: str) -> str:
        return self.placements[object_id][0]


@dataclass(frozen=True)
class SolveReport:
    candidates: list[LayoutCandidate]
    exhausted: bool
    evaluated_count: int


def mentioned_objects(statements: list[ConstraintStatement]) -> list[str]:
    """All object ids a statement list talks about, sorted."""
    ids: set[str] = set()
    for statement in statements:
        ids.add(statement.subject)
        if statement.target is not None:
            ids.add(statement.target)
    return sorted(ids)


def verify(
    candidate: LayoutCandidate,
    statements: list[ConstraintStatement],
    environment: Environment,
    align_eps: float = DEFAULT_TOLERANCES.align_eps,
) -> bool:
    """True iff every statement holds for the candidate's placements."""
    planes = environment.plane_map()

    def placement(object_id: str) -> tuple[str, Vec3]:
        try:
            return candidate.placements[object_id]
        except KeyError:
            raise UnplacedObject(f"candidate does not place {object_id!r}") from None

    for statement in statements:
        plane_id, position = placement(statement.subject)
        plane = planes.get(plane_id)
        if plane is None:
            raise InvalidGeometry(f"candidate references unknown plane {plane_id!r}")
        orientation = _ATTACH_ORIENTATION.get(statement.type_tag)
        if orientation is not None:
            if plane.orientation is not orientation:
                return False
            continue
        peer_plane_id, peer_position = placement(statement.target)  # type: ignore[arg-type]
        orientation = _SAME_PLANE_ORIENTATION.get(statement.type_tag)
        if orientation is not None:
            if peer_plane_id != plane_id or plane.orientation is not orientation:
                return False
            continue
        axis = _ALIGN_AXIS[statement.type_tag]
        if abs(getattr(position, axis) - getattr(peer_position, axis)) > align_eps:
            return False
    return True


# -- upfront propagation ------------------------------------------------


class _UnionFind:
    def __init__(self, items: list[str]):
        self.parent = {item: item for item in items}

    def find(self, item: str) -> str:
        root = item
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[item] != root:
            self.parent[item], item = root, self.parent[item]
        return root

    def union(self, a: str, b: str) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


def _orientation_requirements(
    objects: list[str],
    statements: list[ConstraintStatement],
) -> tuple[_UnionFind, dict[str, PlaneOrientation]]:
    """Merge same-plane classes and derive each class's required orientation.

    Raises ContradictoryStatements for conflicts that need no geometry:
    an object (or a whole same-plane class) pinned to both orientations.
    """
    uf = _UnionFind(objects)
    for statement in statements:
        if statement.type_tag in _SAME_PLANE_ORIENTATION:
            uf.union(statement.subject, statement.target)  # type: ignore[arg-type]

    required: dict[str, PlaneOrientation] = {}

    def impose(object_id: str, orientation: PlaneOrientation, reason: str) -> None:
        root = uf.find(object_id)
        current = required.get(root)
        if current is not None and current is not orientation:
            raise ContradictoryStatements(reason)
        required[root] = orientation

    for statement in statements:
        orientation = _ATTACH_ORIENTATION.get(statement.type_tag)
        if orientation is not None:
            impose(statement.subject, orientation, f"{statement.subject} is attached to both plane orientations")
        orientation = _SAME_PLANE_ORIENTATION.get(statement.type_tag)
        if orientation is not None:
            impose(
                statement.subject,
                orientation,
                f"same-plane class of {statement.subject} requires both orientations",
            )
    return uf, required


def _domain(environment: Environment, orientation: PlaneOrientation | None) -> list[tuple[str, int, Vec3]]:
    """(plane id, grid index, position) entries, already in emission order."""
    entries: list[tuple[str, int, Vec3]] = []
    for plane in sorted(environment.planes, key=lambda p: p.id):
        if orientation is not None and plane.orientation is not orientation:
            continue
        for index in range(plane.grid_count(environment.grid_resolution)):
            entries.append((plane.id, index, plane.grid_point(index, environment.grid_resolution)))
    return entries


class _CapReached(Exception):
    pass


def solve(
    statements: list[ConstraintStatement],
    environment: Environment,
    cap: int | None = DEFAULT_CANDIDATE_CAP,
    align_eps: float = DEFAULT_TOLERANCES.align_eps,
) -> SolveReport:
    """Enumerate every grid layout satisfying the statements, up to ``cap``.

    Infeasibility is not an error: it is an exhausted report with no
    candidates.  Only logically self-contradictory statement sets raise.
    ``evaluated_count`` is the number of tentative placements explored.
    """
    objects = mentioned_objects(statements)
    uf, required = _orientation_requirements(objects, statements)

    domains = {
        object_id: _domain(environment, required.get(uf.find(object_id)))
        for object_id in objects
    }
    align_edges: dict[str, list[tuple[str, str]]] = {object_id: [] for object_id in objects}
    for statement in statements:
        axis = _ALIGN_AXIS.get(statement.type_tag)
        if axis is not None:
            align_edges[statement.subject].append((axis, statement.target))  # type: ignore[list-item]
            align_edges[statement.target].append((axis, statement.subject))  # type: ignore[index]

    candidates: list[LayoutCandidate] = []
    assigned: dict[str, tuple[str, Vec3]] = {}
    class_plane: dict[str, str] = {}
    evaluated = 0

    def backtrack(depth: int) -> None:
        nonlocal evaluated
        if depth == len(objects):
            if cap is not None and len(candidates) >= cap:
                raise _CapReached
            candidates.append(LayoutCandidate(dict(assigned)))
            return
        object_id = objects[depth]
        root = uf.find(object_id)
        pinned = class_plane.get(root)
        for plane_id, _index, position in domains[object_id]:
            if pinned is not None and plane_id != pinned:
                continue
            evaluated += 1
            ok = True
            for axis, peer in align_edges[object_id]:
                peer_placement = assigned.get(peer)
                if peer_placement is not None and abs(
                    getattr(peer_placement[1], axis) - getattr(position, axis)
                ) > align_eps:
                    ok = False
                    break
            if not ok:
                continue
            assigned[object_id] = (plane_id, position)
            if pinned is None:
                class_plane[root] = plane_id
            backtrack(depth + 1)
            del assigned[object_id]
            if pinned is None:
                del class_plane[root]

    exhausted = True
    try:
        backtrack(0)
    except _CapReached:
        exhausted = False
    return SolveReport(candidates=candidates, exhausted=exhausted, evaluated_count=evaluated)


def brute_force_enumerate(
    statements: list[ConstraintStatement],
    environment: Environment,
    align_eps: float = DEFAULT_TOLERANCES.align_eps,
    guard: int = BRUTE_FORCE_GUARD,
) -> list[LayoutCandidate]:
    """Filter the full (plane, grid point) product with ``verify``; no pruning.

    Intentionally independent of ``solve`` so the two can cross-check
    each other.  Refuses to run past ``guard`` total assignments.
    """
    objects = mentioned_objects(statements)
    domain = _domain(environment, None)
    total = len(domain) ** len(objects) if objects else 1
    if total > guard:
        raise SearchSpaceTooLarge(f"{total} assignments exceed the {guard} guard")

    out: list[LayoutCandidate] = []
    for combo in product(domain, repeat=len(objects)):
        candidate = LayoutCandidate(
            {object_id: (plane_id, position) for object_id, (plane_id, _i, position) in zip(objects, combo)}
        )
        if verify(candidate, statements, environment, align_eps):
            out.append(candidate)
    return out


# -- environment file ----------------------------------------------------


def parse_environment(text: str) -> Environment:
    """Parse the line-oriented environment format.

    One plane per line::

        plane <id> <vertical|horizontal> <ox> <oy> <oz> <ux> <uy> <uz> <extent_u> <extent_v>

    plus a single ``grid <resolution>`` line.  Blank lines and ``#``
    comments are ignored.
    """
    planes: list[Plane] = []
    resolution: float | None = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        keyword = fields[0]
        if keyword == "plane":
            if len(fields) != 11:
                raise InvalidGeometry(f"line {line_no}: plane takes 10 fields, got {len(fields) - 1}")
            try:
                numbers = [float(v) for v in fields[3:]]
            except ValueError:
                raise InvalidGeometry(f"line {line_no}: non-numeric plane field") from None
            try:
                orientation = PlaneOrientation(fields[2])
            except ValueError:
                raise InvalidGeometry(f"line {line_no}: orientation must be vertical or horizontal") from None
            ox, oy, oz, ux, uy, uz, extent_u, extent_v = numbers
            if abs(uy) > 1e-9:
                raise InvalidGeometry(f"line {line_no}: u_axis must be horizontal")
            planes.append(
                Plane(fields[1], orientation, Vec3(ox, oy, oz), unit_horizontal(ux, uz), extent_u, extent_v)
            )
        elif keyword == "grid":
            if len(fields) != 2:
                raise InvalidGeometry(f"line {line_no}: grid takes one resolution value")
            if resolution is not None:
                raise InvalidGeometry(f"line {line_no}: duplicate grid line")
            try:
                resolution = float(fields[1])
            except ValueError:
                raise InvalidGeometry(f"line {line_no}: non-numeric grid resolution") from None
        else:
            raise InvalidGeometry(f"line {line_no}: unknown directive {keyword!r}")
    if resolution is None:
        raise InvalidGeometry("environment file is missing its grid line")
    return Environment(planes=tuple(planes), grid_resolution=resolution)


def load_environment(path: str | Path) -> Environment:
    return parse_environment(Path(path).read_text(encoding="utf-8"))
