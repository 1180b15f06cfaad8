"""Shared test machinery: independent oracles and randomized generators.

The oracles here deliberately re-derive facts from raw registry data
(positions, host planes, occupant lists) without touching constraint
records or the engine's generation pass, so they can arbitrate it.
"""
from __future__ import annotations

import math
import random

from layoutforge import (
    ConstraintStatement,
    ConstraintType,
    Environment,
    NoCompatiblePlane,
    ObjectKind,
    Plane,
    PlaneOrientation,
    Scene,
    Tolerances,
    Vec3,
    add_object,
    move_object,
    new_scene,
    remove_object,
    scale_object,
)

ITEM_KINDS = (ObjectKind.CLOCK, ObjectKind.WINDOW, ObjectKind.DESK_CHAIR)

_AXIS_TAGS = (("x", ConstraintType.ALIGN_X), ("y", ConstraintType.ALIGN_Y), ("z", ConstraintType.ALIGN_Z))


def recompute_statements(scene: Scene, align_eps: float = 0.01) -> list[ConstraintStatement]:
    """O(n^2) recomputation of the canonical statement set from raw positions.

    Reads only objects' positions and host planes; never looks at a
    ConstraintRecord, so it is independent of incremental maintenance.
    """
    out: list[ConstraintStatement] = []
    for object_id, obj in scene.objects.items():
        if scene.planes[obj.host_plane].orientation is PlaneOrientation.VERTICAL:
            out.append(ConstraintStatement(ConstraintType.ATTACH_VERTICAL, object_id))
        else:
            out.append(ConstraintStatement(ConstraintType.ATTACH_HORIZONTAL, object_id))

    ids = sorted(scene.objects)
    for i, a in enumerate(ids):
        for b in ids[i + 1:]:
            first, second = scene.objects[a], scene.objects[b]
            if first.host_plane == second.host_plane:
                if scene.planes[first.host_plane].orientation is PlaneOrientation.VERTICAL:
                    out.append(ConstraintStatement(ConstraintType.SAME_VERTICAL_PLANE, a, b))
                else:
                    out.append(ConstraintStatement(ConstraintType.SAME_HORIZONTAL_PLANE, a, b))
            for axis, tag in _AXIS_TAGS:
                if abs(getattr(first.position, axis) - getattr(second.position, axis)) <= align_eps:
                    out.append(ConstraintStatement(tag, a, b))
    return sorted(out, key=ConstraintStatement.sort_key)


def _lattice(rng: random.Random, low: float, high: float, step: float = 0.5) -> float:
    """Random coordinate, usually on a coarse lattice so coincidences happen."""
    if rng.random() < 0.75:
        steps = int((high - low) / step)
        return low + step * rng.randint(0, steps)
    return rng.uniform(low, high)


def random_plane_args(rng: random.Random) -> tuple[PlaneOrientation, Vec3, Vec3, float, float]:
    orientation = rng.choice(list(PlaneOrientation))
    origin = Vec3(_lattice(rng, -4, 4), 0.0 if orientation is PlaneOrientation.HORIZONTAL else _lattice(rng, 0, 1), _lattice(rng, -4, 4))
    if rng.random() < 0.8:
        u = rng.choice([Vec3(1, 0, 0), Vec3(0, 0, 1), Vec3(-1, 0, 0), Vec3(0, 0, -1)])
    else:
        s = 1 / math.sqrt(2)
        u = rng.choice([Vec3(s, 0, s), Vec3(s, 0, -s)])
    extent_u = rng.choice([2.0, 3.0, 4.0, 6.0])
    extent_v = rng.choice([2.0, 3.0, 4.0])
    return orientation, origin, u, extent_u, extent_v


def random_item_request(rng: random.Random, scene: Scene, kind: ObjectKind, tolerances: Tolerances) -> Vec3 | None:
    """A requested position guaranteed to resolve onto some compatible plane."""
    compatible = [p for p in scene.planes.values() if p.orientation is kind.required_attachment]
    if not compatible:
        return None
    plane = rng.choice(compatible)
    a = _lattice(rng, 0, plane.extent_u)
    b = _lattice(rng, 0, plane.extent_v)
    offset = rng.uniform(-0.8, 0.8) * tolerances.snap_distance
    return plane.point_at(a, b) + plane.normal.scaled(offset)


def random_scene(
    rng: random.Random,
    max_planes: int = 4,
    max_objects: int = 12,
    mutations: int = 6,
    tolerances: Tolerances = Tolerances(),
) -> Scene:
    """Build a scene through a randomized add/move/remove/scale edit history."""
    scene = new_scene()
    for _ in range(rng.randint(1, max_planes)):
        scene.add_plane(*random_plane_args(rng))

    for _ in range(rng.randint(0, max_objects)):
        kind = rng.choice(ITEM_KINDS)
        request = random_item_request(rng, scene, kind, tolerances)
        if request is not None:
            add_object(scene, kind, request, tolerances)

    for _ in range(rng.randint(0, mutations)):
        if not scene.objects:
            break
        object_id = rng.choice(sorted(scene.objects))
        action = rng.random()
        if action < 0.4:
            kind = scene.objects[object_id].kind
            request = random_item_request(rng, scene, kind, tolerances)
            if request is not None:
                try:
                    move_object(scene, object_id, request, tolerances)
                except NoCompatiblePlane:
                    pass
        elif action < 0.6:
            remove_object(scene, object_id)
        else:
            scale_object(scene, object_id, rng.choice([0.5, 0.75, 1.0, 1.5, 2.0]))
    return scene


# -- statement and solver instance generators -----------------------------


def random_id(rng: random.Random) -> str:
    return rng.choice(["c", "w", "d", "obj_"]) + str(rng.randint(1, 30))


def random_canonical_statements(rng: random.Random, max_statements: int = 14) -> list[ConstraintStatement]:
    from layoutforge import canonicalize

    raw: list[ConstraintStatement] = []
    for _ in range(rng.randint(0, max_statements)):
        tag = rng.choice(list(ConstraintType))
        subject = random_id(rng)
        if tag.is_symmetric:
            target = random_id(rng)
            while target == subject:
                target = random_id(rng)
            raw.append(ConstraintStatement(tag, min(subject, target), max(subject, target)))
        else:
            raw.append(ConstraintStatement(tag, subject))
    return canonicalize(raw)


def random_environment(rng: random.Random, max_planes: int = 3) -> Environment:
    planes = []
    for index in range(rng.randint(1, max_planes)):
        orientation = rng.choice(list(PlaneOrientation))
        origin = Vec3(rng.randint(-2, 2), 0 if orientation is PlaneOrientation.HORIZONTAL else rng.randint(0, 1), rng.randint(-2, 2))
        u = rng.choice([Vec3(1, 0, 0), Vec3(0, 0, 1)])
        planes.append(Plane(f"env{index}", orientation, origin, u, rng.choice([1.0, 2.0]), rng.choice([1.0, 2.0])))
    return Environment(planes=tuple(planes), grid_resolution=rng.choice([0.5, 1.0]))


def random_solver_instance(
    rng: random.Random,
    max_objects: int = 4,
    assignment_bound: int = 100_000,
) -> tuple[list[ConstraintStatement], Environment]:
    """A (statements, environment) pair whose brute-force space fits the bound.

    Avoids emitting both attach orientations for one object; other
    unsatisfiable combinations are allowed (both routes should agree on
    emptiness).
    """
    from layoutforge import canonicalize

    while True:
        environment = random_environment(rng)
        object_count = rng.randint(0, max_objects)
        objects = [f"o{i}" for i in range(object_count)]
        domain_size = sum(p.grid_count(environment.grid_resolution) for p in environment.planes)
        if domain_size ** object_count > assignment_bound:
            continue

        raw: list[ConstraintStatement] = []
        for object_id in objects:
            roll = rng.random()
            if roll < 0.4:
                raw.append(ConstraintStatement(ConstraintType.ATTACH_VERTICAL, object_id))
            elif roll < 0.8:
                raw.append(ConstraintStatement(ConstraintType.ATTACH_HORIZONTAL, object_id))
        for _ in range(rng.randint(0, object_count)):
            if object_count < 2:
                break
            a, b = rng.sample(objects, 2)
            tag = rng.choice([
                ConstraintType.SAME_VERTICAL_PLANE,
                ConstraintType.SAME_HORIZONTAL_PLANE,
                ConstraintType.ALIGN_X,
                ConstraintType.ALIGN_Y,
                ConstraintType.ALIGN_Z,
            ])
            raw.append(ConstraintStatement(tag, min(a, b), max(a, b)))
        statements = canonicalize(raw)
        if statements or not objects:
            return statements, environment


def rename_statements(
    statements: list[ConstraintStatement], old: str, new: str
) -> list[ConstraintStatement]:
    """Substitute one object id throughout, restoring canonical form."""
    renamed = []
    for statement in statements:
        subject = new if statement.subject == old else statement.subject
        target = statement.target
        if target is not None:
            target = new if target == old else target
            subject, target = min(subject, target), max(subject, target)
        renamed.append(ConstraintStatement(statement.type_tag, subject, target))
    return sorted(renamed, key=ConstraintStatement.sort_key)
