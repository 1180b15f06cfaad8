"""Scene registry contracts: fresh ids, snapshots, revision, validation."""
import pytest

from layoutforge import (
    InvalidGeometry,
    ObjectKind,
    PlaneOrientation,
    UnknownObject,
    Vec3,
    add_object,
    new_scene,
    validate_scene,
)


def test_new_scene_is_empty_at_revision_zero():
    scene = new_scene()
    assert scene.planes == {}
    assert scene.objects == {}
    assert scene.revision == 0


def test_add_plane_registers_empty_occupant_list():
    scene = new_scene()
    plane_id = scene.add_plane(PlaneOrientation.VERTICAL, Vec3(0, 0, 0), Vec3(1, 0, 0), 10, 3)
    assert plane_id == "p1"
    assert scene.plane_objects[plane_id] == []
    assert scene.revision == 1


def test_add_plane_accepts_orientation_names():
    # Plain strings coerce to the enum so callers cannot store a value
    # that silently fails every orientation comparison later.
    scene = new_scene()
    plane_id = scene.add_plane("vertical", Vec3(0, 0, 0), Vec3(1, 0, 0), 10, 3)
    assert scene.plane(plane_id).orientation is PlaneOrientation.VERTICAL
    with pytest.raises(ValueError):
        scene.add_plane("diagonal", Vec3(0, 0, 0), Vec3(1, 0, 0), 10, 3)


def test_identical_specs_make_distinct_planes():
    # No geometric dedup: the registry counts keys, not shapes.
    scene = new_scene()
    first = scene.add_plane(PlaneOrientation.VERTICAL, Vec3(0, 0, 0), Vec3(1, 0, 0), 10, 3)
    second = scene.add_plane(PlaneOrientation.VERTICAL, Vec3(0, 0, 0), Vec3(1, 0, 0), 10, 3)
    assert first != second
    assert len(scene.planes) == 2


def test_add_plane_rejects_degenerate_rectangle():
    scene = new_scene()
    with pytest.raises(InvalidGeometry):
        scene.add_plane(PlaneOrientation.VERTICAL, Vec3(0, 0, 0), Vec3(1, 0, 0), 0, 3)
    assert scene.revision == 0


def test_plane_ids_are_never_reused():
    scene = new_scene()
    scene.add_plane(PlaneOrientation.VERTICAL, Vec3(0, 0, 0), Vec3(1, 0, 0), 10, 3)
    assert scene.fresh_id("p") == "p2"
    assert scene.fresh_id("p") == "p3"


class TestObjectSnapshot:
    def make_scene(self):
        scene = new_scene()
        scene.add_plane(PlaneOrientation.VERTICAL, Vec3(0, 0, 0), Vec3(1, 0, 0), 10, 3)
        clock = add_object(scene, ObjectKind.CLOCK, Vec3(2, 1.5, 0.1))
        return scene, clock

    def test_clock_snapshot_shows_vertical_attachment(self):
        scene, clock = self.make_scene()
        obj, record = scene.object_snapshot(clock)
        assert record.attach_to_vertical_plane is True
        assert record.attach_to_horizontal_plane is False
        assert obj.host_plane == "p1"

    def test_unknown_id_raises(self):
        scene, _ = self.make_scene()
        with pytest.raises(UnknownObject):
            scene.object_snapshot("ghost")

    def test_snapshot_is_a_pure_read(self):
        scene, clock = self.make_scene()
        revision = scene.revision
        first_obj, first_record = scene.object_snapshot(clock)
        second_obj, second_record = scene.object_snapshot(clock)
        assert first_obj == second_obj
        assert first_record == second_record
        assert scene.revision == revision

    def test_mutating_a_snapshot_leaves_the_scene_alone(self):
        scene, clock = self.make_scene()
        _obj, record = scene.object_snapshot(clock)
        record.align_x_with.add("intruder")
        assert "intruder" not in scene.records[clock].align_x_with
        validate_scene(scene)
