import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st
from scipy.spatial.transform import Rotation

from stableplace.core.config import SettleParams
from stableplace.core.exceptions import DegenerateInput, IndexOutOfRange
from stableplace.services.geometry import RigidPose, align_vectors, primitives
from stableplace.services.settling import (
    TableConfig,
    drop_grid,
    grid_orientations,
    instability,
    prepare_body,
    read_trace,
    release_pose,
    settle,
    settle_body,
    write_trace,
)


def _bottom_facet(body) -> int:
    return int(np.argmin(body.facets.normals[:, 2]))


def test_instability_uses_trailing_window():
    movements = [4.0, 2.0, 0.0, 0.0]
    assert [instability(movements, 2, i) for i in range(1, 5)] == [4.0, 3.0, 1.0, 0.0]


def test_instability_rejects_steps_outside_trace():
    with pytest.raises(IndexOutOfRange):
        instability([1.0, 2.0], 2, 0)
    with pytest.raises(IndexOutOfRange):
        instability([1.0, 2.0], 2, 3)


@given(
    movements=st.lists(st.floats(min_value=0.0, max_value=10.0), min_size=1, max_size=40),
    window=st.integers(min_value=1, max_value=50),
)
def test_instability_is_bounded_by_window_values(movements, window):
    for i in range(1, len(movements) + 1):
        recent = movements[max(0, i - window) : i]
        value = instability(movements, window, i)
        assert min(recent) - 1e-9 <= value <= max(recent) + 1e-9


def test_cube_resting_on_face_converges_without_toppling(cube_body, settle_params):
    start = release_pose(cube_body, np.eye(3), TableConfig.flat(), settle_params.drop_clearance)
    outcome, trace = settle_body(cube_body, start, params=settle_params)

    assert trace.converged
    assert outcome.stable
    assert outcome.topples == 0
    assert outcome.resting_face == _bottom_facet(cube_body)
    assert outcome.instability < settle_params.epsilon
    np.testing.assert_allclose(outcome.pose.rotation, np.eye(3), atol=1e-12)
    np.testing.assert_allclose(outcome.pose.apply(cube_body.hull_vertices)[:, 2].min(), 0.0, atol=1e-12)
    np.testing.assert_allclose(outcome.down_direction, [0.0, 0.0, -1.0], atol=1e-12)
    assert len(trace.poses) == len(trace.movements) + 1


def test_rod_topples_on_tilted_table_when_too_tall():
    # projected COM offset (h/2)·tan 10° is 1.06 r for h = 12 r
    body = prepare_body(primitives.rod(radius=0.01, height=0.12))
    table = TableConfig.tilted(10.0, 0.0)
    start = release_pose(body, table.rotation_from_level(), table, 0.1)
    outcome, _ = settle_body(body, start, table)
    assert outcome.topples >= 1
    assert outcome.resting_face != _bottom_facet(body)


def test_rod_stands_on_tilted_table_when_short_enough():
    # offset is 0.88 r for h = 10 r, inside the cap polygon's apothem
    body = prepare_body(primitives.rod(radius=0.01, height=0.10))
    table = TableConfig.tilted(10.0, 0.0)
    start = release_pose(body, table.rotation_from_level(), table, 0.1)
    outcome, trace = settle_body(body, start, table)
    assert trace.converged
    assert outcome.stable
    assert outcome.topples == 0
    assert outcome.resting_face == _bottom_facet(body)
    np.testing.assert_allclose(outcome.table_normal, table.normal)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(min_value=0, max_value=2**32 - 1), shape=st.sampled_from(["cube", "wedge", "l_prism"]))
def test_com_height_never_increases_on_flat_table(seed, shape):
    mesh = {"cube": primitives.cube(0.1), "wedge": primitives.wedge(), "l_prism": primitives.l_prism()}[shape]
    body = prepare_body(mesh)
    rotation = Rotation.random(random_state=seed).as_matrix()
    _, trace = settle_body(body, release_pose(body, rotation, TableConfig.flat(), 0.2))

    heights = np.array([pose.apply(body.com)[2] for pose in trace.poses])
    assert np.all(np.diff(heights) <= 1e-12)


def test_short_horizon_reports_non_convergence(unit_cube):
    params = SettleParams(max_steps=1)
    outcome, trace = settle(unit_cube, RigidPose(np.eye(3), [0.0, 0.0, 2.0]), params=params)
    assert not trace.converged
    assert not outcome.stable
    assert outcome.resting_face is None
    assert len(trace.movements) == 1


def test_grid_orientations_are_ordered_cell_centres():
    rotations = grid_orientations(2)
    assert len(rotations) == 8
    expected = Rotation.from_euler("xyz", [np.pi / 2, np.pi / 2, 3 * np.pi / 2]).as_matrix()
    np.testing.assert_allclose(rotations[1], expected, atol=1e-12)
    with pytest.raises(ValueError):
        grid_orientations(0)


def test_drop_grid_order_does_not_depend_on_workers(unit_cube):
    serial = drop_grid(unit_cube, subdivisions=2, workers=1)
    pooled = drop_grid(unit_cube, subdivisions=2, workers=4)
    assert [o.resting_face for o in serial] == [o.resting_face for o in pooled]
    for a, b in zip(serial, pooled):
        assert a.pose == b.pose
    assert all(o.stable for o in serial)


def test_trace_is_written_and_read_back(tmp_path, cube_body):
    start = release_pose(cube_body, Rotation.from_euler("x", 30.0, degrees=True).as_matrix(), TableConfig.flat(), 0.2)
    _, trace = settle_body(cube_body, start)
    write_trace(trace, tmp_path / "trace.jsonl")

    lines = (tmp_path / "trace.jsonl").read_text(encoding="utf-8").splitlines()
    assert len(lines) == len(trace.poses)

    loaded = read_trace(tmp_path / "trace.jsonl")
    assert loaded.movements == trace.movements
    assert loaded.instabilities == trace.instabilities
    assert loaded.converged == trace.converged
    assert loaded.window == trace.window
    assert all(a == b for a, b in zip(loaded.poses, trace.poses))


def test_table_limits():
    with pytest.raises(DegenerateInput):
        TableConfig.tilted(50.0)
    with pytest.raises(DegenerateInput):
        TableConfig(np.array([0.0, 0.0, 2.0]))
    table = TableConfig.tilted(10.0, 90.0)
    assert table.is_tilted
    np.testing.assert_allclose(table.rotation_from_level() @ [0.0, 0.0, 1.0], table.normal, atol=1e-12)
    assert not TableConfig.flat().is_tilted


_SHAPES = {"cube": lambda: primitives.cube(0.1), "wedge": primitives.wedge, "l_prism": primitives.l_prism}


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(min_value=0, max_value=2**32 - 1), shape=st.sampled_from(sorted(_SHAPES)))
def test_stable_pose_stays_put_when_settled_again(seed, shape):
    body = prepare_body(_SHAPES[shape]())
    rotation = Rotation.random(random_state=seed).as_matrix()
    outcome, _ = settle_body(body, release_pose(body, rotation, TableConfig.flat(), 0.2))
    assume(outcome.stable)

    again, trace = settle_body(body, outcome.pose)
    assert again.stable
    assert again.topples == 0
    assert again.resting_face == outcome.resting_face
    assert max(trace.movements) < 1e-9
    assert again.instability == pytest.approx(0.0, abs=1e-9)


@pytest.mark.parametrize("seed", [0, 1, 2, 3])
@pytest.mark.parametrize("shape", ["wedge", "l_prism"])
def test_settling_commutes_with_turns_about_the_table_normal(shape, seed):
    mesh = _SHAPES[shape]()
    turn = RigidPose(Rotation.from_euler("z", 37.0, degrees=True).as_matrix(), np.zeros(3))
    body = prepare_body(mesh)
    turned_body = prepare_body(mesh.transformed(turn))

    start = release_pose(body, Rotation.random(random_state=seed).as_matrix(), TableConfig.flat(), 0.1)
    outcome, _ = settle_body(body, start)
    turned, _ = settle_body(turned_body, turn.compose(start).compose(turn.inverse()))

    expected = turn.compose(outcome.pose).compose(turn.inverse())
    np.testing.assert_allclose(turned.pose.rotation, expected.rotation, atol=1e-6)
    np.testing.assert_allclose(turned.pose.translation, expected.translation, atol=1e-7)
    assert turned.topples == outcome.topples
    assert turned.stable == outcome.stable
    np.testing.assert_allclose(turn.rotation @ outcome.down_direction, turned.down_direction, atol=1e-6)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(min_value=0, max_value=2**32 - 1), shape=st.sampled_from(sorted(_SHAPES)))
def test_recorded_instabilities_follow_the_movements(seed, shape):
    body = prepare_body(_SHAPES[shape]())
    params = SettleParams(window=5)
    rotation = Rotation.random(random_state=seed).as_matrix()
    _, trace = settle_body(body, release_pose(body, rotation, TableConfig.flat(), 0.2), params=params)

    assert len(trace.instabilities) == len(trace.movements)
    for i in range(1, len(trace.movements) + 1):
        assert trace.instabilities[i - 1] == instability(trace.movements, params.window, i)


@settings(max_examples=20, deadline=None)
@given(
    data=st.data(),
    shape=st.sampled_from(["cylinder", "wedge", "l_prism"]),
    azimuth=st.floats(min_value=0.0, max_value=360.0),
)
def test_com_height_never_increases_on_tilted_table(data, shape, azimuth):
    mesh = {"cylinder": primitives.cylinder(0.03, 0.06), "wedge": primitives.wedge(), "l_prism": primitives.l_prism()}[shape]
    body = prepare_body(mesh)
    facet = data.draw(st.integers(min_value=0, max_value=len(body.facets) - 1))
    table = TableConfig.tilted(10.0, azimuth)
    start = release_pose(body, align_vectors(body.facets.normals[facet], -table.normal), table, 0.0)
    _, trace = settle_body(body, start, table, SettleParams(max_steps=60))

    heights = np.array([pose.apply(body.com)[2] for pose in trace.poses])
    assert np.all(np.diff(heights) <= 1e-12)
