import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.spatial.transform import Rotation

from stableplace.core.config import PlannerParams
from stableplace.core.constants import Method
from stableplace.core.exceptions import NoStablePoints
from stableplace.schemas.annotation import AnnotationRecord
from stableplace.services.annotation import StablePlane, extract_support_mask
from stableplace.services.baselines import chsa
from stableplace.services.evaluation import evaluate_placement
from stableplace.services.geometry import (
    PlaneModel,
    PointCloud,
    RigidPose,
    TriMesh,
    convex_hull,
    primitives,
    rotation_angle_deg,
    sample_surface,
)
from stableplace.services.planner import (
    mean_shift,
    oracle_scores,
    placement_rotation,
    plan_placement,
    select_plane,
    transfer_labels,
)
from stableplace.services.settling import TableConfig

from tests.conftest import box_surface_cloud


def _record(mesh, normals) -> AnnotationRecord:
    planes = [
        StablePlane(
            normal=np.asarray(n, dtype=float),
            support_mask=extract_support_mask(mesh, n),
            rep_pose=RigidPose.identity(),
            cluster_size=10,
            score=0.5,
        ).to_record()
        for n in normals
    ]
    return AnnotationRecord(object_id="object", mesh="", planes=planes)


def test_mean_shift_separates_two_blobs():
    rng = np.random.default_rng(0)
    data = np.vstack([rng.normal(0.0, 0.1, (50, 2)), rng.normal(5.0, 0.1, (50, 2))])
    labels = mean_shift(data, bandwidth=1.0)
    assert len(set(labels[:50])) == 1
    assert len(set(labels[50:])) == 1
    assert labels[0] != labels[50]


def test_mean_shift_edge_cases():
    np.testing.assert_array_equal(mean_shift(np.ones((10, 3)), bandwidth=0.5), np.zeros(10))
    np.testing.assert_array_equal(mean_shift(np.array([[1.0, 2.0]]), bandwidth=0.5), [0])
    with pytest.raises(ValueError):
        mean_shift(np.ones((3, 3)), bandwidth=0.0)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(min_value=0, max_value=2**32 - 1))
def test_mean_shift_labels_are_dense(seed):
    data = np.random.default_rng(seed).uniform(size=(40, 2))
    labels = mean_shift(data, bandwidth=0.3)
    assert labels.min() == 0
    assert set(labels.tolist()) == set(range(labels.max() + 1))


def test_select_plane_weighs_score_by_support():
    rng = np.random.default_rng(1)
    floor = np.column_stack([rng.uniform(0, 1, (100, 2)), np.zeros(100)])
    wall = np.column_stack([np.full(50, 5.0), rng.uniform(0, 1, (50, 2))])
    scored = PointCloud(
        np.vstack([floor, wall]),
        scores=np.concatenate([np.full(100, 0.9), np.full(50, 1.0)]),
        labels=np.concatenate([np.zeros(100), np.ones(50)]),
    )

    ranked = select_plane(scored)
    assert len(ranked) == 2
    assert ranked.best == 0
    assert ranked.best_plane.score == pytest.approx(90.0)
    assert ranked.planes[1].score == pytest.approx(50.0)
    assert abs(ranked.best_plane.plane.normal[2]) == pytest.approx(1.0)
    assert sorted(ranked.best_plane.plane.inliers.tolist()) == list(range(100))


def test_select_plane_needs_stable_points():
    cloud = PointCloud(np.random.default_rng(2).uniform(size=(20, 3)), scores=np.full(20, 0.1))
    with pytest.raises(NoStablePoints):
        select_plane(cloud)
    with pytest.raises(NoStablePoints):
        select_plane(PointCloud(cloud.points))
    with pytest.raises(NoStablePoints):
        select_plane(cloud.with_attributes(scores=np.full(20, 0.6)), params=PlannerParams(tau=0.7))


def test_placement_rotation_turns_plane_away_from_centroid():
    floor = PlaneModel(normal=[0.0, 0.0, 1.0], offset=0.0, inliers=[0], tolerance=1e-3)
    np.testing.assert_allclose(placement_rotation(floor, [0.0, 0.0, 1.0]), np.eye(3), atol=1e-12)
    np.testing.assert_allclose(placement_rotation(floor, [0.0, 0.0, -1.0]), np.diag([1.0, -1.0, -1.0]), atol=1e-12)

    wall = PlaneModel(normal=[1.0, 0.0, 0.0], offset=0.0, inliers=[0], tolerance=1e-3)
    rotation = placement_rotation(wall, [-1.0, 0.0, 0.0])
    np.testing.assert_allclose(rotation @ [1.0, 0.0, 0.0], [0.0, 0.0, -1.0], atol=1e-12)


@settings(max_examples=100, deadline=None)
@given(seed=st.integers(min_value=0, max_value=2**32 - 1), tilt=st.floats(min_value=0.0, max_value=45.0))
def test_placement_rotation_lays_any_plane_on_the_table(seed, tilt):
    rng = np.random.default_rng(seed)
    normal = rng.normal(size=3)
    normal /= np.linalg.norm(normal)
    table_normal = TableConfig.tilted(tilt, float(rng.uniform(0.0, 360.0))).normal
    plane = PlaneModel(normal=normal, offset=-1.0, inliers=[0], tolerance=1e-3)

    rotation = placement_rotation(plane, np.zeros(3), table_normal)
    np.testing.assert_allclose(rotation @ normal, -table_normal, atol=1e-9)
    np.testing.assert_allclose(rotation @ rotation.T, np.eye(3), atol=1e-9)
    assert np.linalg.det(rotation) == pytest.approx(1.0)

    axis = Rotation.from_matrix(rotation).as_rotvec()
    if np.linalg.norm(axis) > 1e-6 and normal @ table_normal < 0.99:
        assert axis @ normal == pytest.approx(0.0, abs=1e-6)
        assert axis @ table_normal == pytest.approx(0.0, abs=1e-6)


def test_ranking_ignores_uniform_score_scaling():
    rng = np.random.default_rng(5)
    floor = np.column_stack([rng.uniform(0, 1, (60, 2)), np.zeros(60)])
    wall = np.column_stack([np.full(40, 5.0), rng.uniform(0, 1, (40, 2))])
    scores = np.concatenate([np.full(60, 0.6), np.full(40, 0.95)])
    labels = np.concatenate([np.zeros(60), np.ones(40)])
    scored = PointCloud(np.vstack([floor, wall]), scores=scores, labels=labels)

    base = select_plane(scored, params=PlannerParams(tau=0.5))
    scaled = select_plane(scored.with_attributes(scores=scores * 0.9), params=PlannerParams(tau=0.45))
    np.testing.assert_array_equal(base.best_plane.plane.inliers, scaled.best_plane.plane.inliers)
    assert scaled.best_plane.score == pytest.approx(0.9 * base.best_plane.score)


def test_transfer_skips_planes_out_of_view():
    cube = primitives.cube(0.1)
    top_only = box_surface_cloud((0.1, 0.1, 0.1), per_face=100, seed=0)
    top_only = top_only.take(np.flatnonzero(top_only.points[:, 2] == 0.05))
    planes = [StablePlane.from_record(p, len(cube.vertices)) for p in _record(cube, [[0.0, 0.0, -1.0], [0.0, 0.0, 1.0]]).planes]

    labels = transfer_labels(top_only, cube, planes)
    assert [label.plane_index for label in labels] == [1]
    assert len(labels[0].support) == len(top_only)
    assert labels[0].normal_error_deg < 1e-6


def test_oracle_scores_mark_support_points():
    cube = primitives.cube(0.1)
    cloud = box_surface_cloud((0.1, 0.1, 0.1), per_face=100, seed=3)
    scored = oracle_scores(cloud, cube, _record(cube, [[0.0, 0.0, -1.0]]))

    bottom = scored.points[:, 2] < -0.05 + 0.01
    np.testing.assert_array_equal(scored.scores == 1.0, bottom)
    assert scored.features.shape == (len(cloud), 1)


def test_oracle_scores_without_planes_are_zero():
    cube = primitives.cube(0.1)
    cloud = box_surface_cloud((0.1, 0.1, 0.1), per_face=20, seed=3)
    scored = oracle_scores(cloud, cube, AnnotationRecord(object_id="cube", mesh=""))
    assert not scored.scores.any()


def test_planner_finds_implicit_plane_under_chair_legs():
    chair = primitives.toy_chair()
    bottom = chair.vertices[:, 2].min()
    cloud = sample_surface(chair, 20000, seed=4)
    scored = oracle_scores(cloud, chair, _record(chair, [[0.0, 0.0, -1.0]]))

    proposal, ranked = plan_placement(scored, seed=1)
    assert proposal.method == Method.PLANNER
    assert np.degrees(np.arccos(np.clip(-proposal.source_normal[2], -1.0, 1.0))) < 1.0
    assert rotation_angle_deg(proposal.rotation) < 1.0
    assert proposal.confidence == pytest.approx(1.0)
    inliers = scored.points[ranked.best_plane.plane.inliers]
    assert np.all(inliers[:, 2] < bottom + 0.002)


def _cube_without_corner(cut: float = 0.1) -> TriMesh:
    """Unit cube sliced by the plane p·(1,1,1)/√3 = cut, keeping the side holding the centre."""
    d = np.ones(3) / np.sqrt(3.0)
    corners = np.array(list(itertools.product((-0.5, 0.5), repeat=3)))
    level = corners @ d - cut
    points = list(corners[level <= 0.0])
    for a, b in itertools.combinations(range(len(corners)), 2):
        if np.count_nonzero(corners[a] != corners[b]) == 1 and level[a] * level[b] < 0.0:
            t = level[a] / (level[a] - level[b])
            points.append(corners[a] + t * (corners[b] - corners[a]))
    return convex_hull(np.array(points))


def test_hull_method_trusts_a_false_facet_that_annotations_avoid(unit_cube):
    truncated = _cube_without_corner()
    cut = np.ones(3) / np.sqrt(3.0)

    hull_guess = chsa(PointCloud(truncated.vertices))
    np.testing.assert_allclose(hull_guess.source_normal, cut, atol=1e-9)
    assert not evaluate_placement(unit_cube, hull_guess).success

    axes = np.vstack([np.eye(3), -np.eye(3)])
    scored = oracle_scores(sample_surface(truncated, 6000, seed=0), unit_cube, _record(unit_cube, axes))
    proposal, _ = plan_placement(scored, seed=0)
    assert np.max(-np.eye(3) @ proposal.source_normal) > np.cos(np.radians(1.0))
    assert evaluate_placement(unit_cube, proposal).success
