import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.spatial.transform import Rotation

from stableplace.core.exceptions import DegenerateInput, MeshFormatError, NonPositiveVolume, NoPlaneFound, OpenMesh
from stableplace.services.geometry import (
    HullFacets,
    PointCloud,
    RigidPose,
    TriMesh,
    align_vectors,
    convex_hull,
    fit_plane_ransac,
    load_cloud,
    load_mesh,
    mass_properties,
    pca_obb,
    pose_delta,
    primitives,
    sample_surface,
    save_cloud,
    save_mesh,
    segment_planes,
    voxel_downsample,
)

from tests.conftest import box_surface_cloud

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def test_cube_hull_has_eight_vertices_and_six_facets(unit_cube):
    hull = convex_hull(unit_cube)
    assert len(hull.vertices) == 8
    assert len(hull.faces) == 12
    assert hull.is_watertight
    assert len(HullFacets(hull)) == 6


def test_facet_queries_on_cube(unit_cube):
    facets = HullFacets(convex_hull(unit_cube))
    bottom = facets.exit_facet(np.zeros(3), [0.0, 0.0, -1.0])
    np.testing.assert_allclose(facets[bottom].normal, [0.0, 0.0, -1.0], atol=1e-12)
    assert facets[bottom].area == pytest.approx(1.0)
    assert facets.flush_facet([0.0, 0.0, -1.0]) == bottom
    assert facets.flush_facet(np.array([1.0, 0.0, -1.0]) / np.sqrt(2.0)) == -1

    signed, segment = facets.signed_edge_distances(bottom, [0.0, 0.0, -0.5])
    np.testing.assert_allclose(signed, 0.5)
    np.testing.assert_allclose(segment, 0.5)
    signed, _ = facets.signed_edge_distances(bottom, [0.7, 0.0, -0.5])
    assert (signed < 0).sum() == 1

    for edge in facets.loop_edges(bottom):
        side = facets[facets.neighbor(bottom, edge)]
        assert side.normal @ facets[bottom].normal == pytest.approx(0.0, abs=1e-12)


def test_cylinder_caps_merge_into_single_facets():
    facets = HullFacets(convex_hull(primitives.cylinder(0.05, 0.1, sections=16)))
    assert len(facets) == 18
    caps = [f for f in facets.facets if abs(f.normal[2]) > 0.99]
    assert len(caps) == 2
    assert all(len(cap.loop) == 16 for cap in caps)


def test_tetrahedron_hull():
    points = np.array([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [0.1, 0.1, 0.1]])
    hull = convex_hull(points)
    assert len(hull.vertices) == 4
    assert len(hull.faces) == 4
    assert mass_properties(hull).volume == pytest.approx(1.0 / 6.0, abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(seed=seeds, count=st.integers(min_value=4, max_value=200))
def test_hull_contains_every_point_and_is_idempotent(seed, count):
    points = np.random.default_rng(seed).normal(size=(count, 3))
    hull = convex_hull(points)

    normals = hull.face_normals
    offsets = np.einsum("ij,ij->i", normals, hull.triangles[:, 0])
    assert np.all(points @ normals.T - offsets <= 1e-9)

    again = convex_hull(hull.vertices)
    np.testing.assert_array_equal(again.vertices, hull.vertices)
    assert len(again.faces) == len(hull.faces)


def test_hull_rejects_degenerate_input():
    with pytest.raises(DegenerateInput):
        convex_hull(np.array([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]))
    flat = np.random.default_rng(1).uniform(size=(20, 3))
    flat[:, 2] = 0.0
    with pytest.raises(DegenerateInput):
        convex_hull(flat)


def test_duplicate_points_are_welded():
    points = np.vstack([primitives.cube().vertices, primitives.cube().vertices + 1e-14])
    assert len(convex_hull(points).vertices) == 8


def test_cube_mass_properties(unit_cube):
    props = mass_properties(unit_cube)
    assert props.volume == pytest.approx(1.0, abs=1e-12)
    np.testing.assert_allclose(props.com, np.zeros(3), atol=1e-12)


def test_l_prism_center_of_mass():
    props = mass_properties(primitives.l_prism(arm=0.1, thickness=0.04, depth=0.3))
    assert props.volume == pytest.approx(0.0064 * 0.3, abs=1e-12)
    np.testing.assert_allclose(props.com, [0.03875 - 0.05, 0.03875 - 0.05, 0.0], atol=1e-9)


def test_mass_properties_rejects_open_and_inverted_meshes(unit_cube):
    with pytest.raises(OpenMesh):
        mass_properties(TriMesh(unit_cube.vertices, unit_cube.faces[:-1]))
    inverted = TriMesh(unit_cube.vertices, unit_cube.faces[:, ::-1])
    with pytest.raises(NonPositiveVolume):
        mass_properties(inverted)


def test_pose_delta_of_half_turn():
    half_turn = RigidPose(Rotation.from_euler("z", 180.0, degrees=True).as_matrix(), np.zeros(3))
    assert pose_delta(RigidPose.identity(), half_turn) == pytest.approx(np.sqrt(8.0), abs=1e-12)
    assert pose_delta(half_turn, half_turn) == 0.0


def test_pose_delta_counts_translation():
    moved = RigidPose(np.eye(3), [0.0, 3.0, 4.0])
    assert pose_delta(RigidPose.identity(), moved) == pytest.approx(5.0)


def test_rigid_pose_rejects_non_rotation():
    with pytest.raises(DegenerateInput):
        RigidPose(np.diag([1.0, 1.0, -1.0]), np.zeros(3))
    with pytest.raises(DegenerateInput):
        RigidPose(2.0 * np.eye(3), np.zeros(3))


@settings(max_examples=100, deadline=None)
@given(seed=seeds)
def test_align_vectors_maps_source_onto_target(seed):
    rng = np.random.default_rng(seed)
    src, dst = rng.normal(size=3), rng.normal(size=3)
    rotation = align_vectors(src, dst)
    np.testing.assert_allclose(rotation @ (src / np.linalg.norm(src)), dst / np.linalg.norm(dst), atol=1e-9)
    np.testing.assert_allclose(rotation.T @ rotation, np.eye(3), atol=1e-12)


def test_align_vectors_antipodal_uses_world_x():
    rotation = align_vectors([0.0, 0.0, 1.0], [0.0, 0.0, -1.0])
    np.testing.assert_allclose(rotation, np.diag([1.0, -1.0, -1.0]), atol=1e-12)
    rotation = align_vectors([1.0, 0.0, 0.0], [-1.0, 0.0, 0.0])
    np.testing.assert_allclose(rotation @ [1.0, 0.0, 0.0], [-1.0, 0.0, 0.0], atol=1e-12)
    np.testing.assert_allclose(rotation @ [0.0, 1.0, 0.0], [0.0, 1.0, 0.0], atol=1e-12)


def test_ransac_finds_dominant_plane():
    rng = np.random.default_rng(3)
    plane = np.column_stack([rng.uniform(-1, 1, 300), rng.uniform(-1, 1, 300), np.zeros(300)])
    outliers = rng.uniform(-1, 1, size=(60, 3)) + [0.0, 0.0, 0.5]
    cloud = PointCloud(np.vstack([plane, outliers]))

    model = fit_plane_ransac(cloud, tolerance=1e-3, iterations=256, rng_seed=7)
    assert abs(model.normal[2]) == pytest.approx(1.0, abs=1e-9)
    assert set(range(300)) <= set(model.inliers.tolist())

    again = fit_plane_ransac(cloud, tolerance=1e-3, iterations=256, rng_seed=7)
    np.testing.assert_array_equal(again.coefficients, model.coefficients)
    np.testing.assert_array_equal(again.inliers, model.inliers)


def test_ransac_needs_three_points():
    with pytest.raises(NoPlaneFound):
        fit_plane_ransac(np.zeros((2, 3)) + [[0, 0, 0], [1, 0, 0]], tolerance=1e-3)


def test_segment_planes_returns_disjoint_inlier_sets():
    cloud = box_surface_cloud((0.4, 0.2, 0.1), per_face=100, seed=4)
    planes = segment_planes(cloud, tolerance=1e-4, iterations=512, rng_seed=0, max_planes=6)
    assert len(planes) == 6
    seen = set()
    for plane in planes:
        members = set(plane.inliers.tolist())
        assert not members & seen
        seen |= members


def test_pca_obb_recovers_rotated_box():
    corners = primitives.box((0.4, 0.2, 0.1)).vertices
    cloud = PointCloud(np.vstack([box_surface_cloud((0.4, 0.2, 0.1), per_face=150, seed=5).points, corners]))
    rotation = Rotation.from_euler("xyz", [20.0, -35.0, 50.0], degrees=True).as_matrix()
    rotated = PointCloud(cloud.points @ rotation.T + [1.0, 2.0, 3.0])
    obb = pca_obb(rotated)
    np.testing.assert_allclose(obb.sorted_extents(), [0.2, 0.1, 0.05], atol=1e-9)
    assert np.all(obb.contains(rotated.points))
    assert np.linalg.det(obb.axes) == pytest.approx(1.0)


def test_pca_obb_of_cube_is_tight(cube_cloud):
    obb = pca_obb(cube_cloud)
    np.testing.assert_allclose(obb.half_extents, [0.5, 0.5, 0.5], atol=1e-9)
    assert obb.volume == pytest.approx(1.0, abs=1e-9)


def test_sample_surface_is_on_the_surface(unit_cube):
    cloud = sample_surface(unit_cube, 500, seed=2)
    assert len(cloud) == 500
    assert np.all(np.isclose(np.abs(cloud.points).max(axis=1), 0.5, atol=1e-9))
    again = sample_surface(unit_cube, 500, seed=2)
    np.testing.assert_array_equal(again.points, cloud.points)


def test_voxel_downsample_averages_attributes():
    points = np.array([[0.01, 0.01, 0.01], [0.03, 0.03, 0.03], [1.01, 0.01, 0.01]])
    cloud = PointCloud(points, scores=[0.0, 1.0, 1.0], labels=[4, 5, 6])
    down = voxel_downsample(cloud, 0.1)
    assert len(down) == 2
    np.testing.assert_allclose(down.points[0], [0.02, 0.02, 0.02])
    np.testing.assert_allclose(down.scores, [0.5, 1.0])
    np.testing.assert_array_equal(down.labels, [4, 6])


def test_point_cloud_validation():
    with pytest.raises(DegenerateInput):
        PointCloud(np.zeros((0, 3)))
    with pytest.raises(DegenerateInput):
        PointCloud(np.zeros((3, 3)), scores=[0.0, 0.5, 1.5])
    with pytest.raises(DegenerateInput):
        PointCloud(np.zeros((3, 2)))


def test_xyz_cloud_keeps_scores_and_labels(tmp_path):
    cloud = PointCloud(np.arange(12.0).reshape(4, 3) / 10.0, scores=[0.0, 0.25, 0.5, 1.0], labels=[0, 1, 1, 2])
    save_cloud(cloud, tmp_path / "c.xyz")
    loaded = load_cloud(tmp_path / "c.xyz")
    np.testing.assert_allclose(loaded.points, cloud.points)
    np.testing.assert_allclose(loaded.scores, cloud.scores)
    np.testing.assert_array_equal(loaded.labels, cloud.labels)


def test_ply_cloud_is_read_back(tmp_path):
    rng = np.random.default_rng(0)
    cloud = PointCloud(rng.normal(size=(50, 3)), scores=np.linspace(0.0, 1.0, 50))
    save_cloud(cloud, tmp_path / "c.ply")
    loaded = load_cloud(tmp_path / "c.ply")
    np.testing.assert_allclose(loaded.points, cloud.points, rtol=1e-6, atol=1e-6)
    np.testing.assert_allclose(loaded.scores, cloud.scores)
    assert loaded.labels is None

    labelled = cloud.with_attributes(labels=rng.integers(0, 4, 50))
    save_cloud(labelled, tmp_path / "l.ply")
    np.testing.assert_array_equal(load_cloud(tmp_path / "l.ply").labels, labelled.labels)


def test_mesh_file_is_welded_and_watertight(tmp_path, unit_cube):
    save_mesh(unit_cube, tmp_path / "cube.obj")
    mesh = load_mesh(tmp_path / "cube.obj")
    assert len(mesh.vertices) == 8
    assert mesh.is_watertight


def test_missing_files_raise_format_errors(tmp_path):
    with pytest.raises(MeshFormatError):
        load_mesh(tmp_path / "missing.obj")
    with pytest.raises(MeshFormatError):
        load_cloud(tmp_path / "missing.ply")
    with pytest.raises(MeshFormatError):
        load_mesh(tmp_path / "mesh.stl")


@pytest.mark.parametrize(
    "mesh",
    [
        primitives.wedge(),
        primitives.ramp(),
        primitives.l_prism(),
        primitives.t_block(),
        primitives.toy_chair(),
        primitives.mug(),
        primitives.plate(),
        primitives.rod(),
        primitives.icosphere(),
    ],
    ids=["wedge", "ramp", "l_prism", "t_block", "toy_chair", "mug", "plate", "rod", "icosphere"],
)
def test_desk_primitives_are_closed_solids(mesh):
    assert mesh.is_watertight
    assert mass_properties(mesh).volume > 0
