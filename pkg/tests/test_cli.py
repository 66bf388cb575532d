import json

import numpy as np
import pytest

from stableplace.main import EXIT_ERROR, EXIT_OK, EXIT_USAGE, run
from stableplace.schemas.annotation import AnnotationRecord
from stableplace.schemas.placement import ProposalRecord, RankedPlanesRecord
from stableplace.schemas.view import ViewSidecar
from stableplace.services.geometry import PointCloud, load_cloud, primitives, save_cloud, save_mesh

from tests.conftest import box_surface_cloud


@pytest.fixture
def cube_files(tmp_path):
    mesh_path = tmp_path / "meshes" / "cube.obj"
    mesh_path.parent.mkdir()
    save_mesh(primitives.cube(0.1), mesh_path)
    cloud_path = tmp_path / "cube.xyz"
    save_cloud(box_surface_cloud((0.1, 0.1, 0.1), per_face=80, seed=6), cloud_path)
    return mesh_path, cloud_path


def test_version_and_usage_exit_codes():
    assert run(["--version"]) == EXIT_OK
    assert run([]) == EXIT_USAGE
    assert run(["place"]) == EXIT_USAGE
    assert run(["bench", "--desk", "--methods", "teleport", "--out", "r.json"]) == EXIT_USAGE


def test_bad_config_file_exits_with_error(tmp_path, cube_files):
    _, cloud_path = cube_files
    config = tmp_path / "config.toml"
    config.write_text("[settle]\nL = 0\n", encoding="utf-8")
    assert run(["--config", str(config), "place", str(cloud_path), "--method", "chsa"]) == EXIT_ERROR


def test_missing_input_exits_with_error(tmp_path):
    assert run(["place", str(tmp_path / "absent.ply"), "--method", "bbf"]) == EXIT_ERROR


def test_place_writes_proposal(tmp_path, cube_files):
    _, cloud_path = cube_files
    out = tmp_path / "proposal.json"
    assert run(["place", str(cloud_path), "--method", "chsa", "--out", str(out)]) == EXIT_OK

    record = ProposalRecord.model_validate_json(out.read_text(encoding="utf-8"))
    assert record.method.value == "chsa"
    rotation = np.asarray(record.rotation).reshape(3, 3)
    np.testing.assert_allclose(rotation @ record.source_normal, [0.0, 0.0, -1.0], atol=1e-9)
    assert record.provenance is not None


def test_place_without_plane_writes_marker(tmp_path):
    line = PointCloud(np.column_stack([np.linspace(0.0, 1.0, 6), np.zeros(6), np.zeros(6)]))
    cloud_path = tmp_path / "line.xyz"
    save_cloud(line, cloud_path)
    out = tmp_path / "proposal.json"
    assert run(["place", str(cloud_path), "--method", "rpf", "--out", str(out)]) == EXIT_OK
    record = json.loads(out.read_text(encoding="utf-8"))
    assert record["rotation"] is None
    assert record["confidence"] == 0.0


def test_annotate_then_place_with_planner(tmp_path, cube_files):
    mesh_path, cloud_path = cube_files
    annotations = tmp_path / "annotations"
    assert run(["annotate", str(mesh_path), "--out", str(annotations), "--subdivisions", "4"]) == EXIT_OK

    record_path = annotations / "cube.json"
    record = AnnotationRecord.model_validate_json(record_path.read_text(encoding="utf-8"))
    assert record.object_id == "cube"
    assert len(record.planes) >= 1

    out, planes_out = tmp_path / "proposal.json", tmp_path / "planes.json"
    args = ["place", str(cloud_path), "--method", "planner", "--annotation", str(record_path)]
    args += ["--mesh", str(mesh_path), "--out", str(out), "--planes-out", str(planes_out)]
    assert run(args) == EXIT_OK

    proposal = ProposalRecord.model_validate_json(out.read_text(encoding="utf-8"))
    assert proposal.rotation is not None
    ranked = RankedPlanesRecord.model_validate_json(planes_out.read_text(encoding="utf-8"))
    assert ranked.best == 0
    assert ranked.rotation == proposal.rotation


def test_synth_view_writes_clouds_and_sidecars(tmp_path, cube_files):
    mesh_path, _ = cube_files
    out = tmp_path / "views"
    assert run(["synth-view", str(mesh_path), "--views", "2", "--seed", "1", "--out", str(out)]) == EXIT_OK

    sidecars = sorted(out.glob("cube_view*.json"))
    assert len(sidecars) == 2
    for path in sidecars:
        sidecar = ViewSidecar.model_validate_json(path.read_text(encoding="utf-8"))
        cloud = load_cloud(out / sidecar.cloud)
        assert len(cloud) == sidecar.points
        assert sidecar.camera.width == 160


def test_bench_report_is_reproducible(tmp_path, cube_files):
    mesh_path, _ = cube_files
    args = ["bench", "--corpus", str(mesh_path.parent), "--methods", "chsa,bbf"]
    args += ["--regime", "whole", "--trials", "2", "--seed", "4"]

    first, second = tmp_path / "a" / "report.json", tmp_path / "b" / "report.json"
    assert run(args + ["--out", str(first)]) == EXIT_OK
    assert run(args + ["--out", str(second)]) == EXIT_OK
    assert first.read_bytes() == second.read_bytes()

    assert first.with_suffix(".md").read_text(encoding="utf-8").count("| cube |") == 2
    csv_lines = first.with_suffix(".csv").read_text(encoding="utf-8").splitlines()
    assert len(csv_lines) == 1 + 2 + 2
    report = json.loads(first.read_text(encoding="utf-8"))
    assert "created_at" not in report["provenance"]
    assert report["trials"] == 2
