"""
Mesh and point-cloud file ingestion.

Meshes (OBJ, PLY) go through trimesh without processing, followed by
duplicate-vertex welding, which is the only repair performed. Point clouds are
read from PLY or from "x y z [score] [label]" text files.
"""

import os
import tempfile
from pathlib import Path
from typing import Dict, Optional, Union

import numpy as np
import trimesh
from loguru import logger

from stableplace.core.constants import CLOUD_SUFFIXES, MESH_SUFFIXES
from stableplace.core.exceptions import MeshFormatError
from stableplace.services.geometry.hull import weld_points
from stableplace.services.geometry.types import PointCloud, TriMesh


def weld_mesh(mesh: TriMesh) -> TriMesh:
    """Merge vertices closer than 1e-12 m and drop faces that collapse."""
    vertices, inverse = weld_points(mesh.vertices)
    faces = inverse[np.asarray(mesh.faces)]
    keep = (faces[:, 0] != faces[:, 1]) & (faces[:, 1] != faces[:, 2]) & (faces[:, 0] != faces[:, 2])
    return TriMesh(vertices, faces[keep])


def load_mesh(path: Union[str, Path]) -> TriMesh:
    """
    Load a triangle mesh from OBJ or PLY.

    Raises:
        MeshFormatError: If the file is missing, unreadable or has no faces
    """
    path = Path(path)
    if path.suffix.lower() not in MESH_SUFFIXES:
        raise MeshFormatError(f"Unsupported mesh format: {path.suffix}", path=str(path))
    if not path.is_file():
        raise MeshFormatError(f"Mesh file not found: {path}", path=str(path))
    try:
        loaded = trimesh.load(str(path), force="mesh", process=False)
    except Exception as e:
        raise MeshFormatError(f"Cannot read mesh {path}: {e}", path=str(path)) from e
    if not isinstance(loaded, trimesh.Trimesh) or len(loaded.faces) == 0:
        raise MeshFormatError(f"No triangles in {path}", path=str(path))
    mesh = weld_mesh(TriMesh.from_trimesh(loaded))
    logger.debug(f"Loaded mesh {path.name}: {len(mesh.vertices)} vertices, {len(mesh.faces)} faces")
    return mesh


def save_mesh(mesh: TriMesh, path: Union[str, Path]) -> None:
    path = Path(path)
    data = mesh.to_trimesh().export(file_type=path.suffix.lower().lstrip("."))
    write_atomic(path, data if isinstance(data, bytes) else data.encode("utf-8"))


def _ply_vertex_columns(loaded: trimesh.parent.Geometry) -> Dict[str, np.ndarray]:
    """Raw per-vertex PLY properties kept by trimesh, by property name."""
    raw = loaded.metadata.get("_ply_raw", {}).get("vertex", {}).get("data")
    if raw is None:
        return {}
    names = raw.dtype.names if isinstance(raw, np.ndarray) else list(raw)
    return {name: np.asarray(raw[name]).reshape(-1) for name in names or ()}


def load_cloud(path: Union[str, Path]) -> PointCloud:
    """
    Load a point cloud with optional score and label columns.

    Raises:
        MeshFormatError: If the file is missing or malformed
    """
    path = Path(path)
    suffix = path.suffix.lower()
    if suffix not in CLOUD_SUFFIXES:
        raise MeshFormatError(f"Unsupported point-cloud format: {suffix}", path=str(path))
    if not path.is_file():
        raise MeshFormatError(f"Point-cloud file not found: {path}", path=str(path))
    try:
        if suffix == ".ply":
            loaded = trimesh.load(str(path), file_type="ply", process=False)
            columns = _ply_vertex_columns(loaded)
            points = np.asarray(loaded.vertices, dtype=float)
            scores = columns.get("score")
            labels = columns.get("label")
        else:
            rows = np.loadtxt(path, ndmin=2)
            if rows.shape[1] < 3:
                raise MeshFormatError(f"Expected at least 3 columns in {path}", path=str(path))
            points = rows[:, :3]
            scores = rows[:, 3] if rows.shape[1] > 3 else None
            labels = rows[:, 4].astype(np.int64) if rows.shape[1] > 4 else None
    except MeshFormatError:
        raise
    except Exception as e:
        raise MeshFormatError(f"Cannot read point cloud {path}: {e}", path=str(path)) from e
    return PointCloud(points=points, scores=scores, labels=labels)


def save_cloud(cloud: PointCloud, path: Union[str, Path]) -> None:
    """Write a cloud as binary PLY (float32 coordinates) or XYZ text, attributes included."""
    path = Path(path)
    if path.suffix.lower() == ".ply":
        ply = trimesh.PointCloud(np.array(cloud.points))
        attributes = {}
        if cloud.scores is not None:
            attributes["score"] = np.array(cloud.scores, dtype=np.float64)
        if cloud.labels is not None:
            attributes["label"] = np.array(cloud.labels, dtype=np.int32)
        ply.vertex_attributes = attributes
        write_atomic(path, ply.export(file_type="ply", encoding="binary"))
        return
    columns = [cloud.points]
    if cloud.scores is not None or cloud.labels is not None:
        columns.append((cloud.scores if cloud.scores is not None else np.ones(len(cloud)))[:, None])
    if cloud.labels is not None:
        columns.append(cloud.labels[:, None].astype(float))
    rows = np.hstack(columns)
    lines = [" ".join(repr(float(v)) if k < 4 else str(int(v)) for k, v in enumerate(row)) for row in rows]
    write_atomic(path, ("\n".join(lines) + "\n").encode("utf-8"))


def write_atomic(path: Union[str, Path], payload: Union[bytes, str], encoding: Optional[str] = "utf-8") -> None:
    """Write through a temporary file in the target directory, then rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    data = payload.encode(encoding) if isinstance(payload, str) else payload
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "wb") as f:
            f.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
