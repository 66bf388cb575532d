from stableplace.services.geometry.hull import HullFacet, HullFacets, convex_hull, weld_points
from stableplace.services.geometry.io import load_cloud, load_mesh, save_cloud, save_mesh, write_atomic
from stableplace.services.geometry.mass import MassProperties, mass_properties
from stableplace.services.geometry.obb import pca_obb
from stableplace.services.geometry.ransac import fit_plane_ransac, segment_planes
from stableplace.services.geometry.sampling import sample_surface, voxel_downsample
from stableplace.services.geometry.transforms import align_vectors, pose_delta, rotation_angle_deg, unit
from stableplace.services.geometry.types import ObbModel, PlaneModel, PointCloud, RigidPose, TriMesh

__all__ = [
    "HullFacet",
    "HullFacets",
    "convex_hull",
    "weld_points",
    "load_cloud",
    "load_mesh",
    "save_cloud",
    "save_mesh",
    "write_atomic",
    "MassProperties",
    "mass_properties",
    "pca_obb",
    "fit_plane_ransac",
    "segment_planes",
    "sample_surface",
    "voxel_downsample",
    "align_vectors",
    "pose_delta",
    "rotation_angle_deg",
    "unit",
    "ObbModel",
    "PlaneModel",
    "PointCloud",
    "RigidPose",
    "TriMesh",
]
