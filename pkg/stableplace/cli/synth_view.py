import argparse
from pathlib import Path

from loguru import logger

from stableplace.cli.common import object_id, override, read_annotation, write_model
from stableplace.core.config import ToolConfig
from stableplace.core.exceptions import EmptyView
from stableplace.schemas.common import make_provenance
from stableplace.schemas.view import ViewSidecar
from stableplace.services.geometry import load_mesh, save_cloud
from stableplace.services.viewsynth import augment, sample_camera_poses, synthesize_view
from stableplace.utils.seeds import derive_seed


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("synth-view", help="Render single-view partial clouds of a mesh")
    parser.add_argument("mesh", type=Path)
    parser.add_argument("--views", type=int, default=None, help="Number of views (default: camera.views)")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--out", type=Path, required=True, help="Output directory")
    parser.add_argument("--annotation", type=Path, default=None, help="Annotation record for oracle plane labels")
    parser.add_argument("--augment", action="store_true", help="Apply the configured augmentation to each view")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace, config: ToolConfig) -> int:
    config = override(config, camera__views=args.views, seed=args.seed)
    mesh = load_mesh(args.mesh)
    name = object_id(args.mesh)
    record = read_annotation(args.annotation) if args.annotation else None

    cameras = sample_camera_poses(mesh, config.camera.views, derive_seed(config.seed, name, "views"), config.camera)
    written = 0
    for index, camera in enumerate(cameras):
        try:
            view = synthesize_view(mesh, camera, record, config.camera, config.cluster.band)
        except EmptyView:
            logger.warning(f"View {index} of {name} sees nothing; skipped")
            continue
        cloud = view.cloud
        if args.augment:
            cloud = augment(cloud, config.augment, seed=derive_seed(config.augment.seed, name, index))
        cloud_path = args.out / f"{name}_view{index:03d}.ply"
        save_cloud(cloud, cloud_path)
        sidecar = ViewSidecar(
            object_id=name,
            view_index=index,
            cloud=cloud_path.name,
            points=len(cloud),
            camera=camera.to_record(),
            planes=view.visible_planes(),
            provenance=make_provenance(config),
        )
        write_model(cloud_path.with_suffix(".json"), sidecar)
        written += 1
    logger.info(f"Wrote {written} views of {name} to {args.out}")
    return 0
