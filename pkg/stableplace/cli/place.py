import argparse
import sys
from pathlib import Path
from typing import Optional

from loguru import logger

from stableplace.cli.common import override, read_annotation, write_model
from stableplace.core.config import ToolConfig
from stableplace.core.constants import Method
from stableplace.core.exceptions import MeshFormatError, NoPlaneFound, NoStablePoints
from stableplace.schemas.common import canonical_json, make_provenance
from stableplace.schemas.placement import RankedPlaneEntry, RankedPlanesRecord
from stableplace.services.baselines import PlacementProposal, bbf, chsa, rpf
from stableplace.services.geometry import PointCloud, load_cloud, load_mesh
from stableplace.services.planner import RankedPlanes, oracle_scores, plan_placement


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("place", help="Propose a placement rotation for a point cloud")
    parser.add_argument("cloud", type=Path, help="PLY/XYZ cloud, optionally with score and label columns")
    parser.add_argument("--method", required=True, choices=[m.value for m in Method])
    parser.add_argument("--annotation", type=Path, default=None, help="Annotation record for oracle planner scores")
    parser.add_argument("--mesh", type=Path, default=None, help="Mesh of the annotation (default: the record's path)")
    parser.add_argument("--out", type=Path, default=None, help="Proposal JSON (default: standard output)")
    parser.add_argument("--planes-out", type=Path, default=None, help="Ranked planes JSON (planner only)")
    parser.add_argument("--seed", type=int, default=None)
    parser.set_defaults(handler=run)


def scored_cloud(cloud: PointCloud, args: argparse.Namespace, config: ToolConfig) -> PointCloud:
    """The cloud's own scores, or oracle scores from an annotation record."""
    if cloud.scores is not None or args.annotation is None:
        return cloud
    record = read_annotation(args.annotation)
    mesh_path = args.mesh or (Path(record.mesh) if record.mesh else None)
    if mesh_path is None:
        raise MeshFormatError(f"Annotation {args.annotation} names no mesh; pass --mesh", path=str(args.annotation))
    return oracle_scores(cloud, load_mesh(mesh_path), record, config.cluster.band)


def ranked_record(ranked: RankedPlanes, proposal: PlacementProposal, config: ToolConfig) -> RankedPlanesRecord:
    return RankedPlanesRecord(
        planes=[
            RankedPlaneEntry(
                model=[float(v) for v in entry.plane.coefficients],
                score=entry.score,
                inliers=[int(i) for i in entry.plane.inliers],
                cluster=entry.cluster,
            )
            for entry in ranked.planes
        ],
        best=ranked.best,
        rotation=[float(v) for v in proposal.rotation.reshape(-1)],
        provenance=make_provenance(config),
    )


def run(args: argparse.Namespace, config: ToolConfig) -> int:
    config = override(config, seed=args.seed)
    method = Method(args.method)
    cloud = load_cloud(args.cloud)

    ranked: Optional[RankedPlanes] = None
    try:
        if method == Method.CHSA:
            proposal = chsa(cloud)
        elif method == Method.BBF:
            proposal = bbf(cloud)
        elif method == Method.RPF:
            proposal = rpf(cloud, seed=config.seed, params=config.ransac)
        else:
            scored = scored_cloud(cloud, args, config)
            proposal, ranked = plan_placement(scored, params=config.planner, ransac=config.ransac, seed=config.seed)
    except (NoPlaneFound, NoStablePoints) as e:
        logger.warning(f"{method.value}: no plane detected ({e.error_code})")
        proposal = PlacementProposal.no_plane(method)

    record = proposal.to_record(make_provenance(config))
    if args.out is None:
        sys.stdout.write(canonical_json(record))
    else:
        write_model(args.out, record)
        logger.info(f"Wrote {args.out}")
    if ranked is not None and args.planes_out is not None:
        write_model(args.planes_out, ranked_record(ranked, proposal, config))
    return 0
