import argparse
from pathlib import Path

from loguru import logger

from stableplace.cli.common import object_id, override, write_model
from stableplace.core.config import ToolConfig
from stableplace.services.annotation import annotate_corpus
from stableplace.services.geometry import load_mesh


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("annotate", help="Annotate stable planes of watertight meshes")
    parser.add_argument("meshes", nargs="+", type=Path, help="OBJ/PLY meshes")
    parser.add_argument("--out", type=Path, required=True, help="Output directory for <object_id>.json")
    parser.add_argument("--subdivisions", type=int, default=None, help="Euler grid subdivisions per angle")
    parser.add_argument("--seed", type=int, default=None)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace, config: ToolConfig) -> int:
    config = override(config, cluster__subdivisions=args.subdivisions, seed=args.seed)
    objects = [(object_id(path), load_mesh(path), str(path)) for path in args.meshes]
    for record in annotate_corpus(objects, config, workers=config.threads):
        target = args.out / f"{record.object_id}.json"
        write_model(target, record)
        logger.info(f"Wrote {target} ({len(record.planes)} planes)")
    return 0
