import argparse
from pathlib import Path
from typing import Dict, List, Tuple

from loguru import logger

from stableplace.cli.common import annotation_beside, discover_corpus, object_id, override, read_annotation, write_model
from stableplace.core.config import ToolConfig
from stableplace.core.constants import Method, Regime
from stableplace.schemas.annotation import AnnotationRecord
from stableplace.services.evaluation import desk_corpus, render_csv, render_markdown, run_benchmark
from stableplace.services.geometry import TriMesh, load_mesh, write_atomic


def _methods(text: str) -> List[Method]:
    try:
        return [Method(name.strip()) for name in text.split(",") if name.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from e


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("bench", help="Run the placement benchmark")
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--corpus", type=Path, help="Directory of OBJ/PLY meshes (with optional <stem>.json annotations)")
    source.add_argument("--desk", action="store_true", help="Use the built-in ten-object desk corpus")
    parser.add_argument("--methods", type=_methods, default=list(Method), help="Comma-separated methods")
    parser.add_argument("--regime", choices=[r.value for r in Regime], default=None)
    parser.add_argument("--trials", type=int, default=None)
    parser.add_argument("--success-deg", type=float, default=None)
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--out", type=Path, required=True, help="report.json; .md and .csv are written beside it")
    parser.set_defaults(handler=run)


def load_corpus(directory: Path) -> Tuple[List[Tuple[str, TriMesh]], Dict[str, AnnotationRecord]]:
    corpus, annotations = [], {}
    for path in discover_corpus(directory):
        name = object_id(path)
        corpus.append((name, load_mesh(path)))
        sidecar = annotation_beside(path)
        if sidecar is not None:
            annotations[name] = read_annotation(sidecar)
    return corpus, annotations


def run(args: argparse.Namespace, config: ToolConfig) -> int:
    config = override(
        config,
        bench__trials=args.trials,
        bench__regime=args.regime,
        bench__success_deg=args.success_deg,
        seed=args.seed,
    )
    if args.desk:
        corpus, annotations = desk_corpus(), {}
    else:
        corpus, annotations = load_corpus(args.corpus)
    logger.info(f"Benchmarking {len(corpus)} objects with {', '.join(m.value for m in args.methods)}")

    report = run_benchmark(corpus, args.methods, config=config, annotations=annotations, workers=config.threads)
    write_model(args.out, report, include_timestamp=False)
    write_atomic(args.out.with_suffix(".md"), render_markdown(report))
    write_atomic(args.out.with_suffix(".csv"), render_csv(report))
    logger.info(f"Wrote {args.out}")
    return 0
