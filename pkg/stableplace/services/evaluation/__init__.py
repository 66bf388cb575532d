from stableplace.services.evaluation.benchmark import (
    BenchObject,
    desk_corpus,
    fold_trials,
    prepare_objects,
    run_benchmark,
    trial_table,
)
from stableplace.services.evaluation.placement import PlacementResult, evaluate_placement, trace_drift
from stableplace.services.evaluation.report import render_csv, render_markdown

__all__ = [
    "BenchObject",
    "desk_corpus",
    "fold_trials",
    "prepare_objects",
    "run_benchmark",
    "trial_table",
    "PlacementResult",
    "evaluate_placement",
    "trace_drift",
    "render_csv",
    "render_markdown",
]
