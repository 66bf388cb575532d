from stableplace.services.settling.body import PreparedBody, prepare_body
from stableplace.services.settling.grid import drop_grid, grid_orientations, release_pose
from stableplace.services.settling.simulator import (
    InstabilityTrace,
    SettleOutcome,
    Settler,
    SupportCheck,
    instability,
    settle,
    settle_body,
    support_check,
)
from stableplace.services.settling.table import TableConfig
from stableplace.services.settling.trace_io import read_trace, write_trace

__all__ = [
    "PreparedBody",
    "prepare_body",
    "drop_grid",
    "grid_orientations",
    "release_pose",
    "InstabilityTrace",
    "SettleOutcome",
    "Settler",
    "SupportCheck",
    "instability",
    "settle",
    "settle_body",
    "support_check",
    "TableConfig",
    "read_trace",
    "write_trace",
]
