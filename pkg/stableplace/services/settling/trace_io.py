from pathlib import Path
from typing import List, Union

from stableplace.schemas.common import PoseRecord
from stableplace.schemas.trace import TraceLine
from stableplace.services.geometry import write_atomic
from stableplace.services.settling.simulator import InstabilityTrace


def trace_lines(trace: InstabilityTrace) -> List[TraceLine]:
    lines = []
    last = len(trace.poses) - 1
    for step, pose in enumerate(trace.poses):
        lines.append(
            TraceLine(
                step=step,
                pose=PoseRecord.from_pose(pose),
                movement=trace.movements[step - 1] if step else None,
                instability=trace.instabilities[step - 1] if step else None,
                window=trace.window,
                converged=trace.converged if step == last else None,
            )
        )
    return lines


def write_trace(trace: InstabilityTrace, path: Union[str, Path]) -> None:
    """Write a trace as JSON lines, one pose with its movement and instability per line."""
    body = "".join(line.model_dump_json() + "\n" for line in trace_lines(trace))
    write_atomic(path, body)


def read_trace(path: Union[str, Path]) -> InstabilityTrace:
    lines = [
        TraceLine.model_validate_json(text)
        for text in Path(path).read_text(encoding="utf-8").splitlines()
        if text.strip()
    ]
    return InstabilityTrace(
        poses=tuple(line.pose.to_pose() for line in lines),
        movements=tuple(line.movement for line in lines[1:]),
        window=lines[0].window,
        instabilities=tuple(line.instability for line in lines[1:]),
        converged=bool(lines[-1].converged),
    )
