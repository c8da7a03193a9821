"""Bit-stable serialization of traces, summaries and configuration echoes."""

import csv
import json
import math
from contextlib import contextmanager
from pathlib import Path
from typing import IO, TYPE_CHECKING, Any, Iterator, Sequence

from offload_bandit.workload import TrafficPattern
from offload_bandit.workload import phase_of

if TYPE_CHECKING:
    from offload_bandit.config import ExperimentConfig
    from offload_bandit.engine import RunSummary
    from offload_bandit.engine import SlotRecord
    from offload_bandit.workload import SlotWorkload
else:
    ExperimentConfig = object
    RunSummary = object
    SlotRecord = object
    SlotWorkload = object

TRACE_HEADER = ("slot", "phase", "arm", "cost", "avg_cost", "pred_state", "true_phase")
WORKLOAD_HEADER = ("slot", "user", "size", "phase")


def format_float(value: float) -> str:
    """Returns `value` with 17 significant digits, enough to round-trip any double."""
    return format(value, ".17g")


@contextmanager
def _open_output(path: str | Path, what: str) -> Iterator[IO[str]]:
    path = Path(path)
    try:
        with path.open("w", encoding="utf-8", newline="") as stream:
            yield stream
    except OSError as exc:
        reason = exc.strerror or str(exc)
        raise OSError(exc.errno, f"Failed to write {what}: {reason}", str(path)) from exc


def write_trace(records: Sequence[SlotRecord], path: str | Path) -> Path:
    """
    Writes the per-slot trace as CSV.

    Rows follow `TRACE_HEADER` with LF line endings. `pred_state` is left empty for slots without
    a traffic-state prediction.

    Raises:
        ValueError: If `records` is empty.
        OSError: If the file cannot be written; the message names the path.
    """
    if not records:
        raise ValueError("Cannot write a trace without records.")
    with _open_output(path, "trace") as stream:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(TRACE_HEADER)
        for record in records:
            writer.writerow(
                (
                    record.slot,
                    record.phase,
                    record.arm,
                    format_float(record.cost),
                    format_float(record.avg_cost),
                    "" if record.pred_state is None else record.pred_state,
                    record.true_phase,
                )
            )
    return Path(path)


def write_summary(summaries: Sequence[RunSummary], path: str | Path) -> Path:
    """
    Writes run summaries as a JSON array with sorted keys, one object per run.

    Non-finite numbers (an infinite stability threshold) are written as the strings `"inf"`,
    `"-inf"` and `"nan"`, so the file is strict JSON.

    Raises:
        ValueError: If `summaries` is empty.
        OSError: If the file cannot be written; the message names the path.
    """
    if not summaries:
        raise ValueError("Cannot write an empty summary.")
    content = json.dumps(
        [json_safe(summary.to_dict()) for summary in summaries],
        sort_keys=True,
        indent=2,
        allow_nan=False,
    )
    with _open_output(path, "summary") as stream:
        stream.write(content + "\n")
    return Path(path)


def json_safe(value: Any) -> Any:
    """Returns `value` with non-finite floats replaced by their string names, recursively."""
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    if isinstance(value, dict):
        return {key: json_safe(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [json_safe(item) for item in value]
    return value


def write_config_echo(config: ExperimentConfig, path: str | Path) -> Path:
    """Writes the effective configuration, provenance included, as YAML that parses back to it."""
    from omegaconf import OmegaConf

    with _open_output(path, "config echo") as stream:
        stream.write(OmegaConf.to_yaml(OmegaConf.structured(config)))
    return Path(path)


def write_workload_trace(
    workloads: Sequence[SlotWorkload], pattern: TrafficPattern, path: str | Path
) -> Path:
    """Writes one `slot,user,size,phase` row per user and slot."""
    if not workloads:
        raise ValueError("Cannot write a workload trace without workloads.")
    with _open_output(path, "workload trace") as stream:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(WORKLOAD_HEADER)
        for load in workloads:
            phase = phase_of(pattern, load.slot).value
            for user, size in enumerate(load.sizes):
                writer.writerow((load.slot, user, format_float(float(size)), phase))
    return Path(path)
