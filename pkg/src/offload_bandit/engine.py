"""Slot-by-slot simulation loop, run summaries and parameter sweeps."""

import dataclasses
import itertools
import logging
from collections import Counter
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from concurrent.futures import as_completed
from dataclasses import dataclass
from dataclasses import field
from typing import Any, Iterable, Mapping, Sequence

import numpy as np

from offload_bandit import network
from offload_bandit import policies
from offload_bandit import workload
from offload_bandit.arms import ArmSpace
from offload_bandit.config import ExperimentConfig
from offload_bandit.config import apply_overrides
from offload_bandit.config import to_container
from offload_bandit.config import validate
from offload_bandit.network import NetworkProfile
from offload_bandit.workload import SeededSource
from offload_bandit.workload import SlotWorkload
from offload_bandit.workload import TrafficPattern

logger = logging.getLogger(__name__)

EXPLORE = "explore"
EXPLOIT = "exploit"


@dataclass(frozen=True)
class SlotRecord:
    """Outcome of one simulated slot."""

    slot: int
    phase: str
    arm: int
    cost: float
    avg_cost: float
    pred_state: int | None
    true_phase: str
    branch: str | None = None
    oracle_cost: float | None = None


@dataclass(frozen=True)
class OracleGap:
    """Per-slot distance between a policy and the clairvoyant optimum."""

    mean: float
    max: float
    total_oracle_cost: float
    optimal_fraction: float


@dataclass(frozen=True)
class RunSummary:
    """Aggregate metrics of one run, keyed in sweeps by its overrides and seed."""

    policy: str
    seed: int
    horizon: int
    exploration: int
    final_cost: float
    total_cost: float
    discounted_cost: float
    exploit_cost: float
    stable_cost: float | None
    unstable_cost: float | None
    detector_accuracy: float | None = None
    branch_counts: dict[str, int] = field(default_factory=dict)
    oracle_gap: OracleGap | None = None
    overrides: dict[str, Any] = field(default_factory=dict)
    config: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        """Returns a JSON-serializable dictionary of the summary."""
        return dataclasses.asdict(self)


@dataclass
class SimulationResult:
    """Records of a completed run plus the workloads kept for tracing."""

    records: list[SlotRecord]
    workloads: list[SlotWorkload] = field(default_factory=list)


@dataclass(frozen=True)
class OracleReport:
    """Outcome of comparing the brute-force optimum against the per-user decomposition."""

    slots: int
    decisions: list[policies.OracleDecision]
    mismatches: list[int]

    @property
    def consistent(self) -> bool:
        """Returns whether every slot agreed."""
        return not self.mismatches


@dataclass(frozen=True)
class SweepKey:
    """Identifies one sweep entry by its override label and seed."""

    label: str
    seed: int


class SweepError(RuntimeError):
    """Raised when a sweep entry fails; `key` identifies the entry."""

    def __init__(self, key: SweepKey, reason: str) -> None:
        super().__init__(f"Sweep entry '{key.label}' (seed {key.seed}) failed: {reason}")
        self.key = key


def simulate(
    config: ExperimentConfig,
    profile: NetworkProfile,
    pattern: TrafficPattern,
    arms: ArmSpace,
    policy: policies.Policy,
    source: SeededSource,
) -> SimulationResult:
    """
    Runs the full horizon of one experiment.

    Every slot first draws the workload, lets the policy pick an arm (exploration phase up to
    `config.exploration`, exploration-exploitation afterwards), evaluates the slot cost and
    then feeds it back to the policy.
    """
    records: list[SlotRecord] = []
    workloads: list[SlotWorkload] = []
    window: deque[float] | None = (
        deque(maxlen=config.average_window) if config.average_window else None
    )
    total = 0.0
    logger.info(
        "Simulating %s over %d slots (%d exploration, %d arms, seed %d)",
        policy.name,
        config.horizon,
        config.exploration,
        len(arms),
        config.seed,
    )
    for slot in range(1, config.horizon + 1):
        load = workload.draw_slot(pattern, source, slot)
        policy.reveal(load)
        exploring = slot <= config.exploration
        if slot == config.exploration + 1:
            logger.debug("Exploitation starts at slot %d", slot)
        arm = policy.explore(slot) if exploring else policy.choose(slot)
        cost = network.system_cost(profile, load, arms[arm])
        policy.observe(arm, cost, load)

        total += cost
        if window is not None:
            window.append(cost)
            average = sum(window) / len(window)
        else:
            average = total / slot
        oracle_cost = (
            policies.oracle_choose(profile, load, arms).cost if config.oracle_trace else None
        )
        records.append(
            SlotRecord(
                slot=slot,
                phase=EXPLORE if exploring else EXPLOIT,
                arm=arm,
                cost=cost,
                avg_cost=average,
                pred_state=None if exploring else policy.predicted_state,
                true_phase=workload.phase_of(pattern, slot).value,
                branch=None if exploring else policy.branch,
                oracle_cost=oracle_cost,
            )
        )
        if config.output.workload_trace:
            workloads.append(load)
    logger.info("Finished %s: average cost %.6f", policy.name, total / config.horizon)
    return SimulationResult(records=records, workloads=workloads)


def discounted_cost(costs: Iterable[float], discount: float) -> float:
    """Returns sum_t discount^(T-t) * cost_t for costs ordered by slot."""
    accumulated = 0.0
    for cost in costs:
        accumulated = discount * accumulated + cost
    return accumulated


def detector_accuracy(records: Sequence[SlotRecord], lag: int) -> float | None:
    """
    Returns the fraction of predicted exploitation slots whose state matches the true phase.

    Slots less than `lag` slots after a true phase change are ignored. Returns None when no
    slot carries a prediction.
    """
    correct = evaluated = 0
    previous: str | None = None
    changed_at: int | None = None
    for record in records:
        if previous is not None and record.true_phase != previous:
            changed_at = record.slot
        previous = record.true_phase
        if record.phase != EXPLOIT or record.pred_state is None:
            continue
        if changed_at is not None and record.slot - changed_at < lag:
            continue
        evaluated += 1
        predicted_stable = record.pred_state == policies.STABLE_STATE
        correct += predicted_stable == (record.true_phase == workload.Phase.STABLE.value)
    return correct / evaluated if evaluated else None


def _mean(values: Sequence[float]) -> float | None:
    return float(np.mean(values)) if len(values) else None


def summarize(
    records: Sequence[SlotRecord],
    config: ExperimentConfig,
    overrides: Mapping[str, Any] | None = None,
) -> RunSummary:
    """Aggregates the records of one run into a `RunSummary`."""
    if not records:
        raise ValueError("Cannot summarize a run without records.")
    total = 0.0
    for record in records:
        total += record.cost
    costs = [record.cost for record in records]
    by_phase: dict[str, list[float]] = {"stable": [], "unstable": []}
    for record in records:
        by_phase[record.true_phase].append(record.cost)
    exploit = [record.cost for record in records if record.phase == EXPLOIT]

    branch_counts: dict[str, int] = {}
    for record in records:
        if record.branch is not None:
            branch_counts[record.branch] = branch_counts.get(record.branch, 0) + 1

    accuracy = None
    if config.policy.name == policies.AtoaPolicy.name:
        accuracy = detector_accuracy(records, lag=config.policy.window)

    gap = None
    if config.oracle_trace:
        oracle_costs = np.array([record.oracle_cost for record in records], dtype=np.float64)
        gaps = np.asarray(costs) - oracle_costs
        gap = OracleGap(
            mean=float(gaps.mean()),
            max=float(gaps.max()),
            total_oracle_cost=float(oracle_costs.sum()),
            optimal_fraction=float(np.mean(gaps == 0.0)),
        )

    return RunSummary(
        policy=config.policy.name,
        seed=config.seed,
        horizon=config.horizon,
        exploration=config.exploration,
        final_cost=total / len(records),
        total_cost=total,
        discounted_cost=discounted_cost(costs, config.discount),
        exploit_cost=float(np.mean(exploit)),
        stable_cost=_mean(by_phase["stable"]),
        unstable_cost=_mean(by_phase["unstable"]),
        detector_accuracy=accuracy,
        branch_counts=branch_counts,
        oracle_gap=gap,
        overrides=dict(overrides or {}),
        config=to_container(config),
    )


def check_oracle(
    profile: NetworkProfile,
    pattern: TrafficPattern,
    arms: ArmSpace,
    source: SeededSource,
    slots: int,
) -> OracleReport:
    """
    Compares the brute-force joint optimum against the per-user decomposed optimum.

    A slot is a mismatch when the two optimal costs differ, or when the cost of the chosen arm
    recomputed through `system_cost` differs from the brute-force value.
    """
    if slots < 1:
        raise ValueError(f"At least one slot is required, got {slots}.")
    decisions = []
    mismatches = []
    for slot in range(1, slots + 1):
        load = workload.draw_slot(pattern, source, slot)
        decision = policies.oracle_choose(profile, load, arms)
        decisions.append(decision)
        recomputed = network.system_cost(profile, load, arms[decision.arm])
        if not decision.consistent or recomputed != decision.cost:
            mismatches.append(slot)
    if mismatches:
        logger.warning("Oracle decomposition disagreed on %d of %d slots", len(mismatches), slots)
    return OracleReport(slots=slots, decisions=decisions, mismatches=mismatches)


def run(config: ExperimentConfig) -> tuple[list[SlotRecord], RunSummary]:
    """Executes the `simulate` pipeline for `config` and returns its records and summary."""
    from offload_bandit.pipelines import SIMULATE
    from offload_bandit.pipelines import create_pipelines

    pipeline = create_pipelines(config)[SIMULATE]
    result = pipeline.execute(inputs={"experiment": config})
    return result["slot_records"], result["run_summary"]


def _run_summary(config: ExperimentConfig) -> RunSummary:
    return run(config)[1]


def sweep_grid(axes: Mapping[str, Sequence[Any]]) -> list[dict[str, Any]]:
    """Returns the Cartesian product of per-key value lists as override dictionaries."""
    keys = list(axes)
    return [dict(zip(keys, values)) for values in itertools.product(*(axes[k] for k in keys))]


def sweep_label(delta: Mapping[str, Any]) -> str:
    """Returns the display label of one override dictionary."""
    return ",".join(f"{key}={value}" for key, value in delta.items()) or "base"


def run_sweep(
    base: ExperimentConfig,
    overrides: Sequence[Mapping[str, Any]],
    seeds: Sequence[int],
    *,
    max_workers: int | None = None,
) -> dict[SweepKey, RunSummary]:
    """
    Runs every combination of override delta and seed as an independent experiment.

    Args:
        base (ExperimentConfig):
            Configuration every delta is applied to.
        overrides (Sequence[Mapping[str, Any]]):
            Dotted-key deltas; an empty sequence runs the base configuration only.
        seeds (Sequence[int]):
            Experiment seeds, at least one.
        max_workers (int, optional):
            Run entries in that many worker processes. Sequential when None or 1.

    Returns:
        Summaries keyed by `(label, seed)`, in override-major, seed-minor order.

    Raises:
        ValueError: If `seeds` is empty or repeats a seed, or two deltas share a label.
        SweepError: For the first entry whose configuration or run fails.
    """
    if not seeds:
        raise ValueError("A sweep needs at least one seed.")
    repeated = sorted(seed for seed, count in Counter(seeds).items() if count > 1)
    if repeated:
        raise ValueError(f"Sweep seeds must be distinct, got repeated {repeated}.")
    deltas = list(overrides) or [{}]
    labels = Counter(sweep_label(delta) for delta in deltas)
    duplicates = sorted(label for label, count in labels.items() if count > 1)
    if duplicates:
        raise ValueError(f"Sweep overrides must be distinct, got repeated {duplicates}.")

    configs: dict[SweepKey, tuple[ExperimentConfig, Mapping[str, Any]]] = {}
    for delta in deltas:
        for seed in seeds:
            key = SweepKey(sweep_label(delta), seed)
            try:
                config = apply_overrides(base, delta) if delta else base
                config = validate(dataclasses.replace(config, seed=seed))
            except ValueError as exc:
                raise SweepError(key, str(exc)) from exc
            configs[key] = (config, delta)
    logger.info("Sweeping %d runs (%d deltas x %d seeds)", len(configs), len(deltas), len(seeds))

    summaries: dict[SweepKey, RunSummary] = {}
    if max_workers is not None and max_workers > 1:
        with ProcessPoolExecutor(max_workers=max_workers) as executor:
            futures = {
                executor.submit(_run_summary, config): key
                for key, (config, _) in configs.items()
            }
            for future in as_completed(futures):
                key = futures[future]
                try:
                    summaries[key] = future.result()
                except Exception as exc:
                    executor.shutdown(wait=False, cancel_futures=True)
                    raise SweepError(key, str(exc)) from exc
                logger.info("Finished sweep entry %s (seed %d)", key.label, key.seed)
    else:
        for key, (config, _) in configs.items():
            try:
                summaries[key] = _run_summary(config)
            except Exception as exc:
                raise SweepError(key, str(exc)) from exc
            logger.info("Finished sweep entry %s (seed %d)", key.label, key.seed)

    return {
        key: dataclasses.replace(summaries[key], overrides=dict(delta))
        for key, (_, delta) in configs.items()
    }
