"""Bandit policies choosing one joint arm per slot."""

import logging
import math
from abc import ABC, abstractmethod
from collections import deque
from dataclasses import dataclass
from typing import TYPE_CHECKING, ClassVar, Final, Iterable, Sequence

import numpy as np
from typing_extensions import override

from offload_bandit.arms import ArmSpace
from offload_bandit.network import NetworkProfile
from offload_bandit.network import latency_table

if TYPE_CHECKING:
    from offload_bandit.workload import SlotWorkload
else:
    SlotWorkload = object

logger = logging.getLogger(__name__)

STABLE_STATE: Final[int] = 1
UNSTABLE_STATE: Final[int] = -1


class PolicyError(RuntimeError):
    """Raised when a policy is asked to exploit without any learned statistics."""


class ArmStats:
    """Pull counts and running average costs of every arm."""

    def __init__(self, num_arms: int) -> None:
        self.counts = np.zeros(num_arms, dtype=np.int64)
        self.means = np.zeros(num_arms, dtype=np.float64)

    def __len__(self) -> int:
        return len(self.counts)

    @property
    def explored(self) -> np.ndarray:
        """Returns a boolean mask of the arms pulled at least once."""
        return self.counts > 0

    def update(self, arm: int, cost: float) -> None:
        """Folds one observed cost into the running average of `arm`."""
        self.counts[arm] += 1
        self.means[arm] += (cost - self.means[arm]) / self.counts[arm]


class CostRange:
    """
    Running amplitude U of observed costs.

    Until two costs have been observed the configured prior is reported instead.
    """

    def __init__(self, prior: float = 1.0) -> None:
        if prior < 0:
            raise ValueError(f"Amplitude prior must not be negative, got {prior}.")
        self.prior = prior
        self.low = math.inf
        self.high = -math.inf
        self.observations = 0

    @property
    def value(self) -> float:
        """Returns the current amplitude estimate."""
        if self.observations < 2:
            return self.prior
        return self.high - self.low

    def update(self, cost: float) -> None:
        """Widens the observed range with `cost`."""
        self.low = min(self.low, cost)
        self.high = max(self.high, cost)
        self.observations += 1


def explore_step(stats: ArmStats, rng: np.random.Generator) -> int:
    """Returns a uniformly random unexplored arm, or any arm once all have been explored."""
    unexplored = np.flatnonzero(stats.counts == 0)
    if unexplored.size:
        return int(unexplored[rng.integers(unexplored.size)])
    return int(rng.integers(len(stats)))


def greedy_arm(stats: ArmStats) -> int:
    """Returns the explored arm with the lowest average cost (lowest index on ties)."""
    explored = stats.explored
    if not explored.any():
        raise PolicyError("No arm has been explored; run an exploration phase before exploiting.")
    return int(np.argmin(np.where(explored, stats.means, np.inf)))


def eps_greedy_choose(stats: ArmStats, epsilon: float, rng: np.random.Generator) -> int:
    """Explores with probability `epsilon`, otherwise exploits the best explored arm."""
    if rng.random() < epsilon:
        return explore_step(stats, rng)
    return greedy_arm(stats)


def ucb1_estimate(stats: ArmStats, arm: int, slot: float, amplitude: float, xi: float) -> float:
    """
    Returns the optimistic cost estimate of one arm at `slot`.

    Args:
        stats (ArmStats):
            Learned statistics; unpulled arms carry an average of zero.
        arm (int):
            Arm index.
        slot (float):
            Current slot t (at least 1).
        amplitude (float):
            Amplitude U scaling the confidence radius.
        xi (float):
            Exploration weight.
    """
    radius = amplitude * math.sqrt(xi * math.log(slot) / (1.0 + stats.counts[arm]))
    return float(stats.means[arm]) - radius


def ucb1_estimates(stats: ArmStats, slot: float, amplitude: float, xi: float) -> np.ndarray:
    """Vectorized `ucb1_estimate` over every arm."""
    radius = amplitude * np.sqrt(xi * math.log(slot) / (1.0 + stats.counts))
    return stats.means - radius


def ucb1_choose(stats: ArmStats, slot: float, amplitude: float, xi: float) -> int:
    """Returns the arm with the lowest optimistic estimate over the whole arm space."""
    return int(np.argmin(ucb1_estimates(stats, slot, amplitude, xi)))


def traffic_variance(pool: Iterable[np.ndarray]) -> float:
    """
    Returns the user-averaged population variance of the task sizes held in `pool`.

    Args:
        pool (Iterable[np.ndarray]):
            One array of per-user task sizes per remembered slot.
    """
    samples = list(pool)
    if len(samples) < 2:
        return 0.0
    return float(np.var(np.stack(samples), axis=0).mean())


def predict_state(variance: float, threshold: float) -> int:
    """Returns +1 (stable) when `variance` is at most `threshold`, otherwise -1."""
    return STABLE_STATE if variance <= threshold else UNSTABLE_STATE


def default_threshold(means: Sequence[float], window: int) -> float:
    """Returns the stability threshold 0.5 * D * sum(means) / I."""
    if not means:
        raise ValueError("At least one traffic mean is required.")
    if window < 1:
        raise ValueError(f"Memory window must be at least 1, got {window}.")
    return 0.5 * window * sum(means) / len(means)


@dataclass(frozen=True)
class OracleDecision:
    """Clairvoyant choice for one slot together with its decomposed cross-check."""

    arm: int
    cost: float
    decomposed_cost: float

    @property
    def consistent(self) -> bool:
        """Returns whether the joint optimum equals the per-user decomposed optimum."""
        return self.cost == self.decomposed_cost


def oracle_choose(
    profile: NetworkProfile, workload: SlotWorkload, arms: ArmSpace
) -> OracleDecision:
    """Evaluates every arm on the slot workload and returns the cheapest (lowest index on ties)."""
    table = latency_table(profile, workload)
    costs = table[np.arange(arms.num_users), arms.digits].max(axis=1)
    best = int(np.argmin(costs))
    decomposed = float(table.min(axis=1).max())
    return OracleDecision(arm=best, cost=float(costs[best]), decomposed_cost=decomposed)


class Policy(ABC):
    """
    Single-owner mutable bandit policy.

    The simulation engine calls `reveal` with the slot workload (ignored by learning
    policies), then `explore` during the exploration phase or `choose` afterwards, and finally
    `observe` with the resulting cost.
    """

    name: ClassVar[str]

    def __init__(self, arms: ArmSpace, rng: np.random.Generator) -> None:
        self.arms = arms
        self.rng = rng
        self.stats = ArmStats(len(arms))
        self.predicted_state: int | None = None
        self.branch: str | None = None

    def reveal(self, workload: SlotWorkload) -> None:
        """Shows the current slot workload to clairvoyant policies."""

    def explore(self, slot: int) -> int:
        """Returns the arm pulled at an exploration slot."""
        return explore_step(self.stats, self.rng)

    @abstractmethod
    def choose(self, slot: int) -> int:
        """Returns the arm pulled at an exploration-exploitation slot."""

    def observe(self, arm: int, cost: float, workload: SlotWorkload) -> None:
        """Records the cost of the pulled arm."""
        if cost < 0:
            raise ValueError(f"Costs must not be negative, got {cost}.")
        self.stats.update(arm, cost)


class EpsilonGreedyPolicy(Policy):
    """Epsilon-greedy offloading over the explored arms."""

    name = "eps_greedy"

    def __init__(self, arms: ArmSpace, rng: np.random.Generator, epsilon: float = 0.01) -> None:
        super().__init__(arms, rng)
        if not 0.0 <= epsilon <= 1.0:
            raise ValueError(f"Epsilon must lie in [0, 1], got {epsilon}.")
        self.epsilon = epsilon

    @override
    def choose(self, slot: int) -> int:
        return eps_greedy_choose(self.stats, self.epsilon, self.rng)


class Ucb1Policy(Policy):
    """UCB1-style offloading minimizing an optimistic cost estimate."""

    name = "ucb1"

    def __init__(
        self,
        arms: ArmSpace,
        rng: np.random.Generator,
        xi: float = 0.1,
        amplitude_prior: float = 1.0,
    ) -> None:
        super().__init__(arms, rng)
        if not xi > 0:
            raise ValueError(f"Exploration weight xi must be positive, got {xi}.")
        self.xi = xi
        self.amplitude = CostRange(amplitude_prior)

    @override
    def choose(self, slot: int) -> int:
        return ucb1_choose(self.stats, slot, self.amplitude.value, self.xi)

    @override
    def observe(self, arm: int, cost: float, workload: SlotWorkload) -> None:
        super().observe(arm, cost, workload)
        self.amplitude.update(cost)


class AtoaPolicy(Policy):
    """
    Adaptive offloading that switches between epsilon-greedy and UCB1 branches.

    A memory pool of the last `window` slot workloads feeds a variance detector; slots
    predicted stable use the epsilon-greedy branch and unstable ones the UCB1 branch. Both
    branches read and update one shared statistics table.
    """

    name = "atoa"

    def __init__(
        self,
        arms: ArmSpace,
        rng: np.random.Generator,
        threshold: float,
        epsilon: float = 0.01,
        xi: float = 0.1,
        window: int = 10,
        amplitude_prior: float = 1.0,
    ) -> None:
        super().__init__(arms, rng)
        if not 0.0 <= epsilon <= 1.0:
            raise ValueError(f"Epsilon must lie in [0, 1], got {epsilon}.")
        if not xi > 0:
            raise ValueError(f"Exploration weight xi must be positive, got {xi}.")
        if window < 1:
            raise ValueError(f"Memory window must be at least 1, got {window}.")
        if threshold < 0:
            raise ValueError(f"Stability threshold must not be negative, got {threshold}.")
        self.epsilon = epsilon
        self.xi = xi
        self.threshold = threshold
        self.amplitude = CostRange(amplitude_prior)
        self.pool: deque[np.ndarray] = deque(maxlen=window)

    @override
    def choose(self, slot: int) -> int:
        variance = traffic_variance(self.pool)
        state = predict_state(variance, self.threshold)
        if state != self.predicted_state:
            logger.debug("Slot %d: traffic predicted %s (v=%.6g)", slot, state, variance)
        self.predicted_state = state
        if state == STABLE_STATE:
            self.branch = EpsilonGreedyPolicy.name
            return eps_greedy_choose(self.stats, self.epsilon, self.rng)
        self.branch = Ucb1Policy.name
        return ucb1_choose(self.stats, slot, self.amplitude.value, self.xi)

    @override
    def observe(self, arm: int, cost: float, workload: SlotWorkload) -> None:
        super().observe(arm, cost, workload)
        self.amplitude.update(cost)
        self.pool.append(np.array(workload.sizes, dtype=np.float64))


class OraclePolicy(Policy):
    """Clairvoyant baseline that always pulls the cheapest arm of the current slot."""

    name = "oracle"

    def __init__(self, arms: ArmSpace, rng: np.random.Generator, profile: NetworkProfile) -> None:
        super().__init__(arms, rng)
        self.profile = profile
        self._decision: OracleDecision | None = None

    @override
    def reveal(self, workload: SlotWorkload) -> None:
        self._decision = oracle_choose(self.profile, workload, self.arms)

    @override
    def explore(self, slot: int) -> int:
        return self.choose(slot)

    @override
    def choose(self, slot: int) -> int:
        if self._decision is None:
            raise PolicyError("The oracle must see the slot workload before choosing.")
        return self._decision.arm
