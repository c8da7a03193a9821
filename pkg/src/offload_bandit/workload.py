from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np


class TrafficMode(str, Enum):
    """Traffic generator regime."""

    STABLE = "stable"
    UNSTABLE = "unstable"
    TIDAL = "tidal"


class Phase(str, Enum):
    """Traffic state of a single slot."""

    STABLE = "stable"
    UNSTABLE = "unstable"


@dataclass(frozen=True)
class TrafficPattern:
    """
    Normally distributed per-user task sizes with an optional tidal regime switch.

    Args:
        means (tuple[float, ...]):
            Mean task size of every user, in bits.
        mode (TrafficMode):
            Constant stable/unstable traffic, or tidal alternation between the two.
        stable_sigma_factor (float):
            Spread of the stable regime as a fraction of each user's mean.
        unstable_sigma_factor (float):
            Spread of the unstable regime as a fraction of each user's mean.
        stable_period (int):
            Length in slots of a stable stretch (tidal mode only).
        unstable_period (int):
            Length in slots of an unstable stretch (tidal mode only).
        sigma_is_variance (bool):
            If True the spread `factor * mean` is read as a variance instead of a standard
            deviation.
    """

    means: tuple[float, ...]
    mode: TrafficMode = TrafficMode.TIDAL
    stable_sigma_factor: float = 0.1
    unstable_sigma_factor: float = 0.5
    stable_period: int = 150
    unstable_period: int = 150
    sigma_is_variance: bool = False

    def __post_init__(self) -> None:
        if not self.means or any(not mean > 0 for mean in self.means):
            raise ValueError(f"Traffic means must be positive, got {self.means}.")
        if self.stable_sigma_factor < 0 or self.unstable_sigma_factor < 0:
            raise ValueError("Traffic sigma factors must not be negative.")
        if self.stable_period < 1 or self.unstable_period < 1:
            raise ValueError("Tidal periods must be at least one slot.")

    @property
    def num_users(self) -> int:
        """Returns the number of users whose tasks are generated."""
        return len(self.means)

    def scale(self, phase: Phase) -> np.ndarray:
        """Returns the per-user standard deviation used in `phase`."""
        factor = (
            self.stable_sigma_factor if phase is Phase.STABLE else self.unstable_sigma_factor
        )
        spread = factor * np.asarray(self.means, dtype=np.float64)
        return np.sqrt(spread) if self.sigma_is_variance else spread


@dataclass(frozen=True, eq=False)
class SlotWorkload:
    """Task sizes (bits) generated by every user in slot `slot`."""

    sizes: np.ndarray
    slot: int

    def __post_init__(self) -> None:
        if self.slot < 1:
            raise ValueError(f"Slots are numbered from 1, got {self.slot}.")
        if np.any(self.sizes < 0):
            raise ValueError("Task sizes must not be negative.")

    @classmethod
    def of(cls, sizes: Sequence[float], slot: int = 1) -> "SlotWorkload":
        """Builds a workload from a plain sequence of sizes."""
        return cls(np.asarray(sizes, dtype=np.float64), slot)


class SeededSource:
    """
    Deterministic random stream derived from a seed and a stream number.

    Streams with the same seed but different stream numbers are statistically independent,
    which lets the workload and the policy draw from separate streams of one experiment seed.
    """

    WORKLOAD_STREAM = 0
    POLICY_STREAM = 1

    def __init__(self, seed: int, stream: int = WORKLOAD_STREAM) -> None:
        self._seed = seed
        self._stream = stream
        sequence = np.random.SeedSequence(seed, spawn_key=(stream,))
        self._generator = np.random.Generator(np.random.PCG64(sequence))

    @property
    def seed(self) -> int:
        """Returns the experiment seed."""
        return self._seed

    @property
    def stream(self) -> int:
        """Returns the stream number within the experiment seed."""
        return self._stream

    @property
    def generator(self) -> np.random.Generator:
        """Returns the underlying numpy generator."""
        return self._generator


def phase_of(pattern: TrafficPattern, slot: int) -> Phase:
    """Returns the generator phase of `slot`; tidal traffic starts stable at slot 1."""
    if slot < 1:
        raise ValueError(f"Slots are numbered from 1, got {slot}.")
    if pattern.mode is TrafficMode.STABLE:
        return Phase.STABLE
    if pattern.mode is TrafficMode.UNSTABLE:
        return Phase.UNSTABLE
    position = (slot - 1) % (pattern.stable_period + pattern.unstable_period)
    return Phase.STABLE if position < pattern.stable_period else Phase.UNSTABLE


def draw_slot(pattern: TrafficPattern, source: SeededSource, slot: int) -> SlotWorkload:
    """Draws one task size per user, in user order, clamping negative draws to zero."""
    phase = phase_of(pattern, slot)
    means = np.asarray(pattern.means, dtype=np.float64)
    sizes = source.generator.normal(means, pattern.scale(phase))
    return SlotWorkload(np.maximum(sizes, 0.0), slot)
