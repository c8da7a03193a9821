from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

import numpy as np

if TYPE_CHECKING:
    from offload_bandit.arms import JointArm
    from offload_bandit.workload import SlotWorkload
else:
    JointArm = object
    SlotWorkload = object


@dataclass(frozen=True)
class NetworkProfile:
    """
    Static description of a multi-user multi-server edge network.

    Args:
        user_capacities (tuple[float, ...]):
            Compute capacity of every end user in cycles per time unit (length I).
        server_capacities (tuple[float, ...]):
            Compute capacity of every edge server in cycles per time unit (length J).
        link_capacity (tuple[tuple[float, ...], ...]):
            Data capacity between user i and server j in bits per time unit (shape I x J).
        cycles_per_bit (float):
            CPU cycles required to process one bit of task data.
        deadline (float):
            Execution deadline of every task, in time units.
    """

    user_capacities: tuple[float, ...]
    server_capacities: tuple[float, ...]
    link_capacity: tuple[tuple[float, ...], ...]
    cycles_per_bit: float = 1.0
    deadline: float = 1.0

    def __post_init__(self) -> None:
        num_users = len(self.user_capacities)
        num_servers = len(self.server_capacities)
        if num_servers < 1:
            raise ValueError("A network requires at least one edge server.")
        if num_users < num_servers + 1:
            raise ValueError(
                f"A network requires more users than servers, got {num_users} users and "
                f"{num_servers} servers."
            )
        if len(self.link_capacity) != num_users or any(
            len(row) != num_servers for row in self.link_capacity
        ):
            raise ValueError(
                f"Link capacity must have shape {num_users}x{num_servers} (users x servers)."
            )
        if any(not value > 0 for value in _parameter_values(self)):
            raise ValueError(
                "Capacities, link rates, cycles per bit and deadline must be positive."
            )

    @classmethod
    def from_lists(
        cls,
        user_capacities: Sequence[float],
        server_capacities: Sequence[float],
        link_capacity: Sequence[Sequence[float]],
        cycles_per_bit: float = 1.0,
        deadline: float = 1.0,
    ) -> "NetworkProfile":
        """Builds a profile from plain (possibly nested) sequences."""
        return cls(
            user_capacities=tuple(float(c) for c in user_capacities),
            server_capacities=tuple(float(c) for c in server_capacities),
            link_capacity=tuple(tuple(float(r) for r in row) for row in link_capacity),
            cycles_per_bit=float(cycles_per_bit),
            deadline=float(deadline),
        )

    @property
    def num_users(self) -> int:
        """Returns the number of end users (I)."""
        return len(self.user_capacities)

    @property
    def num_servers(self) -> int:
        """Returns the number of edge servers (J)."""
        return len(self.server_capacities)


def _parameter_values(profile: NetworkProfile) -> list[float]:
    """Returns every scalar parameter of a profile that must be strictly positive."""
    values = [*profile.user_capacities, *profile.server_capacities]
    for row in profile.link_capacity:
        values.extend(row)
    values.extend([profile.cycles_per_bit, profile.deadline])
    return values


def local_size_cap(profile: NetworkProfile, user: int) -> float:
    """Returns the largest task size (bits) user can finish locally within the deadline."""
    return profile.deadline * profile.user_capacities[user] / profile.cycles_per_bit


def offload_size(profile: NetworkProfile, user: int, size: float) -> float:
    """Returns the part of a task that exceeds the local cap, zero when the task fits locally."""
    return max(0.0, size - local_size_cap(profile, user))


def local_latency(profile: NetworkProfile, user: int, size: float) -> float:
    """Returns the latency of processing a whole task of `size` bits on the user device."""
    return profile.cycles_per_bit * size / profile.user_capacities[user]


def offload_latency(profile: NetworkProfile, user: int, server: int, size: float) -> float:
    """
    Returns the latency of a split task whose excess is offloaded to `server`.

    The local part occupies the full deadline window, after which the offloaded part is
    transmitted over the user-server link and computed on the server.

    Args:
        profile (NetworkProfile):
            Network description.
        user (int):
            Index of the user generating the task.
        server (int):
            Index of the edge server receiving the offloaded part.
        size (float):
            Full task size in bits (not only the offloaded part).

    Raises:
        ValueError: If the task fits locally; such tasks must be resolved to local execution.
    """
    excess = offload_size(profile, user, size)
    if excess == 0.0:
        raise ValueError(
            f"Task of size {size} for user {user} fits locally and cannot be offloaded."
        )
    return (
        profile.deadline
        + excess / profile.link_capacity[user][server]
        + profile.cycles_per_bit * excess / profile.server_capacities[server]
    )


def user_latency(profile: NetworkProfile, user: int, action: int, size: float) -> float:
    """Returns the latency of one user under an already resolved action (-1 means local)."""
    if action < 0:
        return local_latency(profile, user, size)
    return offload_latency(profile, user, action, size)


def system_cost(profile: NetworkProfile, workload: SlotWorkload, arm: JointArm) -> float:
    """Returns the slot cost L(t): the maximum task latency over all users under `arm`."""
    from offload_bandit.arms import resolve_effective_actions

    if len(arm.entries) != profile.num_users:
        raise ValueError(
            f"Arm has {len(arm.entries)} entries but the network has {profile.num_users} users."
        )
    effective = resolve_effective_actions(arm, workload, profile)
    return max(
        user_latency(profile, user, action, float(workload.sizes[user]))
        for user, action in enumerate(effective.entries)
    )


def latency_table(profile: NetworkProfile, workload: SlotWorkload) -> np.ndarray:
    """
    Returns the effective latency of every (user, action) pair for one slot.

    Column 0 holds the local latency and column k the latency of offloading to server k-1.
    Users whose task fits locally repeat their local latency in every column.
    """
    table = np.empty((profile.num_users, profile.num_servers + 1), dtype=np.float64)
    for user in range(profile.num_users):
        size = float(workload.sizes[user])
        local = local_latency(profile, user, size)
        table[user, 0] = local
        fits = offload_size(profile, user, size) == 0.0
        for server in range(profile.num_servers):
            table[user, server + 1] = (
                local if fits else offload_latency(profile, user, server, size)
            )
    return table
