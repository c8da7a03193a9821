from dataclasses import dataclass
from typing import TYPE_CHECKING, Final, Iterator

import numpy as np

if TYPE_CHECKING:
    from offload_bandit.network import NetworkProfile
    from offload_bandit.workload import SlotWorkload
else:
    NetworkProfile = object
    SlotWorkload = object

LOCAL: Final[int] = -1
DEFAULT_MAX_ARMS: Final[int] = 10**6


@dataclass(frozen=True)
class JointArm:
    """
    One joint offloading decision over all users.

    Every entry is either `LOCAL` (-1) or the index of the edge server that receives the
    offloaded part of that user's task.
    """

    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(entry < LOCAL for entry in self.entries):
            raise ValueError(f"Invalid arm entries {self.entries}, expected -1 or a server index.")

    def __len__(self) -> int:
        return len(self.entries)

    def __str__(self) -> str:
        return "[" + ",".join("L" if e == LOCAL else f"S{e}" for e in self.entries) + "]"


class ArmSpace:
    """
    Ordered joint action space of every user/server assignment.

    Arms are indexed in mixed-radix order with base J+1 per user: user 0 is the least
    significant digit, digit 0 means local execution and digit k offloading to server k-1.

    Args:
        num_users (int):
            Number of users (I), at least 1.
        num_servers (int):
            Number of edge servers (J), at least 1.
        max_arms (int, optional):
            Upper bound on (J+1)^I. Larger spaces are rejected as intractable.
    """

    def __init__(self, num_users: int, num_servers: int, max_arms: int = DEFAULT_MAX_ARMS) -> None:
        if num_users < 1 or num_servers < 1:
            raise ValueError(
                f"Arm space needs at least one user and one server, got {num_users} users and "
                f"{num_servers} servers."
            )
        radix = num_servers + 1
        size = radix**num_users
        if size > max_arms:
            raise ValueError(
                f"Joint arm space of {size} arms ({radix}^{num_users}) exceeds the cap of "
                f"{max_arms} arms."
            )
        self._num_users = num_users
        self._num_servers = num_servers
        self._radix = radix
        self._size = size
        indices = np.arange(size, dtype=np.int64)[:, np.newaxis]
        weights = radix ** np.arange(num_users, dtype=np.int64)
        self._digits = (indices // weights % radix).astype(np.int16)
        self._digits.setflags(write=False)

    @property
    def num_users(self) -> int:
        """Returns the number of users covered by every arm."""
        return self._num_users

    @property
    def num_servers(self) -> int:
        """Returns the number of edge servers an arm may offload to."""
        return self._num_servers

    @property
    def digits(self) -> np.ndarray:
        """Returns the read-only (N, I) matrix of arm digits (0 local, k server k-1)."""
        return self._digits

    def __len__(self) -> int:
        return self._size

    def __getitem__(self, index: int) -> JointArm:
        if not 0 <= index < self._size:
            raise IndexError(f"Arm index {index} out of range for {self._size} arms.")
        return JointArm(tuple(int(d) - 1 for d in self._digits[index]))

    def __iter__(self) -> Iterator[JointArm]:
        for index in range(self._size):
            yield self[index]

    def index_of(self, arm: JointArm) -> int:
        """Returns the canonical index of `arm`."""
        if len(arm) != self._num_users:
            raise ValueError(f"Arm {arm} does not cover {self._num_users} users.")
        index = 0
        for position, entry in enumerate(arm.entries):
            if entry >= self._num_servers:
                raise ValueError(f"Arm {arm} offloads to unknown server {entry}.")
            index += (entry + 1) * self._radix**position
        return index


def enumerate_arms(
    num_users: int, num_servers: int, max_arms: int = DEFAULT_MAX_ARMS
) -> ArmSpace:
    """Returns the canonical joint arm space for `num_users` users and `num_servers` servers."""
    return ArmSpace(num_users, num_servers, max_arms=max_arms)


def resolve_effective_actions(
    arm: JointArm, workload: SlotWorkload, profile: NetworkProfile
) -> JointArm:
    """Replaces offload entries of users whose task fits locally with local execution."""
    from offload_bandit.network import offload_size

    if len(arm) != len(workload.sizes) or len(arm) != profile.num_users:
        raise ValueError(
            f"Arm covers {len(arm)} users, workload {len(workload.sizes)}, "
            f"network {profile.num_users}."
        )
    unknown = [entry for entry in arm.entries if entry >= profile.num_servers]
    if unknown:
        raise ValueError(
            f"Arm {arm} targets server indices {unknown}, the network has "
            f"{profile.num_servers} servers."
        )
    return JointArm(
        tuple(
            LOCAL
            if entry != LOCAL and offload_size(profile, user, float(workload.sizes[user])) == 0.0
            else entry
            for user, entry in enumerate(arm.entries)
        )
    )
