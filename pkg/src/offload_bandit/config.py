"""Structured experiment configuration and its validation."""

import math
from contextlib import contextmanager
from dataclasses import dataclass
from dataclasses import field
from typing import Any, Dict, Iterator, List, Mapping, Optional

from omegaconf import MISSING

POLICY_NAMES = ("eps_greedy", "ucb1", "atoa", "oracle")
TRAFFIC_MODES = ("stable", "unstable", "tidal")

PUBLISHED = "published"
ARTIFACT_DEFAULT = "artifact-default"
OVERRIDE = "override"
CONFIG_FILE = "config-file"


class ConfigError(ValueError):
    """Base class of configuration diagnostics; `key` names the offending dotted key."""

    def __init__(self, key: str, message: str) -> None:
        super().__init__(f"{key}: {message}")
        self.key = key


class UnknownKeyError(ConfigError):
    """Raised for keys that are not part of the experiment schema."""


class OutOfRangeError(ConfigError):
    """Raised for values outside their allowed range or of the wrong type."""


class MissingValueError(ConfigError):
    """Raised for required keys that were never given a value."""


@dataclass
class NetworkConfig:
    user_capacities: List[float] = MISSING
    server_capacities: List[float] = MISSING
    link_capacity: List[List[float]] = MISSING
    cycles_per_bit: float = 1.0
    deadline: float = 1.0


@dataclass
class TrafficConfig:
    means: List[float] = MISSING
    mode: str = "tidal"
    stable_sigma_factor: float = 0.1
    unstable_sigma_factor: float = 0.5
    stable_period: int = 150
    unstable_period: int = 150
    sigma_is_variance: bool = False


@dataclass
class PolicyConfig:
    name: str = "atoa"
    epsilon: float = 0.01
    xi: float = 0.1
    window: int = 10
    threshold: Optional[float] = None
    amplitude_prior: float = 1.0


@dataclass
class OutputConfig:
    workload_trace: bool = False


@dataclass
class ExperimentConfig:
    """
    Complete, validated description of one simulation run.

    `threshold=None` selects the default stability threshold derived from the traffic means and
    the memory window. `average_window=0` reports the running mean from slot 1 in traces.
    `sources` maps dotted keys to the provenance of their values.
    """

    network: NetworkConfig = field(default_factory=NetworkConfig)
    traffic: TrafficConfig = field(default_factory=TrafficConfig)
    policy: PolicyConfig = field(default_factory=PolicyConfig)
    horizon: int = 20000
    exploration: int = 10000
    discount: float = 1.0
    seed: int = 0
    max_arms: int = 1_000_000
    average_window: int = 0
    oracle_trace: bool = False
    output: OutputConfig = field(default_factory=OutputConfig)
    sources: Dict[str, str] = field(default_factory=dict)


def validate(config: ExperimentConfig) -> ExperimentConfig:
    """
    Checks the value ranges of a fully populated configuration.

    Raises:
        OutOfRangeError: For the first key whose value is out of range.
    """
    network, traffic, policy = config.network, config.traffic, config.policy

    def require(key: str, ok: bool, message: str) -> None:
        if not ok:
            raise OutOfRangeError(key, message)

    require("horizon", config.horizon >= 2, f"must be at least 2, got {config.horizon}")
    require(
        "exploration",
        1 <= config.exploration < config.horizon,
        f"must satisfy 1 <= exploration < horizon, got {config.exploration}",
    )
    require(
        "discount", 0.0 < config.discount <= 1.0, f"must lie in (0, 1], got {config.discount}"
    )
    require("seed", 0 <= config.seed < 2**64, f"must lie in [0, 2**64), got {config.seed}")
    require("max_arms", config.max_arms >= 1, f"must be positive, got {config.max_arms}")
    require(
        "average_window",
        config.average_window >= 0,
        f"must not be negative, got {config.average_window}",
    )

    num_users = len(network.user_capacities)
    num_servers = len(network.server_capacities)
    require("network.server_capacities", num_servers >= 1, "needs at least one server")
    require(
        "network.user_capacities",
        num_users >= num_servers + 1,
        f"needs more users than servers, got {num_users} users and {num_servers} servers",
    )
    for key, values in (
        ("network.user_capacities", network.user_capacities),
        ("network.server_capacities", network.server_capacities),
    ):
        require(key, all(_positive(v) for v in values), "every capacity must be positive")
    require(
        "network.link_capacity",
        len(network.link_capacity) == num_users
        and all(len(row) == num_servers for row in network.link_capacity),
        f"must have shape {num_users}x{num_servers}",
    )
    require(
        "network.link_capacity",
        all(_positive(v) for row in network.link_capacity for v in row),
        "every link rate must be positive",
    )
    require("network.cycles_per_bit", _positive(network.cycles_per_bit), "must be positive")
    require("network.deadline", _positive(network.deadline), "must be positive")

    require(
        "traffic.means",
        len(traffic.means) == num_users,
        f"must list one mean per user ({num_users}), got {len(traffic.means)}",
    )
    require("traffic.means", all(_positive(v) for v in traffic.means), "must be positive")
    require("traffic.mode", traffic.mode in TRAFFIC_MODES, f"must be one of {TRAFFIC_MODES}")
    require(
        "traffic.stable_sigma_factor", traffic.stable_sigma_factor >= 0, "must not be negative"
    )
    require(
        "traffic.unstable_sigma_factor", traffic.unstable_sigma_factor >= 0, "must not be negative"
    )
    require("traffic.stable_period", traffic.stable_period >= 1, "must be at least 1")
    require("traffic.unstable_period", traffic.unstable_period >= 1, "must be at least 1")

    require("policy.name", policy.name in POLICY_NAMES, f"must be one of {POLICY_NAMES}")
    require("policy.epsilon", 0.0 <= policy.epsilon <= 1.0, "must lie in [0, 1]")
    require("policy.xi", _positive(policy.xi), "must be positive")
    require("policy.window", policy.window >= 1, "must be at least 1")
    require(
        "policy.threshold",
        policy.threshold is None or policy.threshold >= 0,
        "must not be negative",
    )
    require("policy.amplitude_prior", policy.amplitude_prior >= 0, "must not be negative")
    return config


def _positive(value: float) -> bool:
    return value > 0 and not math.isnan(value)


def apply_overrides(config: ExperimentConfig, delta: Mapping[str, Any]) -> ExperimentConfig:
    """
    Returns a copy of `config` with dotted-key overrides applied and validated.

    Overridden keys are marked with the `override` source.
    """
    from omegaconf import OmegaConf

    structured = OmegaConf.structured(config)
    sources = dict(config.sources)
    for key, value in delta.items():
        _check_known_key(structured, key)
        with translate_errors():
            OmegaConf.update(structured, key, value, merge=False)
        sources[key] = OVERRIDE
    with translate_errors():
        updated = OmegaConf.to_object(structured)
    assert isinstance(updated, ExperimentConfig)
    updated.sources = sources
    return validate(updated)


def to_container(config: ExperimentConfig) -> dict[str, Any]:
    """Returns a plain, ordered dictionary echo of `config`."""
    from omegaconf import OmegaConf

    container = OmegaConf.to_container(OmegaConf.structured(config), resolve=True)
    assert isinstance(container, dict)
    return container


def _check_known_key(structured: Any, key: str) -> None:
    from omegaconf import OmegaConf

    parent, _, leaf = key.rpartition(".")
    if key.split(".")[0] == "sources":
        return
    node = OmegaConf.select(structured, parent) if parent else structured
    if node is None or not OmegaConf.is_dict(node) or leaf not in node:
        raise UnknownKeyError(key, "is not an experiment setting")


@contextmanager
def translate_errors() -> Iterator[None]:
    """Maps OmegaConf exceptions raised inside the block onto `ConfigError` diagnostics."""
    from omegaconf.errors import ConfigAttributeError
    from omegaconf.errors import ConfigKeyError
    from omegaconf.errors import MissingMandatoryValue
    from omegaconf.errors import OmegaConfBaseException

    try:
        yield
    except MissingMandatoryValue as exc:
        raise MissingValueError(_full_key(exc), "is required but was not set") from exc
    except (ConfigKeyError, ConfigAttributeError) as exc:
        raise UnknownKeyError(_full_key(exc), "is not an experiment setting") from exc
    except OmegaConfBaseException as exc:
        reason = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        raise OutOfRangeError(_full_key(exc), f"has an invalid value ({reason})") from exc


def _full_key(exc: Exception) -> str:
    return getattr(exc, "full_key", None) or "<root>"
