"""Nodes cross-checking the brute-force optimum against the per-user decomposition."""

from offload_bandit import arms
from offload_bandit import engine
from offload_bandit import network
from offload_bandit import workload


def oracle_report(
    network_profile: network.NetworkProfile,
    traffic_pattern: workload.TrafficPattern,
    arm_space: arms.ArmSpace,
    workload_source: workload.SeededSource,
    check_slots: int,
) -> engine.OracleReport:
    """Joint versus decomposed optimum over the first `check_slots` slots."""
    return engine.check_oracle(
        network_profile, traffic_pattern, arm_space, workload_source, check_slots
    )
