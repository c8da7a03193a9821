"""Nodes describing the simulated network, its traffic and the joint arm space."""

from offload_bandit import arms
from offload_bandit import network
from offload_bandit import workload
from offload_bandit.config import ExperimentConfig


def network_profile(experiment: ExperimentConfig) -> network.NetworkProfile:
    """Static network built from the `network` section."""
    settings = experiment.network
    return network.NetworkProfile.from_lists(
        user_capacities=settings.user_capacities,
        server_capacities=settings.server_capacities,
        link_capacity=settings.link_capacity,
        cycles_per_bit=settings.cycles_per_bit,
        deadline=settings.deadline,
    )


def traffic_pattern(experiment: ExperimentConfig) -> workload.TrafficPattern:
    """Task-size generator built from the `traffic` section."""
    settings = experiment.traffic
    return workload.TrafficPattern(
        means=tuple(float(mean) for mean in settings.means),
        mode=workload.TrafficMode(settings.mode),
        stable_sigma_factor=settings.stable_sigma_factor,
        unstable_sigma_factor=settings.unstable_sigma_factor,
        stable_period=settings.stable_period,
        unstable_period=settings.unstable_period,
        sigma_is_variance=settings.sigma_is_variance,
    )


def arm_space(
    network_profile: network.NetworkProfile, experiment: ExperimentConfig
) -> arms.ArmSpace:
    """Every joint offloading decision of the network."""
    return arms.enumerate_arms(
        network_profile.num_users, network_profile.num_servers, max_arms=experiment.max_arms
    )


def workload_source(experiment: ExperimentConfig) -> workload.SeededSource:
    """Policy-independent random stream shared by every policy run with the same seed."""
    return workload.SeededSource(experiment.seed, workload.SeededSource.WORKLOAD_STREAM)
