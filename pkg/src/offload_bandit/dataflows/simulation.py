"""Nodes running one policy over the experiment horizon."""

from hamilton.function_modifiers import config

from offload_bandit import arms
from offload_bandit import engine
from offload_bandit import network
from offload_bandit import policies
from offload_bandit import workload
from offload_bandit.config import ExperimentConfig


def policy_source(experiment: ExperimentConfig) -> workload.SeededSource:
    """Random stream reserved for the decisions of the policy."""
    return workload.SeededSource(experiment.seed, workload.SeededSource.POLICY_STREAM)


def stability_threshold(experiment: ExperimentConfig) -> float:
    """Configured stability threshold, or the default derived from the traffic means."""
    if experiment.policy.threshold is not None:
        return experiment.policy.threshold
    return policies.default_threshold(experiment.traffic.means, experiment.policy.window)


@config.when(policy_name="eps_greedy")
def policy__eps_greedy(
    arm_space: arms.ArmSpace, experiment: ExperimentConfig, policy_source: workload.SeededSource
) -> policies.Policy:
    """Epsilon-greedy policy drawing from the policy stream."""
    return policies.EpsilonGreedyPolicy(
        arm_space, policy_source.generator, epsilon=experiment.policy.epsilon
    )


@config.when(policy_name="ucb1")
def policy__ucb1(
    arm_space: arms.ArmSpace, experiment: ExperimentConfig, policy_source: workload.SeededSource
) -> policies.Policy:
    """UCB1 policy with an online amplitude estimate."""
    return policies.Ucb1Policy(
        arm_space,
        policy_source.generator,
        xi=experiment.policy.xi,
        amplitude_prior=experiment.policy.amplitude_prior,
    )


@config.when(policy_name="atoa")
def policy__atoa(
    arm_space: arms.ArmSpace,
    experiment: ExperimentConfig,
    policy_source: workload.SeededSource,
    stability_threshold: float,
) -> policies.Policy:
    """Adaptive policy switching branches on the predicted traffic state."""
    settings = experiment.policy
    return policies.AtoaPolicy(
        arm_space,
        policy_source.generator,
        threshold=stability_threshold,
        epsilon=settings.epsilon,
        xi=settings.xi,
        window=settings.window,
        amplitude_prior=settings.amplitude_prior,
    )


@config.when(policy_name="oracle")
def policy__oracle(
    arm_space: arms.ArmSpace,
    network_profile: network.NetworkProfile,
    policy_source: workload.SeededSource,
) -> policies.Policy:
    """Clairvoyant baseline choosing the cheapest arm of every slot."""
    return policies.OraclePolicy(arm_space, policy_source.generator, network_profile)


def simulation(
    experiment: ExperimentConfig,
    network_profile: network.NetworkProfile,
    traffic_pattern: workload.TrafficPattern,
    arm_space: arms.ArmSpace,
    policy: policies.Policy,
    workload_source: workload.SeededSource,
) -> engine.SimulationResult:
    """Completed run of the configured policy."""
    return engine.simulate(
        experiment, network_profile, traffic_pattern, arm_space, policy, workload_source
    )


def slot_records(simulation: engine.SimulationResult) -> list:
    """Per-slot records, ordered by slot."""
    return simulation.records


def run_summary(
    simulation: engine.SimulationResult, experiment: ExperimentConfig
) -> engine.RunSummary:
    """Aggregate metrics of the run."""
    return engine.summarize(simulation.records, experiment)


def workload_trace(simulation: engine.SimulationResult) -> list:
    """Slot workloads, kept only when `output.workload_trace` is enabled."""
    return simulation.workloads
