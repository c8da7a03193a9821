from typing import Final

from hamilton.driver import Builder

from offload_bandit.config import ExperimentConfig
from offload_bandit.pipeline import Pipeline

SIMULATE: Final[str] = "simulate"
ORACLE_CHECK: Final[str] = "oracle_check"


def create_pipelines(config: ExperimentConfig | None = None) -> dict[str, Pipeline]:
    """
    Creates the experiment pipelines.

    The policy variant of the `simulate` dataflow is selected from `config.policy.name`; without
    a configuration the default policy (`atoa`) is wired in.
    """
    from offload_bandit.dataflows import oracle
    from offload_bandit.dataflows import scenario
    from offload_bandit.dataflows import simulation

    policy_name = config.policy.name if config is not None else ExperimentConfig().policy.name

    simulate_builder = (
        Builder().with_modules(scenario, simulation).with_config({"policy_name": policy_name})
    )
    oracle_builder = Builder().with_modules(scenario, oracle)

    return {
        SIMULATE: Pipeline(
            simulate_builder,
            final_vars=["slot_records", "run_summary", "workload_trace", "traffic_pattern"],
            description=f"Simulates the '{policy_name}' policy over the configured horizon.",
        ),
        ORACLE_CHECK: Pipeline(
            oracle_builder,
            final_vars=["oracle_report"],
            description="Cross-checks the brute-force oracle against the decomposed optimum.",
        ),
    }
