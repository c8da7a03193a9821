import pytest

from offload_bandit.pipeline import Pipeline
from offload_bandit.pipelines import ORACLE_CHECK
from offload_bandit.pipelines import SIMULATE
from offload_bandit.pipelines import create_pipelines


def size(base: int) -> int:
    return base * 2


def doubled(size: int, factor: int) -> int:
    return size * factor


class TestPipeline:
    """Test the Hamilton pipeline wrapper."""

    def test_execute(self) -> None:
        """Test execution of a small dataflow."""
        from hamilton.ad_hoc_utils import create_temporary_module
        from hamilton.driver import Builder

        builder = Builder().with_modules(create_temporary_module(size, doubled))
        pipeline = Pipeline(builder, final_vars=["doubled"], description="doubles")
        assert pipeline.execute(inputs={"base": 3, "factor": 2}) == {"doubled": 12}
        assert pipeline.description == "doubles"
        assert pipeline.final_vars == ["doubled"]

    def test_missing_input(self) -> None:
        """Test that executing without a required input names it."""
        from hamilton.ad_hoc_utils import create_temporary_module
        from hamilton.driver import Builder

        builder = Builder().with_modules(create_temporary_module(size, doubled))
        pipeline = Pipeline(builder, final_vars=["doubled"])
        with pytest.raises(ValueError, match="Required input .*factor.* not provided"):
            pipeline.execute(inputs={"base": 3})

    def test_invalid_builder(self) -> None:
        """Test handling of an invalid builder."""
        with pytest.raises(TypeError, match="to be a Hamilton Builder instance"):
            Pipeline(builder=None, final_vars=["doubled"])  # type: ignore[arg-type]

    def test_invalid_final_vars(self) -> None:
        """Test handling of invalid final variables."""
        from hamilton.driver import Builder

        with pytest.raises(TypeError, match="to be a list instance."):
            Pipeline(Builder(), final_vars=None)  # type: ignore[arg-type]


class TestExperimentPipelines:
    """Test the bundled experiment pipelines."""

    def test_names(self) -> None:
        assert set(create_pipelines()) == {SIMULATE, ORACLE_CHECK}

    @pytest.mark.parametrize("policy", ["eps_greedy", "ucb1", "atoa", "oracle"])
    def test_policy_variant(self, desk_config, policy) -> None:
        """Test that the configured policy variant is wired into the dataflow."""
        config = desk_config(f"policy.name={policy}", horizon=40, exploration=20)
        result = create_pipelines(config)[SIMULATE].execute(inputs={"experiment": config})
        assert result["run_summary"].policy == policy
        assert len(result["slot_records"]) == 40
        assert result["workload_trace"] == []

    def test_default_threshold_node(self, desk_config) -> None:
        from offload_bandit.dataflows import simulation

        assert simulation.stability_threshold(desk_config()) == 175.0
        config = desk_config("policy.threshold=12.5")
        assert simulation.stability_threshold(config) == 12.5

    def test_scenario_nodes(self, desk_config) -> None:
        from offload_bandit.dataflows import scenario

        config = desk_config()
        profile = scenario.network_profile(config)
        assert (profile.num_users, profile.num_servers) == (6, 2)
        assert len(scenario.arm_space(profile, config)) == 729
        assert scenario.traffic_pattern(config).means == (10.0, 20.0, 30.0, 40.0, 50.0, 60.0)
        assert scenario.workload_source(config).seed == config.seed

    def test_oracle_check_requires_slots(self, desk_config) -> None:
        config = desk_config()
        pipeline = create_pipelines(config)[ORACLE_CHECK]
        with pytest.raises(ValueError, match="Required input .* not provided"):
            pipeline.execute(inputs={"experiment": config})

    def test_oracle_check(self, desk_config) -> None:
        config = desk_config()
        pipeline = create_pipelines(config)[ORACLE_CHECK]
        report = pipeline.execute(inputs={"experiment": config, "check_slots": 30})["oracle_report"]
        assert report.consistent
        assert report.slots == len(report.decisions) == 30
