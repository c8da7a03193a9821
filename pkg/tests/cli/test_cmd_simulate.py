import json
from pathlib import Path

from offload_bandit.cli.factory import build_cli
from offload_bandit.composer import ExperimentComposer

SHORT = ["--set", "horizon=60", "--set", "exploration=30"]


class TestSimulateCommand:
    """Test the 'simulate' command of the CLI."""

    def test_help(self, runner, cli):
        result = runner.invoke(cli, ["simulate", "--help"])
        assert result.exit_code == 0
        assert "Simulate the configured policy" in result.output

    def test_writes_results(self, runner, cli):
        result = runner.invoke(cli, ["simulate", *SHORT, "--seed", "3", "--out", "run"])
        assert result.exit_code == 0, result.output
        out = Path("run")
        assert sorted(p.name for p in out.iterdir()) == ["config.yaml", "summary.json", "trace.csv"]
        assert len(out.joinpath("trace.csv").read_text().splitlines()) == 61
        summary = json.loads(out.joinpath("summary.json").read_text())
        assert summary[0]["seed"] == 3
        assert summary[0]["policy"] == "atoa"
        assert "final cost" in result.output

    def test_deterministic_tidal_preset(self, runner, cli):
        for out in ("first", "second"):
            args = ["simulate", "--preset", "tidal", "--seed", "42", "--out", out]
            result = runner.invoke(cli, args)
            assert result.exit_code == 0, result.output
        for name in ("trace.csv", "summary.json", "config.yaml"):
            assert Path("first", name).read_bytes() == Path("second", name).read_bytes()

    def test_policy_override(self, runner, cli):
        args = ["simulate", *SHORT, "--set", "policy.name=ucb1", "--out", "ucb1"]
        result = runner.invoke(cli, args)
        assert result.exit_code == 0, result.output
        trace = Path("ucb1", "trace.csv").read_text().splitlines()
        assert all(line.split(",")[5] == "" for line in trace[1:])

    def test_workload_trace(self, runner, cli):
        args = ["simulate", *SHORT, "--set", "output.workload_trace=true", "--out", "dump"]
        result = runner.invoke(cli, args)
        assert result.exit_code == 0, result.output
        assert len(Path("dump", "workload.csv").read_text().splitlines()) == 1 + 60 * 6

    def test_invalid_value_names_key(self, runner, cli):
        result = runner.invoke(cli, ["simulate", "--set", "horizon=0"])
        assert result.exit_code == 2
        assert "horizon" in result.output
        assert not Path("results").exists()

    def test_negative_seed(self, runner, cli):
        result = runner.invoke(cli, ["simulate", *SHORT, "--seed", "-1"])
        assert result.exit_code == 2
        assert "seed" in result.output
        assert not Path("results").exists()

    def test_unknown_key(self, runner, cli):
        result = runner.invoke(cli, ["simulate", "--set", "policy.speed=1"])
        assert result.exit_code == 2
        assert "policy.speed" in result.output

    def test_unknown_preset(self, runner, cli):
        result = runner.invoke(cli, ["simulate", "--preset", "weekly"])
        assert result.exit_code == 2
        assert "Unknown preset" in result.output

    def test_config_path(self, runner):
        Path("experiment.yaml").write_text("horizon: 40\nexploration: 20\n")
        cli = build_cli("offload-bandit", ExperimentComposer())
        result = runner.invoke(cli, ["--config-path", "experiment.yaml", "simulate", "--out", "c"])
        assert result.exit_code == 0, result.output
        assert len(Path("c", "trace.csv").read_text().splitlines()) == 41

    def test_echo_reloads_as_custom_preset(self, runner, cli):
        runner.invoke(cli, ["simulate", *SHORT, "--seed", "8", "--out", "a"])
        args = ["--config-path", "a/config.yaml", "simulate", "--preset", "custom", "--out", "b"]
        result = runner.invoke(cli, args)
        assert result.exit_code == 0, result.output
        assert Path("a", "trace.csv").read_bytes() == Path("b", "trace.csv").read_bytes()
