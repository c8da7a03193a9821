from pathlib import Path

from offload_bandit.cli.factory import build_cli
from offload_bandit.composer import ExperimentComposer

SHORT = ["--set", "horizon=60", "--set", "exploration=30"]


class TestCLIFactory:
    """Test building the command-line application."""

    def test_group_help(self, runner, cli):
        result = runner.invoke(cli, ["-h"])
        assert result.exit_code == 0
        assert "Simulate bandit-driven task offloading" in result.output
        for name in ("list", "simulate", "sweep", "oracle-check"):
            assert name in result.output
        for option in ("--config-path", "--log-file", "--debug"):
            assert option in result.output

    def test_custom_help(self, runner):
        cli = build_cli("offload-bandit", ExperimentComposer(), help="Edge offloading lab.")
        result = runner.invoke(cli, ["--help"])
        assert "Edge offloading lab." in result.output

    def test_string_logger(self, runner):
        cli = build_cli("offload-bandit", ExperimentComposer(), logger="offload_bandit.cli")
        result = runner.invoke(cli, ["list"])
        assert result.exit_code == 0, result.output

    def test_log_file_option(self, runner, cli):
        result = runner.invoke(cli, ["--log-file", "runs.log", "simulate", *SHORT])
        assert result.exit_code == 0, result.output
        assert "Simulating atoa over 60 slots" in Path("runs.log").read_text(encoding="utf8")

    def test_default_log_file(self, runner):
        cli = build_cli("offload-bandit", ExperimentComposer(), log_file=Path("default.log"))
        result = runner.invoke(cli, ["--debug", "simulate", *SHORT])
        assert result.exit_code == 0, result.output
        assert Path("default.log").exists()

    def test_config_path_default_from_composer(self, runner):
        Path("lab.yaml").write_text("horizon: 30\nexploration: 10\n")
        cli = build_cli("offload-bandit", ExperimentComposer(config_path="lab.yaml"))
        result = runner.invoke(cli, ["simulate", "--out", "lab"])
        assert result.exit_code == 0, result.output
        assert len(Path("lab", "trace.csv").read_text().splitlines()) == 31
