import pytest
from click.testing import CliRunner

from offload_bandit.cli.factory import build_cli
from offload_bandit.composer import ExperimentComposer


@pytest.fixture(scope="function")
def runner():
    """Fixture to provide a CLI runner."""
    _runner = CliRunner()
    with _runner.isolated_filesystem():
        yield _runner


@pytest.fixture(scope="module")
def cli():
    """Fixture to provide the offload-bandit CLI."""
    return build_cli("offload-bandit", ExperimentComposer())
