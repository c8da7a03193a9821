import pytest

from offload_bandit.composer import ExperimentComposer
from offload_bandit.network import NetworkProfile


@pytest.fixture(scope="session")
def composer():
    """Fixture to provide an ExperimentComposer with the bundled pipelines."""
    return ExperimentComposer()


@pytest.fixture
def desk_config(composer):
    """Fixture returning a loader of shortened preset configurations."""

    def _load(*params, preset="tidal", horizon=600, exploration=300):
        return composer.load_config(
            preset, params=[f"horizon={horizon}", f"exploration={exploration}", *params]
        )

    return _load


@pytest.fixture
def toy_profile():
    """Three users and two servers: 27 joint arms."""
    return NetworkProfile.from_lists(
        user_capacities=[10, 20, 30],
        server_capacities=[200, 50],
        link_capacity=[[100, 100], [100, 100], [100, 100]],
    )
