from offload_bandit.cli.factory import build_cli
from offload_bandit.composer import ExperimentComposer
from offload_bandit.config import ExperimentConfig
from offload_bandit.engine import run
from offload_bandit.engine import run_sweep
from offload_bandit.pipeline import Pipeline

__version__ = "0.1.0"


__all__ = [
    "ExperimentComposer",
    "ExperimentConfig",
    "Pipeline",
    "build_cli",
    "run",
    "run_sweep",
]
