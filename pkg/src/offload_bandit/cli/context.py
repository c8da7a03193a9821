from logging import Logger
from pathlib import Path
from typing import TYPE_CHECKING, Iterable

import click

if TYPE_CHECKING:
    from offload_bandit.composer import ExperimentComposer
    from offload_bandit.config import ExperimentConfig
    from offload_bandit.pipeline import Pipeline
else:
    ExperimentComposer = object
    ExperimentConfig = object
    Pipeline = object


class AppContext:
    """Shared state of one command-line invocation."""

    def __init__(
        self,
        name: str,
        composer: ExperimentComposer,
        logger: Logger,
        *,
        config_path: str | Path | None = None,
    ) -> None:
        self._project_name = name
        self._composer = composer
        self._logger = logger
        self._config_path = config_path

    @property
    def name(self) -> str:
        """Returns the name of the application."""
        return self._project_name

    @property
    def logger(self) -> Logger:
        """Returns the logger configured for the application."""
        return self._logger

    @property
    def composer(self) -> ExperimentComposer:
        """Returns the composer of the application."""
        return self._composer

    def load_config(
        self,
        preset: str,
        params: Iterable[str] | None = None,
        seed: int | None = None,
    ) -> ExperimentConfig:
        """
        Loads the experiment configuration for a command.

        Args:
            preset (str):
                Scenario preset providing the base values.
            params (Iterable[str], optional):
                `key=value` overrides from `--set`.
            seed (int, optional):
                Experiment seed, applied after the other overrides.

        Raises:
            click.UsageError: If the configuration is invalid or cannot be found.
        """
        from offload_bandit.config import ConfigError

        params = list(params or [])
        if seed is not None:
            params.append(f"seed={seed}")
        try:
            return self._composer.load_config(preset=preset, path=self._config_path, params=params)
        except (ConfigError, ValueError, FileNotFoundError) as exc:
            raise click.UsageError(str(exc)) from exc

    def find_pipelines(self, config: ExperimentConfig | None = None) -> dict[str, Pipeline]:
        """Delegates the pipeline lookup to the composer."""
        return self._composer.find_pipelines(config)

    def output_dir(self, path: str | Path) -> Path:
        """Creates (if needed) and returns the output directory of a command."""
        directory = Path(path)
        try:
            directory.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise click.FileError(str(directory), hint=str(exc)) from exc
        self._logger.debug("Writing results to %s", directory.resolve())
        return directory
