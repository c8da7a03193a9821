from importlib.resources import files
from pathlib import Path
from typing import TYPE_CHECKING, Any, Callable, Final, Iterable

from offload_bandit.config import CONFIG_FILE
from offload_bandit.config import OVERRIDE
from offload_bandit.config import ExperimentConfig
from offload_bandit.config import translate_errors
from offload_bandit.config import validate

if TYPE_CHECKING:
    from offload_bandit.pipeline import Pipeline

    PipelineFunction = Callable[[ExperimentConfig | None], dict[str, Pipeline]]
else:
    Pipeline = object
    PipelineFunction = object

CUSTOM_PRESET: Final[str] = "custom"
PRESET_DESCRIPTIONS: Final[dict[str, str]] = {
    "stable": "Low-variance traffic (sigma = mu/10) for every slot.",
    "unstable": "High-variance traffic (sigma = mu/2) for every slot.",
    "tidal": "Alternating stable/unstable traffic, 150 slots each, 6 users and 2 servers.",
    CUSTOM_PRESET: "Schema defaults only; network and traffic means come from --config-path.",
}


class ExperimentComposer:
    """
    Composes experiment configurations and the pipelines that execute them.

    Configurations are layered with OmegaConf: the structured `ExperimentConfig` schema, a
    named scenario preset, an optional user configuration file and finally dotlist overrides.

    Args:
        pipeline_function (Callable[[ExperimentConfig | None], dict[str, Pipeline]] | str):
            Pipeline creation function, or the fully qualified name of one. It receives the
            loaded configuration (or None) and returns pipelines keyed by name.
        config_path (str | pathlib.Path, optional):
            Default user configuration file merged on top of the preset. Relative paths are
            resolved against the current working directory.
    """

    def __init__(
        self,
        pipeline_function: PipelineFunction | str = "offload_bandit.pipelines.create_pipelines",
        config_path: str | Path | None = None,
    ) -> None:
        if not isinstance(pipeline_function, str) and not callable(pipeline_function):
            raise TypeError(
                "pipeline_function must be a callable or a string representing the fully "
                "qualified name of a module and function."
            )
        self._pipeline_function = pipeline_function
        self._config_path = config_path

    @property
    def config_path(self) -> Path | None:
        """Returns the default user configuration path (relative or absolute)."""
        return Path(self._config_path) if self._config_path is not None else None

    @staticmethod
    def presets() -> dict[str, str]:
        """Returns the available scenario presets and their descriptions."""
        return dict(PRESET_DESCRIPTIONS)

    def load_config(
        self,
        preset: str = "tidal",
        path: str | Path | None = None,
        params: Iterable[str] | None = None,
    ) -> ExperimentConfig:
        """
        Loads and validates an experiment configuration.

        Values that the configuration file changes are recorded with the `config-file` source,
        unless the file declares their provenance in its own `sources` map (as configuration
        echoes do).

        Args:
            preset (str, optional):
                Scenario preset providing the base values. `custom` applies no preset.
            path (str | Path, optional):
                User configuration file overriding `config_path` from initialization.
            params (Iterable[str], optional):
                Dotlist overrides in the form `key=value`, applied last. Every overridden key is
                recorded with the `override` source.

        Returns:
            The validated configuration.

        Raises:
            ConfigError: For unknown keys, missing required values or out-of-range values.
            FileNotFoundError: If the configuration file does not exist.
        """
        from omegaconf import OmegaConf

        layers = [OmegaConf.structured(ExperimentConfig)]
        if preset != CUSTOM_PRESET:
            layers.append(self._load_preset(preset))

        config_path = self._resolve_config_path(path if path is not None else self._config_path)
        file_keys: dict[str, str] = {}
        if config_path is not None:
            file_layer = self._load_config_from_path(config_path)
            with translate_errors():
                file_keys = _file_sources(file_layer, OmegaConf.merge(*layers))
            layers.append(file_layer)

        params = list(params) if params else []
        layers.append(OmegaConf.from_dotlist(params) if params else OmegaConf.create())

        with translate_errors():
            merged = OmegaConf.merge(*layers)
            instance = OmegaConf.to_object(merged)
        assert isinstance(instance, ExperimentConfig)

        sources = dict(instance.sources)
        sources.update(file_keys)
        for param in params:
            sources[param.split("=", 1)[0].strip()] = OVERRIDE
        instance.sources = sources
        return validate(instance)

    def find_pipelines(self, config: ExperimentConfig | None = None) -> dict[str, Pipeline]:
        """
        Returns the experiment pipelines built for `config`.

        Args:
            config (ExperimentConfig, optional):
                Configuration used to select DAG branches (for example the policy variant).
        """
        from importlib import import_module

        if isinstance(self._pipeline_function, str):
            module_name, func_name = self._pipeline_function.rsplit(".", 1)
            module = import_module(module_name)
            create_pipelines_func = getattr(module, func_name, None)
            if create_pipelines_func is None:  # pragma: no cover
                raise ValueError(f"Function '{func_name}' not found in module '{module_name}'")
        else:
            create_pipelines_func = self._pipeline_function

        return create_pipelines_func(config)

    def _load_preset(self, name: str) -> Any:
        """Loads a preset shipped as package data."""
        from omegaconf import OmegaConf

        if name not in PRESET_DESCRIPTIONS:
            known = ", ".join(sorted(PRESET_DESCRIPTIONS))
            raise ValueError(f"Unknown preset '{name}', expected one of: {known}.")
        resource = files("offload_bandit.presets").joinpath(f"{name}.yaml")
        with resource.open("r", encoding="utf-8") as stream:
            return OmegaConf.load(stream)

    def _resolve_config_path(self, initial_path: str | Path | None) -> Path | None:
        """Resolves the configuration path to an absolute path."""
        if initial_path is None:
            return None
        path = Path(initial_path)
        if not path.is_absolute():
            path = Path.cwd().joinpath(path)
        if not path.is_file():
            raise FileNotFoundError(f"Configuration path '{path}' does not exist.")
        return path.resolve()

    def _load_config_from_path(self, path: Path) -> Any:
        """Loads a user configuration file."""
        from omegaconf import OmegaConf
        from omegaconf.errors import OmegaConfBaseException

        try:
            return OmegaConf.load(path)
        except (OSError, OmegaConfBaseException) as exc:
            raise ValueError(f"Failed to load configuration file '{path}'.") from exc


def _file_sources(layer: Any, below: Any) -> dict[str, str]:
    """Returns the provenance of the leaf keys a configuration file declares or changes."""
    from omegaconf import OmegaConf

    container = OmegaConf.to_container(layer, resolve=False)
    if not isinstance(container, dict):
        return {}
    declared = container.pop("sources", None) or {}
    keys: dict[str, str] = {}

    def collect(node: dict[str, Any], prefix: str) -> None:
        for name, value in node.items():
            key = f"{prefix}{name}"
            if isinstance(value, dict):
                collect(value, f"{key}.")
            elif key in declared:
                keys[key] = str(declared[key])
            elif value != _plain(OmegaConf.select(below, key, default=None)):
                keys[key] = CONFIG_FILE

    collect(container, "")
    return keys


def _plain(value: Any) -> Any:
    from omegaconf import OmegaConf

    return OmegaConf.to_container(value) if OmegaConf.is_config(value) else value
