import logging
import logging.config
import time
from importlib.resources import files
from itertools import chain
from pathlib import Path
from typing import Any, Final

import yaml
from typing_extensions import override

PACKAGE_LOGGER_NAME: Final[str] = "offload_bandit"
DEFAULT_LOGGERS: Final[tuple[str, ...]] = (PACKAGE_LOGGER_NAME,)
QUIET_LOGGERS: Final[tuple[str, ...]] = ("hamilton", "omegaconf")


class MillisecondFormatter(logging.Formatter):
    """Formats log timestamps as `YYYY-mm-dd HH:MM:SS.mmm`."""

    @override
    def formatTime(self, record: logging.LogRecord, datefmt: str | None = None) -> str:
        stamp = time.strftime(datefmt or "%Y-%m-%d %H:%M:%S", self.converter(record.created))
        return f"{stamp}.{int(record.msecs):03d}"


def get_default_logger() -> logging.Logger:
    """Returns the package logger shared by the simulator modules."""
    return logging.getLogger(PACKAGE_LOGGER_NAME)


def configure_logging(
    *loggers: str | logging.Logger,
    config: dict[str, Any] | None = None,
    log_file: str | Path | None = None,
    include_defaults: bool = True,
    debug: bool = False,
) -> None:
    """
    Configures console (and optionally file) logging for simulator runs.

    Args:
        *loggers (str | logging.Logger):
            Extra loggers (or logger names) routed to the same handlers as the package logger.
        config (dict[str, Any] | None):
            Complete `logging.config.dictConfig` dictionary used instead of the bundled one.
        log_file (str | pathlib.Path, optional):
            Rotating log file receiving the same records as the console. Relative paths are
            resolved against the working directory; no file is written when omitted.
        include_defaults (bool, optional):
            Configure the loggers in `DEFAULT_LOGGERS` before the ones passed in `loggers`.
        debug (bool, optional):
            Log at DEBUG instead of INFO, which includes per-slot state changes of adaptive
            policies.
    """
    if config:
        logging.config.dictConfig(config)
        return

    level = "DEBUG" if debug else "INFO"
    handlers = ["console"]

    resource = files("offload_bandit.logging").joinpath("default.yaml")
    with resource.open("r", encoding="utf-8") as stream:
        config = yaml.safe_load(stream)
    assert isinstance(config, dict), "Logging configuration must be a dictionary"
    assert "handlers" in config, "Bundled logging configuration must include 'handlers'"
    assert "loggers" in config, "Bundled logging configuration must include 'loggers'"

    # The file handler is only kept when a log file was requested.
    log_file = str(log_file.resolve()) if isinstance(log_file, Path) else log_file
    if log_file:
        config["handlers"]["rotating_file"]["filename"] = log_file
        handlers.append("rotating_file")
    else:
        config["handlers"].pop("rotating_file")

    for name in QUIET_LOGGERS:
        config["loggers"].setdefault(name, {"level": "WARNING"})

    selected = DEFAULT_LOGGERS if include_defaults else ()
    for logger in chain(selected, loggers):
        name = logger.name if isinstance(logger, logging.Logger) else logger
        config["loggers"][name] = {"level": level, "handlers": handlers, "propagate": False}

    logging.config.dictConfig(config)
