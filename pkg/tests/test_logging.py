import logging
import time
from pathlib import Path

import pytest

from offload_bandit.logging import DEFAULT_LOGGERS
from offload_bandit.logging import PACKAGE_LOGGER_NAME
from offload_bandit.logging import QUIET_LOGGERS
from offload_bandit.logging import MillisecondFormatter
from offload_bandit.logging import configure_logging
from offload_bandit.logging import get_default_logger


@pytest.fixture
def dict_config(mocker):
    """Patches `logging.config.dictConfig` and returns the mock."""
    return mocker.patch("logging.config.dictConfig")


def _applied(mock) -> dict:
    return mock.call_args[0][0]


class TestConfigureLogging:
    """Test suite for the configure_logging function."""

    def test_custom_config_is_used_as_is(self, dict_config):
        custom = {"version": 1, "handlers": {}, "loggers": {}}
        configure_logging(config=custom)
        dict_config.assert_called_once_with(custom)

    def test_package_logger_defaults(self, dict_config):
        configure_logging()
        loggers = _applied(dict_config)["loggers"]
        for name in DEFAULT_LOGGERS:
            assert loggers[name] == {"level": "INFO", "handlers": ["console"], "propagate": False}

    def test_dependencies_are_quiet(self, dict_config):
        configure_logging(debug=True)
        loggers = _applied(dict_config)["loggers"]
        for name in QUIET_LOGGERS:
            assert loggers[name]["level"] == "WARNING"

    def test_debug_level(self, dict_config):
        configure_logging(debug=True)
        assert _applied(dict_config)["loggers"][PACKAGE_LOGGER_NAME]["level"] == "DEBUG"

    def test_without_defaults(self, dict_config):
        configure_logging("simulation.extra", include_defaults=False)
        loggers = _applied(dict_config)["loggers"]
        assert PACKAGE_LOGGER_NAME not in loggers
        assert loggers["simulation.extra"]["handlers"] == ["console"]

    def test_extra_loggers(self, dict_config):
        configure_logging("sweeps", logging.getLogger("reports"))
        loggers = _applied(dict_config)["loggers"]
        assert loggers["sweeps"]["level"] == loggers["reports"]["level"] == "INFO"

    def test_log_file(self, dict_config, tmp_path):
        log_file = tmp_path / "runs.log"
        configure_logging(log_file=log_file)
        config = _applied(dict_config)
        assert config["handlers"]["rotating_file"]["filename"] == str(log_file.resolve())
        assert config["loggers"][PACKAGE_LOGGER_NAME]["handlers"] == ["console", "rotating_file"]

    def test_no_log_file(self, dict_config):
        configure_logging()
        assert "rotating_file" not in _applied(dict_config)["handlers"]

    def test_records_reach_the_file(self, tmp_path):
        log_file = tmp_path / "offload.log"
        configure_logging(log_file=log_file)
        get_default_logger().info("switched to %s", "UCB1")
        for handler in get_default_logger().handlers:
            handler.flush()
        text = Path(log_file).read_text(encoding="utf8")
        assert "INFO    offload_bandit: switched to UCB1" in text


class TestGetDefaultLogger:
    """Test suite for the get_default_logger function."""

    def test_package_logger(self):
        logger = get_default_logger()
        assert isinstance(logger, logging.Logger)
        assert logger.name == PACKAGE_LOGGER_NAME == "offload_bandit"

    def test_modules_log_below_the_package_logger(self):
        from offload_bandit import engine

        assert engine.logger.name.startswith(f"{PACKAGE_LOGGER_NAME}.")


class TestMillisecondFormatter:
    """Test suite for the MillisecondFormatter class."""

    @staticmethod
    def _record(msecs: float) -> logging.LogRecord:
        record = logging.LogRecord("offload_bandit", logging.INFO, "", 1, "slot done", (), None)
        record.created = 1640995200.0 + msecs / 1000
        record.msecs = msecs
        return record

    def test_uses_local_time(self):
        assert MillisecondFormatter().converter == time.localtime

    @pytest.mark.parametrize(
        ("msecs", "suffix"), [(1.0, ".001"), (123.456, ".123"), (999.9, ".999")]
    )
    def test_milliseconds(self, msecs, suffix):
        stamp = MillisecondFormatter().formatTime(self._record(msecs))
        assert len(stamp) == len("2022-01-01 00:00:00.000")
        assert stamp.endswith(suffix)

    def test_full_message(self):
        formatter = MillisecondFormatter(fmt="%(asctime)s %(levelname)s %(name)s: %(message)s")
        message = formatter.format(self._record(555.0))
        assert ".555 INFO offload_bandit: slot done" in message
