import pathlib
from logging import Logger
from typing import TYPE_CHECKING

import click

from offload_bandit.cli.cmds.list import list_presets
from offload_bandit.cli.cmds.oracle import oracle_check
from offload_bandit.cli.cmds.simulate import simulate
from offload_bandit.cli.cmds.sweep import sweep

if TYPE_CHECKING:
    from offload_bandit.composer import ExperimentComposer
else:
    ExperimentComposer = object

CONTEXT_SETTINGS = {"help_option_names": ["-h", "--help"], "max_content_width": 120}


def build_cli(
    project_name: str,
    composer: ExperimentComposer,
    *,
    logger: str | Logger | None = None,
    log_file: str | pathlib.Path | None = None,
    help: str = "",
) -> click.Command:
    """
    Build the command-line application.

    Args:
        project_name (str):
            Name of the application group.
        composer (ExperimentComposer):
            Composer loading presets, configuration files and pipelines.
        logger (str | logging.Logger, optional):
            Logger (or logger name) configured for console output. Defaults to the package
            logger `offload_bandit`.
        log_file (str | pathlib.Path, optional):
            Default rotating log file, replaced by `--log-file`. No file is written when neither
            is given.
        help (str):
            Help text of the group; the group docstring is used when empty.
    """
    from offload_bandit.cli.context import AppContext
    from offload_bandit.logging import configure_logging
    from offload_bandit.logging import get_default_logger

    if logger is None:
        logger = get_default_logger()
    elif isinstance(logger, str):
        import logging

        logger = logging.getLogger(logger)

    def main(ctx: click.Context, debug: bool, **kwargs) -> None:
        """Simulate bandit-driven task offloading in a multi-server edge network."""
        from colorama import init
        from rich.traceback import install

        init(autoreset=True)
        install(show_locals=False, suppress=[click])
        _patch_hamilton_message()

        configure_logging(logger, log_file=kwargs["log_file"] or log_file, debug=debug)

        ctx.obj = AppContext(
            name=project_name,
            composer=composer,
            logger=logger,
            config_path=kwargs["config_path"],
        )

    # click decorators are applied in reverse order
    app = click.pass_context(main)

    app = click.option(
        "--debug",
        "-d",
        is_flag=True,
        default=False,
        help="Log at DEBUG level, including traffic-state switches of adaptive policies.",
    )(app)

    app = click.option(
        "--log-file",
        "-l",
        default=None,
        type=click.Path(dir_okay=False),
        help="Also write logs to this rotating log file.",
    )(app)

    app = click.option(
        "--config-path",
        "-c",
        default=composer.config_path,
        show_default=False,
        type=click.Path(dir_okay=False),
        help=(
            "Experiment configuration file merged on top of the preset. "
            f"[default: {composer.config_path}]"
        ),
    )(app)

    app = click.group(
        name=project_name,
        help=help or getattr(main, "__doc__", "Task offloading simulator"),
        context_settings=CONTEXT_SETTINGS,
    )(app)

    for cmd in [list_presets, simulate, sweep, oracle_check]:
        cmd.context_settings = CONTEXT_SETTINGS
        app.add_command(cmd=cmd)

    return app


def _patch_hamilton_message() -> None:  # pragma no cover
    """Replaces the Hamilton community error banner with a plain message."""
    import hamilton.driver

    hamilton.driver.SLACK_ERROR_MESSAGE = "Simulation dataflow failed (see traceback)"
