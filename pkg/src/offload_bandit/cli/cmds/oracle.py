from typing import TYPE_CHECKING

import click

from offload_bandit.cli.cmds.options import preset_option
from offload_bandit.cli.cmds.options import set_option

if TYPE_CHECKING:
    from offload_bandit.cli.context import AppContext
else:
    AppContext = object


@click.command(name="oracle-check", short_help="Check the brute-force oracle on a scenario.")
@preset_option
@set_option
@click.option("--slots", type=click.IntRange(min=1), default=500, show_default=True)
@click.pass_obj
def oracle_check(context: AppContext, preset: str, params: tuple[str, ...], slots: int) -> None:
    """
    Compare the brute-force optimal arm against the per-user optimum for SLOTS slots.

    Exits with a nonzero status when any slot disagrees.
    """
    from rich import get_console

    from offload_bandit.pipelines import ORACLE_CHECK

    config = context.load_config(preset, params)
    pipeline = context.find_pipelines(config)[ORACLE_CHECK]
    report = pipeline.execute(inputs={"experiment": config, "check_slots": slots})["oracle_report"]

    if not report.consistent:
        shown = ", ".join(str(slot) for slot in report.mismatches[:10])
        raise click.ClickException(
            f"Oracle mismatch on {len(report.mismatches)} of {report.slots} slots (first: {shown})."
        )
    get_console().print(f"[green]Oracle consistent on all {report.slots} slots.[/]")
