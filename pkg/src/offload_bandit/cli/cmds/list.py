from typing import TYPE_CHECKING

import click

if TYPE_CHECKING:
    from offload_bandit.cli.context import AppContext
else:
    AppContext = object


@click.command(name="list")
@click.pass_obj
def list_presets(context: AppContext) -> None:
    """List the scenario presets and pipelines of the simulator."""
    from rich import get_console
    from rich.table import Table

    console = get_console()
    presets = Table(title="Presets", title_justify="left", show_lines=False, box=None)
    presets.add_column("Name", style="cyan", no_wrap=True)
    presets.add_column("Description", no_wrap=False)
    for name, description in sorted(context.composer.presets().items()):
        presets.add_row(name, description)

    pipelines = Table(title="Pipelines", title_justify="left", show_lines=False, box=None)
    pipelines.add_column("Name", style="cyan", no_wrap=True)
    pipelines.add_column("Description", no_wrap=False)
    for name, pipeline in sorted(context.find_pipelines().items()):
        pipelines.add_row(name, pipeline.description or "No description provided")

    console.print()
    console.print(presets)
    console.print()
    console.print(pipelines)
