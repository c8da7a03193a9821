"""Options shared by the experiment commands."""

import click

preset_option = click.option(
    "--preset",
    "-p",
    default="tidal",
    show_default=True,
    help="Scenario preset (see `list`); `custom` takes everything from --config-path.",
)

set_option = click.option(
    "--set",
    "-s",
    "params",
    multiple=True,
    metavar="KEY=VALUE",
    help="Override one configuration value, for example `policy.epsilon=0.1`. Repeatable.",
)

out_option = click.option(
    "--out",
    "-o",
    default="results",
    show_default=True,
    type=click.Path(file_okay=False),
    help="Directory receiving the result files.",
)
