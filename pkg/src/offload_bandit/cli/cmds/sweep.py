from typing import TYPE_CHECKING, Any

import click

from offload_bandit.cli.cmds.options import out_option
from offload_bandit.cli.cmds.options import preset_option
from offload_bandit.cli.cmds.options import set_option

if TYPE_CHECKING:
    from offload_bandit.cli.context import AppContext
else:
    AppContext = object


@click.command(name="sweep", short_help="Run a grid of overrides over several seeds.")
@preset_option
@set_option
@click.option(
    "--vary",
    "-v",
    "axes",
    multiple=True,
    metavar="KEY=V1,V2,...",
    help="Values of one key to sweep; list values are allowed (`k=[1,2],[3,4]`). Repeatable.",
)
@click.option(
    "--seeds",
    default=None,
    metavar="N1,N2,...",
    help="Comma-separated seeds; defaults to the configured seed.",
)
@click.option("--workers", type=click.IntRange(min=1), default=1, show_default=True)
@out_option
@click.pass_obj
def sweep(
    context: AppContext,
    preset: str,
    params: tuple[str, ...],
    axes: tuple[str, ...],
    seeds: str | None,
    workers: int,
    out: str,
) -> None:
    """
    Run every combination of the VARY values for every seed and write `summary.json` to OUT.

    All runs with the same seed share the same workload, so policies and parameters are
    compared under common random numbers.

    Example usage:
        $ offload-bandit sweep --vary policy.window=5,10,25,50 --seeds 0,1,2,3,4,5,6,7,8,9
    """
    from offload_bandit import io
    from offload_bandit.engine import SweepError
    from offload_bandit.engine import run_sweep
    from offload_bandit.engine import sweep_grid

    base = context.load_config(preset, params)
    grid = sweep_grid(dict(parse_axis(axis) for axis in axes))
    seed_list = parse_seeds(seeds) if seeds else [base.seed]

    try:
        summaries = run_sweep(base, grid, seed_list, max_workers=workers)
    except SweepError as exc:
        raise click.ClickException(str(exc)) from exc
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc

    directory = context.output_dir(out)
    io.write_summary(list(summaries.values()), directory / "summary.json")
    io.write_config_echo(base, directory / "config.yaml")
    _print_sweep(summaries)


def parse_axis(axis: str) -> tuple[str, list[Any]]:
    """Parses `key=v1,v2,...` into the key and its YAML-typed values."""
    import yaml

    key, sep, raw = axis.partition("=")
    key = key.strip()
    if not sep or not key or not raw.strip():
        raise click.BadParameter(f"Expected KEY=V1,V2,..., got '{axis}'.", param_hint="--vary")
    try:
        values = [yaml.safe_load(item) for item in split_top_level(raw)]
    except yaml.YAMLError as exc:
        raise click.BadParameter(f"Invalid value in '{axis}': {exc}", param_hint="--vary") from exc
    return key, values


def split_top_level(raw: str) -> list[str]:
    """Splits on commas outside of brackets and braces."""
    parts: list[str] = []
    depth = 0
    current = ""
    for char in raw:
        if char in "[{":
            depth += 1
        elif char in "]}":
            depth -= 1
        if char == "," and depth == 0:
            parts.append(current.strip())
            current = ""
        else:
            current += char
    parts.append(current.strip())
    return [part for part in parts if part]


def parse_seeds(raw: str) -> list[int]:
    """Parses `n1,n2,...` into integer seeds."""
    try:
        return [int(item) for item in raw.split(",") if item.strip()]
    except ValueError as exc:
        message = f"Seeds must be integers, got '{raw}'."
        raise click.BadParameter(message, param_hint="--seeds") from exc


def _print_sweep(summaries) -> None:
    from rich import get_console
    from rich.table import Table

    by_label: dict[str, list[float]] = {}
    for key, summary in summaries.items():
        by_label.setdefault(key.label, []).append(summary.final_cost)

    table = Table(title=f"{len(summaries)} runs", box=None, title_justify="left")
    table.add_column("Overrides", style="cyan", no_wrap=True)
    table.add_column("Seeds", justify="right")
    table.add_column("Mean final cost", justify="right")
    for label, costs in by_label.items():
        table.add_row(label, str(len(costs)), f"{sum(costs) / len(costs):.6g}")
    get_console().print(table)
