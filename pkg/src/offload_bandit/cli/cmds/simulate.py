from typing import TYPE_CHECKING

import click

from offload_bandit.cli.cmds.options import out_option
from offload_bandit.cli.cmds.options import preset_option
from offload_bandit.cli.cmds.options import set_option

if TYPE_CHECKING:
    from offload_bandit.cli.context import AppContext
else:
    AppContext = object


@click.command(name="simulate", short_help="Simulate one policy over one scenario.")
@preset_option
@set_option
@click.option("--seed", type=int, default=None, help="Experiment seed (overrides `seed`).")
@out_option
@click.pass_obj
def simulate(
    context: AppContext, preset: str, params: tuple[str, ...], seed: int | None, out: str
) -> None:
    """
    Simulate the configured policy and write its results to OUT.

    Writes `trace.csv` (one row per slot), `summary.json` (run metrics), `config.yaml` (the
    effective configuration, which can be passed back with --config-path and --preset custom)
    and, when `output.workload_trace=true`, `workload.csv`.

    Example usage:
        $ offload-bandit simulate --preset tidal --set policy.name=ucb1 --seed 42
    """
    from offload_bandit import io
    from offload_bandit.pipelines import SIMULATE

    config = context.load_config(preset, params, seed)
    pipeline = context.find_pipelines(config)[SIMULATE]
    result = pipeline.execute(inputs={"experiment": config})
    summary = result["run_summary"]

    directory = context.output_dir(out)
    io.write_trace(result["slot_records"], directory / "trace.csv")
    io.write_summary([summary], directory / "summary.json")
    io.write_config_echo(config, directory / "config.yaml")
    if config.output.workload_trace:
        io.write_workload_trace(
            result["workload_trace"], result["traffic_pattern"], directory / "workload.csv"
        )
    _print_summary(summary)


def _print_summary(summary) -> None:
    from rich import get_console
    from rich.table import Table

    table = Table(title=f"{summary.policy} (seed {summary.seed})", box=None, title_justify="left")
    table.add_column("Metric", style="cyan", no_wrap=True)
    table.add_column("Value", justify="right")
    rows = [
        ("final cost", summary.final_cost),
        ("discounted cost", summary.discounted_cost),
        ("exploitation cost", summary.exploit_cost),
        ("stable cost", summary.stable_cost),
        ("unstable cost", summary.unstable_cost),
        ("detector accuracy", summary.detector_accuracy),
    ]
    for name, value in rows:
        if value is not None:
            table.add_row(name, f"{value:.6g}")
    for branch, count in sorted(summary.branch_counts.items()):
        table.add_row(f"{branch} slots", str(count))
    if summary.oracle_gap is not None:
        table.add_row("oracle gap (mean)", f"{summary.oracle_gap.mean:.6g}")
    get_console().print(table)
