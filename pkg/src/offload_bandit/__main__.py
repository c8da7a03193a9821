from offload_bandit.cli import build_cli
from offload_bandit.composer import ExperimentComposer

cli = build_cli("offload-bandit", ExperimentComposer())


def main() -> None:
    """Entry point of the `offload-bandit` command."""
    cli()


if __name__ == "__main__":
    main()
