# NOTE: Keep top-level imports in this sub-package to the standard library and click; everything
#       else is imported inside functions so that `--help` stays fast.

from offload_bandit.cli.factory import build_cli

__all__ = ["build_cli"]
