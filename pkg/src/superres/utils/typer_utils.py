import re
from importlib.metadata import version as get_version

import typer
from typer import Context
from typer.core import TyperGroup

from typing import Optional


class NormalizedGroup(TyperGroup):
    """
    Resolves command names after replacing special characters with underscores,
    so `sweep-matrix`, `sweep.matrix` and `sweep_matrix` reach the same command.
    Commands are listed in sorted order.
    """

    def get_command(self, ctx: Context, cmd_name: str):
        cmd = super().get_command(ctx, cmd_name)
        if cmd is not None:
            return cmd

        for candidate in (re.sub(r'[^a-zA-Z0-9]', '_', cmd_name), re.sub(r'[^a-zA-Z0-9]', '-', cmd_name)):
            if candidate != cmd_name:
                cmd = super().get_command(ctx, candidate)
                if cmd is not None:
                    return cmd
        return None

    def list_commands(self, ctx: Context):
        return sorted(super().list_commands(ctx))


def get_superres_version() -> str:
    """Get superres-cli version from package metadata."""
    try:
        return get_version("superres-cli")
    except Exception:
        return "unknown"


def create_typer_app(
    name: Optional[str] = None,
    help: Optional[str] = None,
) -> typer.Typer:
    return typer.Typer(
        name=name,
        help=help,
        add_completion=False,
        cls=NormalizedGroup,
        context_settings={
            "help_option_names": ["-h", "--help"]
        }
    )
