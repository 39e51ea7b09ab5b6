from typing_extensions import Annotated
from typer import Option, Argument

from superres.cli import superres_cli, capture_exception
from superres.utils import echo


__all__ = [
    "Annotated",
    "Argument",
    "Option",
    "capture_exception",
    "echo",
    "superres_cli",
]
