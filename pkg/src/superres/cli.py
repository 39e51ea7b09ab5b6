import functools
import importlib
import os
import traceback

from pathlib import Path
from typing import Any, Callable, List, Optional, TypeVar

import typer
from typing_extensions import Annotated

from superres.core.config import get_command_dir, load_env_config
from superres.core.errors import SuperresError
from superres.utils import echo
from superres.utils.typer_utils import create_typer_app, get_superres_version


superres_cli = create_typer_app(
    help="Simulate near-field + N-photon correlation superresolution imaging through a double aperture.",
)

T = TypeVar('T')

EXIT_GENERIC = 1


def _version_callback(value: Optional[bool]):
    if value:
        echo.echo(f"superres {get_superres_version()}")
        raise typer.Exit(0)


@superres_cli.callback()
def _main_callback(
    version: Annotated[
        Optional[bool],
        typer.Option(
            "-v", "--version",
            help="Show version and exit",
            is_eager=True,
            callback=_version_callback,
        ),
    ] = None,
):
    pass


def capture_exception(func: Callable[..., T]) -> Callable[..., Optional[T]]:
    """Log errors through echo and exit with the code of their class.

    0 success, 2 configuration, 3 quadrature convergence, 4 output, 1 anything else.
    """
    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Optional[T]:
        try:
            return func(*args, **kwargs)
        except typer.Exit:
            raise
        except SuperresError as e:
            echo.error(str(e))
            raise typer.Exit(e.exit_code)
        except Exception as e:
            echo.error(f"{type(e).__name__}: {e}")
            echo.debug(traceback.format_exc())
            raise typer.Exit(EXIT_GENERIC)

    return wrapper


def run_superres_cli(*args, **kwargs):
    load_env_config()
    superres_cli(*args, **kwargs)


def traverse_command_dir(directory: str, base_path: Path) -> List[str]:
    modules = []
    for root, dirs, files in os.walk(directory):
        for file in files:
            if not file.startswith('_') and file.endswith(".py"):
                modules.append(
                    "superres." +
                    '.'.join(Path(root).relative_to(base_path).parts) +
                    f".{Path(file).stem}"
                )
    return modules


def load_commands() -> None:
    """Import every command module so its commands register on ``superres_cli``."""
    modules = traverse_command_dir(get_command_dir().as_posix(), Path(__file__).parent)
    modules.sort()
    missing_packages = []
    for module_name in modules:
        try:
            importlib.import_module(module_name)
        except ImportError as e:
            package_name = e.name
            if package_name not in missing_packages:
                missing_packages.append(package_name)
                echo.warning(
                    f"`{package_name}` is not installed, some sub commands are disabled, "
                    f"refer to README.md for instructions."
                )


def main():
    load_commands()
    run_superres_cli()
