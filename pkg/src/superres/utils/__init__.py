import superres.utils.echo_utils as echo

from superres.utils.format_utils import format_complex, format_duration
from superres.utils.progress import progress_bar
from superres.utils.summation import CompensatedSum, compensated_sum, pairwise_sum
from superres.utils.typer_utils import create_typer_app, get_superres_version


__all__ = [
    "CompensatedSum",
    "compensated_sum",
    "create_typer_app",
    "echo",
    "format_complex",
    "format_duration",
    "get_superres_version",
    "pairwise_sum",
    "progress_bar",
]
