"""Option types and helpers shared by the command modules."""
from pathlib import Path
from typing import Any, Dict, Optional

import typer
from typing_extensions import Annotated

from superres.core.presets import list_presets


ConfigOption = Annotated[Optional[Path], typer.Option(
    "--config", "-c",
    help="JSON run configuration (a previous run manifest also works)",
    show_default=False,
)]
FigureOption = Annotated[Optional[str], typer.Option(
    "--figure", "-f",
    help=f"Figure preset: {'|'.join(list_presets())} (descriptive aliases such as nearfield-g1 also work)",
    show_default=False,
)]
OutOption = Annotated[Optional[Path], typer.Option(
    "--out", "-o",
    help="Output directory (default: output.directory or SUPERRES_OUTPUT_DIR)",
    show_default=False,
)]
ThreadsOption = Annotated[Optional[int], typer.Option(
    "--threads", "-t",
    min=1,
    help="Worker threads for scan points (default: SUPERRES_THREADS)",
    show_default=False,
)]
ToleranceOption = Annotated[Optional[float], typer.Option(
    "--tolerance",
    help="Relative tolerance of the adaptive aperture quadrature",
    show_default=False,
)]
NormalizeOption = Annotated[Optional[bool], typer.Option(
    "--normalize/--no-normalize",
    help="Max-normalize curves and images",
    show_default=False,
)]
EpsilonOption = Annotated[Optional[float], typer.Option(
    "--epsilon", "-e",
    help="Source-to-mask standoff in wavelengths",
    show_default=False,
)]
OrderOption = Annotated[Optional[int], typer.Option(
    "--order", "-n",
    help="Correlation order N (1, 2 or 4)",
    show_default=False,
)]
QuietOption = Annotated[bool, typer.Option(
    "--quiet", "-q",
    help="Hide the progress bar",
)]


def common_overrides(
    out: Optional[Path] = None,
    threads: Optional[int] = None,
    tolerance: Optional[float] = None,
    normalize: Optional[bool] = None,
    epsilon: Optional[float] = None,
) -> Dict[str, Any]:
    """Nested config overrides from the shared flags; unset flags are None."""
    return {
        "threads": threads,
        "geometry": {"epsilon": epsilon},
        "quadrature": {"tolerance": tolerance},
        "output": {
            "directory": str(out) if out is not None else None,
            "normalize": normalize,
        },
    }
