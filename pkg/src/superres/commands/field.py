from typing import Optional

import typer

from superres import Annotated, superres_cli, capture_exception, echo
from superres.commands._options import (
    ConfigOption,
    EpsilonOption,
    FigureOption,
    OutOption,
    ToleranceOption,
    common_overrides,
)
from superres.core.diffraction import diffracted_amplitude, diffracted_amplitude_by_aperture, farfield_amplitude
from superres.core.session import prepare_config, run_session
from superres.utils.file_utils import write_json
from superres.utils.format_utils import format_complex


@superres_cli.command(name="field")
@capture_exception
def field_command(
    rx: Annotated[float, typer.Option("--rx", help="Detector x in wavelengths")] = 0.0,
    ry: Annotated[float, typer.Option("--ry", help="Detector y in wavelengths")] = 0.0,
    emitter_x: Annotated[float, typer.Option("--emitter-x", help="Emitter x in wavelengths")] = 0.0,
    far_field: Annotated[bool, typer.Option(
        "--far-field", help="Also report the plane-wave far-field amplitude",
    )] = False,
    config_path: ConfigOption = None,
    figure: FigureOption = None,
    out: OutOption = None,
    tolerance: ToleranceOption = None,
    epsilon: EpsilonOption = None,
) -> None:
    """
    Evaluate the diffracted field U(r, R) at one detector for one emitter.

    Examples:
        superres field --rx 50 --emitter-x 0.02
        superres field --rx 120 --ry -30 --epsilon 0.25 --far-field
    """
    config = prepare_config(config_path, figure, common_overrides(out=out, tolerance=tolerance, epsilon=epsilon))
    setup, quad = config.setup, config.quad
    detector = (rx, ry, setup.detector_z)
    emitter = (emitter_x, 0.0, -setup.source_standoff)

    with run_session("field", config) as session:
        with session.timed("field"):
            value = diffracted_amplitude(detector, emitter, setup, quad)
            left, right = diffracted_amplitude_by_aperture(detector, emitter, setup, quad)
        result = {
            "detector": list(detector),
            "emitter": list(emitter),
            "amplitude": value,
            "modulus": abs(value),
            "left": left,
            "right": right,
        }
        if far_field:
            result["far_field"] = farfield_amplitude(detector, setup)
        session.record_output(write_json(session.path("field.json"), result))
        with session.timed("quadrature_diagnostics"):
            session.record_quadrature("cell", setup, quad, detector, emitter)

        echo.echo(f"U = {format_complex(value)}  |U| = {abs(value):.6e}")
        if far_field:
            echo.echo(f"U_far = {format_complex(result['far_field'])}")
