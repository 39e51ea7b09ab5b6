from typing import Optional

import typer
import numpy as np

from superres import Annotated, superres_cli, capture_exception, echo
from superres.commands._options import (
    ConfigOption,
    EpsilonOption,
    FigureOption,
    NormalizeOption,
    OrderOption,
    OutOption,
    QuietOption,
    ThreadsOption,
    ToleranceOption,
    common_overrides,
)
from superres.core.config import RunConfig
from superres.core.errors import ConfigError
from superres.core.geometry import EmitterArray, detector_positions, emitter_pair, emitter_positions
from superres.core.imaging import MIN_CONTRAST_SAMPLES, CorrelationCurve, contrast, scan_1d, scan_2d
from superres.core.session import RunSession, prepare_config, run_session
from superres.utils.file_utils import write_curve_csv, write_image, write_image_csv
from superres.utils.progress import progress_bar


def scan_emitters(config: RunConfig) -> EmitterArray:
    """Emitter placement of a scan: the order preset, or a pair at ``emitter_distance`` deltas."""
    setup = config.setup
    if config.scan.emitter_distance is None:
        return emitter_positions(config.scan.order, setup)
    if config.scan.order != 2:
        raise ConfigError("scan.emitter_distance", "only defined for order 2")
    return emitter_pair(config.scan.emitter_distance, setup)


def record_peak_quadrature(session: RunSession, label: str, curve: CorrelationCurve, emitters: EmitterArray) -> None:
    if curve.far_field:
        return
    config = session.config
    peak_x = float(curve.scan_x[int(np.argmax(curve.values))])
    detectors = detector_positions(config.scan.order, peak_x, config.scan.scan_y, config.setup)
    session.record_quadrature(label, config.setup, config.quad, detectors.positions[0], emitters.positions[0])


@superres_cli.command(name="scan1d")
@capture_exception
def scan1d_command(
    config_path: ConfigOption = None,
    figure: FigureOption = None,
    out: OutOption = None,
    threads: ThreadsOption = None,
    tolerance: ToleranceOption = None,
    normalize: NormalizeOption = None,
    epsilon: EpsilonOption = None,
    order: OrderOption = None,
    samples: Annotated[Optional[int], typer.Option(
        "--samples", "-s", help="Number of scan points", show_default=False,
    )] = None,
    x_range: Annotated[Optional[float], typer.Option(
        "--x-range", help="Scan half-width in wavelengths", show_default=False,
    )] = None,
    emitter_distance: Annotated[Optional[float], typer.Option(
        "--emitter-distance", help="Two-emitter separation in units of delta", show_default=False,
    )] = None,
    far_field: Annotated[Optional[bool], typer.Option(
        "--far-field/--near-field", help="Plane-wave far-field reference instead of point emitters",
        show_default=False,
    )] = None,
    quiet: QuietOption = False,
) -> None:
    """
    Scan G(N) along the x axis of the detector plane and write the curve as CSV.

    Examples:
        superres scan1d --figure 2b
        superres scan1d --order 2 --epsilon 0.25 --samples 201 -o out/
    """
    overrides = common_overrides(out, threads, tolerance, normalize, epsilon)
    overrides["scan"] = {
        "order": order,
        "n_samples": samples,
        "x_range": x_range,
        "emitter_distance": emitter_distance,
        "far_field": far_field,
    }
    config = prepare_config(config_path, figure, overrides)
    scan = config.scan
    emitters = scan_emitters(config)

    with run_session("scan1d", config) as session:
        with session.timed("scan"), progress_bar(
            total=scan.n_samples, desc=f"scan1d N={scan.order}", mode="off" if quiet else "auto"
        ) as bar:
            curve = scan_1d(
                scan.order, config.setup, None, scan.x_range, scan.n_samples, config.quad,
                scan_y=scan.scan_y,
                emitters=emitters,
                far_field=scan.far_field,
                normalize=config.output.normalize,
                workers=config.threads,
                progress=bar,
            )
        path = write_curve_csv(session.path(f"scan1d_N{scan.order}.csv"), curve.scan_x, curve.values)
        session.record_output(path)

        report = contrast(curve) if len(curve) >= MIN_CONTRAST_SAMPLES else None
        if report is not None:
            session.record("contrast", report.to_dict())
            echo.info(f"depth={report.depth:.4f} resolved={report.resolved}")
        session.record("emitters", list(curve.emitter_xs))
        with session.timed("quadrature_diagnostics"):
            record_peak_quadrature(session, "peak", curve, emitters)


@superres_cli.command(name="scan2d")
@capture_exception
def scan2d_command(
    config_path: ConfigOption = None,
    figure: FigureOption = None,
    out: OutOption = None,
    threads: ThreadsOption = None,
    tolerance: ToleranceOption = None,
    normalize: NormalizeOption = None,
    epsilon: EpsilonOption = None,
    order: OrderOption = None,
    nx: Annotated[Optional[int], typer.Option("--nx", help="Samples along x", show_default=False)] = None,
    ny: Annotated[Optional[int], typer.Option("--ny", help="Samples along y", show_default=False)] = None,
    emitter_distance: Annotated[Optional[float], typer.Option(
        "--emitter-distance", help="Two-emitter separation in units of delta", show_default=False,
    )] = None,
    image_format: Annotated[Optional[str], typer.Option(
        "--format", help="Image format: pgm or png", show_default=False,
    )] = None,
    quiet: QuietOption = False,
) -> None:
    """
    Scan G(N) over the detector plane, one x line per y, and write the image.

    The image is written as a 16-bit max-normalized PGM (or PNG) plus a
    flattened CSV; the contrast of the y = 0 line goes into the manifest.

    Examples:
        superres scan2d --figure s2 --emitter-distance 15
    """
    overrides = common_overrides(out, threads, tolerance, normalize, epsilon)
    overrides["scan"] = {"order": order, "nx": nx, "ny": ny, "emitter_distance": emitter_distance}
    overrides["output"]["image_format"] = image_format
    config = prepare_config(config_path, figure, overrides)
    scan = config.scan
    emitters = scan_emitters(config)

    with run_session("scan2d", config) as session:
        with session.timed("scan"), progress_bar(
            total=scan.nx * scan.ny, desc=f"scan2d N={scan.order}", mode="off" if quiet else "auto"
        ) as bar:
            image = scan_2d(
                scan.order, config.setup, None, scan.x_range, scan.y_range, scan.nx, scan.ny, config.quad,
                emitters=emitters,
                far_field=scan.far_field,
                normalize=config.output.normalize,
                workers=config.threads,
                progress=bar,
            )
        fmt = config.output.image_format
        stem = f"scan2d_N{scan.order}"
        session.record_output(write_image(session.path(f"{stem}.{fmt}"), image.values, fmt))
        session.record_output(write_image_csv(session.path(f"{stem}.csv"), image.scan_x, image.scan_y, image.values))

        center = image.center_row()
        if len(center) >= MIN_CONTRAST_SAMPLES:
            report = contrast(center)
            session.record("contrast", report.to_dict())
            echo.info(f"center line depth={report.depth:.4f} resolved={report.resolved}")
        session.record("emitters", list(image.emitter_xs))
        with session.timed("quadrature_diagnostics"):
            record_peak_quadrature(session, "center_line_peak", center, emitters)
