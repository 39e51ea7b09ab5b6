from typing import List, Optional

import typer

from superres import Annotated, superres_cli, capture_exception, echo
from superres.commands._options import (
    ConfigOption,
    EpsilonOption,
    FigureOption,
    NormalizeOption,
    OutOption,
    QuietOption,
    ThreadsOption,
    ToleranceOption,
    common_overrides,
)
from superres.core.imaging import (
    CorrelationCurve,
    DetectorMode,
    scan_1d,
    shape_similarity,
    sweep_detector_modes,
    sweep_emitter_distance,
    sweep_standoff_order,
)
from superres.core.session import RunSession, prepare_config, run_session
from superres.utils.file_utils import write_curve_csv, write_table_csv
from superres.utils.progress import progress_bar


SamplesOption = Annotated[Optional[int], typer.Option(
    "--samples", "-s", help="Number of scan points per curve", show_default=False,
)]


def _write_curve(session: RunSession, name: str, curve: CorrelationCurve) -> None:
    session.record_output(write_curve_csv(session.path(name), curve.scan_x, curve.values))


@superres_cli.command(name="sweep-distance")
@capture_exception
def sweep_distance_command(
    config_path: ConfigOption = None,
    figure: FigureOption = None,
    out: OutOption = None,
    threads: ThreadsOption = None,
    tolerance: ToleranceOption = None,
    epsilon: EpsilonOption = None,
    samples: SamplesOption = None,
    multipliers: Annotated[Optional[List[float]], typer.Option(
        "--multiplier", "-m", help="Emitter separation in units of delta, repeatable", show_default=False,
    )] = None,
    quiet: QuietOption = False,
) -> None:
    """
    Two-emitter G(2) contrast as the emitter separation grows.

    Examples:
        superres sweep-distance --figure s2
        superres sweep-distance -m 1 -m 5 -m 10 -m 15 --samples 201
    """
    overrides = common_overrides(out, threads, tolerance, None, epsilon)
    overrides["scan"] = {"n_samples": samples}
    overrides["sweep"] = {"multipliers": list(multipliers) if multipliers else None}
    config = prepare_config(config_path, figure, overrides)
    sweep, scan = config.sweep, config.scan

    with run_session("sweep-distance", config) as session:
        with session.timed("sweep"), progress_bar(
            total=len(sweep.multipliers) * scan.n_samples, desc="sweep-distance",
            mode="off" if quiet else "auto",
        ) as bar:
            results = sweep_emitter_distance(
                sweep.multipliers, config.setup, config.quad,
                x_range=scan.x_range, n_samples=scan.n_samples, workers=config.threads, progress=bar,
            )
        rows = []
        for m, sample in zip(sweep.multipliers, results):
            rows.append([m, sample.distance, sample.report.depth, sample.report.resolved])
            _write_curve(session, f"sweep_distance_m{m:g}.csv", sample.curve)
            echo.info(f"m={m:g} distance={sample.distance:.6g} depth={sample.report.depth:.4f}")
        table = write_table_csv(
            session.path("sweep_distance.csv"), ["multiplier", "distance_lambda", "depth", "resolved"], rows
        )
        session.record_output(table)
        session.record("contrast", {f"{m:g}": s.report.to_dict() for m, s in zip(sweep.multipliers, results)})


@superres_cli.command(name="sweep-matrix")
@capture_exception
def sweep_matrix_command(
    config_path: ConfigOption = None,
    figure: FigureOption = None,
    out: OutOption = None,
    threads: ThreadsOption = None,
    tolerance: ToleranceOption = None,
    samples: SamplesOption = None,
    orders: Annotated[Optional[List[int]], typer.Option(
        "--order", "-n", help="Correlation order, repeatable", show_default=False,
    )] = None,
    standoffs: Annotated[Optional[List[float]], typer.Option(
        "--standoff", help="Source standoff in wavelengths, repeatable", show_default=False,
    )] = None,
    quiet: QuietOption = False,
) -> None:
    """
    Contrast matrix over correlation orders and source standoffs.

    Examples:
        superres sweep-matrix --figure 3
        superres sweep-matrix -n 1 -n 2 -n 4 --standoff 0.1 --standoff 1
    """
    overrides = common_overrides(out, threads, tolerance)
    overrides["scan"] = {"n_samples": samples}
    overrides["sweep"] = {
        "orders": list(orders) if orders else None,
        "standoffs": list(standoffs) if standoffs else None,
    }
    config = prepare_config(config_path, figure, overrides)
    sweep, scan = config.sweep, config.scan

    with run_session("sweep-matrix", config) as session:
        total = len(sweep.orders) * len(sweep.standoffs) * scan.n_samples
        with session.timed("sweep"), progress_bar(
            total=total, desc="sweep-matrix", mode="off" if quiet else "auto"
        ) as bar:
            matrix = sweep_standoff_order(
                sweep.orders, sweep.standoffs, config.setup, config.quad,
                x_range=scan.x_range, n_samples=scan.n_samples, workers=config.threads, progress=bar,
            )
        rows = []
        for row in matrix.cells:
            for cell in row:
                rows.append([cell.order, cell.standoff, cell.report.depth, cell.report.resolved])
                _write_curve(session, f"sweep_matrix_N{cell.order}_eps{cell.standoff:g}.csv", cell.curve)
        table = write_table_csv(
            session.path("sweep_matrix.csv"), ["order", "standoff_lambda", "depth", "resolved"], rows
        )
        session.record_output(table)
        session.record("depths", matrix.depths.tolist())
        for order, depths in zip(matrix.orders, matrix.depths):
            echo.info(f"N={order}: " + "  ".join(f"{d:.4f}" for d in depths))


@superres_cli.command(name="sweep-detectors")
@capture_exception
def sweep_detectors_command(
    config_path: ConfigOption = None,
    figure: FigureOption = None,
    out: OutOption = None,
    threads: ThreadsOption = None,
    tolerance: ToleranceOption = None,
    normalize: NormalizeOption = None,
    epsilon: EpsilonOption = None,
    samples: SamplesOption = None,
    mode: Annotated[Optional[DetectorMode], typer.Option(
        "--mode", "-m", help="Which detectors move during the G(4) scan", show_default=False,
    )] = None,
    fixed: Annotated[Optional[List[float]], typer.Option(
        "--fixed", help="x of a stationary detector, repeatable", show_default=False,
    )] = None,
    quiet: QuietOption = False,
) -> None:
    """
    G(4) scan with fixed detectors, compared against the matching lower-order scan.

    two_moving_two_fixed is compared with the G(2) scan, one_moving_three_fixed
    with the G(1) scan; the shape similarity goes into the manifest.

    Examples:
        superres sweep-detectors --figure s4a
        superres sweep-detectors --mode one_moving_three_fixed --samples 201
    """
    overrides = common_overrides(out, threads, tolerance, normalize, epsilon)
    overrides["scan"] = {"n_samples": samples}
    overrides["sweep"] = {
        "detector_mode": mode.value if mode is not None else None,
        "fixed_positions": list(fixed) if fixed else None,
    }
    config = prepare_config(config_path, figure, overrides)
    sweep, scan = config.sweep, config.scan
    detector_mode = DetectorMode(sweep.detector_mode)
    reference_order = {
        DetectorMode.TWO_MOVING_TWO_FIXED: 2,
        DetectorMode.ONE_MOVING_THREE_FIXED: 1,
    }.get(detector_mode)

    with run_session("sweep-detectors", config) as session:
        total = scan.n_samples * (2 if reference_order else 1)
        with session.timed("sweep"), progress_bar(
            total=total, desc=f"sweep-detectors {detector_mode.value}", mode="off" if quiet else "auto"
        ) as bar:
            curve = sweep_detector_modes(
                detector_mode, sweep.fixed_positions, config.setup, config.quad,
                x_range=scan.x_range, n_samples=scan.n_samples,
                normalize=config.output.normalize, workers=config.threads, progress=bar,
            )
            reference = None
            if reference_order:
                reference = scan_1d(
                    reference_order, config.setup, None, scan.x_range, scan.n_samples, config.quad,
                    normalize=config.output.normalize, workers=config.threads, progress=bar,
                )
        _write_curve(session, f"sweep_detectors_{detector_mode.value}.csv", curve)
        session.record("detector_mode", curve.metadata)
        if reference is not None:
            _write_curve(session, f"sweep_detectors_reference_N{reference_order}.csv", reference)
            similarity = shape_similarity(curve, reference)
            session.record("shape_similarity", {"reference_order": reference_order, "value": similarity})
            echo.info(f"shape similarity with G({reference_order}): {similarity:.6f}")
