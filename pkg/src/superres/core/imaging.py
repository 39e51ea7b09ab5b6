"""Correlation scans, contrast metrics and parameter sweeps.

Every scan point is an independent evaluation of G^(N) for one detector
placement. Points are farmed out to a thread pool and written back by index,
so the produced arrays do not depend on the number of workers.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from superres.core.correlation import gN
from superres.core.diffraction import QuadratureSpec
from superres.core.geometry import (
    DetectorSet,
    EmitterArray,
    Point3,
    SetupConfig,
    detector_positions,
    emitter_pair,
    emitter_positions,
)


DEFAULT_X_RANGE = 1000.0
DEFAULT_Y_RANGE = 500.0
DEFAULT_SAMPLES = 401
DEFAULT_GRID = (201, 101)
DEFAULT_STANDOFFS = (0.1, 0.25, 1.0)
DEFAULT_MULTIPLIERS = (1.0, 5.0, 10.0, 15.0)

RESOLVED_THRESHOLD = 0.05
PEAK_FLOOR = 0.5
MIN_CONTRAST_SAMPLES = 16

Range = Union[float, Tuple[float, float]]
ProgressCallback = Callable[[int], None]
DetectorLayout = Callable[[float, float], DetectorSet]


@dataclass(frozen=True)
class CorrelationCurve:
    scan_x: np.ndarray
    values: np.ndarray
    order: int
    config: SetupConfig
    normalized: bool = False
    far_field: bool = False
    emitter_xs: Tuple[float, ...] = ()
    metadata: Dict[str, object] = field(default_factory=dict)

    def __post_init__(self):
        if self.scan_x.shape != self.values.shape or self.scan_x.ndim != 1:
            raise ValueError("scan_x and values must be 1-D arrays of equal length")
        if np.any(np.diff(self.scan_x) <= 0):
            raise ValueError("scan_x must be strictly increasing")
        if np.any(self.values < 0):
            raise ValueError("correlation values must be non-negative")

    def __len__(self) -> int:
        return self.scan_x.size

    def normalize(self) -> "CorrelationCurve":
        return CorrelationCurve(
            scan_x=self.scan_x,
            values=max_normalize(self.values),
            order=self.order,
            config=self.config,
            normalized=True,
            far_field=self.far_field,
            emitter_xs=self.emitter_xs,
            metadata=dict(self.metadata),
        )


@dataclass(frozen=True)
class CorrelationImage:
    """Values on a ``(ny, nx)`` grid; row ``j`` is the line ``scan_y[j]``."""
    scan_x: np.ndarray
    scan_y: np.ndarray
    values: np.ndarray
    order: int
    config: SetupConfig
    normalized: bool = False
    far_field: bool = False
    emitter_xs: Tuple[float, ...] = ()

    def __post_init__(self):
        if self.values.shape != (self.scan_y.size, self.scan_x.size):
            raise ValueError(
                f"image shape {self.values.shape} does not match grid ({self.scan_y.size}, {self.scan_x.size})"
            )
        if np.any(self.values < 0):
            raise ValueError("correlation values must be non-negative")

    @property
    def shape(self) -> Tuple[int, int]:
        return self.values.shape

    def row(self, j: int) -> CorrelationCurve:
        return CorrelationCurve(
            scan_x=self.scan_x,
            values=self.values[j].copy(),
            order=self.order,
            config=self.config,
            normalized=self.normalized,
            far_field=self.far_field,
            emitter_xs=self.emitter_xs,
            metadata={"scan_y": float(self.scan_y[j])},
        )

    def center_row(self) -> CorrelationCurve:
        """The row closest to ``scan_y = 0``."""
        return self.row(int(np.argmin(np.abs(self.scan_y))))


@dataclass(frozen=True)
class ContrastReport:
    depth: float
    resolved: bool
    lobes: Optional[Tuple[float, float]] = None
    valley: Optional[float] = None
    peak_values: Optional[Tuple[float, float]] = None
    valley_value: Optional[float] = None
    threshold: float = RESOLVED_THRESHOLD

    @property
    def valley_ratio(self) -> Optional[float]:
        """Valley over the higher lobe; lower means a deeper dip even when the lobes differ in height."""
        if self.peak_values is None or self.valley_value is None:
            return None
        return self.valley_value / max(self.peak_values)

    def to_dict(self) -> dict:
        return {
            "depth": self.depth,
            "resolved": self.resolved,
            "lobes": list(self.lobes) if self.lobes else None,
            "valley": self.valley,
            "valley_ratio": self.valley_ratio,
            "threshold": self.threshold,
        }


class DetectorMode(str, Enum):
    FOUR_MOVING = "four_moving"
    TWO_MOVING_TWO_FIXED = "two_moving_two_fixed"
    ONE_MOVING_THREE_FIXED = "one_moving_three_fixed"


@dataclass(frozen=True)
class SweepCell:
    order: int
    standoff: float
    curve: CorrelationCurve
    report: ContrastReport


@dataclass(frozen=True)
class ContrastMatrix:
    """Cross product of orders (rows) and standoffs (columns)."""
    orders: Tuple[int, ...]
    standoffs: Tuple[float, ...]
    cells: Tuple[Tuple[SweepCell, ...], ...]

    def __getitem__(self, index: Tuple[int, int]) -> ContrastReport:
        i, j = index
        return self.cells[i][j].report

    @property
    def reports(self) -> List[List[ContrastReport]]:
        return [[cell.report for cell in row] for row in self.cells]

    @property
    def depths(self) -> np.ndarray:
        return np.array([[cell.report.depth for cell in row] for row in self.cells])

    def report_for(self, order: int, standoff: float) -> ContrastReport:
        return self[self.orders.index(order), self.standoffs.index(standoff)]


class DistanceSample(NamedTuple):
    distance: float
    report: ContrastReport
    curve: CorrelationCurve


def max_normalize(values: np.ndarray) -> np.ndarray:
    values = np.asarray(values, dtype=float)
    peak = float(np.max(values)) if values.size else 0.0
    return values / peak if peak > 0 else values.copy()


def symmetric_samples(x_range: Range, n_samples: int) -> np.ndarray:
    """``n`` samples on ``[-X, X]`` with ``x[i] == -x[n-1-i]`` exactly."""
    if isinstance(x_range, (tuple, list)):
        lo, hi = float(x_range[0]), float(x_range[1])
        if lo != -hi:
            raise ValueError(f"scan range must be symmetric about 0, got [{lo}, {hi}]")
        half = hi
    else:
        half = float(x_range)
    if not half > 0:
        raise ValueError("scan half-width must be > 0")
    if n_samples < 2:
        raise ValueError("a scan needs at least 2 samples")
    xs = np.linspace(-half, half, n_samples)
    return 0.5 * (xs - xs[::-1])


def _evaluate(
    points: Sequence[Tuple[float, float]],
    layout: DetectorLayout,
    emitters: EmitterArray,
    config: SetupConfig,
    quad: QuadratureSpec,
    far_field: bool,
    workers: int,
    progress: Optional[ProgressCallback],
) -> np.ndarray:
    def one(point: Tuple[float, float]) -> float:
        detectors = layout(point[0], point[1])
        return gN(detectors, emitters, config, quad, far_field=far_field).value

    out = np.empty(len(points), dtype=float)
    if workers <= 1:
        for idx, point in enumerate(points):
            out[idx] = one(point)
            if progress is not None:
                progress(1)
        return out
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for idx, value in enumerate(pool.map(one, points)):
            out[idx] = value
            if progress is not None:
                progress(1)
    return out


def _resolve_emitters(
    order: int,
    config: SetupConfig,
    standoff: Optional[float],
    emitters: Optional[EmitterArray],
) -> EmitterArray:
    if emitters is not None:
        if emitters.order != order:
            raise ValueError(f"expected {order} emitters, got {emitters.order}")
        return emitters
    return emitter_positions(order, config, standoff)


def _placement(order: int, config: SetupConfig) -> DetectorLayout:
    return lambda x, y: detector_positions(order, x, y, config)


def scan_1d(
    order: int,
    config: SetupConfig,
    standoff: Optional[float] = None,
    x_range: Range = DEFAULT_X_RANGE,
    n_samples: int = DEFAULT_SAMPLES,
    quad: QuadratureSpec = QuadratureSpec(),
    *,
    scan_y: float = 0.0,
    emitters: Optional[EmitterArray] = None,
    far_field: bool = False,
    normalize: bool = False,
    workers: int = 1,
    progress: Optional[ProgressCallback] = None,
    layout: Optional[DetectorLayout] = None,
) -> CorrelationCurve:
    """G^(N) along the line ``scan_y`` as the detectors sweep the x axis.

    Emitters sit at ``emitter_positions(order)`` unless ``emitters`` is given;
    detectors follow ``detector_positions(order, x, scan_y)`` unless a custom
    ``layout`` is supplied.
    """
    standoff = config.source_standoff if standoff is None else standoff
    config = config.with_standoff(standoff)
    sources = _resolve_emitters(order, config, standoff, emitters)
    xs = symmetric_samples(x_range, n_samples)
    values = _evaluate(
        [(float(x), scan_y) for x in xs],
        layout or _placement(order, config),
        sources,
        config,
        quad,
        far_field,
        workers,
        progress,
    )
    curve = CorrelationCurve(
        scan_x=xs,
        values=values,
        order=order,
        config=config,
        far_field=far_field,
        emitter_xs=tuple(sources.xs),
        metadata={"scan_y": scan_y},
    )
    return curve.normalize() if normalize else curve


def scan_2d(
    order: int,
    config: SetupConfig,
    standoff: Optional[float] = None,
    x_range: Range = DEFAULT_X_RANGE,
    y_range: Range = DEFAULT_Y_RANGE,
    nx: int = DEFAULT_GRID[0],
    ny: int = DEFAULT_GRID[1],
    quad: QuadratureSpec = QuadratureSpec(),
    *,
    emitters: Optional[EmitterArray] = None,
    far_field: bool = False,
    normalize: bool = False,
    workers: int = 1,
    progress: Optional[ProgressCallback] = None,
) -> CorrelationImage:
    """Row-by-row 1-D scans, one per constant ``scan_y``."""
    if nx < 2 or ny < 2:
        raise ValueError("a 2-D scan needs nx >= 2 and ny >= 2")
    standoff = config.source_standoff if standoff is None else standoff
    config = config.with_standoff(standoff)
    sources = _resolve_emitters(order, config, standoff, emitters)
    xs = symmetric_samples(x_range, nx)
    ys = symmetric_samples(y_range, ny)
    points = [(float(x), float(y)) for y in ys for x in xs]
    flat = _evaluate(points, _placement(order, config), sources, config, quad, far_field, workers, progress)
    values = flat.reshape(ny, nx)
    return CorrelationImage(
        scan_x=xs,
        scan_y=ys,
        values=max_normalize(values) if normalize else values,
        order=order,
        config=config,
        normalized=normalize,
        far_field=far_field,
        emitter_xs=tuple(sources.xs),
    )


def _box_smooth(values: np.ndarray) -> np.ndarray:
    padded = np.concatenate([values[:1], values, values[-1:]])
    return (padded[:-2] + padded[1:-1] + padded[2:]) / 3.0


def local_maxima(values: np.ndarray) -> List[int]:
    """Indices of strict 3-point maxima; a plateau reports its leftmost sample."""
    n = values.size
    peaks = []
    i = 1
    while i < n - 1:
        if values[i] > values[i - 1]:
            j = i
            while j + 1 < n and values[j + 1] == values[i]:
                j += 1
            if j + 1 < n and values[j + 1] < values[i]:
                peaks.append(i)
            i = j + 1
        else:
            i += 1
    return peaks


def contrast(
    curve: Union[CorrelationCurve, np.ndarray],
    threshold: float = RESOLVED_THRESHOLD,
    peak_floor: float = PEAK_FLOOR,
    smooth: bool = False,
) -> ContrastReport:
    """Two-lobe modulation depth of a curve.

    Local maxima below ``peak_floor`` times the global maximum are ignored.
    The two highest remaining maxima are the lobes and the lowest sample
    between them the valley;
    ``depth = (min(peak1, peak2) - valley) / (min(peak1, peak2) + valley)``.
    Fewer than two lobes give depth 0.
    """
    if isinstance(curve, CorrelationCurve):
        xs, values = curve.scan_x, np.asarray(curve.values, dtype=float)
    else:
        values = np.asarray(curve, dtype=float)
        xs = np.arange(values.size, dtype=float)
    if values.size < MIN_CONTRAST_SAMPLES:
        raise ValueError(f"contrast needs at least {MIN_CONTRAST_SAMPLES} samples, got {values.size}")
    if smooth:
        values = _box_smooth(values)

    unresolved = ContrastReport(depth=0.0, resolved=False, threshold=threshold)
    top = float(np.max(values))
    if not top > 0:
        return unresolved
    peaks = [i for i in local_maxima(values) if values[i] >= peak_floor * top]
    if len(peaks) < 2:
        return unresolved

    # highest first, leftmost on ties
    first, second = sorted(sorted(peaks, key=lambda i: (-values[i], i))[:2])
    between = values[first:second + 1]
    valley_idx = first + int(np.argmin(between))
    peak = min(values[first], values[second])
    valley = values[valley_idx]
    total = peak + valley
    depth = (peak - valley) / total if total > 0 else 0.0
    depth = float(min(1.0, max(0.0, depth)))
    return ContrastReport(
        depth=depth,
        resolved=depth >= threshold,
        lobes=(float(xs[first]), float(xs[second])),
        valley=float(xs[valley_idx]),
        peak_values=(float(values[first]), float(values[second])),
        valley_value=float(valley),
        threshold=threshold,
    )


def sweep_standoff_order(
    orders: Sequence[int] = (1, 2, 4),
    standoffs: Sequence[float] = DEFAULT_STANDOFFS,
    config: SetupConfig = SetupConfig(),
    quad: QuadratureSpec = QuadratureSpec(),
    *,
    x_range: Range = DEFAULT_X_RANGE,
    n_samples: int = DEFAULT_SAMPLES,
    workers: int = 1,
    progress: Optional[ProgressCallback] = None,
) -> ContrastMatrix:
    """Contrast for every (order, standoff) pair."""
    if not orders or not standoffs:
        raise ValueError("orders and standoffs must be non-empty")
    rows = []
    for order in orders:
        row = []
        for standoff in standoffs:
            curve = scan_1d(
                order, config, standoff, x_range, n_samples, quad,
                workers=workers, progress=progress,
            )
            row.append(SweepCell(order=order, standoff=standoff, curve=curve, report=contrast(curve)))
        rows.append(tuple(row))
    return ContrastMatrix(orders=tuple(orders), standoffs=tuple(standoffs), cells=tuple(rows))


def sweep_emitter_distance(
    multipliers: Sequence[float] = DEFAULT_MULTIPLIERS,
    config: SetupConfig = SetupConfig(),
    quad: QuadratureSpec = QuadratureSpec(),
    *,
    standoff: Optional[float] = None,
    x_range: Range = DEFAULT_X_RANGE,
    n_samples: int = DEFAULT_SAMPLES,
    workers: int = 1,
    progress: Optional[ProgressCallback] = None,
) -> List[DistanceSample]:
    """Two-emitter contrast with the emitters at ``[0, m*delta]``."""
    if not multipliers:
        raise ValueError("multipliers must be non-empty")
    standoff = config.source_standoff if standoff is None else standoff
    samples = []
    for m in multipliers:
        sources = emitter_pair(m, config, standoff)
        distance = sources.xs[1]
        curve = scan_1d(
            2, config, standoff, x_range, n_samples, quad,
            emitters=sources, workers=workers, progress=progress,
        )
        curve.metadata["multiplier"] = m
        samples.append(DistanceSample(distance=distance, report=contrast(curve), curve=curve))
    return samples


def default_fixed_positions(mode: DetectorMode, config: SetupConfig) -> Tuple[float, ...]:
    """Stationary detectors from the N=4 placement evaluated at ``scan_x = 0``."""
    placed = [x + 0.0 for x in detector_positions(4, 0.0, 0.0, config).xs]
    if mode is DetectorMode.TWO_MOVING_TWO_FIXED:
        return tuple(placed[2:])
    if mode is DetectorMode.ONE_MOVING_THREE_FIXED:
        return tuple(placed[1:])
    return ()


def _mode_layout(mode: DetectorMode, fixed: Tuple[float, ...], config: SetupConfig) -> DetectorLayout:
    rz = config.detector_z

    def layout(x: float, y: float) -> DetectorSet:
        if mode is DetectorMode.TWO_MOVING_TWO_FIXED:
            xs = [x, -x, *fixed]
        else:
            xs = [x, *fixed]
        positions: Tuple[Point3, ...] = tuple((float(v), float(y), rz) for v in xs)
        return DetectorSet(positions=positions, placement="custom", free=("scan_x",))

    return layout


def sweep_detector_modes(
    mode: Union[DetectorMode, str],
    fixed_positions: Optional[Sequence[float]] = None,
    config: SetupConfig = SetupConfig(),
    quad: QuadratureSpec = QuadratureSpec(),
    *,
    standoff: Optional[float] = None,
    x_range: Range = DEFAULT_X_RANGE,
    n_samples: int = DEFAULT_SAMPLES,
    normalize: bool = False,
    workers: int = 1,
    progress: Optional[ProgressCallback] = None,
) -> CorrelationCurve:
    """G^(4) of the four-emitter preset with only some detectors moving.

    ``fixed_positions`` are the x coordinates of the stationary detectors:
    two for ``two_moving_two_fixed`` (moving pair at ``x, -x``), three for
    ``one_moving_three_fixed``.
    """
    mode = DetectorMode(mode)
    if mode is DetectorMode.FOUR_MOVING:
        if fixed_positions:
            raise ValueError("four_moving takes no fixed detectors")
        curve = scan_1d(
            4, config, standoff, x_range, n_samples, quad,
            normalize=normalize, workers=workers, progress=progress,
        )
        curve.metadata["mode"] = mode.value
        return curve

    expected = 2 if mode is DetectorMode.TWO_MOVING_TWO_FIXED else 3
    fixed = tuple(float(v) for v in fixed_positions) if fixed_positions else default_fixed_positions(mode, config)
    if len(fixed) != expected:
        raise ValueError(f"{mode.value} needs {expected} fixed detector positions, got {len(fixed)}")
    curve = scan_1d(
        4, config, standoff, x_range, n_samples, quad,
        normalize=normalize, workers=workers, progress=progress,
        layout=_mode_layout(mode, fixed, config),
    )
    curve.metadata.update({"mode": mode.value, "fixed_positions": list(fixed)})
    return curve


def shape_similarity(curve_a: CorrelationCurve, curve_b: CorrelationCurve) -> float:
    """Normalized cross-correlation of the max-normalized curves on ``curve_a``'s grid."""
    a = max_normalize(curve_a.values)
    b = max_normalize(np.interp(curve_a.scan_x, curve_b.scan_x, curve_b.values))
    denom = math.sqrt(float(np.dot(a, a)) * float(np.dot(b, b)))
    return float(np.dot(a, b)) / denom if denom > 0 else 0.0


__all__ = [
    "ContrastMatrix",
    "ContrastReport",
    "CorrelationCurve",
    "CorrelationImage",
    "DetectorMode",
    "DistanceSample",
    "SweepCell",
    "contrast",
    "default_fixed_positions",
    "local_maxima",
    "max_normalize",
    "scan_1d",
    "scan_2d",
    "shape_similarity",
    "sweep_detector_modes",
    "sweep_emitter_distance",
    "sweep_standoff_order",
    "symmetric_samples",
]
