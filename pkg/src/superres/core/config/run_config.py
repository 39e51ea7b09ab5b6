"""Run configuration: JSON file <-> nested dataclasses with field-path validation."""

import json
import typing
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Union

from superres.core.diffraction import QuadratureSpec
from superres.core.errors import ConfigError, PlacementError
from superres.core.geometry import SUPPORTED_ORDERS, SetupConfig
from superres.core.imaging import DetectorMode
from superres.core.presets import apply_preset, deep_merge, get_preset


ImageFormat = Literal["pgm", "png"]

FIXED_DETECTORS = {
    DetectorMode.FOUR_MOVING: 0,
    DetectorMode.TWO_MOVING_TWO_FIXED: 2,
    DetectorMode.ONE_MOVING_THREE_FIXED: 3,
}


@dataclass
class GeometryBlock:
    a: float = 0.5
    d: float = 0.25
    epsilon: float = 0.1
    r_z: float = 500.0

    def to_setup(self) -> SetupConfig:
        return SetupConfig(
            aperture_radius=self.a,
            aperture_gap=self.d,
            source_standoff=self.epsilon,
            detector_z=self.r_z,
        )


@dataclass
class ScanBlock:
    order: int = 2
    x_range: float = 1000.0
    n_samples: int = 401
    y_range: float = 500.0
    nx: int = 201
    ny: int = 101
    scan_y: float = 0.0
    far_field: bool = False
    emitter_distance: Optional[float] = None  # in units of delta; None keeps the preset placement


@dataclass
class QuadratureBlock:
    order: int = 8
    refine_levels: int = 2
    tolerance: float = 1e-6
    max_depth: int = 12

    def to_spec(self) -> QuadratureSpec:
        return QuadratureSpec(
            order=self.order,
            refine_levels=self.refine_levels,
            tolerance=self.tolerance,
            max_depth=self.max_depth,
        )


@dataclass
class SweepBlock:
    orders: List[int] = field(default_factory=lambda: [1, 2, 4])
    standoffs: List[float] = field(default_factory=lambda: [0.1, 0.25, 1.0])
    multipliers: List[float] = field(default_factory=lambda: [1.0, 5.0, 10.0, 15.0])
    detector_mode: str = DetectorMode.TWO_MOVING_TWO_FIXED.value
    fixed_positions: Optional[List[float]] = None
    seed: int = 20240101
    trials: int = 100
    max_order: int = 6


@dataclass
class OutputBlock:
    directory: str = "superres-out"
    image_format: ImageFormat = "pgm"
    normalize: bool = False


@dataclass
class RunConfig:
    """Root structure of a run configuration file"""
    geometry: GeometryBlock = field(default_factory=GeometryBlock)
    scan: ScanBlock = field(default_factory=ScanBlock)
    quadrature: QuadratureBlock = field(default_factory=QuadratureBlock)
    sweep: SweepBlock = field(default_factory=SweepBlock)
    output: OutputBlock = field(default_factory=OutputBlock)
    threads: int = 1
    figure: Optional[str] = None

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        """Physical and structural checks; raises ConfigError naming the field."""
        self.geometry.to_setup()
        if self.scan.order not in SUPPORTED_ORDERS:
            raise PlacementError(self.scan.order, "scan.order")
        _positive("scan.x_range", self.scan.x_range)
        _positive("scan.y_range", self.scan.y_range)
        _at_least("scan.n_samples", self.scan.n_samples, 2)
        _at_least("scan.nx", self.scan.nx, 2)
        _at_least("scan.ny", self.scan.ny, 2)
        if self.scan.emitter_distance is not None:
            _positive("scan.emitter_distance", self.scan.emitter_distance)
        try:
            self.quadrature.to_spec()
        except ValueError as e:
            raise ConfigError("quadrature", str(e)) from None
        for i, order in enumerate(self.sweep.orders):
            if order not in SUPPORTED_ORDERS:
                raise PlacementError(order, f"sweep.orders[{i}]")
        for i, standoff in enumerate(self.sweep.standoffs):
            _positive(f"sweep.standoffs[{i}]", standoff)
        for i, m in enumerate(self.sweep.multipliers):
            _positive(f"sweep.multipliers[{i}]", m)
        try:
            mode = DetectorMode(self.sweep.detector_mode)
        except ValueError:
            raise ConfigError(
                "sweep.detector_mode",
                f"must be one of {', '.join(m.value for m in DetectorMode)}",
            ) from None
        if self.sweep.fixed_positions is not None:
            expected = FIXED_DETECTORS[mode]
            if len(self.sweep.fixed_positions) != expected:
                raise ConfigError(
                    "sweep.fixed_positions",
                    f"{mode.value} needs {expected} fixed detector positions, got {len(self.sweep.fixed_positions)}",
                )
        _at_least("sweep.trials", self.sweep.trials, 1)
        if not 1 <= self.sweep.max_order <= 8:
            raise ConfigError("sweep.max_order", "must lie in 1..8")
        _at_least("threads", self.threads, 1)
        if self.figure is not None:
            get_preset(self.figure)

    @property
    def setup(self) -> SetupConfig:
        return self.geometry.to_setup()

    @property
    def quad(self) -> QuadratureSpec:
        return self.quadrature.to_spec()

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        return _build(cls, data, "")


def _positive(path: str, value: float) -> None:
    if not value > 0:
        raise ConfigError(path, "must be > 0")


def _at_least(path: str, value: int, low: int) -> None:
    if value < low:
        raise ConfigError(path, f"must be >= {low}")


def _type_name(hint: Any) -> str:
    return getattr(hint, "__name__", None) or str(hint).replace("typing.", "")


def _coerce(value: Any, hint: Any, path: str) -> Any:
    origin = typing.get_origin(hint)
    if origin is Union:
        args = [a for a in typing.get_args(hint) if a is not type(None)]
        if value is None:
            return None
        return _coerce(value, args[0], path)
    if origin is Literal:
        allowed = typing.get_args(hint)
        if value not in allowed:
            raise ConfigError(path, f"must be one of {', '.join(map(str, allowed))}")
        return value
    if origin in (list, List):
        if not isinstance(value, list):
            raise ConfigError(path, "expected a list")
        (item,) = typing.get_args(hint)
        return [_coerce(v, item, f"{path}[{i}]") for i, v in enumerate(value)]
    if hint is bool:
        if not isinstance(value, bool):
            raise ConfigError(path, "expected true or false")
        return value
    if hint is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(path, "expected an integer")
        return value
    if hint is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(path, "expected a number")
        return float(value)
    if hint is str:
        if not isinstance(value, str):
            raise ConfigError(path, "expected a string")
        return value
    if isinstance(hint, type) and hasattr(hint, "__dataclass_fields__"):
        return _build(hint, value, path)
    raise ConfigError(path, f"unsupported field type {_type_name(hint)}")


def _build(cls: type, data: Any, path: str):
    if not isinstance(data, dict):
        raise ConfigError(path or "<root>", "expected an object")
    hints = typing.get_type_hints(cls)
    known = {f.name for f in fields(cls)}
    for key in data:
        if key not in known:
            raise ConfigError(f"{path}.{key}" if path else key, "unknown key")
    kwargs = {}
    for f in fields(cls):
        if f.name in data:
            child = f"{path}.{f.name}" if path else f.name
            kwargs[f.name] = _coerce(data[f.name], hints[f.name], child)
    return cls(**kwargs)


def read_config_data(path: Union[str, Path]) -> Dict[str, Any]:
    """Raw JSON object of a config file; a run manifest yields its recorded config."""
    path = Path(path)
    if not path.is_file():
        raise ConfigError(str(path), "config file not found")
    try:
        with open(path, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise ConfigError(str(path), f"invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from None
    if not isinstance(data, dict):
        raise ConfigError("<root>", "expected an object")
    if data.get("kind") == "superres-manifest":
        data = data.get("config")
        if not isinstance(data, dict):
            raise ConfigError("config", "manifest carries no config object")
    return data


def load_config(path: Union[str, Path]) -> RunConfig:
    """Validated RunConfig from a JSON file, defaults and any named preset filled in."""
    return resolve_run_config(path)


def resolve_run_config(
    config_path: Optional[Union[str, Path]] = None,
    figure: Optional[str] = None,
    overrides: Optional[Dict[str, Any]] = None,
    base: Optional[Dict[str, Any]] = None,
) -> RunConfig:
    """Layer defaults, ``base``, figure preset, config file and CLI overrides, in that order."""
    data = read_config_data(config_path) if config_path else {}
    figure = figure or data.get("figure")
    if base:
        data = deep_merge(base, data)
    if figure:
        data = apply_preset(data, figure)
    if overrides:
        data = deep_merge(data, _drop_none(overrides))
    return RunConfig.from_dict(data)


def _drop_none(tree: Dict[str, Any]) -> Dict[str, Any]:
    out = {}
    for key, value in tree.items():
        if isinstance(value, dict):
            nested = _drop_none(value)
            if nested:
                out[key] = nested
        elif value is not None:
            out[key] = value
    return out
