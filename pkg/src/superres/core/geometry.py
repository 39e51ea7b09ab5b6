"""Experimental geometry: aperture mask, source plane, detector plane.

All lengths are in units of the wavelength, so ``WAVELENGTH == 1`` and the
wavenumber is ``K == 2*pi``. The mask consists of two circular apertures of
radius ``a`` on the x axis of the ``z = 0`` plane whose rims are separated by
the gap ``d``; its total x extent is therefore ``4a + d``, the length that
enters every placement rule below.
"""

import math
from dataclasses import dataclass, field
from typing import List, Literal, Optional, Sequence, Tuple

from superres.core.errors import GeometryError, PlacementError


WAVELENGTH = 1.0
K = 2.0 * math.pi / WAVELENGTH

SUPPORTED_ORDERS = (1, 2, 4)

Point2 = Tuple[float, float]
Point3 = Tuple[float, float, float]
Placement = Literal["single", "mirror_pair", "quad", "custom"]


@dataclass(frozen=True)
class SetupConfig:
    """Geometry of source plane, aperture mask and detector plane."""
    aperture_radius: float = 0.5  # a
    aperture_gap: float = 0.25  # d, rim to rim
    source_standoff: float = 0.1  # epsilon, source plane at z = -epsilon
    detector_z: float = 500.0  # r_z, detector plane at z = +r_z

    # config file names of the fields, used in diagnostics
    _field_names = {
        "aperture_radius": "geometry.a",
        "aperture_gap": "geometry.d",
        "source_standoff": "geometry.epsilon",
        "detector_z": "geometry.r_z",
    }

    def __post_init__(self):
        if not self.aperture_radius > 0:
            raise GeometryError(self._field_names["aperture_radius"], "must be > 0")
        if not self.aperture_gap >= 0:
            raise GeometryError(self._field_names["aperture_gap"], "must be >= 0")
        if not self.source_standoff > 0:
            raise GeometryError(self._field_names["source_standoff"], "must be > 0")
        if not self.detector_z > 0:
            raise GeometryError(self._field_names["detector_z"], "must be > 0")
        min_rz = 100.0 * self.extent
        if self.detector_z < min_rz:
            raise GeometryError(
                self._field_names["detector_z"],
                f"detector plane must be in the far zone: r_z >= 100*(4a+d) = {min_rz:g}",
            )

    @property
    def wavelength(self) -> float:
        return WAVELENGTH

    @property
    def k(self) -> float:
        return K

    @property
    def extent(self) -> float:
        """Total x extent of the mask, ``4a + d``."""
        return 4.0 * self.aperture_radius + self.aperture_gap

    @property
    def center_offset(self) -> float:
        """Distance of each aperture centre from the origin, ``a + d/2``."""
        return self.aperture_radius + 0.5 * self.aperture_gap

    def with_standoff(self, standoff: float) -> "SetupConfig":
        return SetupConfig(
            aperture_radius=self.aperture_radius,
            aperture_gap=self.aperture_gap,
            source_standoff=standoff,
            detector_z=self.detector_z,
        )


@dataclass(frozen=True)
class ApertureMask:
    """Two open discs of equal radius centred on the x axis."""
    radius: float
    centers: Tuple[Point2, Point2]

    @classmethod
    def from_config(cls, config: SetupConfig) -> "ApertureMask":
        c = config.center_offset
        return cls(radius=config.aperture_radius, centers=((-c, 0.0), (c, 0.0)))

    @property
    def extent(self) -> float:
        return (self.centers[1][0] - self.centers[0][0]) + 2.0 * self.radius

    def contains(self, point: Sequence[float]) -> bool:
        # open discs: the rim itself is outside
        x, y = point[0], point[1]
        r2 = self.radius * self.radius
        return any((x - cx) ** 2 + (y - cy) ** 2 < r2 for cx, cy in self.centers)


@dataclass(frozen=True)
class EmitterArray:
    """Point emitters on the source plane, all at ``y = 0`` and ``z = -standoff``."""
    positions: Tuple[Point3, ...]
    standoff: float
    delta: Optional[float] = None

    def __post_init__(self):
        if not self.positions:
            raise ValueError("an emitter array needs at least one emitter")
        for x, y, z in self.positions:
            if y != 0.0 or z != -self.standoff:
                raise ValueError(f"emitter ({x}, {y}, {z}) is off the source line y=0, z={-self.standoff}")

    @property
    def order(self) -> int:
        return len(self.positions)

    @property
    def xs(self) -> List[float]:
        return [p[0] for p in self.positions]

    def mirrored(self) -> "EmitterArray":
        return EmitterArray(
            positions=tuple((-x, y, z) for x, y, z in self.positions),
            standoff=self.standoff,
            delta=self.delta,
        )


@dataclass(frozen=True)
class DetectorSet:
    """Detectors on the plane ``z = r_z``.

    ``free`` names the coordinates that the scan drives directly; every other
    detector coordinate is slaved to them through ``placement``.
    """
    positions: Tuple[Point3, ...]
    placement: Placement = "custom"
    free: Tuple[str, ...] = field(default=("scan_x", "scan_y"))

    @property
    def order(self) -> int:
        return len(self.positions)

    @property
    def xs(self) -> List[float]:
        return [p[0] for p in self.positions]


def aperture_centers(config: SetupConfig) -> List[Point2]:
    c = config.center_offset
    return [(-c, 0.0), (c, 0.0)]


def in_aperture(point: Sequence[float], config: SetupConfig) -> bool:
    """True iff ``point`` lies strictly inside either aperture."""
    return ApertureMask.from_config(config).contains(point)


def delta_scale(standoff: float, config: SetupConfig, p: Optional[float] = None) -> float:
    """Characteristic position uncertainty ``lambda*standoff / (2(4a+d))``.

    Equivalent to ``pi*standoff / (k(4a+d))``. With the evanescent steepness
    factor ``p`` (``|k_x| = p*k``) the result is scaled by ``1/sqrt(p^2-1)``;
    without it the prefactor is 1.
    """
    if not standoff > 0:
        raise GeometryError("standoff", "must be > 0")
    delta = WAVELENGTH * standoff / (2.0 * config.extent)
    if p is None:
        return delta
    if not p > 1:
        raise GeometryError("p", "steepness factor must be > 1")
    return delta / math.sqrt(p * p - 1.0)


def _check_order(order: int) -> None:
    if order not in SUPPORTED_ORDERS:
        raise PlacementError(order)


def emitters_at(xs: Sequence[float], standoff: float, delta: Optional[float] = None) -> EmitterArray:
    return EmitterArray(
        positions=tuple((float(x), 0.0, -standoff) for x in xs),
        standoff=standoff,
        delta=delta,
    )


def emitter_positions(order: int, config: SetupConfig, standoff: Optional[float] = None) -> EmitterArray:
    """Place ``order`` emitters with the indistinguishability spacing ``delta``.

    N=1: [0]; N=2: [0, delta]; N=4: [-delta, 0, delta/2, delta].
    """
    _check_order(order)
    standoff = config.source_standoff if standoff is None else standoff
    delta = delta_scale(standoff, config)
    if order == 1:
        xs = [0.0]
    elif order == 2:
        xs = [0.0, delta]
    else:
        xs = [-delta, 0.0, 0.5 * delta, delta]
    return emitters_at(xs, standoff, delta)


def emitter_pair(multiplier: float, config: SetupConfig, standoff: Optional[float] = None) -> EmitterArray:
    """Two emitters at ``[0, m*delta]``."""
    if not multiplier > 0:
        raise GeometryError("scan.emitter_distance", "must be > 0")
    standoff = config.source_standoff if standoff is None else standoff
    delta = delta_scale(standoff, config)
    return emitters_at([0.0, multiplier * delta], standoff, delta)


def detector_offset(config: SetupConfig) -> float:
    """Detector-plane analogue of delta, ``lambda*r_z / (2(4a+d))``."""
    return delta_scale(config.detector_z, config)


def detector_positions(order: int, scan_x: float, scan_y: float, config: SetupConfig) -> DetectorSet:
    """Place ``order`` detectors for the scan coordinate ``(scan_x, scan_y)``.

    N=1 follows the scan point, N=2 adds its mirror image ``-scan_x`` and N=4
    uses ``[x, -x, -x + D, x + D/2]`` with ``D = lambda*r_z / (2(4a+d))``.
    """
    _check_order(order)
    rz = config.detector_z
    if order == 1:
        xs, placement = [scan_x], "single"
    elif order == 2:
        xs, placement = [scan_x, -scan_x], "mirror_pair"
    else:
        big_delta = detector_offset(config)
        xs = [scan_x, -scan_x, -scan_x + big_delta, scan_x + 0.5 * big_delta]
        placement = "quad"
    return DetectorSet(
        positions=tuple((float(x), float(scan_y), rz) for x in xs),
        placement=placement,
    )


def detectors_at(points: Sequence[Point2], config: SetupConfig) -> DetectorSet:
    return DetectorSet(
        positions=tuple((float(x), float(y), config.detector_z) for x, y in points),
        placement="custom",
        free=(),
    )
