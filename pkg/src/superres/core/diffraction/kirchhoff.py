"""Near-field Kirchhoff diffraction of a point emitter through the aperture mask."""

import cmath
from typing import Sequence, Tuple

import numpy as np

from superres.core.diffraction.quadrature import QuadratureResult, QuadratureSpec, integrate_disc
from superres.core.errors import GeometryError
from superres.core.geometry import K, WAVELENGTH, SetupConfig


# refinement disc around the emitter projection, in units of the standoff
FOCUS_REACH = 4.0


def spherical_wave(separation: float) -> complex:
    """Outgoing scalar spherical wave ``exp(iks)/s``."""
    if not separation > 0:
        raise GeometryError("separation", "must be > 0")
    return cmath.exp(1j * K * separation) / separation


def detector_phase(detector: Sequence[float]) -> complex:
    """Paraxial detector phase ``exp(ik r_z + ik (r_x^2 + r_y^2) / 2 r_z)``.

    Unit modulus; it depends on the detector only and therefore cancels in
    every correlation modulus.
    """
    rx, ry, rz = detector
    return cmath.exp(1j * K * rz + 1j * K * (rx * rx + ry * ry) / (2.0 * rz))


def nearfield_kernel(
    rho_x: np.ndarray,
    rho_y: np.ndarray,
    emitter: Sequence[float],
    detector: Sequence[float],
) -> np.ndarray:
    """Vectorised near-field integrand on aperture-plane points ``(rho_x, rho_y, 0)``.

    ``exp(i k/r_z (rho . r)) * exp(iks)/s * (R_z/s) * (1 - 1/(iks))`` with
    ``s = |R - rho|``.
    """
    ex, ey, ez = emitter
    rx, ry, rz = detector
    dx = rho_x - ex
    dy = rho_y - ey
    s = np.sqrt(dx * dx + dy * dy + ez * ez)
    ks = K * s
    carrier = np.exp(1j * ((K / rz) * (rho_x * rx + rho_y * ry) + ks))
    return carrier / s * (ez / s) * (1.0 + 1j / ks)


def nearfield_integrand(
    aperture_point: Sequence[float],
    emitter: Sequence[float],
    detector: Sequence[float],
    config: SetupConfig,
) -> complex:
    """Integrand of the near-field Kirchhoff integral at one aperture point."""
    value = nearfield_kernel(
        np.asarray(aperture_point[0], dtype=float),
        np.asarray(aperture_point[1], dtype=float),
        emitter,
        detector,
    )
    return complex(value)


def _aperture_integral(
    side: int,
    emitter: Sequence[float],
    detector: Sequence[float],
    config: SetupConfig,
    quad: QuadratureSpec,
) -> QuadratureResult:
    # Disc frame of aperture ``side`` (-1 left, +1 right): rho_x = side*(c + u),
    # rho_y = flip*v with flip = -1 for detectors below the x axis. The frames
    # of mirrored apertures and mirrored detectors are mirror images of each
    # other, so mirrored setups evaluate bit-identical integrands.
    c = config.center_offset
    ex, ey, _ = emitter
    flip = -1.0 if detector[1] < 0 else 1.0

    def integrand(u: np.ndarray, v: np.ndarray) -> np.ndarray:
        return nearfield_kernel(side * (c + u), flip * v, emitter, detector)

    focus = (side * ex - c, flip * ey)
    reach = FOCUS_REACH * abs(emitter[2])
    return integrate_disc(integrand, config.aperture_radius, quad, focus=focus, focus_reach=reach)


def _prefactor(detector: Sequence[float], apply_phase: bool) -> complex:
    prefactor = complex(-1.0 / (detector[2] * WAVELENGTH))
    if apply_phase:
        prefactor *= detector_phase(detector)
    return prefactor


def diffracted_amplitude_by_aperture(
    detector: Sequence[float],
    emitter: Sequence[float],
    config: SetupConfig,
    quad: QuadratureSpec = QuadratureSpec(),
    apply_phase: bool = True,
) -> Tuple[complex, complex]:
    """Contributions of the left and right aperture to ``diffracted_amplitude``."""
    prefactor = _prefactor(detector, apply_phase)
    left = _aperture_integral(-1, emitter, detector, config, quad)
    right = _aperture_integral(+1, emitter, detector, config, quad)
    return prefactor * left.value, prefactor * right.value


def diffracted_amplitude(
    detector: Sequence[float],
    emitter: Sequence[float],
    config: SetupConfig,
    quad: QuadratureSpec = QuadratureSpec(),
    apply_phase: bool = True,
) -> complex:
    """Field ``U(r, R)`` at detector ``r`` from a unit point emitter at ``R``.

    ``-(Phi / (r_z lambda))`` times the sum over both apertures of the
    near-field Kirchhoff integral, each integrated adaptively to
    ``quad.tolerance``.

    Raises:
        QuadratureConvergenceError: if an aperture integral does not converge.
    """
    prefactor = _prefactor(detector, apply_phase)
    left = _aperture_integral(-1, emitter, detector, config, quad)
    right = _aperture_integral(+1, emitter, detector, config, quad)
    return prefactor * (left.value + right.value)


def convergence_report(
    detector: Sequence[float],
    emitter: Sequence[float],
    config: SetupConfig,
    quad: QuadratureSpec = QuadratureSpec(),
) -> dict:
    """Per-aperture quadrature diagnostics, as recorded in run manifests.

    ``node_doubling_change`` is the relative change of ``|U|`` when the
    per-panel rule order is doubled.
    """
    report = {}
    total = 0j
    for name, side in (("left", -1), ("right", +1)):
        result = _aperture_integral(side, emitter, detector, config, quad)
        estimate, previous = result.value, result.previous
        total += estimate
        report[name] = {
            "panels": result.panels,
            "depth": result.depth,
            "nodes": result.nodes,
            "relative_change": abs(estimate - previous) / max(abs(estimate), 1e-300),
        }
    doubled = diffracted_amplitude(detector, emitter, config, quad.doubled(), apply_phase=False)
    single = _prefactor(detector, apply_phase=False) * total
    report["node_doubling_change"] = abs(abs(doubled) - abs(single)) / max(abs(single), 1e-300)
    return report
