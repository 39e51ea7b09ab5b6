"""Far-zone reference: the mask under normally incident plane-wave illumination."""

import math
from typing import Sequence

import numpy as np
from scipy.special import j1

from superres.core.diffraction.kirchhoff import detector_phase
from superres.core.geometry import K, WAVELENGTH, SetupConfig


def disc_transform(q, radius: float):
    """Fourier transform of a disc of radius ``a`` at radial spatial frequency ``q``.

    ``2 pi a^2 J1(q a) / (q a)``, with the limit ``pi a^2`` at ``q = 0``.
    """
    qa = np.abs(np.asarray(q, dtype=float)) * radius
    safe = np.where(qa > 0.0, qa, 1.0)
    airy = np.where(qa > 0.0, 2.0 * j1(safe) / safe, 1.0)
    result = math.pi * radius * radius * airy
    return float(result) if result.ndim == 0 else result


def farfield_amplitude(
    detector: Sequence[float],
    config: SetupConfig,
    apply_phase: bool = True,
) -> complex:
    """Fraunhofer field of the two-disc mask at the detector.

    Airy kernel of one disc times the phase sum over both centres,
    ``2 cos(q_x (a + d/2))``, at ``q = (k r_x / r_z, k r_y / r_z)``.
    """
    rx, ry, rz = detector
    qx = K * rx / rz
    qy = K * ry / rz
    envelope = disc_transform(math.hypot(qx, qy), config.aperture_radius)
    pair = 2.0 * math.cos(qx * config.center_offset)
    value = complex(-envelope * pair / (rz * WAVELENGTH))
    if apply_phase:
        value *= detector_phase(detector)
    return value
