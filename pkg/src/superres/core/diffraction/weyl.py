"""Angular-spectrum (Weyl) analysis of the emitter field at the aperture plane.

The spherical wave is expanded into plane waves over all transverse
wavenumbers ``k_par``. The azimuthal part of the expansion is done in closed
form (``J0``), leaving one radial integral per branch:

    propagating (k_par = k sin t):   i * int k sin t  J0(k l sin t)  exp( i k eps cos t)  dt
    evanescent  (k_par = k cosh u):      int k cosh u J0(k l cosh u) exp(-k eps sinh u) du

where ``l`` is the lateral and ``eps`` the axial source offset. Both
substitutions remove the ``1/k_z`` branch-point singularity at ``k_par = k``.
"""

import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np
from scipy.special import j0

from superres.core.diffraction.kirchhoff import spherical_wave
from superres.core.diffraction.quadrature import gauss_legendre
from superres.core.geometry import K, WAVELENGTH


# widest Gauss-Legendre panel in the substitution variable
_PANEL_WIDTH = 0.25
# spectral weight below exp(-_DECAY_CUTOFF) is dropped by evanescent_fraction
_DECAY_CUTOFF = 40.0


@dataclass(frozen=True)
class WavevectorComponent:
    kx: float
    ky: float
    kz: complex

    @classmethod
    def from_transverse(cls, kx: float, ky: float) -> "WavevectorComponent":
        return cls(kx=kx, ky=ky, kz=complex(weyl_kz(kx, ky)))

    @property
    def evanescent(self) -> bool:
        return self.kx * self.kx + self.ky * self.ky > K * K


@dataclass(frozen=True)
class WeylReconstruction:
    value: complex
    propagating: complex
    evanescent: complex
    exact: complex
    k_max: float
    grid_order: int

    @property
    def relative_error(self) -> float:
        return abs(self.value - self.exact) / abs(self.exact)


def weyl_kz(kx, ky, k: float = K):
    """Axial wavenumber on the physical branch.

    ``sqrt(k^2 - k_par^2)`` for ``k_par <= k``, ``i sqrt(k_par^2 - k^2)``
    otherwise, so evanescent modes decay away from the source.
    """
    kx = np.asarray(kx, dtype=float)
    ky = np.asarray(ky, dtype=float)
    gap = k * k - (kx * kx + ky * ky)
    root = np.sqrt(np.abs(gap))
    kz = np.where(gap >= 0.0, root + 0j, 1j * root)
    return complex(kz) if kz.ndim == 0 else kz


def _composite_rule(upper: float, order: int, width: float = _PANEL_WIDTH) -> Tuple[np.ndarray, np.ndarray]:
    """Composite Gauss-Legendre nodes and weights on ``[0, upper]``, panels at most ``width`` wide."""
    if upper <= 0.0:
        return np.zeros(0), np.zeros(0)
    x, w = gauss_legendre(order)
    panels = max(1, math.ceil(upper / width))
    edges = np.linspace(0.0, upper, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def _offsets(emitter: Sequence[float], aperture_point: Sequence[float]) -> Tuple[float, float]:
    lateral = math.hypot(emitter[0] - aperture_point[0], emitter[1] - aperture_point[1])
    axial = abs((aperture_point[2] if len(aperture_point) > 2 else 0.0) - emitter[2])
    return lateral, axial


def _propagating_kernel(t: np.ndarray, lateral: float, axial: float) -> np.ndarray:
    return 1j * K * np.sin(t) * j0(K * lateral * np.sin(t)) * np.exp(1j * K * axial * np.cos(t))


def _evanescent_kernel(u: np.ndarray, lateral: float, axial: float) -> np.ndarray:
    return K * np.cosh(u) * j0(K * lateral * np.cosh(u)) * np.exp(-K * axial * np.sinh(u))


def _propagating_weight(t: np.ndarray, lateral: float) -> np.ndarray:
    return K * K * np.sin(t) * np.cos(t) * j0(K * lateral * np.sin(t)) ** 2


def _evanescent_weight(u: np.ndarray, lateral: float, axial: float) -> np.ndarray:
    return K * K * np.cosh(u) * np.sinh(u) * j0(K * lateral * np.cosh(u)) ** 2 * np.exp(-2.0 * K * axial * np.sinh(u))


def _branch_limits(k_max: float) -> Tuple[float, float]:
    if k_max <= 1.0:
        return math.asin(k_max), 0.0
    return 0.5 * math.pi, math.acosh(k_max)


def weyl_reconstruct(
    emitter: Sequence[float],
    aperture_point: Sequence[float],
    k_max: float = 8.0,
    grid_order: int = 24,
) -> WeylReconstruction:
    """Rebuild ``exp(iks)/s`` from its plane-wave spectrum truncated at ``k_par <= k_max * k``.

    ``k_max`` is in units of ``k``; values at or below 1 keep only part of the
    propagating spectrum.
    """
    lateral, axial = _offsets(emitter, aperture_point)
    if not math.hypot(lateral, axial) > 0.0:
        raise ValueError("emitter and aperture point coincide")
    if not k_max > 0.0:
        raise ValueError("k_max must be > 0")

    t_max, u_max = _branch_limits(k_max)
    t, wt = _composite_rule(t_max, grid_order)
    u, wu = _composite_rule(u_max, grid_order)
    propagating = complex(np.sum(wt * _propagating_kernel(t, lateral, axial)))
    evanescent = complex(np.sum(wu * _evanescent_kernel(u, lateral, axial)))
    return WeylReconstruction(
        value=propagating + evanescent,
        propagating=propagating,
        evanescent=evanescent,
        exact=spherical_wave(math.hypot(lateral, axial)),
        k_max=k_max,
        grid_order=grid_order,
    )


def evanescent_fraction(standoff: float, lateral_offset: float = 0.0, grid_order: int = 24) -> float:
    """Share of the squared-modulus Weyl spectral weight carried by evanescent modes.

    The weight is taken on the spectrum of the normal derivative of the
    emitter field, ``exp(i k_z eps)``, the quantity the Kirchhoff integrand
    sees. Unlike the field spectrum it has no ``1/k_z`` singularity, so its
    squared modulus is integrable across ``k_par = k``. Each radial mode is
    weighted by ``k_par |J0(k_par l)|^2 |exp(i k_z eps)|^2``. On axis the
    fraction is exactly ``1 / (1 + 2 (k eps)^2)``.
    """
    if not standoff > 0.0:
        raise ValueError("standoff must be > 0")
    lateral = abs(lateral_offset)
    u_cut = math.asinh(_DECAY_CUTOFF / (2.0 * K * standoff))
    t_width, u_width = _PANEL_WIDTH, _PANEL_WIDTH
    if lateral > 0.0:
        # one J0^2 half-period per panel at the fastest phase rate on each branch
        t_width = min(t_width, math.pi / (K * lateral))
        u_width = min(u_width, 2.0 * math.pi * standoff / (lateral * _DECAY_CUTOFF))
    t, wt = _composite_rule(0.5 * math.pi, grid_order, t_width)
    u, wu = _composite_rule(u_cut, grid_order, u_width)
    propagating = float(np.sum(wt * _propagating_weight(t, lateral)))
    evanescent = float(np.sum(wu * _evanescent_weight(u, lateral, standoff)))
    return evanescent / (evanescent + propagating)


def standing_wave(rho_x, kx_multiple: float, standoff: float):
    """Single evanescent transverse component ``k_x = p k`` seen at the aperture.

    ``[exp(-i p k rho_x) + exp(i p k rho_x)] * exp(-|k_z| eps)``: a standing
    wave of period ``lambda / p`` whose strength decays with the standoff.
    """
    if not kx_multiple > 1.0:
        raise ValueError("an evanescent component needs k_x > k")
    kappa = abs(weyl_kz(kx_multiple * K, 0.0))
    rho_x = np.asarray(rho_x, dtype=float)
    phase = kx_multiple * K * rho_x
    value = (np.exp(-1j * phase) + np.exp(1j * phase)) * math.exp(-kappa * standoff)
    return complex(value) if value.ndim == 0 else value


def standing_wave_period(kx_multiple: float) -> float:
    return WAVELENGTH / kx_multiple
