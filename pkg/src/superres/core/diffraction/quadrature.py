"""Adaptive Gauss-Legendre cubature over a disc.

The disc is parameterised in polar coordinates about its centre and tiled by
panels ``[r0, r1] x [t0, t1]``; each panel carries an ``order x order`` tensor
Gauss-Legendre rule. A panel's error is estimated by comparing its own rule
with the sum of the rules on its four children (node-doubling comparison).
Panels whose disagreement is too large are replaced by their children until
the summed disagreement falls below ``tolerance`` times the absolute mass of
the integral.

Everything is evaluated panel-batch-wise with numpy and reduced along fixed
trees, so the result is bit-identical for identical inputs.
"""

import functools
import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np

from superres.core.errors import QuadratureConvergenceError
from superres.utils.summation import pairwise_sum


LocalIntegrand = Callable[[np.ndarray, np.ndarray], np.ndarray]

# base tiling of the disc: radial x angular panels
_BASE_RADIAL = 2
_BASE_ANGULAR = 8


@dataclass(frozen=True)
class QuadratureSpec:
    """Controls for the adaptive aperture cubature."""
    order: int = 8
    refine_levels: int = 2
    tolerance: float = 1e-6
    max_depth: int = 12

    def __post_init__(self):
        if self.order < 4:
            raise ValueError("quadrature order must be >= 4")
        if not 0.0 < self.tolerance < 1.0:
            raise ValueError("quadrature tolerance must lie in (0, 1)")
        if self.refine_levels < 0:
            raise ValueError("refine_levels must be >= 0")
        if self.max_depth < 1:
            raise ValueError("max_depth must be >= 1")

    def doubled(self) -> "QuadratureSpec":
        return QuadratureSpec(
            order=2 * self.order,
            refine_levels=self.refine_levels,
            tolerance=self.tolerance,
            max_depth=self.max_depth,
        )


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    previous: complex
    panels: int
    depth: int
    nodes: int


@functools.lru_cache(maxsize=32)
def gauss_legendre(order: int) -> Tuple[np.ndarray, np.ndarray]:
    nodes, weights = np.polynomial.legendre.leggauss(order)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


class _Panels:
    """Struct-of-arrays panel list; row order is the summation order."""

    def __init__(self, r0, r1, t0, t1):
        self.r0 = np.asarray(r0, dtype=float)
        self.r1 = np.asarray(r1, dtype=float)
        self.t0 = np.asarray(t0, dtype=float)
        self.t1 = np.asarray(t1, dtype=float)

    def __len__(self) -> int:
        return self.r0.size

    @classmethod
    def base(cls, radius: float) -> "_Panels":
        r_edges = np.linspace(0.0, radius, _BASE_RADIAL + 1)
        t_edges = np.arange(_BASE_ANGULAR + 1) * (2.0 * math.pi / _BASE_ANGULAR)
        ri, ti = np.meshgrid(np.arange(_BASE_RADIAL), np.arange(_BASE_ANGULAR), indexing="ij")
        ri, ti = ri.ravel(), ti.ravel()
        return cls(r_edges[ri], r_edges[ri + 1], t_edges[ti], t_edges[ti + 1])

    def children(self) -> "_Panels":
        """Four children per panel, grouped by parent, as a flat panel list."""
        rm = 0.5 * (self.r0 + self.r1)
        tm = 0.5 * (self.t0 + self.t1)
        r0 = np.stack([self.r0, self.r0, rm, rm], axis=1).ravel()
        r1 = np.stack([rm, rm, self.r1, self.r1], axis=1).ravel()
        t0 = np.stack([self.t0, tm, self.t0, tm], axis=1).ravel()
        t1 = np.stack([tm, self.t1, tm, self.t1], axis=1).ravel()
        return _Panels(r0, r1, t0, t1)

    def select(self, mask: np.ndarray) -> "_Panels":
        return _Panels(self.r0[mask], self.r1[mask], self.t0[mask], self.t1[mask])

    def near(self, point: Tuple[float, float], reach: float) -> np.ndarray:
        """Panels whose footprint comes within ``reach`` of ``point``."""
        rc = 0.5 * (self.r0 + self.r1)
        tc = 0.5 * (self.t0 + self.t1)
        half_size = 0.5 * np.hypot(self.r1 - self.r0, self.r1 * (self.t1 - self.t0))
        dist = np.hypot(rc * np.cos(tc) - point[0], rc * np.sin(tc) - point[1])
        return dist - half_size <= reach


def _split(panels: _Panels, mask: np.ndarray) -> _Panels:
    """Replace the masked panels by their children, keeping list order."""
    kids = panels.children()
    keep = np.zeros((len(panels), 4), dtype=bool)
    keep[:, 0] = True
    keep[mask, :] = True
    flat = keep.ravel()

    def merge(parent, child):
        cand = child.reshape(-1, 4).copy()
        cand[~mask, 0] = parent[~mask]
        return cand.ravel()[flat]

    return _Panels(
        merge(panels.r0, kids.r0),
        merge(panels.r1, kids.r1),
        merge(panels.t0, kids.t0),
        merge(panels.t1, kids.t1),
    )


def _panel_sums(panels: _Panels, integrand: LocalIntegrand, order: int) -> np.ndarray:
    x, w = gauss_legendre(order)
    rh = 0.5 * (panels.r1 - panels.r0)
    th = 0.5 * (panels.t1 - panels.t0)
    r = (0.5 * (panels.r0 + panels.r1))[:, None, None] + rh[:, None, None] * x[None, :, None]
    t = (0.5 * (panels.t0 + panels.t1))[:, None, None] + th[:, None, None] * x[None, None, :]
    t = np.broadcast_to(t, r.shape[:1] + (order, order))
    r = np.broadcast_to(r, t.shape)
    weights = (rh * th)[:, None, None] * (w[:, None] * w[None, :])[None, :, :] * r
    values = integrand(r * np.cos(t), r * np.sin(t))
    return np.sum((weights * values).reshape(len(panels), -1), axis=1)


def integrate_disc(
    integrand: LocalIntegrand,
    radius: float,
    quad: QuadratureSpec,
    focus: Optional[Tuple[float, float]] = None,
    focus_reach: float = 0.0,
) -> QuadratureResult:
    """Integrate ``integrand(u, v)`` over the disc ``u^2 + v^2 < radius^2``.

    ``focus`` is a point (in the disc frame) where the integrand is expected
    to peak; panels within ``focus_reach`` of it are pre-split
    ``quad.refine_levels`` times before adaptive refinement starts.

    Raises:
        QuadratureConvergenceError: if ``quad.max_depth`` refinement rounds do
            not bring the estimated error below tolerance.
    """
    panels = _Panels.base(radius)
    if focus is not None:
        for _ in range(quad.refine_levels):
            panels = _split(panels, panels.near(focus, focus_reach))

    coarse = _panel_sums(panels, integrand, quad.order)
    fine_parts = _panel_sums(panels.children(), integrand, quad.order).reshape(-1, 4)
    fine = fine_parts.sum(axis=1)

    for depth in range(quad.max_depth + 1):
        err = np.abs(fine - coarse)
        estimate = complex(pairwise_sum(fine))
        previous = complex(pairwise_sum(coarse))
        scale = float(pairwise_sum(np.abs(fine)))
        total_err = float(pairwise_sum(err))
        if total_err <= quad.tolerance * scale:
            return QuadratureResult(
                value=estimate,
                previous=previous,
                panels=len(panels),
                depth=depth,
                nodes=5 * len(panels) * quad.order ** 2,
            )
        if depth == quad.max_depth:
            raise QuadratureConvergenceError(previous, estimate, quad.max_depth)

        refine = err > quad.tolerance * scale / len(panels)
        refined = panels.select(refine).children()
        grand = _panel_sums(refined.children(), integrand, quad.order).reshape(-1, 4)

        keep = np.zeros((len(panels), 4), dtype=bool)
        keep[:, 0] = True
        keep[refine, :] = True
        flat = keep.ravel()

        new_coarse = fine_parts.copy()
        new_coarse[~refine, 0] = coarse[~refine]
        new_fine = np.zeros_like(fine_parts)
        new_fine[~refine, 0] = fine[~refine]
        new_fine[refine, :] = grand.sum(axis=1).reshape(-1, 4)
        new_fine_parts = np.zeros((len(panels), 4, 4), dtype=fine_parts.dtype)
        new_fine_parts[~refine, 0, :] = fine_parts[~refine]
        new_fine_parts[refine, :, :] = grand.reshape(-1, 4, 4)

        panels = _split(panels, refine)
        coarse = new_coarse.ravel()[flat]
        fine = new_fine.ravel()[flat]
        fine_parts = new_fine_parts.reshape(-1, 4)[flat]

    raise AssertionError("unreachable")
