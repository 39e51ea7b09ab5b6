"""N-photon correlation signals.

The amplitude matrix ``M[i][mu] = U(r_i, R_mu)`` pairs every detector (row)
with every emitter (column). The N-fold coincidence signal is

    G^(N) = A * |perm(M)|^2,    A = N^(-N)

which reduces to ``|U|^2`` for one photon and to
``1/4 |U11 U22 + U12 U21|^2`` for two.
"""

import itertools
from dataclasses import dataclass
from typing import List, Sequence, Tuple, Union

import numpy as np

from superres.core.diffraction import (
    QuadratureSpec,
    diffracted_amplitude,
    diffracted_amplitude_by_aperture,
    farfield_amplitude,
)
from superres.core.errors import OracleGuardError, QuadratureConvergenceError
from superres.core.geometry import DetectorSet, EmitterArray, Point3, SetupConfig
from superres.core.permanent import (
    ORACLE_MAX_ORDER,
    path_amplitudes,
    permanent_naive,
    permanent_ryser,
)


Points = Union[DetectorSet, EmitterArray, Sequence[Point3]]


@dataclass(frozen=True)
class AmplitudeMatrix:
    """Square complex matrix, rows are detectors and columns emitters."""
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=complex)
        if values.ndim != 2 or values.shape[0] != values.shape[1] or values.shape[0] < 1:
            raise ValueError(f"amplitude matrix must be square and non-empty, got shape {values.shape}")
        if not np.all(np.isfinite(values)):
            raise ValueError("amplitude matrix has non-finite entries")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def order(self) -> int:
        return self.values.shape[0]

    def __getitem__(self, index):
        return self.values[index]


@dataclass(frozen=True)
class CorrelationValue:
    value: float
    order: int
    normalization: float

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("a correlation signal is never negative")

    def __float__(self) -> float:
        return self.value


@dataclass(frozen=True)
class PathFamilies:
    """Two-family split of the summed path amplitude.

    ``same`` collects the path terms where every photon leaves through the
    same aperture, ``separate`` those where the photons use both apertures.
    ``same + separate`` equals the permanent of the full matrix.
    """
    same: complex
    separate: complex
    same_terms: Tuple[complex, ...]
    separate_terms: Tuple[complex, ...]

    @staticmethod
    def _coherence(total: complex, terms: Sequence[complex]) -> float:
        incoherent = float(np.sqrt(sum(abs(t) ** 2 for t in terms)))
        return abs(total) / incoherent if incoherent > 0 else 0.0

    @property
    def same_coherence(self) -> float:
        """``|sum| / sqrt(sum |term|^2)``; above 1 the family adds constructively."""
        return self._coherence(self.same, self.same_terms)

    @property
    def separate_coherence(self) -> float:
        return self._coherence(self.separate, self.separate_terms)

    @property
    def constructive(self) -> str:
        """Name of the family whose terms reinforce each other more."""
        return "same" if self.same_coherence >= self.separate_coherence else "separate"

    @property
    def total(self) -> complex:
        return self.same + self.separate


def _positions(points: Points) -> Tuple[Point3, ...]:
    if isinstance(points, (DetectorSet, EmitterArray)):
        return points.positions
    return tuple(tuple(float(c) for c in p) for p in points)


def normalization(order: int) -> float:
    """``A = N^(-N)``: one ``1/sqrt(N)`` per field operator, 2N operators in all."""
    return float(order) ** (-order)


def amplitude_matrix(
    detectors: Points,
    emitters: Points,
    config: SetupConfig,
    quad: QuadratureSpec = QuadratureSpec(),
    far_field: bool = False,
) -> AmplitudeMatrix:
    """``M[i][mu] = U(r_i, R_mu)``.

    With ``far_field`` every column is the plane-wave Fraunhofer amplitude and
    the emitter positions only fix the matrix size.

    Raises:
        ValueError: if the detector and emitter counts differ.
        QuadratureConvergenceError: carrying the failing ``(i, mu)`` cell.
    """
    det = _positions(detectors)
    emi = _positions(emitters)
    if len(det) != len(emi):
        raise ValueError(f"need as many detectors as emitters, got {len(det)} and {len(emi)}")
    n = len(det)
    values = np.empty((n, n), dtype=complex)
    for i, r in enumerate(det):
        if far_field:
            values[i, :] = farfield_amplitude(r, config)
            continue
        for mu, big_r in enumerate(emi):
            try:
                values[i, mu] = diffracted_amplitude(r, big_r, config, quad)
            except QuadratureConvergenceError as e:
                raise e.at_cell(i, mu) from e
    return AmplitudeMatrix(values)


def aperture_matrices(
    detectors: Points,
    emitters: Points,
    config: SetupConfig,
    quad: QuadratureSpec = QuadratureSpec(),
) -> Tuple[AmplitudeMatrix, AmplitudeMatrix]:
    """Left- and right-aperture parts of ``amplitude_matrix``; they sum to it."""
    det = _positions(detectors)
    emi = _positions(emitters)
    if len(det) != len(emi):
        raise ValueError(f"need as many detectors as emitters, got {len(det)} and {len(emi)}")
    n = len(det)
    left = np.empty((n, n), dtype=complex)
    right = np.empty((n, n), dtype=complex)
    for i, r in enumerate(det):
        for mu, big_r in enumerate(emi):
            try:
                left[i, mu], right[i, mu] = diffracted_amplitude_by_aperture(r, big_r, config, quad)
            except QuadratureConvergenceError as e:
                raise e.at_cell(i, mu) from e
    return AmplitudeMatrix(left), AmplitudeMatrix(right)


def correlation_from_matrix(matrix: Union[AmplitudeMatrix, np.ndarray]) -> CorrelationValue:
    """``N^(-N) |perm(M)|^2`` of an already evaluated amplitude matrix."""
    m = matrix if isinstance(matrix, AmplitudeMatrix) else AmplitudeMatrix(matrix)
    a = normalization(m.order)
    perm = permanent_ryser(m.values)
    return CorrelationValue(value=a * (perm.real * perm.real + perm.imag * perm.imag), order=m.order, normalization=a)


def g1(
    detector: Point3,
    emitter: Point3,
    config: SetupConfig,
    quad: QuadratureSpec = QuadratureSpec(),
) -> CorrelationValue:
    """Intensity ``|U(r, R)|^2`` of one emitter at one detector."""
    return correlation_from_matrix(amplitude_matrix([detector], [emitter], config, quad))


def g2(
    detectors: Points,
    emitters: Points,
    config: SetupConfig,
    quad: QuadratureSpec = QuadratureSpec(),
) -> CorrelationValue:
    if len(_positions(detectors)) != 2 or len(_positions(emitters)) != 2:
        raise ValueError("g2 needs exactly two detectors and two emitters")
    return correlation_from_matrix(amplitude_matrix(detectors, emitters, config, quad))


def gN(
    detectors: Points,
    emitters: Points,
    config: SetupConfig,
    quad: QuadratureSpec = QuadratureSpec(),
    far_field: bool = False,
) -> CorrelationValue:
    return correlation_from_matrix(amplitude_matrix(detectors, emitters, config, quad, far_field=far_field))


def path_families(
    left: Union[AmplitudeMatrix, np.ndarray],
    right: Union[AmplitudeMatrix, np.ndarray],
) -> PathFamilies:
    """Split every path product into its aperture-assignment terms.

    Each amplitude is ``U = U_left + U_right``, so the product along a
    permutation expands into ``2^N`` terms, one per choice of aperture for
    each photon. Terms where all photons share one aperture form the ``same``
    family, the rest the ``separate`` family.
    """
    lm = left.values if isinstance(left, AmplitudeMatrix) else np.asarray(left, dtype=complex)
    rm = right.values if isinstance(right, AmplitudeMatrix) else np.asarray(right, dtype=complex)
    if lm.shape != rm.shape:
        raise ValueError("aperture matrices differ in shape")
    n = lm.shape[0]
    if n > ORACLE_MAX_ORDER:
        raise OracleGuardError(f"N={n} exceeds the path enumeration limit N<={ORACLE_MAX_ORDER}")
    parts = (lm, rm)
    same: List[complex] = []
    separate: List[complex] = []
    for sigma in itertools.permutations(range(n)):
        for choice in itertools.product((0, 1), repeat=n):
            term = complex(1.0)
            for mu in range(n):
                term *= parts[choice[mu]][sigma[mu], mu]
            (same if len(set(choice)) == 1 else separate).append(term)
    return PathFamilies(
        same=complex(sum(same)),
        separate=complex(sum(separate)),
        same_terms=tuple(same),
        separate_terms=tuple(separate),
    )


def path_decomposition(
    detectors: Points,
    emitters: Points,
    config: SetupConfig,
    quad: QuadratureSpec = QuadratureSpec(),
) -> Tuple[List[Tuple[Tuple[int, ...], complex]], PathFamilies]:
    """Permutation path products plus their aperture-family split."""
    left, right = aperture_matrices(detectors, emitters, config, quad)
    full = left.values + right.values
    return path_amplitudes(full), path_families(left, right)


__all__ = [
    "AmplitudeMatrix",
    "CorrelationValue",
    "PathFamilies",
    "amplitude_matrix",
    "aperture_matrices",
    "correlation_from_matrix",
    "g1",
    "g2",
    "gN",
    "normalization",
    "path_amplitudes",
    "permanent_naive",
    "permanent_ryser",
    "path_decomposition",
    "path_families",
]
