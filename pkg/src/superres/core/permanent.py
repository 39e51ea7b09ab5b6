"""Matrix permanents: the summed N-photon path amplitude."""

import itertools
from typing import List, Tuple

import numpy as np

from superres.core.errors import OracleGuardError
from superres.utils.summation import CompensatedSum


# the N! oracles refuse anything larger
ORACLE_MAX_ORDER = 8

Path = Tuple[int, ...]


def _square(matrix) -> np.ndarray:
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise ValueError(f"expected a non-empty square matrix, got shape {m.shape}")
    return m


def _guard(m: np.ndarray) -> None:
    if m.shape[0] > ORACLE_MAX_ORDER:
        raise OracleGuardError(
            f"N={m.shape[0]} exceeds the factorial oracle limit N<={ORACLE_MAX_ORDER}"
        )


def path_amplitudes(matrix) -> List[Tuple[Path, complex]]:
    """Every permutation ``sigma`` with its path product ``prod_mu M[sigma(mu)][mu]``.

    ``sigma(mu)`` is the detector that receives the photon of emitter ``mu``.
    """
    m = _square(matrix)
    _guard(m)
    n = m.shape[0]
    cols = np.arange(n)
    return [
        (sigma, complex(np.prod(m[list(sigma), cols])))
        for sigma in itertools.permutations(range(n))
    ]


def permanent_naive(matrix) -> complex:
    """Permanent by direct summation over all N! permutations (oracle only)."""
    acc = CompensatedSum(0j)
    for _, product in path_amplitudes(matrix):
        acc.add(product)
    return complex(acc.value)


def permanent_ryser(matrix) -> complex:
    """Permanent by Ryser's inclusion-exclusion formula, O(2^N N).

    ``perm(M) = (-1)^N sum_S (-1)^|S| prod_i sum_{j in S} M[i][j]`` with the
    column subsets ``S`` visited in Gray-code order, so each step adds or
    removes exactly one column from the running row sums. The alternating
    subset terms are accumulated with compensated summation.
    """
    m = _square(matrix)
    n = m.shape[0]
    row_sums = np.zeros(n, dtype=complex)
    acc = CompensatedSum(0j)
    in_subset = np.zeros(n, dtype=bool)
    size = 0
    for step in range(1, 2 ** n):
        # Gray code: flip the column of the lowest set bit of ``step``
        col = (step & -step).bit_length() - 1
        if in_subset[col]:
            row_sums -= m[:, col]
            size -= 1
        else:
            row_sums += m[:, col]
            size += 1
        in_subset[col] = not in_subset[col]
        term = complex(np.prod(row_sums))
        acc.add(-term if size % 2 else term)
    result = complex(acc.value)
    return -result if n % 2 else result


def permanent(matrix) -> complex:
    return permanent_ryser(matrix)
