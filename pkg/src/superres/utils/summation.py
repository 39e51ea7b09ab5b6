"""Reproducible summation helpers.

``pairwise_sum`` reduces an array along a fixed binary tree, so the result
depends only on the values and their order, never on how the work that
produced them was scheduled. ``CompensatedSum`` is a Kahan accumulator for
long alternating sums where nearly equal terms cancel.
"""

from typing import Iterable, Union

import numpy as np


Number = Union[float, complex]


def pairwise_sum(values: np.ndarray) -> Number:
    """Sum a 1-D array along a fixed binary tree (zero padded to a power of two)."""
    v = np.asarray(values).ravel()
    if v.size == 0:
        return v.dtype.type(0)
    size = 1
    while size < v.size:
        size *= 2
    if size != v.size:
        v = np.concatenate([v, np.zeros(size - v.size, dtype=v.dtype)])
    while v.size > 1:
        v = v[0::2] + v[1::2]
    return v[0]


class CompensatedSum:
    """Kahan-compensated running sum, valid for real and complex terms."""

    def __init__(self, start: Number = 0.0):
        self.total = start
        self._carry = 0.0 * start

    def add(self, term: Number) -> None:
        y = term - self._carry
        t = self.total + y
        self._carry = (t - self.total) - y
        self.total = t

    def __iadd__(self, term: Number) -> "CompensatedSum":
        self.add(term)
        return self

    @property
    def value(self) -> Number:
        return self.total


def compensated_sum(terms: Iterable[Number]) -> Number:
    acc = CompensatedSum()
    for term in terms:
        acc.add(term)
    return acc.value
