"""Majorization order on probability vectors and pure-state LOCC convertibility.

``x`` is majorized by ``y`` when every prefix sum of ``x`` sorted in
decreasing order is at most the corresponding prefix sum of ``y``, with the
totals equal. A bipartite pure state with Schmidt coefficients ``lambda_psi``
converts to one with ``lambda_phi`` under LOCC exactly when
``lambda_psi`` is majorized by ``lambda_phi``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import InvalidVector

COMPARE_TOL = 1e-12
TOTAL_TOL = 1e-9


@dataclass(frozen=True)
class MajorizationReport:
    majorized: bool
    first_violating_k: Optional[int]
    partial_sums_x: np.ndarray
    partial_sums_y: np.ndarray

    def __bool__(self):
        return self.majorized


def _vector(v, name):
    arr = np.array(getattr(v, "values", v), dtype=float).ravel()
    if arr.size == 0 or not np.all(np.isfinite(arr)):
        raise InvalidVector(f"{name} must be a nonempty finite vector")
    if np.any(arr < 0):
        raise InvalidVector(f"{name} has negative entries")
    return arr


def majorizes(x, y) -> MajorizationReport:
    """Test ``x`` majorized by ``y`` (``x`` is the more disordered one).

    Vectors of unequal length are zero-padded. ``first_violating_k`` is the
    1-based prefix length of the first failed comparison.
    """
    x = _vector(x, "x")
    y = _vector(y, "y")
    if abs(x.sum() - y.sum()) > TOTAL_TOL:
        raise InvalidVector(f"totals differ: {x.sum()!r} vs {y.sum()!r}")
    d = max(x.size, y.size)
    xs = np.zeros(d)
    ys = np.zeros(d)
    xs[: x.size] = np.sort(x)[::-1]
    ys[: y.size] = np.sort(y)[::-1]
    cx = np.cumsum(xs)
    cy = np.cumsum(ys)
    violating = np.flatnonzero(cx[:-1] > cy[:-1] + COMPARE_TOL)
    first = int(violating[0]) + 1 if violating.size else None
    if first is None and abs(cx[-1] - cy[-1]) > COMPARE_TOL:
        first = d
    cx.setflags(write=False)
    cy.setflags(write=False)
    return MajorizationReport(first is None, first, cx, cy)


def locc_transformable(lambda_psi, lambda_phi) -> bool:
    """Whether a pure state with spectrum ``lambda_psi`` converts to one with ``lambda_phi``."""
    return majorizes(lambda_psi, lambda_phi).majorized
