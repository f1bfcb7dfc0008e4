"""Scalar summaries of amplitudes, modes and time traces used to check figure data."""
from __future__ import annotations

import numpy as np


def band_mass(values, p_nodes, q_nodes, lo, hi, power=1):
    """Sum of ``|values|**power`` over grid points with ``lo <= p + q < hi``."""
    s = np.add.outer(p_nodes, q_nodes)
    mask = (s >= lo) & (s < hi)
    return float(np.sum(np.abs(values[mask]) ** power))


def antidiagonal_fraction(values, p_nodes, q_nodes, half_width=0.5):
    """Fraction of ``sum |values|**2`` within ``|p + q| < half_width``."""
    total = float(np.sum(np.abs(values) ** 2))
    s = np.add.outer(p_nodes, q_nodes)
    return float(np.sum(np.abs(values[np.abs(s) < half_width]) ** 2)) / total


def fwhm(x, y):
    """Full width at half maximum of ``|y|`` sampled on increasing ``x``.

    Measured between the outermost half-maximum crossings, linearly
    interpolated.
    """
    x = np.asarray(x, dtype=float)
    a = np.abs(np.asarray(y))
    half = 0.5 * a.max()
    above = np.flatnonzero(a >= half)
    i, j = above[0], above[-1]

    def cross(k0, k1):
        return x[k0] + (half - a[k0]) * (x[k1] - x[k0]) / (a[k1] - a[k0])

    left = cross(i - 1, i) if i > 0 else x[0]
    right = cross(j, j + 1) if j + 1 < x.size else x[-1]
    return float(right - left)


def zero_crossings(x, y):
    """Linearly interpolated abscissae where the real sequence ``y`` changes sign."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    k = np.flatnonzero(np.signbit(y[:-1]) != np.signbit(y[1:]))
    return x[k] - y[k] * (x[k + 1] - x[k]) / (y[k + 1] - y[k])


def crossing_frequency(t, y):
    """Angular frequency from the mean spacing of zero crossings (half periods)."""
    z = zero_crossings(t, np.asarray(y) - np.mean(y))
    if z.size < 2:
        raise ValueError("need at least two zero crossings")
    return float(np.pi * (z.size - 1) / (z[-1] - z[0]))


def trapezoid_inner(x, f, g):
    """``int conj(f) g dx`` by the trapezoid rule."""
    return complex(np.trapezoid(np.conj(f) * g, x))
