r"""Hermite polynomials, Hermite functions and Gauss-Hermite quadrature.

Conventions
-----------
``H_n`` are the physicists' Hermite polynomials, orthogonal under the weight
``exp(-x**2)``.  The Hermite functions

.. math:: \varphi_n(x) = (\sqrt{\pi}\, 2^n n!)^{-1/2} e^{-x^2/2} H_n(x)

form an orthonormal basis of :math:`L^2(\mathbb{R})`.  They are evaluated by
the normalized three-term recurrence, which never forms ``H_n`` or ``2^n n!``
explicitly and so stays finite for orders well beyond 150.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.special import gammaln

MAX_RULE_ORDER = 512
DEFAULT_RULE_ORDER = 64

_PI_M14 = np.pi ** -0.25


def hermite_poly(n: int, x):
    """Physicists' Hermite polynomial ``H_n(x)`` by upward recurrence."""
    if n < 0:
        raise ValueError(f"order must be nonnegative, got {n}")
    x = np.asarray(x, dtype=float)
    h_prev = np.ones_like(x)
    if n == 0:
        return h_prev if h_prev.ndim else float(h_prev)
    h = 2.0 * x
    for k in range(1, n):
        h_prev, h = h, 2.0 * x * h - 2.0 * k * h_prev
    return h if h.ndim else float(h)


def hermite_log_norm(n):
    """``log((sqrt(pi) 2**n n!) ** -0.5)``, finite for any order."""
    n = np.asarray(n, dtype=float)
    return -0.5 * (0.5 * np.log(np.pi) + n * np.log(2.0) + gammaln(n + 1.0))


def hermite_functions(nmax: int, x) -> np.ndarray:
    """All Hermite functions ``phi_0 .. phi_nmax`` at the points ``x``.

    Returns an array of shape ``(nmax + 1,) + np.shape(x)``.
    """
    if nmax < 0:
        raise ValueError(f"order must be nonnegative, got {nmax}")
    x = np.asarray(x, dtype=float)
    out = np.empty((nmax + 1,) + x.shape)
    out[0] = _PI_M14 * np.exp(-0.5 * x * x)
    if nmax >= 1:
        out[1] = np.sqrt(2.0) * x * out[0]
    for k in range(1, nmax):
        out[k + 1] = np.sqrt(2.0 / (k + 1)) * x * out[k] - np.sqrt(k / (k + 1)) * out[k - 1]
    return out


def hermite_orthonormal(n: int, x):
    """Hermite function ``phi_n(x)``."""
    if n < 0:
        raise ValueError(f"order must be nonnegative, got {n}")
    val = hermite_functions(n, x)[n]
    return val if val.ndim else float(val)


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Hermite rule for ``int f(x) exp(-x**2) dx``.

    ``scaled_weights`` are ``weights * exp(nodes**2)``, i.e. the weights of
    the same rule applied to plain ``int g(x) dx``.  They stay representable
    at high order, where the outermost ``weights`` underflow.
    """

    nodes: np.ndarray
    weights: np.ndarray
    scaled_weights: np.ndarray

    @property
    def order(self) -> int:
        return self.nodes.size

    def integrate(self, values) -> float:
        """Apply the rule to samples of ``f`` at the nodes."""
        return np.tensordot(self.weights, values, axes=(0, 0))


def _newton_polish(x: np.ndarray, order: int, steps: int = 3) -> np.ndarray:
    # phi_N / phi_N' = p_N / (sqrt(2N) p_{N-1}) at a root; the Gaussian factor cancels.
    for _ in range(steps):
        phi = hermite_functions(order, x)
        x = x - phi[order] / (np.sqrt(2.0 * order) * phi[order - 1])
    return x


def gauss_hermite_rule(order: int) -> QuadratureRule:
    """``order``-point Gauss-Hermite rule.

    Nodes come from the eigenvalues of the symmetric Jacobi matrix, polished
    by Newton steps on the orthonormal recurrence.  Weights use the
    Christoffel form ``w_i = exp(-x_i**2) / (N phi_{N-1}(x_i)**2)``.
    """
    if not 1 <= order <= MAX_RULE_ORDER:
        raise ValueError(f"rule order must be in [1, {MAX_RULE_ORDER}], got {order}")
    if order == 1:
        nodes = np.zeros(1)
    else:
        off = np.sqrt(np.arange(1, order) / 2.0)
        nodes = eigh_tridiagonal(np.zeros(order), off, eigvals_only=True)
        nodes = _newton_polish(np.sort(nodes), order)
        nodes = 0.5 * (nodes - nodes[::-1])
        if order % 2:
            nodes[order // 2] = 0.0
    phi_last = hermite_functions(order - 1, nodes)[order - 1]
    log_scaled = -np.log(order) - 2.0 * np.log(np.abs(phi_last))
    log_scaled = 0.5 * (log_scaled + log_scaled[::-1])
    scaled = np.exp(log_scaled)
    weights = np.exp(log_scaled - nodes * nodes)
    for arr in (nodes, weights, scaled):
        arr.setflags(write=False)
    return QuadratureRule(nodes=nodes, weights=weights, scaled_weights=scaled)


def hermite_gaussian_ft(n: int, alpha: float, y):
    r"""Closed form of :math:`\int e^{-(x-y)^2} H_n(\alpha x)\,dx`.

    Equal to ``sqrt(pi) (1 - alpha**2)**(n/2) H_n(alpha y / sqrt(1 - alpha**2))``.
    Only the real branch ``0 < alpha < 1`` is supported.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    c = np.sqrt(1.0 - alpha * alpha)
    return np.sqrt(np.pi) * c**n * hermite_poly(n, alpha * np.asarray(y, dtype=float) / c)
