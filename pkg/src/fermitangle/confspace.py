r"""Schmidt modes in configuration space.

The momentum-space Hermite functions are carried to position space together
with the free evolution ``exp(-i p**2 t / 2m)``. In the variables
``x~ = sigma x / sqrt(2)``, ``sigma~ = sigma / p_a0`` and ``t~`` each
``phi_n`` becomes a travelling, spreading packet

.. math::
   \tilde O_n(\tilde x, \tilde t) = i^n (\sqrt\pi 2^n n!)^{-1/2}
   \frac{e^{-i n \arctan(\tilde\sigma\tilde t) + i(\tilde x - \tilde t/2)/\tilde\sigma}}
        {\sqrt{1 + i\tilde\sigma\tilde t}}
   e^{-(\tilde x - \tilde t)^2 / (2(1 + i\tilde\sigma\tilde t))}
   H_n\!\left[\frac{\tilde t - \tilde x}{\sqrt{1 + (\tilde\sigma\tilde t)^2}}\right].

The map is unitary, so Schmidt coefficients are unchanged and position-space
modes are ``sum_n A_mn O~_n``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .schmidt import SchmidtDecomposition
from .specfun import QuadratureRule, gauss_hermite_rule, hermite_functions


@dataclass(frozen=True)
class ConfigFrame:
    sigma_tilde: float
    t_tilde: float
    x_tilde: float = 0.0

    def __post_init__(self):
        if not self.sigma_tilde > 0:
            raise ValueError("sigma_tilde must be positive")

    @property
    def spread(self) -> float:
        """``1 + (sigma~ t~)**2``, the squared packet width relative to ``t~ = 0``."""
        return 1.0 + (self.sigma_tilde * self.t_tilde) ** 2


def config_orthonormal_all(nmax: int, x_tilde, t_tilde: float, sigma_tilde: float) -> np.ndarray:
    """``O~_0 .. O~_nmax`` at ``x_tilde``; shape ``(nmax + 1,) + shape(x_tilde)``.

    ``H_n`` and its normalizer are combined into the Hermite function of the
    scaled argument, and the Gaussian modulus it carries is split off the
    complex Gaussian, leaving a pure chirp. Same value as the closed form,
    without overflow at high order.
    """
    if not sigma_tilde > 0:
        raise ValueError("sigma_tilde must be positive")
    x = np.asarray(x_tilde, dtype=float)
    tau = sigma_tilde * t_tilde
    spread = 1.0 + tau * tau
    y = x - t_tilde
    z = -y / np.sqrt(spread)
    phi = hermite_functions(nmax, z)
    n = np.arange(nmax + 1).reshape((-1,) + (1,) * x.ndim)
    ladder = (1j * np.exp(-1j * np.arctan(tau))) ** n
    carrier = np.exp(1j * ((x - 0.5 * t_tilde) / sigma_tilde + 0.5 * tau * y * y / spread))
    return ladder * (carrier / np.sqrt(1.0 + 1j * tau)) * phi


def config_orthonormal(n: int, x_tilde, t_tilde: float, sigma_tilde: float):
    if n < 0:
        raise ValueError("order must be nonnegative")
    val = config_orthonormal_all(n, x_tilde, t_tilde, sigma_tilde)[n]
    return val if np.ndim(val) else complex(val)


def config_mode_eval(dec: SchmidtDecomposition, alpha: int, m: int, x_tilde, sigma_tilde: float):
    """Position-space Schmidt mode at the decomposition's time."""
    coeffs = dec.modes(alpha)
    if not 0 <= m < coeffs.shape[0]:
        raise IndexError(f"mode index {m} out of range [0, {coeffs.shape[0]})")
    basis = config_orthonormal_all(coeffs.shape[1] - 1, x_tilde, dec.t_tilde, sigma_tilde)
    val = np.tensordot(coeffs[m], basis, axes=(0, 0))
    return val if np.ndim(val) else complex(val)


def _modes_at(dec, alpha, x, sigma_tilde):
    coeffs = dec.modes(alpha)
    basis = config_orthonormal_all(coeffs.shape[1] - 1, x, dec.t_tilde, sigma_tilde)
    return np.tensordot(coeffs, basis, axes=(1, 0))


def position_slater_eval(dec: SchmidtDecomposition, x1_tilde, x2_tilde, sigma_tilde: float):
    """Spin components ``(up_down, down_up)`` of the position-space Slater expansion.

    ``up_down`` multiplies ``|up>_1 |down>_2`` and ``down_up`` multiplies
    ``|down>_1 |up>_2``; exchanging ``(x1, up)`` with ``(x2, down)`` flips the sign.
    """
    w = np.sqrt(dec.lambdas.values / 2.0)
    a1 = _modes_at(dec, 1, x1_tilde, sigma_tilde)
    b2 = _modes_at(dec, 2, x2_tilde, sigma_tilde)
    a2 = _modes_at(dec, 2, x1_tilde, sigma_tilde)
    b1 = _modes_at(dec, 1, x2_tilde, sigma_tilde)
    up_down = np.tensordot(w, a1 * b2, axes=(0, 0))
    down_up = -np.tensordot(w, a2 * b1, axes=(0, 0))
    if np.ndim(up_down) == 0:
        return complex(up_down), complex(down_up)
    return up_down, down_up


def moving_rule(order: int, t_tilde: float, sigma_tilde: float) -> tuple:
    """Gauss-Hermite nodes and plain-measure weights centred on the packet.

    Nodes sit at ``t~ + sqrt(spread) z_i``; the weights integrate
    ``g(x~) dx~`` for ``g`` with the packet's Gaussian envelope.
    """
    rule: QuadratureRule = gauss_hermite_rule(order)
    width = np.sqrt(1.0 + (sigma_tilde * t_tilde) ** 2)
    return t_tilde + width * rule.nodes, width * rule.scaled_weights


def reproject_position(dec: SchmidtDecomposition, sigma_tilde: float, order: int = 64) -> np.ndarray:
    """Coefficients of the ``up_down`` position amplitude in the ``O~`` product basis.

    Sampled from :func:`position_slater_eval` and projected by quadrature;
    returns the ``(n, n)`` matrix scaled back to unit Frobenius norm.
    """
    nb = dec.modes1.shape[1]
    x, W = moving_rule(order, dec.t_tilde, sigma_tilde)
    X1, X2 = np.meshgrid(x, x, indexing="ij")
    up_down, _ = position_slater_eval(dec, X1, X2, sigma_tilde)
    basis = config_orthonormal_all(nb - 1, x, dec.t_tilde, sigma_tilde).conj()
    C = (basis * W) @ up_down @ (basis * W).T
    return C / np.linalg.norm(C)
