r"""Continuous-variable Schmidt decomposition by Hermite-basis projection.

A two-particle amplitude :math:`F(p, q)` is projected onto the product basis
:math:`\varphi_m(p)\varphi_n(q)` of Hermite functions,

.. math:: C_{mn} = \iint \varphi_m(p)\,\varphi_n(q)\,F(p, q)\,dp\,dq ,

and the singular value decomposition :math:`C = U\,\mathrm{diag}(s)\,V^\dagger`
gives the Schmidt coefficients :math:`\lambda_n = s_n^2/\sum_k s_k^2` and the
mode expansions. Row ``k`` of ``modes1`` is ``U[:, k]`` and row ``k`` of
``modes2`` is ``Vh[k, :]``, so that

.. math:: F \approx \sum_k s_k\,\psi^{(1)}_k(p)\,\psi^{(2)}_k(q), \qquad
          \psi^{(\alpha)}_k = \sum_n A^{(\alpha)}_{kn}\varphi_n .
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .amplitude import Spin
from .errors import DegenerateError, InvalidVector, QuadratureUnderflow
from .specfun import QuadratureRule, hermite_functions

SUM_TOL = 1e-12
LAMBDA_FLOOR = 1e-12
NORM_FLOOR = 1e-30
SINGULAR_FLOOR = 1e-15
DEGENERACY_RTOL = 1e-8


@dataclass(frozen=True)
class ProbabilityVector:
    """Nonnegative entries summing to one."""

    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=float).ravel()
        if v.size == 0:
            raise InvalidVector("empty probability vector")
        if np.any(v < 0) or not np.all(np.isfinite(v)):
            raise InvalidVector("probability vector has negative or non-finite entries")
        if abs(v.sum() - 1.0) > SUM_TOL:
            raise InvalidVector(f"probability vector sums to {v.sum()!r}")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @classmethod
    def normalized(cls, weights) -> "ProbabilityVector":
        w = np.asarray(weights, dtype=float)
        return cls(w / w.sum())

    def __len__(self):
        return self.values.size

    def __iter__(self):
        return iter(self.values)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.values, dtype=dtype)


def _as_probabilities(lambdas) -> np.ndarray:
    if isinstance(lambdas, ProbabilityVector):
        return lambdas.values
    return ProbabilityVector(lambdas).values


def slater_number(lambdas) -> float:
    """Effective number of Slater determinants ``1 / sum(lambda**2)``."""
    lam = _as_probabilities(lambdas)
    return float(1.0 / np.dot(lam, lam))


def entanglement_entropy(lambdas) -> float:
    """Entropy of entanglement in bits, with ``0 log 0 = 0``."""
    lam = _as_probabilities(lambdas)
    nz = lam[lam > 0]
    return float(max(0.0, -np.sum(nz * np.log2(nz))))


@dataclass(frozen=True)
class CoefficientMatrix:
    entries: np.ndarray
    amp_norm_sq: float
    t_tilde: float

    def __post_init__(self):
        if not np.all(np.isfinite(self.entries)):
            raise FloatingPointError("non-finite coefficient matrix")
        if not self.amp_norm_sq > 0:
            raise QuadratureUnderflow("amplitude norm must be positive")
        captured = float(np.sum(np.abs(self.entries) ** 2))
        if captured > self.amp_norm_sq * (1.0 + 1e-9):
            raise ValueError(
                f"coefficient mass {captured!r} exceeds amplitude norm {self.amp_norm_sq!r}"
            )

    @property
    def basis_size(self) -> int:
        return self.entries.shape[0]

    @property
    def captured_fraction(self) -> float:
        return float(np.sum(np.abs(self.entries) ** 2) / self.amp_norm_sq)


def project_coefficients(
    F: Callable, basis_size: int, rule: QuadratureRule, t_tilde: float = 0.0
) -> CoefficientMatrix:
    """Project ``F(p, q)`` onto the ``basis_size**2`` lowest Hermite products.

    ``F`` must accept broadcast numpy arrays. The tensor Gauss-Hermite rule
    is used with its plain-measure weights, so an amplitude carrying the
    factor ``exp(-(p**2 + q**2)/2)`` meets the Gaussian weight exactly.
    """
    if basis_size < 1:
        raise ValueError("basis_size must be positive")
    if 2 * basis_size > rule.order:
        raise ValueError(
            f"basis_size {basis_size} exceeds half the rule order {rule.order}"
        )
    x, W = rule.nodes, rule.scaled_weights
    P, Q = np.meshgrid(x, x, indexing="ij")
    samples = np.asarray(F(P, Q), dtype=complex)
    weighted = W[:, None] * samples * W[None, :]
    phi = hermite_functions(basis_size - 1, x)
    entries = phi @ weighted @ phi.T
    amp_norm_sq = float(np.sum(W[:, None] * np.abs(samples) ** 2 * W[None, :]))
    if amp_norm_sq < NORM_FLOOR:
        raise QuadratureUnderflow(f"amplitude norm^2 {amp_norm_sq!r} below {NORM_FLOOR}")
    entries.setflags(write=False)
    return CoefficientMatrix(entries=entries, amp_norm_sq=amp_norm_sq, t_tilde=float(t_tilde))


@dataclass(frozen=True)
class SchmidtDecomposition:
    lambdas: ProbabilityVector
    modes1: np.ndarray
    modes2: np.ndarray
    t_tilde: float
    d2: float
    singular_values: np.ndarray = field(repr=False, default=None)
    degenerate_clusters: tuple = ()

    @property
    def n_modes(self) -> int:
        return self.modes1.shape[0]

    @property
    def K(self) -> float:
        return slater_number(self.lambdas)

    @property
    def entropy(self) -> float:
        return entanglement_entropy(self.lambdas)

    def modes(self, alpha: int) -> np.ndarray:
        if alpha == 1:
            return self.modes1
        if alpha == 2:
            return self.modes2
        raise ValueError(f"particle label must be 1 or 2, got {alpha}")


def _clusters(s: np.ndarray) -> tuple:
    out, start = [], 0
    for k in range(1, s.size + 1):
        if k == s.size or abs(s[k - 1] - s[k]) > DEGENERACY_RTOL * s[0]:
            if k - start > 1 and s[start] > SINGULAR_FLOOR:
                out.append(tuple(range(start, k)))
            start = k
    return tuple(out)


def decompose(C: CoefficientMatrix) -> SchmidtDecomposition:
    """Schmidt decomposition of a projected amplitude.

    ``d2`` is the relative L2 mass of the amplitude outside the truncated
    basis, ``1 - sum|C|**2 / ||F||**2``.
    """
    U, s, Vh = np.linalg.svd(C.entries)
    if s.size == 0 or s[0] < SINGULAR_FLOOR:
        raise DegenerateError("all singular values vanish")
    # svd returns descending order; stable argsort keeps ties in index order
    order = np.argsort(-s, kind="stable")
    s, U, Vh = s[order], U[:, order], Vh[order, :]
    # Gauge: largest coefficient of each particle-1 mode real positive.
    pivot = U[np.argmax(np.abs(U), axis=0), np.arange(U.shape[1])]
    phase = np.where(np.abs(pivot) > 0, pivot / np.abs(pivot), 1.0)
    U = U * phase.conj()[None, :]
    Vh = Vh * phase[:, None]
    lam = s * s / np.sum(s * s)
    lam = np.where(lam < LAMBDA_FLOOR, 0.0, lam)
    lam = lam / lam.sum()
    modes1 = np.ascontiguousarray(U.T)
    modes2 = np.ascontiguousarray(Vh)
    for arr in (modes1, modes2, s):
        arr.setflags(write=False)
    d2 = max(0.0, 1.0 - C.captured_fraction)
    return SchmidtDecomposition(
        lambdas=ProbabilityVector(lam),
        modes1=modes1,
        modes2=modes2,
        t_tilde=C.t_tilde,
        d2=d2,
        singular_values=s,
        degenerate_clusters=_clusters(s),
    )


def schmidt_mode_eval(dec: SchmidtDecomposition, alpha: int, m: int, k):
    """Momentum-space Schmidt mode ``psi^(alpha)_m(k)``."""
    coeffs = dec.modes(alpha)
    if not 0 <= m < coeffs.shape[0]:
        raise IndexError(f"mode index {m} out of range [0, {coeffs.shape[0]})")
    phi = hermite_functions(coeffs.shape[1] - 1, k)
    val = np.tensordot(coeffs[m], phi, axes=(0, 0))
    return val if np.ndim(val) else complex(val)


def reconstruct(dec: SchmidtDecomposition, p, q):
    """``sum_n sqrt(lambda_n) psi1_n(p) psi2_n(q)``, a unit-norm amplitude."""
    lam = dec.lambdas.values
    phi_p = hermite_functions(dec.modes1.shape[1] - 1, p)
    phi_q = hermite_functions(dec.modes2.shape[1] - 1, q)
    psi1 = np.tensordot(dec.modes1, phi_p, axes=(1, 0))
    psi2 = np.tensordot(dec.modes2, phi_q, axes=(1, 0))
    return np.tensordot(np.sqrt(lam), psi1 * psi2, axes=(0, 0))


@dataclass(frozen=True)
class SlaterExpansion:
    """Antisymmetrized pair amplitude built from a t-channel decomposition.

    ``G(p, s1; q, s2) = sum_n sqrt(lambda_n)
    [psi1_n(p) psi2_n(q) [s1=up, s2=down] - psi2_n(p) psi1_n(q) [s1=down, s2=up]] / sqrt(2)``
    """

    dec: SchmidtDecomposition

    def __call__(self, p, s1: Spin, q, s2: Spin):
        s1, s2 = Spin(s1), Spin(s2)
        if s1 is Spin.UP and s2 is Spin.DOWN:
            val = reconstruct(self.dec, p, q) / np.sqrt(2.0)
        elif s1 is Spin.DOWN and s2 is Spin.UP:
            val = -reconstruct(self.dec, q, p) / np.sqrt(2.0)
        else:
            val = np.zeros(np.broadcast(np.asarray(p), np.asarray(q)).shape, dtype=complex)
        return val if np.ndim(val) else complex(val)


def slater_decomposition(dec_t: SchmidtDecomposition) -> SlaterExpansion:
    return SlaterExpansion(dec_t)


def schmidt_from_amplitude(
    F: Callable, basis_size: int, rule: QuadratureRule, t_tilde: float = 0.0
) -> SchmidtDecomposition:
    return decompose(project_coefficients(F, basis_size, rule, t_tilde))


def count_above(lambdas, threshold: float = 1e-3) -> int:
    return int(np.sum(_as_probabilities(lambdas) > threshold))


def dense_kernel_spectrum(F: Callable, nodes: Sequence[float], scaled_weights: Sequence[float]):
    """Schmidt spectrum from the Nystrom matrix ``sqrt(W_i) F(x_i, x_j) sqrt(W_j)``.

    An independent route to the spectrum that involves no basis truncation;
    ``scaled_weights`` are plain-measure quadrature weights at ``nodes``.
    """
    x = np.asarray(nodes, dtype=float)
    sw = np.sqrt(np.asarray(scaled_weights, dtype=float))
    P, Q = np.meshgrid(x, x, indexing="ij")
    M = sw[:, None] * np.asarray(F(P, Q), dtype=complex) * sw[None, :]
    s = np.linalg.svd(M, compute_uv=False)
    lam = s * s
    return lam / lam.sum()
