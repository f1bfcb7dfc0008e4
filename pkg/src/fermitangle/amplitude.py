r"""Reduced two-electron amplitude in dimensionless momenta.

A projectile with sharp momentum ``p_a0`` scatters off a target with a
Gaussian momentum spread ``sigma`` centred at rest. The final momenta are
measured along two orthogonal detector directions at 45 degrees from the
beam and rescaled to

.. math:: p = \sqrt{2}\,(p_1 - p_a^0/\sqrt{2})/\sigma, \qquad
          q = \sqrt{2}\,(p_2 - p_a^0/\sqrt{2})/\sigma .

All amplitudes here are unnormalized (they are defined only up to an overall
constant) and broadcast over numpy arrays of ``p``, ``q``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import PoleError
from .kernels import SINC_SERIES_CUTOFF, UPSILON_POLE_RTOL

NONRELATIVISTIC_LIMIT = 0.1


@dataclass(frozen=True)
class ScatterParams:
    """Kinematic regime; defaults are ``p_a0/m = 0.002``, ``sigma/p_a0 = 0.1``."""

    pa0_over_m: float = 0.002
    sigma_over_pa0: float = 0.1

    def __post_init__(self):
        if not 0.0 < self.sigma_over_pa0 < 1.0:
            raise ValueError(f"sigma_over_pa0 must lie in (0, 1), got {self.sigma_over_pa0}")
        if not 0.0 < self.pa0_over_m <= NONRELATIVISTIC_LIMIT:
            raise ValueError(
                f"pa0_over_m must lie in (0, {NONRELATIVISTIC_LIMIT}], got {self.pa0_over_m}"
            )

    @property
    def r(self) -> float:
        """``p_a0 / sigma``."""
        return 1.0 / self.sigma_over_pa0

    @property
    def sigma_over_m(self) -> float:
        return self.pa0_over_m * self.sigma_over_pa0

    @property
    def energy_ratio(self) -> float:
        """``2m / p_a0``: converts the dimensionless mismatch back to ``p + q``."""
        return 2.0 / self.pa0_over_m

    @property
    def time_scale(self) -> float:
        """``2m / (p_a0 sigma)`` in units of ``1/m``; ``t = time_scale * t_tilde``."""
        return 2.0 / (self.pa0_over_m * self.sigma_over_m)


class Spin(str, enum.Enum):
    UP = "up"
    DOWN = "down"


class ChannelStructure(enum.Enum):
    T_ONLY = "t"
    U_ONLY = "u"
    PARALLEL = "parallel"


@dataclass(frozen=True)
class SpinChannel:
    """Initial spins and the exchange topology that survives.

    The nonrelativistic Coulomb vertex keeps each fermion line's spin, so
    an antiparallel pair ``(up, down)`` reaches ``(up, down)`` only through
    the t-channel and ``(down, up)`` only through the u-channel, while a
    parallel pair keeps both.
    """

    initial: tuple = (Spin.UP, Spin.DOWN)
    structure: ChannelStructure = ChannelStructure.T_ONLY

    def __post_init__(self):
        a, b = self.initial
        parallel = a == b
        if parallel != (self.structure is ChannelStructure.PARALLEL):
            raise ValueError(f"spins {a.value},{b.value} incompatible with {self.structure.name}")

    @property
    def final(self) -> tuple:
        a, b = self.initial
        return (b, a) if self.structure is ChannelStructure.U_ONLY else (a, b)

    @classmethod
    def from_name(cls, name: str) -> "SpinChannel":
        structure = ChannelStructure(name)
        if structure is ChannelStructure.PARALLEL:
            return cls((Spin.UP, Spin.UP), structure)
        return cls((Spin.UP, Spin.DOWN), structure)


T_CHANNEL = SpinChannel.from_name("t")
U_CHANNEL = SpinChannel.from_name("u")
PARALLEL_CHANNEL = SpinChannel.from_name("parallel")


def dimensionless_vars(p1, p2, params: ScatterParams):
    """Map final momenta (units of ``m``) to the rescaled ``(p, q)``."""
    centre = params.pa0_over_m / math.sqrt(2.0)
    scale = math.sqrt(2.0) / params.sigma_over_m
    return (np.asarray(p1) - centre) * scale, (np.asarray(p2) - centre) * scale


def physical_momenta(p, q, params: ScatterParams):
    """Inverse of :func:`dimensionless_vars`."""
    centre = params.pa0_over_m / math.sqrt(2.0)
    scale = params.sigma_over_m / math.sqrt(2.0)
    return centre + np.asarray(p) * scale, centre + np.asarray(q) * scale


def _envelope(p, q):
    return np.exp(-0.5 * p * p) * np.exp(-0.5 * q * q)


def _sinc_time(s, t_tilde, params):
    # sin(s t)/Sigma~ with Sigma~ = s p_a0/2m
    x = s * t_tilde
    small = np.abs(s) < SINC_SERIES_CUTOFF
    safe = np.where(small, 1.0, s)
    ratio = np.where(small, t_tilde * (1.0 - x * x / 6.0), np.sin(x) / safe)
    return params.energy_ratio * ratio


def mu_tilde(p, params: ScatterParams):
    return math.sqrt(2.0) * np.sqrt(np.asarray(p, dtype=float) ** 2 + params.r**2)


def sinc_part_t(p, q, t_tilde, params: ScatterParams):
    """Energy-conserving part of the up-down t-channel amplitude."""
    if np.any(np.asarray(t_tilde) < 0):
        raise ValueError("time must be nonnegative")
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    val = _sinc_time(p + q, t_tilde, params) * _envelope(p, q) / (p * p + params.r**2)
    return (val + 0j) if np.ndim(val) else complex(val)


def upsilon_part_t(p, q, t_tilde, params: ScatterParams):
    """Transient part of the up-down t-channel amplitude; zero at ``t_tilde = 0``."""
    if np.any(np.asarray(t_tilde) < 0):
        raise ValueError("time must be nonnegative")
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    s = p + q
    sig = 0.5 * params.pa0_over_m * s
    mu = mu_tilde(p, params)
    den = sig * sig - mu * mu
    if np.any(np.abs(den) <= UPSILON_POLE_RTOL * mu * mu):
        raise PoleError("resonant kinematics in the transient term")
    st = s * t_tilde
    brace = -sig * np.sin(st) / (mu * den) - 1j * (
        np.cos(st) - np.exp(-1j * params.energy_ratio * mu * t_tilde)
    ) / den
    val = (2.0 / mu) * brace * _envelope(p, q)
    return val if np.ndim(val) else complex(val)


def channel_parts(channel: SpinChannel, p, q, t_tilde, params: ScatterParams):
    """``(sinc, upsilon)`` contributions of the given spin channel."""
    st = channel.structure
    if st is ChannelStructure.T_ONLY:
        return sinc_part_t(p, q, t_tilde, params), upsilon_part_t(p, q, t_tilde, params)
    if st is ChannelStructure.U_ONLY:
        return sinc_part_t(q, p, t_tilde, params), upsilon_part_t(q, p, t_tilde, params)
    # Both exchange graphs contribute with the fermionic relative sign.
    sinc = sinc_part_t(p, q, t_tilde, params) - sinc_part_t(q, p, t_tilde, params)
    ups = upsilon_part_t(p, q, t_tilde, params) - upsilon_part_t(q, p, t_tilde, params)
    return sinc, ups


def amplitude_channel(channel: SpinChannel, p, q, t_tilde, params: ScatterParams):
    sinc, ups = channel_parts(channel, p, q, t_tilde, params)
    return sinc + ups


def amplitude_callback(channel: SpinChannel, t_tilde: float, params: ScatterParams):
    """``F(p, q)`` closure at fixed time, as consumed by the Schmidt projection."""

    def F(p, q):
        return amplitude_channel(channel, p, q, t_tilde, params)

    return F


@dataclass(frozen=True)
class AmplitudeGrid:
    """Amplitude samples on a tensor grid; ``values[i, j]`` is at ``(p_nodes[i], q_nodes[j])``."""

    p_nodes: np.ndarray
    q_nodes: np.ndarray
    values: np.ndarray
    sinc_part: np.ndarray
    upsilon_part: np.ndarray
    channel: SpinChannel
    t_tilde: float
    params: ScatterParams = field(default_factory=ScatterParams)


def _axis(rng, name):
    lo, hi, count = rng
    count = int(count)
    if count < 2 or not (np.isfinite(lo) and np.isfinite(hi)) or not hi > lo:
        raise ValueError(f"invalid {name} range {rng!r}")
    return np.linspace(lo, hi, count)


def sample_grid(channel, t_tilde, p_range, q_range, params=None) -> AmplitudeGrid:
    """Evaluate a channel on the tensor grid ``p_range x q_range`` (each ``(min, max, count)``)."""
    params = params or ScatterParams()
    p_nodes = _axis(p_range, "p")
    q_nodes = _axis(q_range, "q")
    P, Q = np.meshgrid(p_nodes, q_nodes, indexing="ij")
    sinc, ups = channel_parts(channel, P, Q, t_tilde, params)
    values = sinc + ups
    if not np.all(np.isfinite(values)):
        raise FloatingPointError("non-finite amplitude samples")
    for arr in (p_nodes, q_nodes, values, sinc, ups):
        arr.setflags(write=False)
    return AmplitudeGrid(p_nodes, q_nodes, values, sinc, ups, channel, float(t_tilde), params)


def envelope_bound(p, q, t_tilde, params: ScatterParams):
    """Upper bound on ``|T_ONLY|`` from the sinc maximum and the transient envelope."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    mu = mu_tilde(p, params)
    sig = 0.5 * params.pa0_over_m * (p + q)
    sinc_max = params.energy_ratio * t_tilde / params.r**2
    ups_max = (2.0 / mu) * (np.abs(sig) / (mu * np.abs(sig * sig - mu * mu)) + 2.0 / np.abs(sig * sig - mu * mu))
    return (sinc_max + ups_max) * _envelope(p, q)
