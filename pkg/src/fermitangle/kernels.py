"""Finite-time one-photon-exchange kernels in dimensioned form.

All energies and momenta are in units of the fermion mass. The t-channel
kernels are

* ``s_kernel``: the energy-conserving part ``i sin(Sigma t)/Sigma`` over the
  static photon denominator ``(Delta/2)**2 - q3**2``;
* ``upsilon_kernel``: the transient that oscillates at the frequencies
  ``mu`` and ``nu`` and vanishes weakly as ``t`` grows.

The u-channel kernels are the same functions evaluated on
:func:`u_channel` kinematics.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import DegenerateError, PoleError

S_POLE_RTOL = 1e-12
UPSILON_POLE_RTOL = 1e-10
SINC_SERIES_CUTOFF = 1e-8


@dataclass(frozen=True)
class EnergyKinematics:
    """Energies of the two final (1, 2) and initial (a, b) fermions and the
    momentum-transfer magnitude ``q3 = |p_a - p_1|``."""

    E1: float
    E2: float
    Ea: float
    Eb: float
    q3: float

    def __post_init__(self):
        for name in ("E1", "E2", "Ea", "Eb", "q3"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")


@dataclass(frozen=True)
class DerivedFreqs:
    sigma_: float
    delta_: float
    mu_: float
    nu_: float


def derived_freqs(kin: EnergyKinematics) -> DerivedFreqs:
    """Energy mismatch ``Sigma``, asymmetry ``Delta`` and the two transient
    frequencies ``mu = Delta + 2 q3``, ``nu = -Delta + 2 q3``."""
    sigma_ = kin.E1 + kin.E2 - kin.Ea - kin.Eb
    delta_ = kin.E1 - kin.E2 + kin.Eb - kin.Ea
    return DerivedFreqs(
        sigma_=sigma_,
        delta_=delta_,
        mu_=delta_ + 2.0 * kin.q3,
        nu_=-delta_ + 2.0 * kin.q3,
    )


def u_channel(kin: EnergyKinematics, q3_u: float) -> EnergyKinematics:
    """Exchange the final particles: ``E1 <-> E2`` and ``q3 -> |p_a - p_2|``."""
    return replace(kin, E1=kin.E2, E2=kin.E1, q3=q3_u)


def sinc_energy(sigma_, t):
    """``sin(Sigma t) / Sigma``, with the series ``t (1 - (Sigma t)**2 / 6)``
    once ``|Sigma t| < 1e-8``.

    Tends weakly to ``pi * delta(Sigma)`` as ``t`` grows.
    """
    sigma_ = np.asarray(sigma_, dtype=float)
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ValueError("time must be nonnegative")
    x = sigma_ * t
    small = np.abs(x) < SINC_SERIES_CUTOFF
    safe = np.where(small, 1.0, sigma_)
    val = np.where(small, t * (1.0 - x * x / 6.0), np.sin(x) / safe)
    return val if val.ndim else float(val)


def s_kernel(kin: EnergyKinematics, t: float) -> complex:
    f = derived_freqs(kin)
    half = 0.5 * f.delta_
    denom = half * half - kin.q3 * kin.q3
    scale = max(half * half, kin.q3 * kin.q3)
    if abs(denom) <= S_POLE_RTOL * scale:
        raise PoleError(
            f"photon denominator vanishes: (Delta/2)^2 = {half * half!r}, q3^2 = {kin.q3 ** 2!r}"
        )
    return 1j * sinc_energy(f.sigma_, t) / denom


def upsilon_kernel(kin: EnergyKinematics, t: float) -> complex:
    """Transient kernel; zero at ``t = 0`` for any nondegenerate kinematics."""
    if t < 0:
        raise ValueError("time must be nonnegative")
    if kin.q3 == 0:
        raise DegenerateError("upsilon kernel needs nonzero momentum transfer")
    f = derived_freqs(kin)
    s2 = f.sigma_ * f.sigma_
    freq_scale = abs(f.delta_) + 2.0 * kin.q3
    if min(abs(f.mu_), abs(f.nu_)) <= UPSILON_POLE_RTOL * freq_scale:
        raise PoleError(f"vanishing transient frequency: mu={f.mu_!r}, nu={f.nu_!r}")
    dmu = s2 - f.mu_ * f.mu_
    dnu = s2 - f.nu_ * f.nu_
    for d, w in ((dmu, f.mu_), (dnu, f.nu_)):
        if abs(d) <= UPSILON_POLE_RTOL * max(s2, w * w):
            raise PoleError(f"resonant kinematics: Sigma^2 = {s2!r}, frequency^2 = {w * w!r}")

    st = f.sigma_ * t
    sine = 1j * (1.0 / (f.mu_ * dmu) + 1.0 / (f.nu_ * dnu)) * f.sigma_ * math.sin(st)
    cosine = -(1.0 / dmu + 1.0 / dnu) * math.cos(st)
    phase = np.exp(-1j * f.mu_ * t) / dmu + np.exp(-1j * f.nu_ * t) / dnu
    return complex((sine + cosine + phase) / kin.q3)
