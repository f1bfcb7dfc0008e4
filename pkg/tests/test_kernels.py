import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fermitangle.errors import DegenerateError, PoleError
from fermitangle.kernels import (
    EnergyKinematics,
    derived_freqs,
    s_kernel,
    sinc_energy,
    u_channel,
    upsilon_kernel,
)


def kin_from(sigma_, delta_, q3):
    """Kinematics with ``Ea = Eb = 1`` and prescribed Sigma, Delta."""
    return EnergyKinematics(1 + (sigma_ + delta_) / 2, 1 + (sigma_ - delta_) / 2, 1.0, 1.0, q3)


def test_derived_freqs_symmetric():
    f = derived_freqs(EnergyKinematics(1, 1, 1, 1, 0.5))
    assert (f.sigma_, f.delta_, f.mu_, f.nu_) == (0, 0, 1, 1)


def test_derived_freqs_asymmetric():
    f = derived_freqs(EnergyKinematics(1.2, 1.0, 1.1, 1.1, 0.3))
    assert f.sigma_ == pytest.approx(0.0, abs=1e-15)
    assert f.delta_ == pytest.approx(0.2, abs=1e-15)
    assert f.mu_ == pytest.approx(0.8, abs=1e-15)
    assert f.nu_ == pytest.approx(0.4, abs=1e-15)


energies = st.floats(0.0, 10.0)


@settings(max_examples=200)
@given(energies, energies, energies, energies, st.floats(0.0, 10.0))
def test_derived_freqs_identities(E1, E2, Ea, Eb, q3):
    f = derived_freqs(EnergyKinematics(E1, E2, Ea, Eb, q3))
    scale = max(1.0, abs(f.delta_), q3)
    assert abs(f.mu_ + f.nu_ - 4 * q3) <= 4e-15 * scale
    assert abs(f.mu_ - f.nu_ - 2 * f.delta_) <= 4e-15 * scale


@settings(max_examples=100)
@given(energies, energies, energies, energies, st.floats(0.0, 10.0))
def test_particle_swap_negates_delta(E1, E2, Ea, Eb, q3):
    f = derived_freqs(EnergyKinematics(E1, E2, Ea, Eb, q3))
    g = derived_freqs(EnergyKinematics(E2, E1, Eb, Ea, q3))
    assert g.delta_ == pytest.approx(-f.delta_, abs=1e-14)
    assert g.sigma_ == pytest.approx(f.sigma_, abs=1e-14)


def test_u_channel_swaps_final_energies():
    k = EnergyKinematics(1.2, 1.0, 1.1, 1.1, 0.3)
    u = u_channel(k, 0.4)
    assert (u.E1, u.E2, u.Ea, u.Eb, u.q3) == (1.0, 1.2, 1.1, 1.1, 0.4)
    assert derived_freqs(u).delta_ == pytest.approx(-0.2, abs=1e-15)


def test_negative_energy_rejected():
    with pytest.raises(ValueError):
        EnergyKinematics(-1, 1, 1, 1, 0.1)


def test_sinc_energy_limits():
    assert sinc_energy(0.0, 3.7) == 3.7
    assert abs(sinc_energy(math.pi, 1.0)) < 1e-15
    assert sinc_energy(1e-10, 2.0) == pytest.approx(2.0, rel=1e-15)
    assert sinc_energy(0.5, 2.0) == pytest.approx(math.sin(1.0) / 0.5, rel=1e-15)


def test_sinc_energy_continuous_at_cutoff():
    t = 1.0
    for s in (0.99e-8, 1.01e-8):
        assert sinc_energy(s, t) == pytest.approx(math.sin(s * t) / s, rel=1e-15)


def test_sinc_energy_rejects_negative_time():
    with pytest.raises(ValueError):
        sinc_energy(1.0, -0.1)


def _smeared_sinc(t):
    s = np.linspace(-12, 12, 240001)
    return np.trapezoid(sinc_energy(s, t) * np.exp(-s * s), s)


def test_sinc_weak_limit_small_times_decreasing():
    # analytic value pi * erf(t/2); visible approach at small t
    from scipy.special import erf

    errs = []
    for t in (0.5, 1.0, 2.0, 4.0):
        val = _smeared_sinc(t)
        assert val == pytest.approx(math.pi * erf(t / 2), abs=1e-12)
        errs.append(abs(val - math.pi))
    assert all(b < a for a, b in zip(errs, errs[1:]))


def test_s_kernel_examples():
    assert s_kernel(EnergyKinematics(1, 1, 1, 1, 0.5), 2.0) == pytest.approx(-8j, abs=1e-14)
    k = EnergyKinematics(1.2, 1.0, 1.1, 1.1, 0.3)
    assert s_kernel(k, 1.0) == pytest.approx(-12.5j, rel=1e-12)


def test_s_kernel_pole():
    k = kin_from(0.0, 0.6, 0.3)
    assert derived_freqs(k).delta_ / 2 == pytest.approx(0.3)
    with pytest.raises(PoleError):
        s_kernel(k, 1.0)


def test_s_kernel_sigma_zero_slice_linear_and_imaginary():
    k = kin_from(0.0, 0.2, 0.3)
    vals = [s_kernel(k, t) for t in (0.5, 1.0, 2.0, 4.0)]
    for t, v in zip((0.5, 1.0, 2.0, 4.0), vals):
        assert v.real == 0.0
        assert v.imag == pytest.approx(vals[1].imag * t, rel=1e-14)


def _upsilon_reference(sig, mu, nu, q3, t):
    # written out term by term, independently of the library expression
    a = 1.0 / (sig * sig - mu * mu)
    b = 1.0 / (sig * sig - nu * nu)
    term1 = 1j * (a / mu + b / nu) * sig * math.sin(sig * t)
    term2 = -(a + b) * math.cos(sig * t)
    term3 = a * cmath.exp(-1j * mu * t) + b * cmath.exp(-1j * nu * t)
    return (term1 + term2 + term3) / q3


def test_upsilon_examples():
    k = EnergyKinematics(1, 1, 1, 1, 0.5)
    assert upsilon_kernel(k, 0.0) == 0
    # Sigma = 0, mu = nu = 1: (1/0.5) * {2 cos 0 - 2 e^{-i pi}} ... = 2 * (2 - 2) at t=0, 2 * 4 at t=pi
    assert upsilon_kernel(k, math.pi) == pytest.approx(8.0 + 0j, abs=1e-14)
    assert upsilon_kernel(k, math.pi) == pytest.approx(_upsilon_reference(0, 1, 1, 0.5, math.pi), abs=1e-14)


@settings(max_examples=100)
@given(
    sig=st.floats(-0.3, 0.3),
    delta=st.floats(-0.3, 0.3),
    q3=st.floats(0.5, 3.0),
    t=st.floats(0.0, 50.0),
)
def test_upsilon_matches_reference(sig, delta, q3, t):
    k = kin_from(sig, delta, q3)
    f = derived_freqs(k)
    ref = _upsilon_reference(f.sigma_, f.mu_, f.nu_, q3, t)
    assert upsilon_kernel(k, t) == pytest.approx(ref, rel=1e-10, abs=1e-12)


@settings(max_examples=100)
@given(sig=st.floats(-0.3, 0.3), delta=st.floats(-0.3, 0.3), q3=st.floats(0.5, 3.0))
def test_upsilon_vanishes_at_time_zero(sig, delta, q3):
    assert abs(upsilon_kernel(kin_from(sig, delta, q3), 0.0)) < 1e-12


def test_upsilon_errors():
    with pytest.raises(DegenerateError):
        upsilon_kernel(EnergyKinematics(1, 1, 1, 1, 0.0), 1.0)
    # Sigma^2 = mu^2: Sigma = 0.5, Delta = 0.1, q3 = 0.2 -> mu = 0.5
    with pytest.raises(PoleError):
        upsilon_kernel(kin_from(0.5, 0.1, 0.2), 1.0)
    # mu = 0
    with pytest.raises(PoleError):
        upsilon_kernel(kin_from(0.0, -0.4, 0.2), 1.0)


def test_upsilon_weak_decay():
    """Smeared over a smooth family of kinematics the transient averages away."""
    u = np.linspace(-5, 5, 8001)
    g = np.exp(-u * u)
    ratios = []
    for T in (5.0, 10.0, 20.0, 40.0, 80.0):
        v = np.array([upsilon_kernel(kin_from(0.1 * x, 0.1, 1 + 0.1 * x), T) for x in u])
        ratios.append(abs(np.trapezoid(v * g, u)) / np.trapezoid(np.abs(v) * g, u))
    assert all(b < a for a, b in zip(ratios, ratios[1:]))
    assert ratios[-1] < 1e-6


def test_u_channel_kernels_are_t_kernels_on_swapped_kinematics():
    k = EnergyKinematics(1.2, 1.0, 1.1, 1.1, 0.3)
    ku = u_channel(k, 0.45)
    f = derived_freqs(ku)
    expected = 1j * sinc_energy(f.sigma_, 2.0) / ((f.delta_ / 2) ** 2 - 0.45**2)
    assert s_kernel(ku, 2.0) == pytest.approx(expected)
