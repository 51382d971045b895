"""Transform evaluation against independent oracles.

The derivative oracle is a central finite difference, the Taylor moment
oracle a discrete contour integral at radius 1/2, and the rational form is
cross-evaluated against the atom-sum definition at random disk points.
"""

import numpy as np
import pytest

from blaschke_verify.errors import OutsideDisk
from blaschke_verify.measure import AtomicMeasure, UnitPoint, dirac
from blaschke_verify.transform import (
    CauchyFunction,
    eval_K,
    eval_h,
    eval_h_derivative,
    rational_form,
    taylor_moment,
)

from conftest import random_measure_simple


def disk_points(rng, n, rmax=0.95):
    r = rmax * np.sqrt(rng.random(n))
    th = rng.uniform(0, 2 * np.pi, n)
    return r * np.exp(1j * th)


def test_lebesgue_transform_is_constant():
    mu = AtomicMeasure(atoms=(), lebesgue=3.0 - 1.0j)
    rng = np.random.default_rng(0)
    w = disk_points(rng, 50)
    assert np.allclose(eval_K(mu, w), 3.0 - 1.0j)


def test_single_atom_geometric_series():
    # K(delta_zeta)(w) = sum_n (w conj(zeta))^n, checked against partial sums
    zeta = np.exp(0.9j)
    mu = dirac(zeta, 1.0)
    w = 0.5 * np.exp(0.3j)
    partial = sum((w * np.conj(zeta)) ** n for n in range(200))
    assert eval_K(mu, w) == pytest.approx(partial, abs=1e-15)


def test_h_at_zero_is_one_exactly():
    rng = np.random.default_rng(1)
    for _ in range(20):
        mu = random_measure_simple(rng, int(rng.integers(1, 6)))
        f = CauchyFunction(source=mu)
        assert eval_h(f, 0.0) == 1.0  # exact, not approx


def test_shifted_h_is_one_plus_wK():
    rng = np.random.default_rng(2)
    mu = random_measure_simple(rng, 4)
    f = CauchyFunction(source=mu, mode="shifted")
    w = disk_points(rng, 30)
    assert np.allclose(eval_h(f, w), 1.0 + w * eval_K(mu, w))


def test_direct_mode_is_K():
    rng = np.random.default_rng(3)
    mu = random_measure_simple(rng, 4)
    f = CauchyFunction(source=mu, mode="direct")
    w = disk_points(rng, 30)
    assert np.allclose(f(w), eval_K(mu, w))


def test_eval_rejects_outside_disk():
    mu = dirac(1.0, 1.0)
    for bad in (1.0, 1.0 + 0j, np.exp(0.4j), 1.7 - 0.2j):
        with pytest.raises(OutsideDisk):
            eval_K(mu, bad)
    with pytest.raises(OutsideDisk):
        eval_K(mu, np.array([0.1, 0.99999, 1.0]))


def test_derivative_against_finite_difference():
    rng = np.random.default_rng(4)
    step = 1e-6
    for _ in range(10):
        mu = random_measure_simple(rng, int(rng.integers(1, 6)))
        f = CauchyFunction(source=mu)
        w = disk_points(rng, 10, rmax=0.8)
        exact = eval_h_derivative(f, w)
        fd = (eval_h(f, w + step) - eval_h(f, w - step)) / (2 * step)
        scale = np.maximum(1.0, np.abs(exact))
        assert np.max(np.abs(exact - fd) / scale) < 1e-7


def test_taylor_moments_against_contour_oracle():
    # n-th coefficient of K via FFT of samples on |w| = 1/2
    rng = np.random.default_rng(5)
    M = 256
    w = 0.5 * np.exp(2j * np.pi * np.arange(M) / M)
    for _ in range(10):
        mu = random_measure_simple(rng, int(rng.integers(1, 6)))
        vals = eval_K(mu, w)
        coeffs = np.fft.fft(vals) / M
        for n in range(8):
            want = coeffs[n] / 0.5**n
            assert taylor_moment(mu, n) == pytest.approx(want, abs=1e-10)


def test_taylor_moment_zero_includes_lebesgue():
    mu = AtomicMeasure(atoms=((UnitPoint(1j), 2.0 + 0j),), lebesgue=1.5 + 0j)
    assert taylor_moment(mu, 0) == pytest.approx(3.5)
    assert taylor_moment(mu, 1) == pytest.approx(2.0 * np.conj(1j))


def test_rational_form_matches_eval():
    rng = np.random.default_rng(6)
    for _ in range(20):
        mu = random_measure_simple(rng, int(rng.integers(1, 7)))
        w = disk_points(rng, 25)
        for mode in ("direct", "shifted"):
            f = CauchyFunction(source=mu, mode=mode)
            rf = rational_form(f)
            num = np.polyval(rf.numerator[::-1], w)
            den = np.polyval(rf.denominator_coeffs()[::-1], w)
            scale = np.maximum(1.0, np.abs(f(w)))
            assert np.max(np.abs(num / den - f(w)) / scale) < 1e-10


def test_rational_form_shifted_constant_coeff_is_one():
    rng = np.random.default_rng(7)
    mu = random_measure_simple(rng, 5)
    rf = rational_form(CauchyFunction(source=mu, mode="shifted"))
    assert rf.numerator[0] == pytest.approx(1.0)  # h(0) = 1 and Q(0) = 1


def test_rational_form_denominator_roots_are_the_atoms():
    # Q(w) = prod_j (1 - w conj(zeta_j)) vanishes at w = 1/conj(zeta_j) = zeta_j
    mu = AtomicMeasure(
        atoms=((UnitPoint(1.0 + 0j), 1.0 + 0j), (UnitPoint(1j), 2.0 + 0j))
    )
    rf = rational_form(CauchyFunction(source=mu, mode="direct"))
    roots = np.roots(rf.denominator_coeffs()[::-1])
    want = sorted([1.0 + 0j, 1j], key=lambda z: (z.real, z.imag))
    got = sorted(roots, key=lambda z: (z.real, z.imag))
    assert np.allclose(got, want)


def test_scalar_in_scalar_out():
    mu = dirac(-1.0, 1.0)
    out = eval_K(mu, 0.25)
    assert np.isscalar(out) or out.shape == ()
    arr = eval_K(mu, np.array([0.25, 0.5]))
    assert arr.shape == (2,)
