"""Cross-validation of the three zero-finding routes.

The reciprocal-eigenvalue, argument-principle, and numerator-root routes
share nothing but the measure, so agreement on random instances is strong
evidence each is right; hand-computable examples pin the absolute answers.
"""

import numpy as np
import pytest

from blaschke_verify.errors import NumericalError
from blaschke_verify.measure import AtomicMeasure, UnitPoint, dirac
from blaschke_verify.operator_model import build_system_from_measure
from blaschke_verify.random_instances import random_conditioned_measure, spawn_rng
from blaschke_verify.transform import CauchyFunction
from blaschke_verify.zeros import (
    METHOD_ARG,
    ZeroSet,
    blaschke_sum,
    match_zero_sets,
    zeros_via_argument_principle,
    zeros_via_L,
    zeros_via_numerator_roots,
)
from blaschke_verify import zeros as zeros_mod


def shifted(mu):
    return CauchyFunction(source=mu, mode="shifted")


def cap_zeros(zs, cap=0.999):
    return ZeroSet(
        zeros=tuple((z, m) for z, m in zs.zeros if abs(z) < cap), method=zs.method
    )


def test_zero_set_validation():
    with pytest.raises(NumericalError):
        ZeroSet(zeros=((1.0 + 0j, 1),), method="x")
    with pytest.raises(NumericalError):
        ZeroSet(zeros=((0.5 + 0j, 0),), method="x")


def test_blaschke_sum_hand_values():
    zs = ZeroSet(zeros=((0.5 + 0j, 1), (0.25j, 2)), method="x")
    assert blaschke_sum(zs) == pytest.approx(1.0 + 2 * 3.0)
    assert blaschke_sum(ZeroSet(zeros=(), method="x")) == 0.0


def test_match_zero_sets_basics():
    a = ZeroSet(zeros=((0.5 + 0j, 1),), method="a")
    b = ZeroSet(zeros=((0.5 + 1e-9 + 0j, 1),), method="b")
    ok, worst = match_zero_sets(a, b)
    assert ok and worst < 1e-8
    c = ZeroSet(zeros=((0.5 + 0j, 2),), method="c")
    ok, worst = match_zero_sets(a, c)
    assert not ok  # counts differ
    d = ZeroSet(zeros=((0.5 + 0j, 1), (0.2j, 1)), method="d")
    ok, _ = match_zero_sets(a, d)
    assert not ok
    ok, worst = match_zero_sets(
        ZeroSet(zeros=(), method="a"), ZeroSet(zeros=(), method="b")
    )
    assert ok and worst == 0.0


def test_sharp_example_all_three_routes():
    # sigma = delta_{-1}: h(w) = 1 + w K = (1 - w) ... zero exactly at -1/2
    mu = dirac(-1.0, 1.0)
    want = -0.5
    z1 = zeros_via_L(build_system_from_measure(mu))
    z2 = zeros_via_numerator_roots(shifted(mu))
    z3 = zeros_via_argument_principle(shifted(mu))
    for zs in (z1, z2, z3):
        assert zs.count == 1
        assert zs.zeros[0][0] == pytest.approx(want, abs=1e-12)


@pytest.mark.parametrize("c", [0.1, 0.5, 1.0, 2.0, 10.0])
def test_equality_family_zero_location(c):
    # sigma = c delta_{-1}: single zero at -1/(1+c)
    mu = dirac(-1.0, c)
    zs = zeros_via_L(build_system_from_measure(mu))
    assert zs.count == 1
    assert zs.zeros[0][0] == pytest.approx(-1.0 / (1.0 + c), abs=1e-12)


def test_two_atom_closed_form():
    # sigma = a delta_1 - a delta_{-1}: K = 2aw/(1-w^2), so
    # h = (1 + (2a-1)w^2)/(1-w^2) with zeros at +-i/sqrt(2a-1)
    a = 2.0
    mu = AtomicMeasure(
        atoms=((UnitPoint(1.0 + 0j), a + 0j), (UnitPoint(-1.0 + 0j), -a + 0j))
    )
    want = 1j / np.sqrt(2 * a - 1)
    zs = zeros_via_numerator_roots(shifted(mu))
    assert zs.count == 2
    got = sorted((z for z, _ in zs.zeros), key=lambda z: z.imag)
    assert got[0] == pytest.approx(-want, abs=1e-12)
    assert got[1] == pytest.approx(want, abs=1e-12)


def test_double_zero_fixture(double_zero_measure):
    w0 = 0.4 + 0.3j
    other = -3.0 / 14.0 - 1j / 14.0
    f = shifted(double_zero_measure)
    for zs in (
        zeros_via_numerator_roots(f),
        zeros_via_argument_principle(f),
        zeros_via_L(build_system_from_measure(double_zero_measure)),
    ):
        assert zs.count == 3, zs
        by_mult = {m: z for z, m in zs.zeros}
        assert by_mult[2] == pytest.approx(w0, abs=1e-5)
        assert by_mult[1] == pytest.approx(other, abs=1e-7)
    # the analytic routes localize the double zero much better than the
    # defective eigencluster does
    zr = zeros_via_numerator_roots(f)
    assert {m: z for z, m in zr.zeros}[2] == pytest.approx(w0, abs=1e-7)


def test_winding_counts_match_root_counts():
    rng = spawn_rng(99, 0)
    hits = 0
    for i in range(25):
        mu = random_conditioned_measure(spawn_rng(99, i), max_atoms=6)
        f = shifted(mu)
        zs_roots = cap_zeros(zeros_via_numerator_roots(f))
        zs_arg = zeros_via_argument_principle(f)
        assert zs_arg.count == zs_roots.count
        hits += zs_arg.count
    assert hits > 0  # the family is not degenerate


def test_three_way_agreement_random():
    for i in range(40):
        mu = random_conditioned_measure(spawn_rng(7, i), max_atoms=6)
        f = shifted(mu)
        za = zeros_via_numerator_roots(f)
        zb = zeros_via_L(build_system_from_measure(mu))
        zc = zeros_via_argument_principle(f)
        ok1, w1 = match_zero_sets(za, zb, tol=1e-7)
        ok2, w2 = match_zero_sets(zc, cap_zeros(za), tol=1e-7)
        assert ok1, (i, w1, za.zeros, zb.zeros)
        assert ok2, (i, w2, za.zeros, zc.zeros)


def test_direct_mode_agreement_random(double_zero_measure):
    # direct-mode functions exercise the pole-free contour on cells that
    # swallow atom poles
    f = CauchyFunction(source=double_zero_measure, mode="direct")
    za = zeros_via_numerator_roots(f)
    zc = zeros_via_argument_principle(f)
    ok, worst = match_zero_sets(zc, cap_zeros(za), tol=1e-7)
    assert ok, (worst, za.zeros, zc.zeros)
    assert za.count == 2


def test_argument_principle_validates_radius():
    f = shifted(dirac(-1.0, 1.0))
    with pytest.raises(ValueError):
        zeros_via_argument_principle(f, radius=0.9999)
    with pytest.raises(ValueError):
        zeros_via_argument_principle(f, radius=0.0)


def test_contour_nudges_past_boundary_zero():
    # park the single zero exactly on the requested contour; the nudge ladder
    # must settle on a nearby clean radius instead of failing
    c = 1.0 / 0.999 - 1.0
    f = shifted(dirac(-1.0, c))
    r, k, M1, M2, err = zeros_mod._contour_with_nudges(f, 0.0, 0.999)
    assert r != 0.999
    assert abs(r / 0.999 - 1.0) <= 5e-4
    assert k in (0, 1)


def test_near_boundary_zero_found():
    c = 1.0 / 0.9985 - 1.0
    f = shifted(dirac(-1.0, c))
    zs = zeros_via_argument_principle(f)
    assert zs.count == 1
    assert zs.zeros[0][0] == pytest.approx(-0.9985, abs=1e-9)


def test_no_zeros_case():
    # tiny weight: zero at -1/(1+c) lies outside the search radius
    f = shifted(dirac(-1.0, 1e-4))
    zs = zeros_via_argument_principle(f)
    assert zs.zeros == ()
    assert zeros_via_L(build_system_from_measure(dirac(-1.0, 1e-4))).count == 1


def test_method_labels():
    f = shifted(dirac(-1.0, 1.0))
    assert zeros_via_argument_principle(f).method == METHOD_ARG
