import math

import numpy as np
import pytest

from blaschke_verify.bounds import (
    BoundReport,
    check_corollary,
    check_jensen_h1,
    check_real_line_variant,
    check_schur_chain,
    check_theorem1,
    check_theorem2,
    check_theorem3,
    summarize,
)
from blaschke_verify.errors import NotNormalized, ZeroOnBoundary
from blaschke_verify.measure import AtomicMeasure, UnitPoint, dirac
from blaschke_verify.random_instances import (
    complex_gaussian,
    random_contraction,
    random_lowrank_pair,
    random_real_line_atoms,
    random_system,
    spawn_rng,
)
from blaschke_verify.operator_model import ContractionSystem


def test_bound_report_semantics():
    r = BoundReport(name="x", lhs=1.0, rhs=2.0, tol=0.0)
    assert r.slack == 1.0 and r.passed
    r2 = BoundReport(name="x", lhs=2.0 + 1e-12, rhs=2.0, tol=1e-9)
    assert r2.passed  # inside tolerance
    r3 = BoundReport(name="x", lhs=3.0, rhs=2.0, tol=1e-9)
    assert not r3.passed
    assert summarize([r, r3]) == {"total": 2, "failed": 1, "min_slack": -1.0}
    assert summarize([])["min_slack"] is None


def test_report_jsonable_is_plain():
    import json

    r = BoundReport(
        name="x",
        lhs=np.float64(1.0),
        rhs=np.float64(2.0),
        tol=1e-9,
        details={"v": np.float64(3.0), "ok": np.bool_(True), "n": np.int64(2)},
    )
    payload = r.to_jsonable()
    json.dumps(payload, allow_nan=False)  # must not raise
    assert payload["pass"] is True


def test_sharp_example_attains_equality():
    rep = check_theorem2(dirac(-1.0, 1.0))
    assert rep.passed
    assert rep.lhs == pytest.approx(1.0, abs=1e-12)
    assert rep.rhs == pytest.approx(1.0, abs=1e-12)
    assert abs(rep.slack) < 1e-10


@pytest.mark.parametrize("c", [0.1, 0.5, 1.0, 2.0, 10.0])
def test_equality_family(c):
    # sigma = c delta_{-1}: zero at -1/(1+c), blaschke sum = c = total variation
    rep = check_theorem2(dirac(-1.0, c))
    assert rep.passed
    assert rep.lhs == pytest.approx(c, abs=1e-10)
    assert rep.rhs == pytest.approx(c, abs=1e-10)


def test_theorem2_random():
    from blaschke_verify.random_instances import random_atomic_measure

    for i in range(60):
        rng = spawn_rng(31, i)
        mu = random_atomic_measure(rng, max_atoms=8)
        rep = check_theorem2(mu)
        assert rep.passed, (i, rep.to_jsonable())


def test_theorem2_empty_measure():
    rep = check_theorem2(AtomicMeasure(atoms=()))
    assert rep.passed and rep.lhs == 0.0


def test_theorem1_random():
    for i in range(60):
        rng = spawn_rng(32, i)
        s = random_system(rng, max_dim=8)
        rep = check_theorem1(s)
        assert rep.passed, (i, rep.to_jsonable())


def test_corollary_requires_unit_mass():
    with pytest.raises(NotNormalized):
        check_corollary(dirac(1.0, 2.0))


def test_corollary_on_normalized_measure():
    # mass one: direct transform equals 1 at 0, bound reads off shifted rep
    mu = AtomicMeasure(
        atoms=(
            (UnitPoint(1.0 + 0j), 0.75 + 0.25j),
            (UnitPoint(-1.0 + 0j), 0.25 - 0.25j),
        )
    )
    assert abs(mu.mass() - 1.0) < 1e-15
    rep = check_corollary(mu)
    assert rep.passed


def test_theorem3_and_schur_random():
    for i in range(60):
        rng = spawn_rng(33, i)
        A, L = random_lowrank_pair(rng, max_dim=8)
        r1 = check_theorem3(A, L)
        r2 = check_schur_chain(A, L)
        assert r1.passed, (i, r1.to_jsonable())
        assert r2.passed, (i, r2.to_jsonable())
        # the chain's middle quantities coincide up to the Schur residual
        for link in r2.details["links"]:
            assert link["pass"], (i, link)


def test_schur_chain_identity_is_tight():
    rng = spawn_rng(34, 0)
    A, L = random_lowrank_pair(rng, max_dim=6)
    rep = check_schur_chain(A, L)
    ident = [l for l in rep.details["links"] if l["name"] == "diagonal-identity"][0]
    assert abs(ident["lhs"] - ident["rhs"]) < 1e-9


def test_jensen_centered_example():
    # h = 1 - 2w: single zero at 1/2, geometric mean exp(log 2), centered
    # h1 norm exactly 2
    rep = check_jensen_h1([1.0, -2.0])
    assert rep.passed
    assert rep.lhs == pytest.approx(1.0, abs=1e-9)
    assert rep.rhs == pytest.approx(2.0, abs=1e-12)
    links = {l["name"]: l for l in rep.details["links"]}
    gm = links["blaschke-vs-geometric-mean"]
    assert gm["rhs"] == pytest.approx(math.exp(math.log(2.0)) - 1.0, abs=1e-9)
    h1 = links["geometric-vs-h1"]
    assert h1["rhs"] == pytest.approx(rep.details["h1_norm"] - 1.0, abs=1e-12)


def test_jensen_rejects_bad_constant():
    with pytest.raises(NotNormalized):
        check_jensen_h1([0.5, 1.0])


def test_jensen_zero_on_boundary():
    with pytest.raises(ZeroOnBoundary):
        check_jensen_h1([1.0, -1.0])  # h(1) = 0


def test_jensen_random():
    from blaschke_verify.random_instances import random_polynomial_with_unit_constant

    for i in range(20):
        rng = spawn_rng(35, i)
        coeffs = random_polynomial_with_unit_constant(rng)
        rep = check_jensen_h1(coeffs)
        assert rep.passed, (i, rep.to_jsonable(), coeffs)


def test_real_line_two_atom_oracle():
    # h(lam) = c1/(s1-lam) + c2/(s2-lam) with c1+c2 = 1 vanishes exactly at
    # lam = c1 s2 + c2 s1
    c1, c2 = 0.5 + 0.5j, 0.5 - 0.5j
    s1, s2 = -1.0, 2.0
    lam = c1 * s2 + c2 * s1
    assert abs(c1 / (s1 - lam) + c2 / (s2 - lam)) < 1e-14
    rep = check_real_line_variant([(s1, c1), (s2, c2)])
    assert rep.passed
    assert rep.lhs == pytest.approx(abs(lam.imag), abs=1e-10)
    assert rep.rhs == pytest.approx(abs(s1) * abs(c1) + abs(s2) * abs(c2), abs=1e-12)


def test_real_line_fixture(real_line_fixture):
    atoms = [
        (a["s"], complex(a["c"]["re"], a["c"]["im"])) for a in real_line_fixture["atoms"]
    ]
    rep = check_real_line_variant(atoms)
    exp = real_line_fixture["expected"]
    assert rep.passed
    assert rep.lhs == pytest.approx(exp["lhs"], abs=1e-8)
    assert rep.rhs == pytest.approx(exp["rhs"], abs=1e-12)
    zs = rep.details["upper_zeros"]
    assert len(zs) == 1
    assert complex(zs[0]["re"], zs[0]["im"]) == pytest.approx(
        complex(exp["nonreal_zero"]["re"], exp["nonreal_zero"]["im"]), abs=1e-8
    )


def test_real_line_requires_unit_sum():
    with pytest.raises(NotNormalized):
        check_real_line_variant([(0.0, 2.0 + 0j)])


def test_real_line_random():
    for i in range(40):
        rng = spawn_rng(36, i)
        atoms = random_real_line_atoms(rng)
        rep = check_real_line_variant(atoms)
        assert rep.passed, (i, rep.to_jsonable(), atoms)


def test_dilation_report_shape():
    rng = spawn_rng(37, 0)
    n = 3
    s = ContractionSystem(
        A=random_contraction(rng, n),
        phi=complex_gaussian(rng, (n,)),
        psi=complex_gaussian(rng, (n,)),
    )
    from blaschke_verify.dilation import roundtrip_check

    rep = roundtrip_check(s, 4)
    assert rep.passed
    assert set(rep.details) >= {"order", "dimension", "taylor_errors", "n_atoms"}
