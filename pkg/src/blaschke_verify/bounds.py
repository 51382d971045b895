"""All inequality checks, each packaged as a BoundReport.

The right-hand sides involving the representation-norm of h are replaced by
the total variation of the explicit representative at hand, which upper
bounds the infimum over representations; reports label such sides as
surrogates.  Every check is a pure function, so suites can shard instances
across workers freely.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np

from .errors import (
    DimensionMismatch,
    NonAtomicMeasure,
    NotNormalized,
    NumericalError,
    QuadratureNoConvergence,
    ZeroOnBoundary,
)
from .linalg import (
    NumericalRangeSupport,
    as_square_matrix,
    eigenvalues_clustered,
    polynomial_roots,
    schur_decompose,
    trace_norm,
)
from .measure import AtomicMeasure, shift_measure, total_variation
from .operator_model import ContractionSystem, build_system_from_measure
from .transform import CauchyFunction
from .zeros import blaschke_sum, zeros_via_L, zeros_via_numerator_roots

BLASCHKE_TOL = 1e-7
SCHUR_LINK_TOL = 1e-9
JENSEN_TOL = 1e-8
REAL_LINE_TOL = 1e-8


def _plain(obj):
    """Recursively strip numpy scalar types so payloads serialize as JSON."""
    if isinstance(obj, dict):
        return {k: _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    return obj


@dataclasses.dataclass(frozen=True)
class BoundReport:
    """One checked inequality lhs <= rhs; slack = rhs - lhs, pass iff slack >= -tol."""

    name: str
    lhs: float
    rhs: float
    tol: float
    details: dict = dataclasses.field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "lhs", float(self.lhs))
        object.__setattr__(self, "rhs", float(self.rhs))
        object.__setattr__(self, "tol", float(self.tol))

    @property
    def slack(self) -> float:
        return self.rhs - self.lhs

    @property
    def passed(self) -> bool:
        return self.slack >= -self.tol

    def to_jsonable(self) -> dict:
        return {
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "tol": self.tol,
            "pass": self.passed,
            "details": _plain(self.details),
        }


def _link(name: str, lhs: float, rhs: float, tol: float) -> dict:
    return {
        "name": name,
        "lhs": lhs,
        "rhs": rhs,
        "slack": rhs - lhs,
        "tol": tol,
        "pass": rhs - lhs >= -tol,
    }


def _zeros_detail(zs) -> list:
    return [
        {"re": loc.real, "im": loc.imag, "multiplicity": m} for loc, m in zs.zeros
    ]


def summarize(reports) -> dict:
    slacks = [r.slack for r in reports]
    return {
        "total": len(reports),
        "failed": sum(1 for r in reports if not r.passed),
        "min_slack": min(slacks) if slacks else None,
    }


def check_theorem1(s: ContractionSystem, tol: float = BLASCHKE_TOL) -> BoundReport:
    """Blaschke sum of the zeros of h(w) = 1 + w<(I-wA)^{-1}phi,psi> vs ||phi|| ||psi||.

    Zeros come through the reciprocal-eigenvalue route, so this is the
    contraction bound checked end to end through the operator model.
    """
    zs = zeros_via_L(s)
    return BoundReport(
        name="contraction-zero-bound",
        lhs=blaschke_sum(zs),
        rhs=s.norm_product(),
        tol=tol,
        details={"zeros": _zeros_detail(zs), "dimension": s.n},
    )


def check_theorem2(sigma: AtomicMeasure, tol: float = BLASCHKE_TOL) -> BoundReport:
    """Blaschke sum for shifted h = 1 + w K(sigma) vs total variation of sigma.

    The total variation of this particular representative upper bounds the
    representation norm of the shifted transform, so the check instantiates
    the zero bound with a surrogate right side.
    """
    if sigma.lebesgue != 0:
        raise NonAtomicMeasure("shifted-mode zero bound needs an atomic measure")
    if sigma.natoms == 0:
        zs_detail: list = []
        lhs = 0.0
    else:
        zs = zeros_via_L(build_system_from_measure(sigma))
        zs_detail = _zeros_detail(zs)
        lhs = blaschke_sum(zs)
    return BoundReport(
        name="shifted-transform-zero-bound",
        lhs=lhs,
        rhs=total_variation(sigma),
        tol=tol,
        details={"zeros": zs_detail, "rhs_kind": "total variation surrogate"},
    )


def check_corollary(mu: AtomicMeasure, tol: float = BLASCHKE_TOL) -> BoundReport:
    """Blaschke sum for direct h = K(mu), h(0) = 1, vs total variation of mu.

    Requires unit mass so that h(0) = 1.  Zeros come from the numerator-root
    oracle since the direct transform need not fit the operator model (its
    Lebesgue part is allowed).  Also verifies that the shifted bound's right
    side on shift_measure(mu) does not exceed this one (the shift does not
    increase total variation).
    """
    if abs(mu.mass() - 1.0) > 1e-12:
        raise NotNormalized(f"mu(T) = {mu.mass()!r}, need 1")
    f = CauchyFunction(source=mu, mode="direct")
    zs = zeros_via_numerator_roots(f)
    rhs = total_variation(mu)
    shifted_rhs = total_variation(shift_measure(mu))
    if shifted_rhs > rhs + 1e-12:
        raise NumericalError(
            f"shift raised total variation: {shifted_rhs!r} > {rhs!r}"
        )
    return BoundReport(
        name="direct-transform-zero-bound",
        lhs=blaschke_sum(zs),
        rhs=rhs,
        tol=tol,
        details={
            "zeros": _zeros_detail(zs),
            "rhs_kind": "total variation surrogate",
            "shifted_rhs": shifted_rhs,
        },
    )


def check_theorem3(
    A,
    L,
    tol: float = BLASCHKE_TOL,
    angles: int = 720,
    cluster_tol: float = 1e-6,
) -> BoundReport:
    """Sum of distances from eigenvalues of L to the numerical range of A
    against the trace norm of L - A.

    The support-function grid can only under-estimate each distance, which
    loosens the left side; a pass is therefore meaningful and a failure real.
    """
    A = as_square_matrix(A)
    L = as_square_matrix(L)
    if A.shape != L.shape:
        raise DimensionMismatch(f"A is {A.shape}, L is {L.shape}")
    support = NumericalRangeSupport(A, angles=angles)
    clusters = eigenvalues_clustered(L, tol=cluster_tol)
    lhs = 0.0
    dists = []
    for cl in clusters:
        d = support.distance(cl.center)
        dists.append(
            {"re": cl.center.real, "im": cl.center.imag, "mult": cl.multiplicity, "dist": d}
        )
        lhs += cl.multiplicity * d
    return BoundReport(
        name="numerical-range-trace-bound",
        lhs=lhs,
        rhs=trace_norm(L - A),
        tol=tol,
        details={"eigenvalues": dists},
    )


def check_schur_chain(
    A, L, tol: float = SCHUR_LINK_TOL, angles: int = 720
) -> BoundReport:
    """The inequality chain through the Schur basis of L.

    With L = Q T Q*, g_n the columns of Q and lam_n = T_nn:

        S1 = sum dist(lam_n, Num(A))
           <= S2 = sum |lam_n - <A g_n, g_n>|
           <= S3 = sum |<(L-A) g_n, g_n>|
           <= trace_norm(L - A).

    S2 and S3 agree up to the Schur residual (lam_n = <L g_n, g_n>); each
    adjacent link is reported in details["links"], and the top-level report
    compares S1 with the trace norm.
    """
    A = as_square_matrix(A)
    L = as_square_matrix(L)
    if A.shape != L.shape:
        raise DimensionMismatch(f"A is {A.shape}, L is {L.shape}")
    sf = schur_decompose(L)
    lams = sf.eigenvalues
    support = NumericalRangeSupport(A, angles=angles)
    S1 = float(sum(support.distance(lam) for lam in lams))
    AG = A @ sf.Q
    diagA = np.einsum("ij,ij->j", np.conj(sf.Q), AG)
    S2 = float(np.sum(np.abs(lams - diagA)))
    DG = (L - A) @ sf.Q
    S3 = float(np.sum(np.abs(np.einsum("ij,ij->j", np.conj(sf.Q), DG))))
    tn = trace_norm(L - A)
    links = [
        _link("distance-vs-diagonal", S1, S2, tol),
        _link("diagonal-identity", S2, S3, tol),
        _link("diagonal-vs-trace-norm", S3, tn, tol),
    ]
    return BoundReport(
        name="schur-chain",
        lhs=S1,
        rhs=tn,
        tol=tol,
        details={"links": links, "S2": S2, "S3": S3},
    )


# ---------------------------------------------------------------------------
# boundary quadrature for the Hardy-space chain

_QUAD_BASE = 4096
_QUAD_MAX = 2**20


def _boundary_mean(values_at):
    """Mean over the unit circle by trapezoid, doubling until stable to 1e-9.

    values_at(theta_array) -> real samples; the integrand must be smooth on
    the circle (checked by the caller), so doubling converges geometrically.
    """
    n = _QUAD_BASE
    prev = None
    while n <= _QUAD_MAX:
        theta = 2.0 * np.pi * np.arange(n) / n
        cur = float(np.mean(values_at(theta)))
        if prev is not None and abs(cur - prev) < 1e-9:
            return cur
        prev = cur
        n *= 2
    raise QuadratureNoConvergence(f"boundary mean still moving at {n // 2} nodes")


def check_jensen_h1(numerator_coeffs, tol: float = JENSEN_TOL) -> BoundReport:
    """The Hardy-space chain for a polynomial h with h(0) = 1.

    Checks, with boundary integrals against normalized arc length,

        sum(1/|z| - 1)  <=  exp(int log|h|) - 1  <=  int|h| - 1  <=  int|h - 1|

    over the zeros z of h inside the open disk.  Boundary zeros are rejected
    up front (the log integral would be singular).
    """
    coeffs = np.asarray(numerator_coeffs, dtype=complex).ravel()
    if coeffs.size == 0 or abs(coeffs[0] - 1.0) > 1e-12:
        raise NotNormalized("polynomial must have constant coefficient 1")

    def h_on_circle(theta):
        return np.polynomial.polynomial.polyval(np.exp(1j * theta), coeffs)

    probe = np.abs(h_on_circle(2.0 * np.pi * np.arange(_QUAD_BASE) / _QUAD_BASE))
    if float(np.min(probe)) <= 1e-8:
        raise ZeroOnBoundary(f"min |h| on the circle is {float(np.min(probe)):.3e}")
    roots = polynomial_roots(coeffs)
    inside = roots[np.abs(roots) < 1.0]
    lhs = float(np.sum(1.0 / np.abs(inside) - 1.0)) if inside.size else 0.0
    geo = math.exp(_boundary_mean(lambda t: np.log(np.abs(h_on_circle(t)))))
    h1 = _boundary_mean(lambda t: np.abs(h_on_circle(t)))
    h1m1 = _boundary_mean(lambda t: np.abs(h_on_circle(t) - 1.0))
    links = [
        _link("blaschke-vs-geometric-mean", lhs, geo - 1.0, tol),
        _link("geometric-vs-h1", geo - 1.0, h1 - 1.0, tol),
        _link("h1-vs-centered-h1", h1 - 1.0, h1m1, tol),
    ]
    return BoundReport(
        name="hardy-chain",
        lhs=lhs,
        rhs=h1m1,
        tol=tol,
        details={
            "links": links,
            "geometric_mean": geo,
            "h1_norm": h1,
            "h1_norm_centered": h1m1,
            "zeros_inside": [{"re": z.real, "im": z.imag} for z in inside],
        },
    )


def check_real_line_variant(
    atoms,
    tol: float = REAL_LINE_TOL,
    imag_tol: float = 1e-8,
    cluster_tol: float = 1e-6,
) -> BoundReport:
    """Upper-half-plane zeros of a line measure's transform vs its first moment norm.

    For mu = sum c_j delta_{s_j} on the real line with sum c_j = 1 and
    h(lam) = sum c_j/(s_j - lam), the bound is sum Im(lam) over zeros with
    Im(lam) > 0 against sum |s_j| |c_j|.

    The operator route: the resolvent identity needs the first-moment weights
    c'_j = s_j c_j.  With A = diag(s_j), phi'_j = sqrt|c'_j|,
    psi'_j = conj(c'_j/|c'_j|) sqrt|c'_j| and L = A - phi' psi'*,

        1 + <(lam - A)^{-1} phi', psi'> = -lam h(lam),

    so the spectrum of L is {0} together with the zeros of h, multiplicities
    included; plain sqrt|c_j| weighting would tie eigenvalues to solutions of
    h = 1 instead.  Each counted eigenvalue is checked to be an actual zero
    of h (residual <= 1e-8).
    """
    ss = np.array([float(s) for s, _ in atoms])
    cc = np.array([complex(c) for _, c in atoms])
    if cc.size == 0 or abs(np.sum(cc) - 1.0) > 1e-12:
        raise NotNormalized(f"weights sum to {complex(np.sum(cc))!r}, need 1")
    cp = ss * cc
    mod = np.abs(cp)
    phi = np.sqrt(mod).astype(complex)
    psi = np.conj(np.where(mod > 0, cp / np.where(mod > 0, mod, 1.0), 0.0)) * np.sqrt(mod)
    L = np.diag(ss).astype(complex) - np.outer(phi, np.conj(psi))
    clusters = eigenvalues_clustered(L, tol=cluster_tol)
    lhs = 0.0
    counted = []
    for cl in clusters:
        if cl.center.imag > imag_tol:
            lam = cl.center
            resid = abs(np.sum(cc / (ss - lam)))
            if resid > 1e-8:
                raise NumericalError(
                    f"eigenvalue {lam!r} counted but h({lam!r}) = {resid:.3e} != 0"
                )
            lhs += cl.multiplicity * lam.imag
            counted.append(
                {"re": lam.real, "im": lam.imag, "mult": cl.multiplicity, "residual": resid}
            )
    return BoundReport(
        name="half-plane-zero-bound",
        lhs=lhs,
        rhs=float(np.sum(np.abs(ss) * np.abs(cc))),
        tol=tol,
        details={"upper_zeros": counted, "n_atoms": int(cc.size)},
    )
