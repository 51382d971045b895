"""Zeros of h in the open unit disk by three independent routes.

1. reciprocal-eigenvalue: eigenvalues of the rank-one perturbation L outside
   the closed disk are exactly the reciprocals of zeros of h, multiplicity
   matching algebraic multiplicity;
2. argument-principle: adaptive winding-number quadrature with recursive
   circle-covered quadrisection;
3. numerator-roots: companion-matrix roots of the exact rational numerator.

Cross-validating the three on random instances is the core scientific check
of this package, so the routes share no computational machinery beyond the
eigensolver.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np

from . import transform
from .errors import (
    ContourThroughZero,
    MaxDepthExceeded,
    NonIntegerWinding,
    NumericalError,
)
from .linalg import cluster_points, polynomial_roots
from .operator_model import (
    ContractionSystem,
    PerturbedOperator,
    build_L,
    eigenvalues_outside_disk,
)
from .transform import CauchyFunction, rational_form

METHOD_L = "reciprocal-eigenvalue"
METHOD_ARG = "argument-principle"
METHOD_ROOTS = "numerator-roots"

# zeros reported by different routes are considered the same within this
PAIRING_TOL = 1e-7


@dataclasses.dataclass(frozen=True)
class ZeroSet:
    """Zeros (location, multiplicity) in the open disk, sorted by (Re, Im)."""

    zeros: tuple
    method: str

    def __post_init__(self):
        zs = []
        for loc, mult in self.zeros:
            loc = complex(loc)
            mult = int(mult)
            if abs(loc) >= 1.0:
                raise NumericalError(f"zero {loc!r} is not inside the open disk")
            if mult < 1:
                raise NumericalError(f"multiplicity {mult} < 1 at {loc!r}")
            zs.append((loc, mult))
        zs.sort(key=lambda zm: (zm[0].real, zm[0].imag))
        object.__setattr__(self, "zeros", tuple(zs))

    @property
    def count(self) -> int:
        return sum(m for _, m in self.zeros)


def blaschke_sum(z: ZeroSet) -> float:
    """sum multiplicity * (1/|zero| - 1); zero for the empty set."""
    return float(sum(m * (1.0 / abs(loc) - 1.0) for loc, m in z.zeros))


def match_zero_sets(a: ZeroSet, b: ZeroSet, tol: float = PAIRING_TOL):
    """Optimal 1-1 pairing of two zero sets.

    Returns (matched, worst_distance): matched is True when both sets have the
    same number of zeros, the assignment puts every pair within tol, and the
    paired multiplicities agree.  worst_distance is the largest paired
    distance (0.0 for two empty sets, inf when the counts differ).
    """
    if len(a.zeros) != len(b.zeros) or a.count != b.count:
        return False, math.inf
    if not a.zeros:
        return True, 0.0
    from scipy.optimize import linear_sum_assignment

    za = np.array([z for z, _ in a.zeros])
    zb = np.array([z for z, _ in b.zeros])
    cost = np.abs(za[:, None] - zb[None, :])
    rows, cols = linear_sum_assignment(cost)
    worst = float(cost[rows, cols].max())
    mults_ok = all(a.zeros[i][1] == b.zeros[j][1] for i, j in zip(rows, cols))
    return (worst <= tol and mults_ok), worst


def zeros_via_L(
    s: ContractionSystem,
    boundary_tol: float = 1e-8,
    cluster_tol: float = 1e-6,
) -> ZeroSet:
    """Reciprocals of the eigenvalues of L = A - phi psi* outside the disk.

    Eigenvalue clusters within boundary_tol of the unit circle are
    indeterminate and excluded (their reciprocal zeros would hug the boundary
    from inside); multiplicities are cluster sizes.
    """
    p = build_L(s)
    outside = eigenvalues_outside_disk(
        p, boundary_tol=boundary_tol, cluster_tol=cluster_tol
    )
    return ZeroSet(
        zeros=tuple((1.0 / cl.center, cl.multiplicity) for cl in outside),
        method=METHOD_L,
    )


def zeros_via_numerator_roots(f: CauchyFunction, cluster_tol: float = 1e-6) -> ZeroSet:
    """Roots of the exact rational numerator, filtered to the open disk.

    The companion-matrix eigenvalues of the numerator polynomial are the only
    candidates for zeros of h; clustering recovers multiplicities.
    """
    rf = rational_form(f)
    roots = polynomial_roots(rf.numerator)
    inside = roots[np.abs(roots) < 1.0]
    clusters = cluster_points(inside, radius=cluster_tol)
    return ZeroSet(
        zeros=tuple((cl.center, cl.multiplicity) for cl in clusters),
        method=METHOD_ROOTS,
    )


# ---------------------------------------------------------------------------
# argument principle


class _NearZeroContour(Exception):
    """Internal: |h| dipped below the guard on a contour; caller nudges."""


def _h_and_deriv_continuation(f: CauchyFunction, warr: np.ndarray):
    # The rational continuation of h, legal anywhere off the poles.  Covering
    # disks of the subdivision bulge past the unit circle, which the public
    # evaluators reject; zeros isolated out there are discarded at the end.
    K = transform._K_values(f.source, warr)
    Kp = transform._K_derivative(f.source, warr)
    if f.mode == "direct":
        return K, Kp
    return 1.0 + warr * K, K + warr * Kp


_BASE_NODES = 1024
_MAX_NODES = 65536
_WINDING_TOL = 1e-3
_GUARD_REL = 1e-12
# reject contours passing closer than this (relative) to an atom pole; the
# nudge ladder reaches 4e-4 so a rejected radius can always be cleared
_POLE_CLEARANCE_REL = 2e-4


def _contour_moments(f: CauchyFunction, center: complex, rho: float):
    """Zero count and first two zero moments over |w - center| = rho.

    The integrand is the logarithmic derivative of F = h prod_j (w - zeta_j),
    which has the zeros of h and no poles, so the winding counts zeros alone
    even when the disk swallows atom poles (subdivision cells bulge well past
    the unit circle; without the pole-free form a cell holding one zero and
    one pole nets winding zero and the zero is silently lost).  Contours
    passing within 2e-4 (relative) of an atom are rejected up front.

    Trapezoid nodes double until the winding settles within 1e-3 of an
    integer (NonIntegerWinding beyond 65536 nodes), then twice more so the
    moments inherit the geometric tail; the change over the last doubling is
    returned as a moment error estimate.  Raises _NearZeroContour when |h|
    dips below 1e-12 of its contour maximum or the contour hugs a pole.
    """
    poles = f.source.points
    if poles.size:
        clearance = np.abs(np.abs(poles - center) - rho)
        if float(clearance.min()) < _POLE_CLEARANCE_REL * rho:
            raise _NearZeroContour
    n = _BASE_NODES
    k = None
    settled_at = None
    prev = None
    err = math.inf
    while True:
        theta = 2.0 * np.pi * np.arange(n) / n
        e = np.exp(1j * theta)
        w = center + rho * e
        h, hp = _h_and_deriv_continuation(f, w)
        amax = float(np.max(np.abs(h)))
        if amax == 0.0 or float(np.min(np.abs(h))) <= _GUARD_REL * amax:
            raise _NearZeroContour
        logd = hp / h
        if poles.size:
            logd = logd + np.sum(1.0 / (w[:, None] - poles[None, :]), axis=1)
        g = logd * (rho * e)
        W = complex(np.mean(g))
        M1 = complex(np.mean(w * g))
        M2 = complex(np.mean(w * w * g))
        if settled_at is None:
            cand = round(W.real)
            if abs(W - cand) < _WINDING_TOL:
                k, settled_at = cand, n
            elif n >= _MAX_NODES:
                raise NonIntegerWinding(
                    f"winding {W!r} not near an integer after {n} nodes"
                )
        elif abs(W - k) > _WINDING_TOL:
            # a coincidental early settle; resume the search if budget remains
            if n >= _MAX_NODES:
                raise NonIntegerWinding(
                    f"winding drifted from {k} to {W!r} at {n} nodes"
                )
            k, settled_at, prev, err = None, None, None, math.inf
        else:
            if prev is not None:
                err = abs(M1 - prev[0]) + abs(M2 - prev[1])
            if n >= settled_at * 4:
                return k, M1, M2, err
            prev = (M1, M2)
        n *= 2


def _contour_with_nudges(f: CauchyFunction, center: complex, rho: float):
    """Retry the contour with small relative radius nudges, growing first.

    A zero (or pole) hugging the contour shows up either as the |h| guard
    tripping or as a winding that refuses to settle, so both reroute here;
    the ladder reaches +-4e-4 relative, enough to clear anything the 65536
    node budget cannot resolve.
    """
    tried = [rho]
    for j in range(9):
        if j == 0:
            r = rho
        else:
            step = ((j + 1) // 2) * 1e-4
            r = rho * (1.0 + step) if j % 2 == 1 else rho * (1.0 - step)
            tried.append(r)
        try:
            return (r, *_contour_moments(f, center, r))
        except (_NearZeroContour, NonIntegerWinding):
            continue
    raise ContourThroughZero(
        f"no clean contour around {center!r}, tried radii {tried!r}"
    )


# children cover the parent disk: quadrant centers at rho/2 (1 +- i) etc.,
# radius rho/sqrt(2); the hair of margin keeps boundary points strictly inside
_CHILD_OFFSETS = np.array([1 + 1j, 1 - 1j, -1 + 1j, -1 - 1j]) / 2.0
_CHILD_FACTOR = (1.0 / math.sqrt(2.0)) * 1.000001
_CELL_FLOOR = 1e-8
_SPREAD_FLOOR = 1e-8


def _isolate(f, center, rho, depth, max_depth, out):
    radius, k, M1, M2, err = _contour_with_nudges(f, center, rho)
    if k < 0:
        # the integrand is pole-free, so a settled negative count means the
        # quadrature itself went wrong
        raise NonIntegerWinding(f"negative zero count {k} on cell at {center!r}")
    if k == 0:
        return
    centroid = M1 / k
    spread = math.sqrt(abs(M2 / k - centroid * centroid))
    floor = max(_SPREAD_FLOOR, 3.0 * math.sqrt(err) if math.isfinite(err) else 0.0)
    sane = abs(centroid - center) <= radius * 1.05
    if (spread <= floor and sane) or radius <= _CELL_FLOOR:
        out.append((complex(centroid), k))
        return
    if depth >= max_depth:
        raise MaxDepthExceeded(
            f"cell at {center!r} radius {radius!r} still mixed at depth {depth}"
        )
    for off in _CHILD_OFFSETS:
        _isolate(
            f,
            center + radius * complex(off),
            radius * _CHILD_FACTOR,
            depth + 1,
            max_depth,
            out,
        )


def zeros_via_argument_principle(
    f: CauchyFunction, radius: float = 0.999, max_depth: int = 60
) -> ZeroSet:
    """Count and isolate zeros of h in |w| < radius by winding numbers.

    The top-level contour certifies the total count; recursive quadrisection
    with covering disks then isolates each zero, a cell terminating once its
    zero-centroid spread is below the moment noise floor (or its radius hits
    1e-8).  Covering disks overlap, so duplicate reports within 1e-7 are
    merged; the surviving multiplicities must add up to the certified total.
    Search is capped below the boundary (default 0.999): the contour routes
    degrade near the circle and the numerator-root oracle covers the rim.
    """
    if not 0.0 < radius <= 0.999:
        raise ValueError("radius must lie in (0, 0.999]")
    if max_depth < 1:
        raise ValueError("max_depth must be >= 1")
    cap, k_top, _, _, _ = _contour_with_nudges(f, 0.0, radius)
    if k_top < 0:
        raise NumericalError(f"top-level contour winding {k_top} is negative")
    if k_top == 0:
        return ZeroSet(zeros=(), method=METHOD_ARG)
    raw: list = []
    for off in _CHILD_OFFSETS:
        _isolate(f, cap * complex(off), cap * _CHILD_FACTOR, 1, max_depth, raw)
    # dedupe overlap duplicates; the same zero keeps its full multiplicity in
    # every covering cell, so groups take the max, not the sum
    groups: list[list] = []
    for z, m in raw:
        for grp in groups:
            if abs(z - grp[0][0]) <= PAIRING_TOL:
                grp.append((z, m))
                break
        else:
            groups.append([(z, m)])
    zeros = []
    total = 0
    for grp in groups:
        z = sum(g[0] for g in grp) / len(grp)
        m = max(g[1] for g in grp)
        if abs(z) < cap:
            zeros.append((z, m))
            total += m
    if total != k_top:
        raise NumericalError(
            f"isolated multiplicities sum to {total}, top contour counted {k_top}"
        )
    return ZeroSet(zeros=tuple(zeros), method=METHOD_ARG)
