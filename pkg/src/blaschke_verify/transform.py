"""Cauchy transforms of atomic measures and the holomorphic functions built
from them.

Two function modes cover all uses downstream:

* direct: h(w) = (K mu)(w) = sum_j c_j / (1 - w conj(zeta_j)) + lebesgue
* shifted: h(w) = 1 + w (K sigma)(w), the normalized form with h(0) = 1 whose
  zero bounds are controlled by sigma

Since the measures are finite atomic (plus a constant), h is rational; the
exact numerator/denominator form doubles as a zero oracle.
"""

from __future__ import annotations

import dataclasses

import numpy as np
from numpy.polynomial import polynomial as P

from .errors import OutsideDisk
from .measure import AtomicMeasure

MODES = ("direct", "shifted")

# relative threshold for dropping trailing numerator coefficients
COEFF_TRIM_REL = 1e-12


@dataclasses.dataclass(frozen=True)
class CauchyFunction:
    source: AtomicMeasure
    mode: str = "shifted"

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")

    def __call__(self, w):
        return eval_h(self, w)


def _check_disk(w):
    warr = np.asarray(w, dtype=complex)
    mask = np.abs(warr) >= 1.0
    if np.any(mask):
        bad = np.atleast_1d(warr)[np.atleast_1d(mask)]
        raise OutsideDisk(f"evaluation point(s) with |w| >= 1: {bad[:4]!r}")
    return warr


def _K_values(mu: AtomicMeasure, warr: np.ndarray) -> np.ndarray:
    if mu.natoms:
        vals = np.sum(mu.weights / (1.0 - warr[..., None] * np.conj(mu.points)), axis=-1)
    else:
        vals = np.zeros(warr.shape, dtype=complex)
    return vals + mu.lebesgue


def _K_derivative(mu: AtomicMeasure, warr: np.ndarray) -> np.ndarray:
    # d/dw [c/(1-w zbar)] = c zbar/(1-w zbar)^2
    if not mu.natoms:
        return np.zeros(warr.shape, dtype=complex)
    zbar = np.conj(mu.points)
    return np.sum(mu.weights * zbar / (1.0 - warr[..., None] * zbar) ** 2, axis=-1)


def _as_input_shape(vals, w):
    return complex(vals) if np.isscalar(w) or np.ndim(w) == 0 else vals


def eval_K(mu: AtomicMeasure, w):
    """(K mu)(w) for |w| < 1; w may be a scalar or any-shape array.

    Direct summation over atoms; the Lebesgue component contributes its
    coefficient (only the zeroth moment survives the kernel).
    """
    return _as_input_shape(_K_values(mu, _check_disk(w)), w)


def eval_h(f: CauchyFunction, w):
    """h(w): the transform itself in direct mode, 1 + w*(K sigma)(w) in shifted."""
    warr = _check_disk(w)
    if f.mode == "direct":
        vals = _K_values(f.source, warr)
    else:
        vals = 1.0 + warr * _K_values(f.source, warr)
    return _as_input_shape(vals, w)


def eval_h_derivative(f: CauchyFunction, w):
    """Analytic h'(w) by termwise differentiation of the kernel."""
    warr = _check_disk(w)
    if f.mode == "direct":
        vals = _K_derivative(f.source, warr)
    else:
        vals = _K_values(f.source, warr) + warr * _K_derivative(f.source, warr)
    return _as_input_shape(vals, w)


def taylor_moment(mu: AtomicMeasure, n: int) -> complex:
    """n-th Taylor coefficient of K mu: sum_j c_j conj(zeta_j)^n, + lebesgue at n=0."""
    if n < 0:
        raise ValueError("moment index must be >= 0")
    acc = complex(np.sum(mu.weights * np.conj(mu.points) ** n)) if mu.natoms else 0.0
    if n == 0:
        acc += mu.lebesgue
    return complex(acc)


@dataclasses.dataclass(frozen=True)
class RationalForm:
    """h = numerator / prod_j (1 - w conj(pole_j)) with poles at the atoms.

    Coefficients ascend in w.  The poles sit exactly at the atom points (the
    kernel denominator 1 - w conj(zeta) vanishes at w = zeta), hence on the
    unit circle, never inside the disk where zeros are counted.
    """

    numerator: np.ndarray
    poles: np.ndarray

    def denominator_coeffs(self) -> np.ndarray:
        q = np.array([1.0 + 0j])
        for z in self.poles:
            q = P.polymul(q, np.array([1.0, -np.conj(z)]))
        return q

    def __call__(self, w):
        warr = np.asarray(w, dtype=complex)
        num = (
            P.polyval(warr, self.numerator)
            if self.numerator.size
            else np.zeros(warr.shape, dtype=complex)
        )
        den = np.prod(1.0 - warr[..., None] * np.conj(self.poles), axis=-1)
        vals = num / den
        return complex(vals) if np.isscalar(w) or np.ndim(w) == 0 else vals


def rational_form(f: CauchyFunction) -> RationalForm:
    """Clear denominators to expose h as an exact ratio of polynomials.

    The numerator's roots inside the disk are exactly the zeros of h with
    matching multiplicity, which makes this the reference oracle for the other
    zero finders.  Trailing coefficients below 1e-12 of the largest are
    trimmed so that cancellation dust cannot masquerade as a leading term.
    """
    mu = f.source
    pts = mu.points
    zb = np.conj(pts)
    n = mu.natoms
    # Q = prod (1 - w conj(zeta_j)); partial[j] = Q without factor j
    Q = np.array([1.0 + 0j])
    for j in range(n):
        Q = P.polymul(Q, np.array([1.0, -zb[j]]))
    S = np.zeros(max(n, 1), dtype=complex)
    for j in range(n):
        part = np.array([1.0 + 0j])
        for k in range(n):
            if k != j:
                part = P.polymul(part, np.array([1.0, -zb[k]]))
        S = P.polyadd(S, mu.weights[j] * part)
    KQ = P.polyadd(S, mu.lebesgue * Q)  # numerator of K mu over Q
    if f.mode == "direct":
        num = KQ
    else:
        num = P.polyadd(Q, P.polymul(np.array([0.0, 1.0]), KQ))
    num = np.asarray(num, dtype=complex)
    if num.size:
        top = np.max(np.abs(num))
        if top > 0:
            keep = num.size
            while keep > 1 and abs(num[keep - 1]) <= COEFF_TRIM_REL * top:
                keep -= 1
            num = num[:keep]
        else:
            num = np.zeros(1, dtype=complex)
    return RationalForm(numerator=num, poles=pts.copy())
