"""Finite-dimensional operator model tying Cauchy transforms to spectra.

A purely atomic measure sigma = sum c_j delta_{zeta_j} with polar weights
c_j = nu_j |c_j| turns into the system

    A = diag(conj(zeta_j)),  phi_j = sqrt|c_j|,  psi_j = conj(nu_j) sqrt|c_j|,

for which <(I - wA)^{-1} phi, psi> = (K sigma)(w).  The rank-one perturbation
L = A - phi psi* then carries the zeros of h(w) = 1 + w (K sigma)(w) as the
reciprocals of its eigenvalues outside the closed unit disk, with matching
algebraic multiplicity, and h(1/lam) coincides with the perturbation
determinant det(I + phi psi* (lam - A)^{-1}).
"""

from __future__ import annotations

import dataclasses
import warnings

import numpy as np
import scipy.linalg

from .errors import (
    DefectiveClusterWarning,
    DimensionMismatch,
    EmptyMeasure,
    InputError,
    NonAtomicMeasure,
    NotAContraction,
    NumericalError,
    OutsideDisk,
    OutsideDomain,
    SingularResolvent,
)
from .linalg import (
    EigenCluster,
    as_square_matrix,
    eigenvalues_clustered,
    operator_norm,
    schur_decompose,
)
from .measure import AtomicMeasure, polar_decompose

CONTRACTION_SLACK = 1e-10
BOUNDARY_TOL = 1e-8


@dataclasses.dataclass(frozen=True)
class ContractionSystem:
    """A contraction A with vectors phi, psi of matching dimension."""

    A: np.ndarray
    phi: np.ndarray
    psi: np.ndarray

    def __post_init__(self):
        A = as_square_matrix(self.A)
        phi = np.asarray(self.phi, dtype=complex).ravel()
        psi = np.asarray(self.psi, dtype=complex).ravel()
        if phi.size != A.shape[0] or psi.size != A.shape[0]:
            raise DimensionMismatch(
                f"A is {A.shape[0]}x{A.shape[0]} but |phi|={phi.size}, |psi|={psi.size}"
            )
        nrm = operator_norm(A)
        if nrm > 1.0 + CONTRACTION_SLACK:
            raise NotAContraction(f"||A|| = {nrm!r} exceeds 1 + 1e-10")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "psi", psi)

    @property
    def n(self) -> int:
        return self.A.shape[0]

    def norm_product(self) -> float:
        """||phi|| * ||psi||, the trace norm of the rank-one perturbation."""
        return float(np.linalg.norm(self.phi) * np.linalg.norm(self.psi))


@dataclasses.dataclass(frozen=True)
class PerturbedOperator:
    """L = A - phi psi*; keeps the source system for provenance."""

    L: np.ndarray
    system: ContractionSystem


def build_system_from_measure(sigma: AtomicMeasure) -> ContractionSystem:
    """Model of a purely atomic measure with weights absorbed into phi, psi.

    The sqrt|c_j| scaling converts the weighted inner product of
    L^2(d|sigma|) into the standard one, so <(I-wA)^{-1}phi,psi> = (K sigma)(w)
    and ||phi||*||psi|| = total variation of sigma.  A is unitary diagonal.
    """
    if sigma.lebesgue != 0:
        raise NonAtomicMeasure("operator model needs a purely atomic measure")
    if sigma.natoms == 0:
        raise EmptyMeasure("operator model needs at least one atom")
    pol = polar_decompose(sigma)
    root = np.sqrt(pol.moduli)
    A = np.diag(np.conj(sigma.points))
    phi = root.astype(complex)
    psi = np.conj(pol.phases) * root
    return ContractionSystem(A=A, phi=phi, psi=psi)


def eval_h_resolvent(s: ContractionSystem, w: complex) -> complex:
    """h(w) = 1 + w <(I - wA)^{-1} phi, psi> by LU solve, |w| < 1."""
    w = complex(w)
    if abs(w) >= 1.0:
        raise OutsideDisk(f"|w| = {abs(w)!r} >= 1")
    B = np.eye(s.n, dtype=complex) - w * s.A
    try:
        lu, piv = scipy.linalg.lu_factor(B)
        x = scipy.linalg.lu_solve((lu, piv), s.phi)
    except (scipy.linalg.LinAlgError, np.linalg.LinAlgError, ValueError) as exc:
        raise SingularResolvent(f"I - wA singular at w = {w!r}: {exc}") from exc
    if not np.all(np.isfinite(x.view(float))):
        raise SingularResolvent(f"resolvent overflow at w = {w!r}")
    return complex(1.0 + w * np.vdot(s.psi, x))


def build_L(s: ContractionSystem) -> PerturbedOperator:
    """The rank-one perturbation L = A - phi psi* (Mf = -<f,psi> phi)."""
    return PerturbedOperator(L=s.A - np.outer(s.phi, np.conj(s.psi)), system=s)


def perturbation_determinant(
    s: ContractionSystem, lam: complex, method: str = "both", crosscheck_tol: float = 1e-9
) -> complex:
    """det(I - M (lam - A)^{-1}) for the rank-one M = -phi psi*, |lam| > 1.

    method 'rank1' uses the identity det = 1 + <(lam-A)^{-1} phi, psi>;
    method 'lu' forms the full matrix I + phi psi* (lam-A)^{-1} and takes its
    LU-based determinant; 'both' computes the two independently, requires
    relative agreement within crosscheck_tol, and returns the rank-one value.
    Both coincide with h(1/lam), which is how eigenvalues of L outside the
    closed disk correspond to zeros of h inside.
    """
    lam = complex(lam)
    if abs(lam) <= 1.0:
        raise OutsideDomain(f"|lam| = {abs(lam)!r} must exceed 1")
    if method not in ("rank1", "lu", "both"):
        raise ValueError(f"unknown method {method!r}")
    B = lam * np.eye(s.n, dtype=complex) - s.A
    try:
        lu, piv = scipy.linalg.lu_factor(B)
    except (scipy.linalg.LinAlgError, np.linalg.LinAlgError) as exc:
        raise SingularResolvent(f"lam - A singular at lam = {lam!r}: {exc}") from exc
    vals = {}
    if method in ("rank1", "both"):
        x = scipy.linalg.lu_solve((lu, piv), s.phi)
        vals["rank1"] = complex(1.0 + np.vdot(s.psi, x))
    if method in ("lu", "both"):
        R = scipy.linalg.lu_solve((lu, piv), np.eye(s.n, dtype=complex))
        full = np.eye(s.n, dtype=complex) + np.outer(s.phi, np.conj(s.psi)) @ R
        vals["lu"] = complex(np.linalg.det(full))
    if method == "both":
        scale = max(1.0, abs(vals["rank1"]))
        if abs(vals["rank1"] - vals["lu"]) > crosscheck_tol * scale:
            raise NumericalError(
                "determinant paths disagree: "
                f"rank1={vals['rank1']!r} lu={vals['lu']!r}"
            )
        return vals["rank1"]
    return vals[method]


def eigenvalues_outside_disk(
    p: PerturbedOperator,
    boundary_tol: float = BOUNDARY_TOL,
    cluster_tol: float = 1e-6,
    with_boundary: bool = False,
):
    """Eigenvalue clusters of L with |center| > 1 + boundary_tol.

    Clusters within boundary_tol of the unit circle are indeterminate: on a
    finite grid of digits they cannot be told apart from circle spectrum, and
    leaving them out can only shrink Blaschke sums, the conservative direction
    for every bound checked here.  Pass with_boundary=True to get
    (outside, boundary) instead of just the outside list.  Cluster spread
    beyond 10*cluster_tol flags severe defectiveness as a warning.
    """
    if boundary_tol <= 0:
        raise ValueError("boundary_tol must be positive")
    clusters = eigenvalues_clustered(p.L, tol=cluster_tol)
    scale = max(1.0, operator_norm(p.L))
    for cl in clusters:
        if cl.spread > 10 * cluster_tol * scale:
            warnings.warn(
                f"cluster at {cl.center!r} has spread {cl.spread:.2e}",
                DefectiveClusterWarning,
                stacklevel=2,
            )
    outside = [cl for cl in clusters if abs(cl.center) > 1.0 + boundary_tol]
    if not with_boundary:
        return outside
    boundary = [cl for cl in clusters if abs(abs(cl.center) - 1.0) <= boundary_tol]
    return outside, boundary


class ResolventCauchy:
    """Evaluates h(w) = 1 + w <(I-wA)^{-1} phi, psi> and h'(w) for many w.

    One Schur decomposition up front turns every later query into two
    triangular solves: with A = Q T Q*, phit = Q* phi, psit = Q* psi,

        h(w)  = 1 + w psit* u,          (I - wT) u = phit
        h'(w) =     psit* u + w psit* v, (I - wT) v = T u.

    Gives an h-evaluation route for arbitrary contraction systems, not only
    diagonal ones built from measures.
    """

    def __init__(self, s: ContractionSystem):
        self.system = s
        sf = schur_decompose(s.A)
        self.T = sf.T
        self.phit = sf.Q.conj().T @ s.phi
        self.psit = sf.Q.conj().T @ s.psi
        self._eye = np.eye(s.n, dtype=complex)

    def h_and_derivative(self, w):
        """Vectorized over a 1-d array of points strictly inside the disk."""
        warr = np.atleast_1d(np.asarray(w, dtype=complex))
        if np.any(np.abs(warr) >= 1.0):
            raise OutsideDisk("all evaluation points must satisfy |w| < 1")
        h = np.empty(warr.shape, dtype=complex)
        hp = np.empty(warr.shape, dtype=complex)
        for k, wk in enumerate(warr):
            B = self._eye - wk * self.T
            try:
                u = scipy.linalg.solve_triangular(B, self.phit)
                v = scipy.linalg.solve_triangular(B, self.T @ u)
            except (scipy.linalg.LinAlgError, np.linalg.LinAlgError) as exc:
                raise SingularResolvent(f"resolvent solve failed at w = {wk!r}") from exc
            s1 = np.vdot(self.psit, u)
            h[k] = 1.0 + wk * s1
            hp[k] = s1 + wk * np.vdot(self.psit, v)
        if np.isscalar(w) or np.ndim(w) == 0:
            return complex(h[0]), complex(hp[0])
        return h, hp


# ---------------------------------------------------------------------------
# JSON interchange


def _complex_from_json(obj) -> complex:
    if not isinstance(obj, dict):
        raise InputError(f"expected an object with re/im fields, got {obj!r}")
    return complex(float(obj.get("re", 0.0)), float(obj.get("im", 0.0)))


def _complex_to_json(z: complex) -> dict:
    return {"re": float(z.real), "im": float(z.imag)}


def system_to_jsonable(s: ContractionSystem) -> dict:
    return {
        "A": [[_complex_to_json(z) for z in row] for row in s.A],
        "phi": [_complex_to_json(z) for z in s.phi],
        "psi": [_complex_to_json(z) for z in s.psi],
    }


def system_from_jsonable(obj) -> ContractionSystem:
    if not isinstance(obj, dict) or not all(k in obj for k in ("A", "phi", "psi")):
        raise InputError("system file must be an object with A, phi, psi")
    try:
        A = np.array(
            [[_complex_from_json(z) for z in row] for row in obj["A"]], dtype=complex
        )
        phi = np.array([_complex_from_json(z) for z in obj["phi"]], dtype=complex)
        psi = np.array([_complex_from_json(z) for z in obj["psi"]], dtype=complex)
    except TypeError as exc:
        raise InputError(f"malformed system file: {exc}") from exc
    if A.ndim != 2:
        raise InputError("A must be a matrix")
    return ContractionSystem(A=A, phi=phi, psi=psi)
