"""Finite complex Borel measures on the unit circle: atoms plus a scalar
multiple of normalized Lebesgue measure.

The calculus implemented here (total variation, the shift that realizes the
backward-shift operator on Cauchy transforms, its right inverse, reflection,
polar decomposition) is everything the rest of the package needs.  Only the
zeroth moment of the Lebesgue component survives a Cauchy transform, so a
scalar coefficient is all we track for it; general absolutely continuous
parts are out of scope.
"""

from __future__ import annotations

import dataclasses
from functools import cached_property

import numpy as np

from .errors import InputError, NonAtomicMeasure, PointNotOnCircle

# points nearer the circle than this are snapped onto it, further are rejected
POINT_REPAIR_BAND = 1e-9
# atom points closer than this are considered the same atom
ATOM_MERGE_TOL = 1e-12


@dataclasses.dataclass(frozen=True)
class UnitPoint:
    """A point on the unit circle.

    Inputs with | |value| - 1 | <= 1e-9 are renormalized onto the circle,
    anything further off is rejected; after construction the modulus is 1 to
    within 1e-12 (in practice to machine precision).
    """

    value: complex

    def __post_init__(self):
        v = complex(self.value)
        r = abs(v)
        if abs(r - 1.0) > POINT_REPAIR_BAND:
            raise PointNotOnCircle(f"|{v!r}| = {r!r} is not within 1e-9 of 1")
        object.__setattr__(self, "value", v / r)

    def conj(self) -> "UnitPoint":
        return UnitPoint(self.value.conjugate())


@dataclasses.dataclass(frozen=True)
class AtomicMeasure:
    """Atoms (point, complex weight) plus lebesgue * m, m normalized Lebesgue.

    Construction canonicalizes: points are snapped to the circle, atoms closer
    than 1e-12 are merged by weight addition, weights that are exactly 0 are
    dropped, and atoms are sorted by (Re, Im) of the point so that equal
    measures compare equal.
    """

    atoms: tuple = ()
    lebesgue: complex = 0.0

    def __post_init__(self):
        reps: list[complex] = []
        weights: list[complex] = []
        for point, weight in self.atoms:
            p = point.value if isinstance(point, UnitPoint) else UnitPoint(point).value
            w = complex(weight)
            for k, rep in enumerate(reps):
                if abs(p - rep) <= ATOM_MERGE_TOL:
                    weights[k] += w
                    break
            else:
                reps.append(p)
                weights.append(w)
        pairs = [
            (UnitPoint(p), w) for p, w in zip(reps, weights) if w != 0
        ]
        pairs.sort(key=lambda pw: (pw[0].value.real, pw[0].value.imag))
        object.__setattr__(self, "atoms", tuple(pairs))
        object.__setattr__(self, "lebesgue", complex(self.lebesgue))

    @cached_property
    def points(self) -> np.ndarray:
        """Atom locations as a complex array (empty for the zero measure)."""
        return np.array([p.value for p, _ in self.atoms], dtype=complex)

    @cached_property
    def weights(self) -> np.ndarray:
        return np.array([w for _, w in self.atoms], dtype=complex)

    @property
    def natoms(self) -> int:
        return len(self.atoms)

    def mass(self) -> complex:
        """mu(T) = sum of weights + lebesgue coefficient."""
        return complex(np.sum(self.weights) + self.lebesgue) if self.atoms else complex(self.lebesgue)

    def conjugate(self) -> "AtomicMeasure":
        """The measure with conjugated weights at conjugated atoms."""
        return AtomicMeasure(
            atoms=[(p.conj(), w.conjugate()) for p, w in self.atoms],
            lebesgue=self.lebesgue.conjugate(),
        )


ZERO_MEASURE = AtomicMeasure()


def dirac(point, weight: complex = 1.0) -> AtomicMeasure:
    """weight * delta_point, a single atom."""
    return AtomicMeasure(atoms=[(point, weight)])


@dataclasses.dataclass(frozen=True)
class PolarDecomposition:
    """Per-atom split weight = modulus * phase with modulus >= 0, |phase| = 1."""

    moduli: np.ndarray
    phases: np.ndarray


def total_variation(mu: AtomicMeasure) -> float:
    """||mu|| = sum |c_j| + |lebesgue|; atoms are singular with respect to m."""
    return float(np.sum(np.abs(mu.weights)) + abs(mu.lebesgue))


def shift_measure(mu: AtomicMeasure) -> AtomicMeasure:
    """The measure conj(zeta) mu(d zeta), restricted to the atoms.

    Its Cauchy transform is the backward shift of K mu:
    K(result)(w) = (K mu(w) - K mu(0)) / w.  The Lebesgue-derived part
    conj(zeta) * c * m transforms to 0 (every moment integral vanishes), so it
    is dropped rather than carried as dead weight in the total variation.
    """
    return AtomicMeasure(
        atoms=[(p, w * p.value.conjugate()) for p, w in mu.atoms],
        lebesgue=0.0,
    )


def inverse_shift(sigma: AtomicMeasure, h0: complex) -> AtomicMeasure:
    """A measure mu with K(mu)(w) = h0 + w * K(sigma)(w) on the disk.

    Construction: mu(d zeta) = zeta sigma(d zeta) + (h0 - c_sigma) m(d zeta)
    where c_sigma is the first moment of sigma.  A Lebesgue component of sigma
    contributes nothing to c_sigma (the first moment of m is 0) and its exact
    transform would need a w-linear term outside the representable class, so
    only sigma's atoms enter; the identity above is exact whenever
    sigma.lebesgue = 0, which holds for every output of shift_measure.
    """
    c_sigma = complex(np.sum(sigma.points * sigma.weights)) if sigma.atoms else 0.0
    return AtomicMeasure(
        atoms=[(p, w * p.value) for p, w in sigma.atoms],
        lebesgue=complex(h0) - c_sigma,
    )


def reflect_measure(mu: AtomicMeasure) -> AtomicMeasure:
    """Pushforward under conjugation: atoms move to conj(zeta), weights kept."""
    return AtomicMeasure(
        atoms=[(p.conj(), w) for p, w in mu.atoms],
        lebesgue=mu.lebesgue,
    )


def polar_decompose(mu: AtomicMeasure) -> PolarDecomposition:
    """Split each weight into modulus and unimodular phase (d mu = nu d|mu|).

    Requires a purely atomic measure; zero weights cannot occur (dropped at
    construction), so phases are well defined.
    """
    if mu.lebesgue != 0:
        raise NonAtomicMeasure("polar decomposition needs lebesgue = 0")
    moduli = np.abs(mu.weights)
    phases = mu.weights / np.where(moduli > 0, moduli, 1.0)
    return PolarDecomposition(moduli=moduli, phases=phases)


# ---------------------------------------------------------------------------
# JSON interchange


def _complex_to_json(z: complex) -> dict:
    return {"re": float(z.real), "im": float(z.imag)}


def _complex_from_json(obj) -> complex:
    if not isinstance(obj, dict):
        raise InputError(f"expected an object with re/im fields, got {obj!r}")
    try:
        return complex(float(obj.get("re", 0.0)), float(obj.get("im", 0.0)))
    except (TypeError, ValueError) as exc:
        raise InputError(f"non-numeric re/im fields in {obj!r}") from exc


def _point_from_json(obj) -> UnitPoint:
    if isinstance(obj, dict) and "angle_deg" in obj:
        try:
            theta = np.deg2rad(float(obj["angle_deg"]))
        except (TypeError, ValueError) as exc:
            raise InputError(f"non-numeric angle_deg in {obj!r}") from exc
        return UnitPoint(complex(np.cos(theta), np.sin(theta)))
    return UnitPoint(_complex_from_json(obj))


def measure_to_jsonable(mu: AtomicMeasure) -> dict:
    return {
        "atoms": [
            {"point": _complex_to_json(p.value), "weight": _complex_to_json(w)}
            for p, w in mu.atoms
        ],
        "lebesgue": _complex_to_json(mu.lebesgue),
    }


def measure_from_jsonable(obj) -> AtomicMeasure:
    if not isinstance(obj, dict):
        raise InputError("measure file must contain a JSON object")
    if "atoms" not in obj or not isinstance(obj["atoms"], list):
        raise InputError("measure object must have an 'atoms' list")
    atoms = []
    for entry in obj["atoms"]:
        if not isinstance(entry, dict) or "point" not in entry or "weight" not in entry:
            raise InputError(f"malformed atom entry: {entry!r}")
        atoms.append((_point_from_json(entry["point"]), _complex_from_json(entry["weight"])))
    leb = _complex_from_json(obj["lebesgue"]) if "lebesgue" in obj else 0.0
    return AtomicMeasure(atoms=atoms, lebesgue=leb)
