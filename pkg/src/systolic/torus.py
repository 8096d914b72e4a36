"""Flat-torus systolic quantities and sharp-inequality verdicts.

Every verdict is an :class:`InequalityReport` whose two sides are exact
rationals after clearing roots (and, for the round projective-plane check,
after dividing out the common pi^2 factor), so `satisfied` and
`equality_case` are exact decisions; `tightness` is the binary64 ratio of
the original sides for human consumption.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from .errors import (
    DimensionTooSmall,
    NonPositiveCurvature,
    UnknownConstant,
    WrongDimension,
)
from .lattice import GramMatrix
from .minima import gamma_power, gamma_prime_sq, shortest_vector_sq

__all__ = [
    "FlatTorus",
    "InequalityReport",
    "ConformalSystole",
    "torus_systole_sq",
    "torus_codim1_systole_sq",
    "conformal_systole",
    "verify_loewner",
    "verify_gromov_torus",
    "verify_conformal_52",
    "pu_round_check",
]


@dataclass(frozen=True)
class FlatTorus:
    """Flat torus R^n / L, carried entirely by the Gram matrix of L."""

    gram: GramMatrix

    @property
    def dim(self) -> int:
        return self.gram.dim


@dataclass(frozen=True)
class InequalityReport:
    """Outcome of one sharp-inequality check.

    lhs_power / rhs_power are the two sides raised to `power` (the smallest
    integer clearing all roots), held exactly; their ratio is therefore a
    scale-invariant rational, which is what the homothety tests compare.
    `unreduced` optionally carries the binary64 values of the original
    (unpowered) sides.
    """

    name: str
    lhs_power: Fraction
    rhs_power: Fraction
    power: int
    satisfied: bool
    tightness: float
    equality_case: bool
    constants_derived: bool = False
    unreduced: Optional[Tuple[float, float]] = None

    @property
    def ratio_power(self) -> Fraction:
        return self.lhs_power / self.rhs_power

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "satisfied": self.satisfied,
            "equality": self.equality_case,
            "tightness": self.tightness,
            "lhs_power": str(self.lhs_power),
            "rhs_power": str(self.rhs_power),
            "power": self.power,
            "constants_derived": self.constants_derived,
        }


def torus_systole_sq(t: FlatTorus) -> Fraction:
    """Squared length of the shortest noncontractible loop: lambda_1^2 of the lattice."""
    return shortest_vector_sq(t.gram)


def torus_codim1_systole_sq(t: FlatTorus) -> Fraction:
    """Squared least (n-1)-volume of a closed codimension-1 subtorus.

    The minimizing subtorus is cut out by a shortest dual vector, giving
    det(g) * lambda_1^2 of the dual form, exactly.
    """
    if t.dim < 2:
        raise DimensionTooSmall("codimension-1 systole needs dim >= 2")
    return t.gram.det * shortest_vector_sq(t.gram.inverse())


@dataclass(frozen=True)
class ConformalSystole:
    """lambda_1 / vol^{1/n}: exact core (lambda_1^2, det) plus binary64 value."""

    lambda1_sq: Fraction
    det: Fraction
    dim: int
    value: float


def conformal_systole(t: FlatTorus) -> ConformalSystole:
    lam = shortest_vector_sq(t.gram)
    det = t.gram.det
    n = t.dim
    value = math.sqrt(float(lam)) / float(det) ** (1.0 / (2 * n))
    return ConformalSystole(lambda1_sq=lam, det=det, dim=n, value=value)


def _report(name, lhs, rhs, power, derived=False, unreduced=None) -> InequalityReport:
    return InequalityReport(
        name=name,
        lhs_power=lhs,
        rhs_power=rhs,
        power=power,
        satisfied=lhs <= rhs,
        tightness=float(lhs / rhs) ** (1.0 / power),
        equality_case=lhs == rhs,
        constants_derived=derived,
        unreduced=unreduced,
    )


def verify_loewner(t: FlatTorus) -> InequalityReport:
    """Two-torus bound: squared systole <= (2/sqrt(3)) * area.

    Squaring both sides clears the root: lambda_1^4 <= (4/3) * det, checked
    exactly.  Equality holds precisely for the hexagonal shape.
    """
    if t.dim != 2:
        raise WrongDimension(f"this bound is specific to dim 2, got {t.dim}")
    lam = shortest_vector_sq(t.gram)
    return _report("loewner", lam**2, Fraction(4, 3) * t.gram.det, power=2)


def verify_gromov_torus(t: FlatTorus) -> InequalityReport:
    """Stable-systole bound for n-tori, 2 <= n <= 4: lambda_1^{2n} <= c_n^n * det."""
    n = t.dim
    if n < 2:
        raise WrongDimension("the torus bound needs dim >= 2")
    if n > 4:
        raise UnknownConstant(f"no sharp constant catalogued in dim {n}")
    lam = shortest_vector_sq(t.gram)
    return _report("gromov_torus", lam**n, gamma_power(n) * t.gram.det, power=2)


def verify_conformal_52(t: FlatTorus) -> InequalityReport:
    """Conformal systole times codimension-1 systole vs. vol^{(n-1)/n}.

    For flat tori both sides share the factor det^{(n-1)/(2n)}, so the check
    reduces exactly to lambda_1^2(g) * lambda_1^2(g^{-1}) <= c'^2.  The report
    carries the reduced sides; `unreduced` holds binary64 values of the
    original product form.
    """
    n = t.dim
    if n < 2:
        raise DimensionTooSmall("needs a codimension-1 systole, so dim >= 2")
    prime_sq, derived = gamma_prime_sq(n)  # UnknownConstant for n > 4
    lam = shortest_vector_sq(t.gram)
    lam_dual = shortest_vector_sq(t.gram.inverse())
    det = t.gram.det
    conf = math.sqrt(float(lam)) / float(det) ** (1.0 / (2 * n))
    codim1 = math.sqrt(float(det) * float(lam_dual))
    lhs_unred = conf * codim1
    rhs_unred = math.sqrt(float(prime_sq)) * float(det) ** ((n - 1) / (2.0 * n))
    return _report(
        "conformal_52",
        lam * lam_dual,
        prime_sq,
        power=2,
        derived=derived,
        unreduced=(lhs_unred, rhs_unred),
    )


def pu_round_check(curvature) -> InequalityReport:
    """Round projective plane of curvature K: sys^2 = (pi/2) * area, exactly.

    sys = pi/sqrt(K) and area = 2*pi/K, so both sides of sys^2 <= (pi/2)*area
    equal pi^2/K; dividing out the common pi^2 leaves the exact rational 1/K
    on each side.  Always an equality, for every K > 0.
    """
    if isinstance(curvature, bool) or not isinstance(
        curvature, (int, float, Fraction)
    ):
        raise NonPositiveCurvature("curvature must be a positive number")
    if curvature <= 0:
        raise NonPositiveCurvature(f"curvature must be positive, got {curvature}")
    k = Fraction(curvature)
    sys_sq = math.pi**2 / float(k)
    area = 2 * math.pi / float(k)
    return _report(
        "pu_round", 1 / k, 1 / k, power=1, unreduced=(sys_sq, math.pi / 2 * area)
    )
