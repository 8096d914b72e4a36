"""Successive minima, Hermite-type invariants, and the sharp-constant catalog.

The enumeration is complete and exact: the form is scaled to integers, LLL
preconditioned, and all vectors inside a ball of provably sufficient radius
are generated by layered Fincke-Pohst recursion with exact rational pruning
bounds.  Greedy independent selection over the sorted vector list then reads
off every requested minimum together with a witness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import _linalg
from .errors import InvalidParameters, UnknownConstant
from .lattice import GramMatrix, _gso, _lll_rows

__all__ = [
    "MinimaReport",
    "HermiteInvariant",
    "Criticality",
    "ConstantCatalogEntry",
    "CONSTANTS",
    "HEXAGONAL_GRAM",
    "FCC_GRAM",
    "successive_minima",
    "shortest_vector_sq",
    "hermite_invariant_sq",
    "berge_martinet_invariant_sq",
    "gamma_power",
    "gamma_prime_sq",
    "is_critical",
]


@dataclass(frozen=True)
class MinimaReport:
    """First k successive minima (squared, exact) with integer witnesses.

    witnesses[j] holds coefficients in the *original* basis underlying the
    input Gram matrix; re-evaluating the form on it reproduces lambda_sq[j].
    Witnesses are sign-normalized (first nonzero coefficient positive) and
    ties between equal-length candidates go to the lexicographically
    smallest coefficient vector.
    """

    dim: int
    lambda_sq: tuple
    witnesses: tuple


def _integerize(g: GramMatrix):
    denom = math.lcm(*(x.denominator for row in g.entries for x in row))
    rows = [[int(x * denom) for x in row] for row in g.entries]
    return rows, denom


def _coeff_window(center: Fraction, budget: Fraction):
    """Integer interval {x : (x - center)^2 <= budget}, computed exactly.

    A float square root pins the endpoints to within a couple of units and
    exact Fraction checks then fix them, so no exactness is lost.
    """
    if budget < 0:
        return 1, 0
    approx = math.isqrt(int(budget)) + 2 if budget > 4e18 else int(math.sqrt(float(budget))) + 2
    hi = math.floor(center) + approx
    while hi > center and (hi - center) ** 2 > budget:
        hi -= 1
    lo = math.ceil(center) - approx
    while lo < center and (center - lo) ** 2 > budget:
        lo += 1
    return lo, hi


def _vectors_in_ball(gram_rows, radius):
    """All nonzero integer vectors x (one per +-pair) with x g x^T <= radius.

    Enumerates coordinates from the last index down, pruning with the exact
    Gram-Schmidt quadratic bounds; the topmost nonzero coordinate is kept
    positive so each antipodal pair appears once.
    """
    n = len(gram_rows)
    mu, norms = _gso(gram_rows)
    found = []
    x = [0] * n

    def walk(level: int, remaining: Fraction):
        if level < 0:
            if any(x):
                found.append(tuple(x))
            return
        shift = sum(mu[j][level] * x[j] for j in range(level + 1, n))
        lo, hi = _coeff_window(-shift, remaining / norms[level])
        if all(v == 0 for v in x[level + 1 :]):
            lo = max(lo, 0)
        for value in range(lo, hi + 1):
            x[level] = value
            walk(level - 1, remaining - norms[level] * (value + shift) ** 2)
        x[level] = 0

    walk(n - 1, Fraction(radius))
    return found


def successive_minima(g: GramMatrix, k: Optional[int] = None) -> MinimaReport:
    """Exact first k successive minima of the form g, with witnesses.

    The enumeration radius is the largest of the first k diagonal entries of
    the LLL-reduced form — those rows are k independent vectors, so the ball
    is guaranteed to contain witnesses for every minimum up to the k-th.
    """
    b = g.dim
    if k is None:
        k = b
    if not 1 <= k <= b:
        raise InvalidParameters(f"k must satisfy 1 <= k <= {b}, got {k}")

    int_rows, scale = _integerize(g)
    work = [[Fraction(v) for v in row] for row in int_rows]
    reduced, transform = _lll_rows(work, Fraction(3, 4))
    radius = max(int(reduced[i][i]) for i in range(k))

    candidates = []
    for x in _vectors_in_ball(reduced, radius):
        y = [sum(x[i] * transform[i][j] for i in range(b)) for j in range(b)]
        lead = next(v for v in y if v)
        if lead < 0:
            y = [-v for v in y]
        norm = _linalg.quad_form(y, int_rows)
        candidates.append((norm, tuple(y)))
    candidates.sort()

    echelon = _linalg.RowEchelon()
    lambdas, witnesses = [], []
    for norm, y in candidates:
        if echelon.try_add(y):
            lambdas.append(Fraction(norm, scale))
            witnesses.append(y)
            if len(lambdas) == k:
                break
    assert len(lambdas) == k, "enumeration ball too small (cannot happen)"
    return MinimaReport(dim=b, lambda_sq=tuple(lambdas), witnesses=tuple(witnesses))


def shortest_vector_sq(g: GramMatrix) -> Fraction:
    return successive_minima(g, 1).lambda_sq[0]


# ---------------------------------------------------------------------------
# scale-invariant quantities and the dim <= 4 constant catalog
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HermiteInvariant:
    """lambda_1^{2b}/det as an exact rational, i.e. the b-th power of
    lambda_1^2/det^{1/b}, plus its binary64 root for reporting."""

    dim: int
    lambda1_sq: Fraction
    det: Fraction
    value_pow: Fraction
    gamma_approx: float


def hermite_invariant_sq(g: GramMatrix) -> HermiteInvariant:
    b = g.dim
    lam = shortest_vector_sq(g)
    value = lam**b / g.det
    return HermiteInvariant(
        dim=b,
        lambda1_sq=lam,
        det=g.det,
        value_pow=value,
        gamma_approx=float(value) ** (1.0 / b),
    )


def berge_martinet_invariant_sq(g: GramMatrix) -> Fraction:
    """lambda_1^2 of the form times lambda_1^2 of its inverse (exact, scale-free)."""
    return shortest_vector_sq(g) * shortest_vector_sq(g.inverse())


HEXAGONAL_GRAM = GramMatrix([[1, Fraction(1, 2)], [Fraction(1, 2), 1]])
FCC_GRAM = GramMatrix([[2, 1, 1], [1, 2, 1], [1, 1, 2]])

# b-th power of the sharp rank-b constant (squared-length normalization):
# rank 2 -> 4/3, rank 3 -> 2, rank 4 -> 4.  All exact rationals.
_GAMMA_POWER = {1: Fraction(1), 2: Fraction(4, 3), 3: Fraction(2), 4: Fraction(4)}

# squared sharp constants for the primal-dual product, (value, derived-flag).
# Only the rank-3 value 3/2 is externally stated; 2 and 4 carry derived values.
_GAMMA_PRIME_SQ = {
    1: (Fraction(1), False),
    2: (Fraction(4, 3), True),
    3: (Fraction(3, 2), False),
    4: (Fraction(2), True),
}


@dataclass(frozen=True)
class ConstantCatalogEntry:
    """Sharp constants for one rank, exact where rational.

    gamma_sq is the squared constant when that is rational; in rank 3 it is
    irrational and gamma_sq_cube records its cube (x satisfies x^3 = 4)
    instead.  gamma_power is the rank-th power of the constant itself, the
    form every exact comparison in this package uses.
    """

    dim: int
    gamma_power: Fraction
    gamma_sq: Optional[Fraction]
    gamma_sq_cube: Optional[Fraction]
    gamma_prime_sq: Optional[Fraction]
    gamma_prime_derived: bool
    critical_gram: Optional[GramMatrix]
    dual_critical_gram: Optional[GramMatrix]
    source: str


CONSTANTS = {
    1: ConstantCatalogEntry(
        dim=1,
        gamma_power=Fraction(1),
        gamma_sq=Fraction(1),
        gamma_sq_cube=None,
        gamma_prime_sq=Fraction(1),
        gamma_prime_derived=False,
        critical_gram=GramMatrix([[1]]),
        dual_critical_gram=GramMatrix([[1]]),
        source="rank 1 is trivial: every lattice is critical and self-dual up to scale",
    ),
    2: ConstantCatalogEntry(
        dim=2,
        gamma_power=_GAMMA_POWER[2],
        gamma_sq=Fraction(4, 3),
        gamma_sq_cube=None,
        gamma_prime_sq=_GAMMA_PRIME_SQ[2][0],
        gamma_prime_derived=True,
        critical_gram=HEXAGONAL_GRAM,
        dual_critical_gram=HEXAGONAL_GRAM,
        source="hexagonal lattice; primal-dual value derived by fundamental-domain search",
    ),
    3: ConstantCatalogEntry(
        dim=3,
        gamma_power=_GAMMA_POWER[3],
        gamma_sq=None,
        gamma_sq_cube=Fraction(4),
        gamma_prime_sq=_GAMMA_PRIME_SQ[3][0],
        gamma_prime_derived=False,
        critical_gram=FCC_GRAM,
        dual_critical_gram=FCC_GRAM,
        source="face-centered cubic lattice attains both constants in rank 3",
    ),
    4: ConstantCatalogEntry(
        dim=4,
        gamma_power=_GAMMA_POWER[4],
        gamma_sq=Fraction(2),
        gamma_sq_cube=None,
        gamma_prime_sq=_GAMMA_PRIME_SQ[4][0],
        gamma_prime_derived=True,
        critical_gram=None,
        dual_critical_gram=None,
        source="rank-4 squared constant is 2; primal-dual value derived (checkerboard lattice)",
    ),
}


def gamma_power(b: int) -> Fraction:
    """The rank-b sharp constant raised to the b-th power, as an exact rational."""
    try:
        return _GAMMA_POWER[b]
    except KeyError:
        raise UnknownConstant(f"no sharp constant catalogued in rank {b}") from None


def gamma_prime_sq(b: int):
    """(squared primal-dual constant, derived flag) for rank b <= 4."""
    try:
        return _GAMMA_PRIME_SQ[b]
    except KeyError:
        raise UnknownConstant(
            f"no primal-dual constant catalogued in rank {b}"
        ) from None


@dataclass(frozen=True)
class Criticality:
    dim: int
    critical: bool
    dual_critical: bool
    gap_to_constant: Fraction
    dual_gap: Fraction
    constants_derived: bool


def is_critical(g: GramMatrix, tol: float = 1e-9) -> Criticality:
    """Does the form attain the sharp rank constant (and the primal-dual one)?

    All comparisons here reduce to exact rationals, so `tol` is accepted for
    interface stability but never consulted on the rational path.
    """
    b = g.dim
    if b > 4:
        raise UnknownConstant(f"criticality is only decidable for rank <= 4, got {b}")
    herm = hermite_invariant_sq(g)
    target = gamma_power(b)
    prime_sq, derived = gamma_prime_sq(b)
    bm = berge_martinet_invariant_sq(g)
    return Criticality(
        dim=b,
        critical=herm.value_pow == target,
        dual_critical=bm == prime_sq,
        gap_to_constant=target - herm.value_pow,
        dual_gap=prime_sq - bm,
        constants_derived=derived,
    )
