"""Filling radii: closed-form catalog values and metric-space upper bounds.

The catalog covers round circles, spheres, real projective spaces, and the
first two complex projective spaces.  For arbitrary finite metric spaces a
subset search certifies an upper bound via the half-of-max(diameter,
covering-distance) functional; both an exhaustive mode (budgeted) and a
seeded greedy mode (50 restarts) are provided.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, islice
from typing import Iterable, Optional, Tuple

import numpy as np

from .errors import (
    InvalidParameters,
    InvalidSubsetSize,
    NotEssential,
    SchemaError,
    SubsetBudgetExceeded,
)
from .torus import InequalityReport

__all__ = [
    "CatalogSpace",
    "FillRadius",
    "FiniteMetricSpace",
    "FillingBound",
    "HomotopyWindow",
    "circle",
    "sphere",
    "real_projective",
    "complex_projective2",
    "complex_projective3",
    "fillrad_catalog",
    "diameter_extrema_circle",
    "circle_neighborhood_windows",
    "circle_points",
    "fillrad_upper_bound",
    "check_91b",
]

EXHAUSTIVE_BUDGET = 10**7
_CHUNK = 8192


# ---------------------------------------------------------------------------
# catalog spaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CatalogSpace:
    """A round model space: kind plus the scalar parameters it needs."""

    kind: str
    length: Optional[float] = None
    n: Optional[int] = None
    curvature: Optional[float] = None


def _check_curvature(k) -> float:
    if isinstance(k, bool) or not isinstance(k, (int, float, Fraction)) or k <= 0:
        raise InvalidParameters(f"curvature must be a positive number, got {k!r}")
    return float(k)


def circle(length) -> CatalogSpace:
    if isinstance(length, bool) or not isinstance(length, (int, float, Fraction)) or length <= 0:
        raise InvalidParameters(f"circle length must be positive, got {length!r}")
    return CatalogSpace(kind="circle", length=float(length))


def sphere(n: int, curvature) -> CatalogSpace:
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InvalidParameters(f"sphere dimension must be an integer >= 1, got {n!r}")
    return CatalogSpace(kind="sphere", n=n, curvature=_check_curvature(curvature))


def real_projective(n: int, curvature) -> CatalogSpace:
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InvalidParameters(f"projective dimension must be an integer >= 1, got {n!r}")
    return CatalogSpace(kind="real_projective", n=n, curvature=_check_curvature(curvature))


def complex_projective2(curvature) -> CatalogSpace:
    return CatalogSpace(kind="complex_projective_2", n=2, curvature=_check_curvature(curvature))


def complex_projective3(curvature) -> CatalogSpace:
    return CatalogSpace(kind="complex_projective_3", n=3, curvature=_check_curvature(curvature))


@dataclass(frozen=True)
class FillRadius:
    """Catalog filling radius: value, whether it is exact (rational in the
    input), and whether it is only a strict lower bound for the space."""

    space: str
    value: float
    exact: bool
    strict_lower_bound: bool


def fillrad_catalog(space: CatalogSpace) -> FillRadius:
    """Closed-form filling radius of a catalog space.

    circle: L/6 (exact).  sphere(n, K): arccos(-1/(n+1)) / (2 sqrt(K)).
    real projective: pi/(6 sqrt(K)) in every dimension.  The second complex
    projective space gets arccos(-1/3)/(2 sqrt(K)); the third reuses that
    value but only as a strict lower bound.
    """
    kind = space.kind
    if kind == "circle":
        return FillRadius(kind, space.length / 6.0, exact=True, strict_lower_bound=False)
    if kind == "sphere":
        value = 0.5 * math.acos(-1.0 / (space.n + 1)) / math.sqrt(space.curvature)
        return FillRadius(kind, value, exact=False, strict_lower_bound=False)
    if kind == "real_projective":
        value = (math.pi / 6.0) / math.sqrt(space.curvature)
        return FillRadius(kind, value, exact=False, strict_lower_bound=False)
    if kind == "complex_projective_2":
        value = 0.5 * math.acos(-1.0 / 3.0) / math.sqrt(space.curvature)
        return FillRadius(kind, value, exact=False, strict_lower_bound=False)
    if kind == "complex_projective_3":
        value = 0.5 * math.acos(-1.0 / 3.0) / math.sqrt(space.curvature)
        return FillRadius(kind, value, exact=False, strict_lower_bound=True)
    raise InvalidParameters(f"unknown catalog space {kind!r}")


def diameter_extrema_circle(i: int, length) -> float:
    """i-th extremal diameter value of a circle: i*L/(2i+1).

    Index 0 is admitted with the conventional value 0.
    """
    if not isinstance(i, int) or isinstance(i, bool) or i < 0:
        raise InvalidParameters(f"index must be an integer >= 0, got {i!r}")
    if isinstance(length, bool) or not isinstance(length, (int, float, Fraction)) or length <= 0:
        raise InvalidParameters(f"circle length must be positive, got {length!r}")
    return i * float(length) / (2 * i + 1)


@dataclass(frozen=True)
class HomotopyWindow:
    homotopy_type: str
    lo: float
    hi: float


def circle_neighborhood_windows(length) -> Tuple[HomotopyWindow, HomotopyWindow]:
    """Homotopy types of the circle's small metric neighborhoods in the
    space of bounded functions: circle type below d_1/2, then the 3-sphere
    window between d_1/2 and d_2/2."""
    d1 = diameter_extrema_circle(1, length)
    d2 = diameter_extrema_circle(2, length)
    return (
        HomotopyWindow("S^1", 0.0, d1 / 2),
        HomotopyWindow("S^3", d1 / 2, d2 / 2),
    )


def circle_points(n: int, length) -> "FiniteMetricSpace":
    """n evenly spaced points on a circle of the given circumference,
    arc-length metric."""
    if not isinstance(n, int) or n < 1:
        raise InvalidParameters("need at least one point")
    length = float(length)
    positions = np.arange(n) * (length / n)
    diff = np.abs(positions[:, None] - positions[None, :])
    dist = np.minimum(diff, length - diff)
    return FiniteMetricSpace(dist)


# ---------------------------------------------------------------------------
# finite metric spaces and the subset upper bound
# ---------------------------------------------------------------------------

class FiniteMetricSpace:
    """Finite metric space given by its full distance matrix (binary64).

    Validated at construction: square, symmetric, zero diagonal, nonnegative,
    and the triangle inequality within 1e-12.
    """

    _TOL = 1e-12

    def __init__(self, dist):
        d = np.asarray(dist, dtype=float)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise SchemaError("distance matrix must be square")
        n = d.shape[0]
        if n < 1:
            raise SchemaError("metric space needs at least one point")
        if not np.all(np.isfinite(d)):
            raise SchemaError("distances must be finite numbers")
        if np.abs(d - d.T).max() > self._TOL:
            raise SchemaError("distance matrix is not symmetric")
        if np.abs(np.diag(d)).max() > self._TOL:
            raise SchemaError("distance matrix has a nonzero diagonal")
        if d.min() < -self._TOL:
            raise SchemaError("distances must be nonnegative")
        for k in range(n):
            slack = d - (d[:, k][:, None] + d[None, k, :])
            if slack.max() > self._TOL:
                i, j = np.unravel_index(np.argmax(slack), slack.shape)
                raise SchemaError(
                    f"triangle inequality violated at points ({i},{k},{j})"
                )
        self.dist = d
        self.n = n


@dataclass(frozen=True)
class FillingBound:
    """Certified upper bound: fillrad <= R, witnessed by the point subset Y."""

    R: float
    witness: Tuple[int, ...]
    mode: str


def _objective(dist, subset):
    sub = list(subset)
    diam = float(dist[np.ix_(sub, sub)].max())
    cover = float(dist[:, sub].min(axis=1).max())
    return max(diam, cover) / 2.0, cover, diam


def _exhaustive_best(dist, n, max_subset):
    best = None  # (objective, coverage, diameter, witness)
    for size in range(1, max_subset + 1):
        pairs = list(combinations(range(size), 2))
        combos = combinations(range(n), size)
        while True:
            chunk = list(islice(combos, _CHUNK))
            if not chunk:
                break
            idx = np.asarray(chunk, dtype=np.intp)
            if pairs:
                diam = np.zeros(len(chunk))
                for a, b in pairs:
                    np.maximum(diam, dist[idx[:, a], idx[:, b]], out=diam)
            else:
                diam = np.zeros(len(chunk))
            dmin = dist[idx[:, 0]]
            for j in range(1, size):
                dmin = np.minimum(dmin, dist[idx[:, j]])
            cover = dmin.max(axis=1)
            obj = np.maximum(diam, cover) / 2.0
            pick = np.lexsort((diam, cover, obj))[0]
            cand = (float(obj[pick]), float(cover[pick]), float(diam[pick]), chunk[pick])
            if best is None or cand[:3] < best[:3]:
                best = cand
    return best


def _greedy_best(dist, n, max_subset, seed):
    rng = np.random.default_rng(seed)
    one_center = int(dist.max(axis=1).argmin())
    starts = [one_center] + [int(s) for s in rng.integers(0, n, size=50)]
    best = None
    for start in starts:
        subset = [start]
        dmin = dist[start].copy()
        diam = 0.0
        while True:
            cover = float(dmin.max())
            cand = (max(diam, cover) / 2.0, cover, diam, tuple(sorted(subset)))
            if best is None or cand[:3] < best[:3]:
                best = cand
            if len(subset) >= max_subset:
                break
            # next point: the one whose addition shrinks the covering radius most
            cand_cover = np.minimum(dmin[:, None], dist).max(axis=0)
            nxt = int(cand_cover.argmin())
            if nxt in subset:
                nxt = next(i for i in range(n) if i not in subset)
            diam = max(diam, float(dist[nxt, subset].max()))
            subset.append(nxt)
            dmin = np.minimum(dmin, dist[nxt])
    return best


def fillrad_upper_bound(
    space: FiniteMetricSpace,
    max_subset: int,
    mode: str = "exhaustive",
    seed: int = 0,
) -> FillingBound:
    """Upper bound min over subsets Y of max(diam Y, covering distance)/2.

    `exhaustive` scans every nonempty subset of size <= max_subset (budgeted
    at C(n, max_subset) <= 1e7); `greedy` seeds with the 1-center, grows by
    best coverage reduction, and retries from 50 random seeds.  Ties between
    equal-objective subsets are broken toward smaller coverage, then smaller
    diameter, then lexicographic order, making the witness deterministic.
    """
    if not isinstance(max_subset, int) or isinstance(max_subset, bool):
        raise InvalidSubsetSize(f"max_subset must be an integer, got {max_subset!r}")
    n = space.n
    if not 1 <= max_subset <= n:
        raise InvalidSubsetSize(
            f"max_subset must satisfy 1 <= max_subset <= {n}, got {max_subset}"
        )
    if mode == "exhaustive":
        if math.comb(n, max_subset) > EXHAUSTIVE_BUDGET:
            raise SubsetBudgetExceeded(
                f"C({n},{max_subset}) exceeds the exhaustive budget of {EXHAUSTIVE_BUDGET}"
            )
        best = _exhaustive_best(space.dist, n, max_subset)
    elif mode == "greedy":
        best = _greedy_best(space.dist, n, max_subset, seed)
    else:
        raise InvalidParameters(f"mode must be 'exhaustive' or 'greedy', got {mode!r}")
    return FillingBound(R=best[0], witness=tuple(best[3]), mode=mode)


# ---------------------------------------------------------------------------
# systole vs. filling radius
# ---------------------------------------------------------------------------

def check_91b(space: CatalogSpace) -> InequalityReport:
    """Shortest noncontractible loop <= 6 * filling radius, for essential
    catalog spaces.

    Both sides are the same closed-form multiple of a common factor (the
    circle length, or pi/sqrt(K)), so the factor is divided out and the
    remaining rationals compared exactly; circles and real projective
    spaces sit exactly on the equality case.  Simply connected spaces have
    no noncontractible loop and are rejected.
    """
    kind = space.kind
    if kind == "circle":
        length = Fraction(space.length)
        lhs, rhs = length, 6 * (length / 6)
        sys_val, fill6 = space.length, 6 * (space.length / 6)
    elif kind == "sphere" and space.n == 1:
        # a 1-sphere of curvature K is a circle of length 2*pi/sqrt(K)
        lhs, rhs = Fraction(2), 6 * Fraction(1, 3)
        root = math.pi / math.sqrt(space.curvature)
        sys_val, fill6 = 2 * root, 6 * (root / 3)
    elif kind == "real_projective":
        lhs, rhs = Fraction(1), 6 * Fraction(1, 6)
        root = math.pi / math.sqrt(space.curvature)
        sys_val, fill6 = root, 6 * (root / 6)
    elif kind in ("sphere", "complex_projective_2", "complex_projective_3"):
        raise NotEssential(
            f"{kind} (n={space.n}) is simply connected: no noncontractible loop"
        )
    else:
        raise InvalidParameters(f"unknown catalog space {kind!r}")
    return InequalityReport(
        name="91b",
        lhs_power=lhs,
        rhs_power=rhs,
        power=1,
        satisfied=lhs <= rhs,
        tightness=float(lhs / rhs),
        equality_case=lhs == rhs,
        unreduced=(sys_val, fill6),
    )
