"""Exact-rational lattices: bases, Gram matrices, duals, and reduction.

Everything that feeds a comparison is kept in `fractions.Fraction`; square
roots and other irrational values appear only in reporting layers, never
here.  A lattice may be given by a basis (rows spanning it) or directly by
its Gram matrix — the hexagonal lattice, for instance, has no rational
coordinate basis, so all downstream operations consume the Gram form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from . import _linalg
from .errors import (
    InvalidParameters,
    NonPositiveImaginaryPart,
    NotPositiveDefinite,
    SchemaError,
    SingularBasis,
    UnsupportedDimension,
)

__all__ = [
    "MAX_DIM",
    "GramMatrix",
    "LatticeBasis",
    "Tau",
    "gram",
    "covolume_squared",
    "dual_basis",
    "dual_gram",
    "reduce_rank2",
    "apply_mobius",
    "lll_reduce",
    "lll_reduce_gram",
]

MAX_DIM = 8

Rational = Union[int, str, Fraction]


def _coerce(value) -> Fraction:
    if isinstance(value, bool):
        raise SchemaError("matrix entries must be rationals, not booleans")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"cannot parse rational {value!r}") from exc
    raise SchemaError(
        f"matrix entries must be ints, Fractions, or 'p/q' strings, got {type(value).__name__}"
    )


def _check_dim(n: int) -> None:
    if not 1 <= n <= MAX_DIM:
        raise UnsupportedDimension(f"rank must be between 1 and {MAX_DIM}, got {n}")


class GramMatrix:
    """Symmetric positive-definite matrix of inner products, exact entries.

    Positive definiteness is checked at construction through the signs of
    the Gaussian pivots (equivalently, the leading principal minors), so a
    constructed instance is always a valid Gram matrix.
    """

    __slots__ = ("entries", "dim", "_det")

    def __init__(self, entries: Sequence[Sequence[Rational]]):
        rows = [tuple(_coerce(x) for x in row) for row in entries]
        n = len(rows)
        _check_dim(n)
        if any(len(row) != n for row in rows):
            raise SchemaError("gram matrix must be square")
        for i in range(n):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise SchemaError(
                        f"gram matrix not symmetric at entries ({i},{j})/({j},{i})"
                    )
        pivots, bad = _linalg.symmetric_pivots(rows)
        if bad is not None:
            raise NotPositiveDefinite(
                f"leading principal minor of order {bad + 1} is not positive"
            )
        self.entries = tuple(rows)
        self.dim = n
        self._det = math.prod(pivots)

    @property
    def det(self) -> Fraction:
        """Exact determinant (the squared covolume of any basis realizing this form)."""
        return self._det

    def inverse(self) -> "GramMatrix":
        """Gram matrix of the dual lattice."""
        return GramMatrix(_linalg.inverse([list(r) for r in self.entries]))

    def scale(self, factor: Rational) -> "GramMatrix":
        """Homothety: multiply every inner product by a positive rational."""
        c = _coerce(factor)
        if c <= 0:
            raise InvalidParameters("scale factor must be positive")
        return GramMatrix([[x * c for x in row] for row in self.entries])

    def __eq__(self, other) -> bool:
        return isinstance(other, GramMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self) -> str:
        return f"GramMatrix({[[str(x) for x in row] for row in self.entries]})"


class LatticeBasis:
    """Full-rank lattice basis: rows are the basis vectors, exact coordinates."""

    __slots__ = ("rows", "dim")

    def __init__(self, rows: Sequence[Sequence[Rational]]):
        vecs = [tuple(_coerce(x) for x in row) for row in rows]
        n = len(vecs)
        _check_dim(n)
        if any(len(v) != n for v in vecs):
            raise SchemaError("basis must be square (full rank, ambient dim = rank)")
        if _linalg.det([list(v) for v in vecs]) == 0:
            raise SingularBasis("basis rows are linearly dependent")
        self.rows = tuple(vecs)
        self.dim = n

    def gram(self) -> GramMatrix:
        n = self.dim
        g = [
            [sum(self.rows[i][k] * self.rows[j][k] for k in range(n)) for j in range(n)]
            for i in range(n)
        ]
        return GramMatrix(g)

    def __eq__(self, other) -> bool:
        return isinstance(other, LatticeBasis) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"LatticeBasis({[[str(x) for x in row] for row in self.rows]})"


def gram(basis: LatticeBasis) -> GramMatrix:
    """Matrix of pairwise inner products of the basis rows."""
    return basis.gram()


def covolume_squared(g: GramMatrix) -> Fraction:
    """det(g), exactly.  The covolume itself is its (generally irrational) square root."""
    return g.det


def dual_basis(basis: LatticeBasis) -> LatticeBasis:
    """Basis rows y_j with <x_i, y_j> = delta_ij: the inverse transpose."""
    inv = _linalg.inverse([list(r) for r in basis.rows])
    return LatticeBasis(_linalg.transpose(inv))


def dual_gram(g: GramMatrix) -> GramMatrix:
    """Gram matrix of the dual lattice, which is exactly the inverse matrix."""
    return g.inverse()


# ---------------------------------------------------------------------------
# rank-2 moduli: upper half-plane reduction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Tau:
    """Point of the upper half-plane encoding an oriented rank-2 lattice shape.

    `re` and `im` may be exact (`Fraction`/`int`) or binary64.  When both are
    exact the reduction below runs in exact arithmetic, otherwise comparisons
    use a 1e-12 guard band.
    """

    re: Union[Fraction, float]
    im: Union[Fraction, float]

    def __post_init__(self):
        if isinstance(self.re, bool) or isinstance(self.im, bool):
            raise SchemaError("tau components must be numbers")
        if isinstance(self.re, int):
            object.__setattr__(self, "re", Fraction(self.re))
        if isinstance(self.im, int):
            object.__setattr__(self, "im", Fraction(self.im))
        if self.im <= 0:
            raise NonPositiveImaginaryPart(f"Im(tau) must be positive, got {self.im}")

    @property
    def exact(self) -> bool:
        return isinstance(self.re, Fraction) and isinstance(self.im, Fraction)

    def norm_sq(self):
        return self.re * self.re + self.im * self.im


_SHIFT = ((1, 1), (0, 1))    # tau -> tau + 1
_INVERT = ((0, -1), (1, 0))  # tau -> -1/tau


def _compose(m2, m1):
    (a, b), (c, d) = m2
    (p, q), (r, s) = m1
    return ((a * p + b * r, a * q + b * s), (c * p + d * r, c * q + d * s))


def _shift_pow(n: int):
    return ((1, n), (0, 1))


def apply_mobius(m, t: Tau) -> Tau:
    """Apply an integer 2x2 matrix ((a,b),(c,d)) with det +-1 as a Moebius map."""
    (a, b), (c, d) = m
    num_re, num_im = a * t.re + b, a * t.im
    den_re, den_im = c * t.re + d, c * t.im
    d2 = den_re * den_re + den_im * den_im
    if d2 == 0:
        raise InvalidParameters("Moebius denominator vanishes")
    return Tau(
        (num_re * den_re + num_im * den_im) / d2,
        (num_im * den_re - num_re * den_im) / d2,
    )


def reduce_rank2(t: Tau):
    """Reduce tau into the standard fundamental domain |Re| <= 1/2, |tau| >= 1.

    Boundary representatives are canonicalized toward Re >= 0: a point with
    Re = -1/2 is shifted to +1/2, and a point on the unit circle with Re < 0
    is inverted (equal-length ties prefer the non-negative real part).
    Returns (reduced_tau, transform) where transform is the accumulated
    integer matrix of determinant +1 with apply_mobius(transform, t) equal to
    the reduction.
    """
    exact = t.exact
    eps = 0 if exact else 1e-12
    half = Fraction(1, 2) if exact else 0.5
    tau = t
    m = ((1, 0), (0, 1))
    for _ in range(10_000):
        shift = -math.floor(tau.re + half)
        if shift:
            tau = Tau(tau.re + shift, tau.im)
            m = _compose(_shift_pow(shift), m)
        if tau.norm_sq() < 1 - eps:
            n2 = tau.norm_sq()
            tau = Tau(-tau.re / n2, tau.im / n2)
            m = _compose(_INVERT, m)
            continue
        break
    else:  # pragma: no cover - the translate/invert loop always terminates
        raise RuntimeError("rank-2 reduction failed to converge")
    # boundary ties
    if abs(tau.norm_sq() - 1) <= eps and tau.re < -eps:
        n2 = tau.norm_sq()
        tau = Tau(-tau.re / n2, tau.im / n2)
        m = _compose(_INVERT, m)
    if abs(tau.re + half) <= eps:
        tau = Tau(tau.re + 1, tau.im)
        m = _compose(_SHIFT, m)
    return tau, m


# ---------------------------------------------------------------------------
# LLL reduction, run directly on Gram matrices
# ---------------------------------------------------------------------------

def _gso(g):
    """Gram-Schmidt data (mu, B) of a basis known only through its Gram matrix."""
    n = len(g)
    mu = [[Fraction(0)] * n for _ in range(n)]
    proj = [[Fraction(0)] * n for _ in range(n)]  # proj[i][j] = <b_i, b*_j>
    norms = [Fraction(0)] * n
    for i in range(n):
        for j in range(i):
            r = g[i][j] - sum(mu[j][k] * proj[i][k] for k in range(j))
            proj[i][j] = r
            mu[i][j] = r / norms[j]
        norms[i] = g[i][i] - sum(mu[i][k] * proj[i][k] for k in range(i))
    return mu, norms


def _translate(g, u, k, j, q):
    """Row operation b_k <- b_k - q*b_j applied congruently to g, tracked in u."""
    n = len(g)
    u[k] = [a - q * b for a, b in zip(u[k], u[j])]
    for i in range(n):
        g[k][i] -= q * g[j][i]
    for i in range(n):
        g[i][k] -= q * g[i][j]


def _swap(g, u, k, j):
    u[k], u[j] = u[j], u[k]
    g[k], g[j] = g[j], g[k]
    for row in g:
        row[k], row[j] = row[j], row[k]


def _lll_rows(g, delta: Fraction):
    """Exact LLL on a Gram matrix given as mutable Fraction rows.

    Returns (reduced_gram_rows, transform) with transform integral,
    det = +-1, and reduced = transform * original * transform^T.
    """
    n = len(g)
    u = _linalg.identity_int(n)
    if n == 1:
        return g, u
    mu, norms = _gso(g)
    half = Fraction(1, 2)
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = math.floor(mu[k][j] + half)
            if q:
                _translate(g, u, k, j, q)
                mu, norms = _gso(g)
        if norms[k] >= (delta - mu[k][k - 1] ** 2) * norms[k - 1]:
            k += 1
        else:
            _swap(g, u, k, k - 1)
            mu, norms = _gso(g)
            k = max(k - 1, 1)
    return g, u


def _check_delta(delta) -> Fraction:
    d = _coerce(delta) if not isinstance(delta, float) else Fraction(delta)
    if not Fraction(1, 4) < d < 1:
        raise InvalidParameters(f"LLL parameter must lie in (1/4, 1), got {delta}")
    return d


def lll_reduce_gram(g: GramMatrix, delta=Fraction(3, 4)):
    """LLL-reduce a quadratic form.  Returns (reduced GramMatrix, transform rows)."""
    d = _check_delta(delta)
    work = [[Fraction(x) for x in row] for row in g.entries]
    reduced, u = _lll_rows(work, d)
    return GramMatrix(reduced), tuple(tuple(row) for row in u)


def lll_reduce(basis: LatticeBasis, delta=Fraction(3, 4)):
    """LLL-reduce a basis.  Returns (new basis of the same lattice, transform rows).

    The transform U is integral with determinant +-1 and the new rows are
    exactly U times the old rows.
    """
    reduced_gram, u = lll_reduce_gram(basis.gram(), delta)
    new_rows = _linalg.mat_mul([list(r) for r in u], [list(r) for r in basis.rows])
    new_basis = LatticeBasis(new_rows)
    assert new_basis.gram() == reduced_gram
    return new_basis, u
