"""Integer matrix normal forms and circle bundles over the two-torus.

Covers Smith normal form with recorded unimodular transforms, first homology
of the total space N_e of the degree-e circle bundle over T^2, the homology
of its maximal free-abelian cover as a module over Laurent polynomials, the
fiber self-linking number, and the resulting Casson-type invariant with the
applicability predicate for the rank-2 stable-systole inequality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Tuple

from .errors import InvalidParameters, NoUnitPivot, SchemaError, TrivialBundle

__all__ = [
    "SmithNormalForm",
    "smith_normal_form",
    "AbelianGroupDecomposition",
    "abelian_quotient",
    "LaurentPoly",
    "LaurentModulePresentation",
    "eliminate_unit_generators",
    "augmentation_quotient",
    "CircleBundle",
    "CoverHomology",
    "FiberLinking",
    "BundleInvariants",
    "bundle_h1",
    "cover_presentation",
    "cover_h1",
    "fiber_linking",
    "casson_lambda",
    "corollary93_applicability",
    "bundle_invariants",
]


# ---------------------------------------------------------------------------
# Smith normal form over the integers, with transforms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SmithNormalForm:
    """U * original * V = D with U, V unimodular and the diagonal of D a
    divisibility chain d_1 | d_2 | ... (entries nonnegative)."""

    d: Tuple[Tuple[int, ...], ...]
    u: Tuple[Tuple[int, ...], ...]
    v: Tuple[Tuple[int, ...], ...]

    @property
    def diagonal(self) -> Tuple[int, ...]:
        return tuple(self.d[i][i] for i in range(min(len(self.d), len(self.d[0]))))


def _validate_int_matrix(matrix):
    rows = [list(row) for row in matrix]
    if not rows or not rows[0]:
        raise SchemaError("matrix must have at least one row and one column")
    width = len(rows[0])
    for row in rows:
        if len(row) != width:
            raise SchemaError("matrix rows must all have the same length")
        for x in row:
            if isinstance(x, bool) or not isinstance(x, int):
                raise SchemaError(f"matrix entries must be integers, got {x!r}")
    return rows


def smith_normal_form(matrix) -> SmithNormalForm:
    """Diagonalize an integer matrix by unimodular row/column operations.

    Standard pivot-shrinking algorithm: repeatedly move a least-magnitude
    entry to the pivot, reduce its row and column by division, and patch
    divisibility failures by folding the offending row into the pivot row.
    Every operation is mirrored onto U (rows) or V (columns), so
    U * m * V = D holds exactly on return.
    """
    a = _validate_int_matrix(matrix)
    nrows, ncols = len(a), len(a[0])
    u = [[int(i == j) for j in range(nrows)] for i in range(nrows)]
    v = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def row_op(i, j, q):  # row_i -= q * row_j
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, q):  # col_i -= q * col_j
        for r in range(nrows):
            a[r][i] -= q * a[r][j]
        for r in range(ncols):
            v[r][i] -= q * v[r][j]

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def col_swap(i, j):
        for r in range(nrows):
            a[r][i], a[r][j] = a[r][j], a[r][i]
        for r in range(ncols):
            v[r][i], v[r][j] = v[r][j], v[r][i]

    def pivot_position(t):
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        return best

    t = 0
    while t < min(nrows, ncols):
        pos = pivot_position(t)
        if pos is None:
            break
        while True:
            i, j = pos
            if i != t:
                row_swap(t, i)
            if j != t:
                col_swap(t, j)
            dirty = False
            for r in range(t + 1, nrows):
                if a[r][t]:
                    row_op(r, t, a[r][t] // a[t][t])
                    if a[r][t]:
                        dirty = True
            for c in range(t + 1, ncols):
                if a[t][c]:
                    col_op(c, t, a[t][c] // a[t][t])
                    if a[t][c]:
                        dirty = True
            if dirty:
                pos = pivot_position(t)
                continue
            # divisibility of the untouched block by the pivot
            offender = next(
                (
                    (r, c)
                    for r in range(t + 1, nrows)
                    for c in range(t + 1, ncols)
                    if a[r][c] % a[t][t]
                ),
                None,
            )
            if offender is None:
                break
            row_op(t, offender[0], -1)  # fold the offending row into row t
            pos = (t, t)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1

    return SmithNormalForm(
        d=tuple(tuple(row) for row in a),
        u=tuple(tuple(row) for row in u),
        v=tuple(tuple(row) for row in v),
    )


@dataclass(frozen=True)
class AbelianGroupDecomposition:
    """Z^free_rank plus cyclic torsion factors in divisibility order."""

    free_rank: int
    torsion: Tuple[int, ...]


def abelian_quotient(relations, num_generators: int) -> AbelianGroupDecomposition:
    """Z^num_generators modulo the row span of the relation matrix."""
    if num_generators < 0:
        raise InvalidParameters("generator count must be nonnegative")
    if not relations:
        return AbelianGroupDecomposition(free_rank=num_generators, torsion=())
    rows = _validate_int_matrix(relations)
    if len(rows[0]) != num_generators:
        raise SchemaError("relation rows must have one column per generator")
    diag = smith_normal_form(rows).diagonal
    rank = sum(1 for d in diag if d != 0)
    torsion = tuple(d for d in diag if d > 1)
    return AbelianGroupDecomposition(free_rank=num_generators - rank, torsion=torsion)


# ---------------------------------------------------------------------------
# Laurent polynomials in t_x, t_y and module presentations
# ---------------------------------------------------------------------------

class LaurentPoly:
    """Laurent polynomial with integer coefficients, default variables t_x, t_y."""

    __slots__ = ("terms", "nvars")

    def __init__(self, terms: Dict[tuple, int], nvars: int = 2):
        clean = {}
        for exps, coeff in terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise InvalidParameters("exponent tuple length must match nvars")
            if coeff:
                clean[exps] = clean.get(exps, 0) + int(coeff)
        self.terms = {e: c for e, c in clean.items() if c}
        self.nvars = nvars

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls, nvars: int = 2):
        return cls({}, nvars)

    @classmethod
    def constant(cls, c: int, nvars: int = 2):
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def var(cls, i: int, nvars: int = 2):
        exps = [0] * nvars
        exps[i] = 1
        return cls({tuple(exps): 1}, nvars)

    @classmethod
    def var_minus_one(cls, i: int, nvars: int = 2):
        exps = [0] * nvars
        exps[i] = 1
        return cls({tuple(exps): 1, (0,) * nvars: -1}, nvars)

    # -- arithmetic ---------------------------------------------------------
    def _binary(self, other, sign):
        if isinstance(other, int):
            other = LaurentPoly.constant(other, self.nvars)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + sign * c
        return LaurentPoly(terms, self.nvars)

    def __add__(self, other):
        return self._binary(other, 1)

    def __sub__(self, other):
        return self._binary(other, -1)

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.terms.items()}, self.nvars)

    def __mul__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other, self.nvars)
        terms: Dict[tuple, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                terms[key] = terms.get(key, 0) + c1 * c2
        return LaurentPoly(terms, self.nvars)

    __rmul__ = __mul__

    def __eq__(self, other):
        return (
            isinstance(other, LaurentPoly)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, tuple(sorted(self.terms.items()))))

    def __bool__(self):
        return bool(self.terms)

    # -- structure ----------------------------------------------------------
    def augmentation(self) -> int:
        """Evaluation at t_i = 1 for every variable (sum of coefficients)."""
        return sum(self.terms.values())

    def as_unit(self):
        """(coefficient, exponents) if this is a unit (+- a monomial), else None."""
        if len(self.terms) != 1:
            return None
        ((exps, coeff),) = self.terms.items()
        return (coeff, exps) if coeff in (1, -1) else None

    def unit_inverse(self) -> "LaurentPoly":
        unit = self.as_unit()
        if unit is None:
            raise NoUnitPivot("not a unit in the Laurent ring")
        coeff, exps = unit
        return LaurentPoly({tuple(-e for e in exps): coeff}, self.nvars)

    def variable_of_unit_multiple(self) -> Optional[int]:
        """If self = unit * (t_i - 1), return i, else None."""
        if len(self.terms) != 2:
            return None
        (e1, c1), (e2, c2) = sorted(self.terms.items())
        if c1 + c2 != 0 or abs(c1) != 1:
            return None
        delta = [b - a for a, b in zip(e1, e2)]
        nonzero = [k for k, d in enumerate(delta) if d]
        if len(nonzero) == 1 and abs(delta[nonzero[0]]) == 1:
            return nonzero[0]
        return None

    def __repr__(self):
        if not self.terms:
            return "0"
        names = ["t_x", "t_y"] if self.nvars == 2 else [f"t_{k}" for k in range(self.nvars)]
        parts = []
        for exps, coeff in sorted(self.terms.items()):
            monos = [
                f"{names[k]}^{e}" if e != 1 else names[k]
                for k, e in enumerate(exps)
                if e
            ]
            body = "*".join(monos) or "1"
            parts.append(f"{coeff:+d}*{body}")
        return " ".join(parts)


@dataclass(frozen=True)
class LaurentModulePresentation:
    """Module over the Laurent ring: named generators, relation rows mapping
    generator name -> coefficient polynomial."""

    generators: Tuple[str, ...]
    relations: Tuple[Dict[str, LaurentPoly], ...]
    nvars: int = 2

    def __post_init__(self):
        for rel in self.relations:
            for gen, coeff in rel.items():
                if gen not in self.generators:
                    raise SchemaError(f"relation references unknown generator {gen!r}")
                if coeff.nvars != self.nvars:
                    raise SchemaError("coefficient variable count mismatch")


def eliminate_unit_generators(
    pres: LaurentModulePresentation,
) -> LaurentModulePresentation:
    """Remove every generator that carries a unit coefficient in some relation.

    Such a relation expresses the generator in terms of the others; it is
    substituted into the remaining relations and dropped together with the
    generator.  Repeats until no unit pivot remains.
    """
    gens = list(pres.generators)
    rels = [dict(rel) for rel in pres.relations]
    while True:
        pivot = None
        for ridx, rel in enumerate(rels):
            for gen, coeff in rel.items():
                if coeff.as_unit() is not None:
                    pivot = (ridx, gen)
                    break
            if pivot:
                break
        if pivot is None:
            break
        ridx, gen = pivot
        rel = rels.pop(ridx)
        inv = rel[gen].unit_inverse()
        for other in rels:
            if gen in other:
                factor = other.pop(gen) * inv
                for h, coeff in rel.items():
                    if h == gen:
                        continue
                    updated = other.get(h, LaurentPoly.zero(pres.nvars)) - factor * coeff
                    if updated:
                        other[h] = updated
                    else:
                        other.pop(h, None)
        gens.remove(gen)
    return LaurentModulePresentation(
        generators=tuple(gens),
        relations=tuple(rels),
        nvars=pres.nvars,
    )


def augmentation_quotient(pres: LaurentModulePresentation):
    """Identify a presentation of shape R/(t_1 - 1, ..., t_n - 1) on one
    generator and return (rank over Z, generator name).

    Requires: a single surviving generator; every relation coefficient lies
    in the augmentation ideal (sums of coefficients vanish); and each
    variable's t_i - 1 appears as a relation up to a unit.  The quotient is
    then the integers, generated by the surviving generator.  Any other
    shape raises NoUnitPivot.
    """
    if len(pres.generators) != 1:
        raise NoUnitPivot(
            f"expected a single generator after elimination, have {list(pres.generators)}"
        )
    gen = pres.generators[0]
    covered = set()
    for rel in pres.relations:
        coeff = rel.get(gen, LaurentPoly.zero(pres.nvars))
        if coeff.augmentation() != 0:
            raise NoUnitPivot(
                f"relation {coeff!r} is outside the augmentation ideal"
            )
        var = coeff.variable_of_unit_multiple()
        if var is not None:
            covered.add(var)
    if covered != set(range(pres.nvars)):
        missing = sorted(set(range(pres.nvars)) - covered)
        raise NoUnitPivot(f"missing (t_i - 1) relations for variables {missing}")
    return 1, gen


# ---------------------------------------------------------------------------
# circle bundles over the two-torus
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CircleBundle:
    """Total space of the oriented circle bundle of Euler number e != 0 over T^2.

    Gluing convention along the torus fiber coordinate: (u, v) -> (u * v^e, v),
    so the boundary section satisfies [dD_bar] = -e [F_bar] upstairs.
    e = 0 is rejected: the trivial bundle has first Betti number 3 and its
    fibers are not rationally nullhomologous, so fiber linking is undefined.
    """

    euler: int

    def __post_init__(self):
        if isinstance(self.euler, bool) or not isinstance(self.euler, int):
            raise SchemaError(f"Euler number must be an integer, got {self.euler!r}")
        if self.euler == 0:
            raise TrivialBundle(
                "Euler number 0: the trivial bundle T^3 has first Betti number 3 "
                "and its fibers are not rationally nullhomologous, so the fiber "
                "linking number is undefined"
            )


def bundle_h1(bundle: CircleBundle) -> AbelianGroupDecomposition:
    """H_1 of the total space: Z^2 from the base, Z/|e| from the fiber.

    The fundamental group is generated by two base loops and the central
    fiber, with the commutator relation killing e times the fiber; the
    abelianized presentation matrix is the single row (0, 0, e).
    """
    return abelian_quotient([[0, 0, bundle.euler]], 3)


def cover_presentation(bundle: CircleBundle) -> LaurentModulePresentation:
    """Presentation of H_1 of the maximal free-abelian cover as a module
    over Z[t_x^{+-1}, t_y^{+-1}]: generators the lifted fiber F_bar and the
    lifted boundary section dD_bar, with deck translates of the fiber all
    identified and the boundary section equal to -e times the fiber."""
    tx_minus = LaurentPoly.var_minus_one(0)
    ty_minus = LaurentPoly.var_minus_one(1)
    return LaurentModulePresentation(
        generators=("F_bar", "dD_bar"),
        relations=(
            {"F_bar": tx_minus},
            {"F_bar": ty_minus},
            {"dD_bar": LaurentPoly.constant(1), "F_bar": LaurentPoly.constant(bundle.euler)},
        ),
    )


@dataclass(frozen=True)
class CoverHomology:
    rank_over_z: int
    generator: str
    torsion: Tuple[int, ...] = ()


def cover_h1(bundle: CircleBundle) -> CoverHomology:
    """H_1 of the maximal free-abelian cover: infinite cyclic on the fiber class.

    The unit pivot on dD_bar eliminates it, leaving R/(t_x - 1, t_y - 1) on
    F_bar, whose augmentation quotient is Z.
    """
    reduced = eliminate_unit_generators(cover_presentation(bundle))
    rank, generator = augmentation_quotient(reduced)
    return CoverHomology(rank_over_z=rank, generator=generator)


LINKING_CONVENTION = "uv^{+e}"


@dataclass(frozen=True)
class FiberLinking:
    """Self-linking of a generic fiber with a parallel copy: magnitude 1/|e|,
    sign fixed by the gluing convention."""

    magnitude: Fraction
    signed: Fraction
    convention: str = LINKING_CONVENTION


def fiber_linking(bundle: CircleBundle) -> FiberLinking:
    e = bundle.euler
    return FiberLinking(magnitude=Fraction(1, abs(e)), signed=Fraction(1, e))


def casson_lambda(bundle: CircleBundle) -> Fraction:
    """Casson-type invariant: minus the signed fiber linking scaled by the
    torsion cardinality of H_1 (always +-1 for these bundles)."""
    torsion = bundle_h1(bundle).torsion
    torsion_card = math.prod(torsion) if torsion else 1
    return -fiber_linking(bundle).signed * torsion_card


@dataclass(frozen=True)
class Corollary93:
    applicable: bool
    casson_lambda: Fraction
    b1: int
    statement: Dict[str, object]


def corollary93_applicability(bundle: CircleBundle) -> Corollary93:
    """Predicate for the rank-2 stable-systole inequality on the bundle.

    Applicable whenever the Casson-type invariant is nonzero (always, here):
    every metric g on the total space then satisfies
    stsys_1(g)^2 * pisys_1(g) <= (2/sqrt(3)) * vol(g), with first Betti
    number 2.
    """
    lam = casson_lambda(bundle)
    return Corollary93(
        applicable=lam != 0,
        casson_lambda=lam,
        b1=2,
        statement={
            "inequality": "stsys1(g)^2 * pisys1(g) <= c * vol(g)",
            "constant_sq": str(Fraction(4, 3)),
            "constant_approx": math.sqrt(4.0 / 3.0),
            "b1": 2,
            "scope": "every Riemannian metric on the total space",
        },
    )


@dataclass(frozen=True)
class BundleInvariants:
    euler: int
    h1: AbelianGroupDecomposition
    cover_h1_rank_over_z: int
    cover_h1_generator: str
    linking: FiberLinking
    casson: Fraction
    corollary93_applicable: bool


def bundle_invariants(bundle: CircleBundle) -> BundleInvariants:
    """Assemble every invariant; cross-checks the linking/Casson identity."""
    h1 = bundle_h1(bundle)
    cover = cover_h1(bundle)
    linking = fiber_linking(bundle)
    lam = casson_lambda(bundle)
    torsion_card = math.prod(h1.torsion) if h1.torsion else 1
    assert lam == -linking.signed * torsion_card
    applicability = corollary93_applicability(bundle)
    return BundleInvariants(
        euler=bundle.euler,
        h1=h1,
        cover_h1_rank_over_z=cover.rank_over_z,
        cover_h1_generator=cover.generator,
        linking=linking,
        casson=lam,
        corollary93_applicable=applicability.applicable,
    )
