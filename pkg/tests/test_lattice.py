"""Gram matrices, duality, rank-2 reduction, and exact LLL."""

from fractions import Fraction

import numpy as np
import pytest

from systolic import (
    GramMatrix,
    LatticeBasis,
    NonPositiveImaginaryPart,
    NotPositiveDefinite,
    InvalidParameters,
    SchemaError,
    Tau,
    apply_mobius,
    covolume_squared,
    dual_basis,
    dual_gram,
    gram,
    lll_reduce,
    lll_reduce_gram,
    reduce_rank2,
)
from systolic.lattice import UnsupportedDimension

import oracles


HEX = GramMatrix([[1, Fraction(1, 2)], [Fraction(1, 2), 1]])
FCC_BASIS = LatticeBasis([[1, 1, 0], [1, 0, 1], [0, 1, 1]])


# ---------------------------------------------------------------------------
# construction and validation
# ---------------------------------------------------------------------------


def test_gram_accepts_string_rationals():
    g = GramMatrix([["1", "1/2"], ["1/2", "1"]])
    assert g == HEX
    assert g.entries[0][1] == Fraction(1, 2)


def test_gram_rejects_asymmetric():
    with pytest.raises(SchemaError):
        GramMatrix([[1, 0], [1, 1]])


def test_gram_rejects_ragged_and_nonsquare():
    with pytest.raises(SchemaError):
        GramMatrix([[1, 0], [0]])
    with pytest.raises(SchemaError):
        GramMatrix([[1, 0, 0], [0, 1, 0]])


def test_gram_rejects_indefinite_with_minor_index():
    with pytest.raises(NotPositiveDefinite) as exc:
        GramMatrix([[1, 2], [2, 1]])
    assert "order 2" in str(exc.value)
    with pytest.raises(NotPositiveDefinite) as exc:
        GramMatrix([[-1, 0], [0, 1]])
    assert "order 1" in str(exc.value)


def test_gram_rejects_bool_entries_and_floats():
    with pytest.raises(SchemaError):
        GramMatrix([[True, 0], [0, 1]])
    with pytest.raises(SchemaError):
        GramMatrix([[1.0, 0], [0, 1]])


def test_dimension_cap():
    with pytest.raises(UnsupportedDimension):
        GramMatrix([[int(i == j) for j in range(9)] for i in range(9)])


def test_basis_rejects_singular():
    from systolic import SingularBasis

    with pytest.raises(SingularBasis):
        LatticeBasis([[1, 2], [2, 4]])


# ---------------------------------------------------------------------------
# gram / covolume / duality
# ---------------------------------------------------------------------------


def test_fcc_basis_has_fcc_gram():
    assert gram(FCC_BASIS) == GramMatrix([[2, 1, 1], [1, 2, 1], [1, 1, 2]])


def test_covolume_squared_examples():
    assert covolume_squared(HEX) == Fraction(3, 4)
    assert covolume_squared(gram(FCC_BASIS)) == 4
    assert covolume_squared(GramMatrix([[1, 0], [0, 1]])) == 1


def test_dual_basis_is_inverse_transpose():
    b = LatticeBasis([[1, 0], [100, 1]])
    d = dual_basis(b)
    assert d.rows == ((Fraction(1), Fraction(-100)), (Fraction(0), Fraction(1)))


def test_fcc_dual_basis_rows():
    d = dual_basis(FCC_BASIS)
    h = Fraction(1, 2)
    assert d.rows == ((h, h, -h), (h, -h, h), (-h, h, h))


def test_dual_gram_is_inverse():
    dg = dual_gram(gram(FCC_BASIS))
    q = Fraction(1, 4)
    assert dg.entries == (
        (3 * q, -q, -q),
        (-q, 3 * q, -q),
        (-q, -q, 3 * q),
    )


def test_duality_is_an_involution_and_covolumes_multiply_to_one():
    rng = np.random.default_rng(20)
    for dim in (2, 3, 4, 5):
        for _ in range(8):
            rows = oracles.random_basis_rows(rng, dim, -5, 5)
            b = LatticeBasis(rows)
            g = b.gram()
            assert dual_gram(dual_gram(g)) == g
            assert dual_basis(dual_basis(b)) == b
            assert covolume_squared(g) * covolume_squared(dual_gram(g)) == 1


# ---------------------------------------------------------------------------
# rank-2 reduction into the fundamental domain
# ---------------------------------------------------------------------------


def test_tau_requires_positive_imaginary_part():
    with pytest.raises(NonPositiveImaginaryPart):
        Tau(0, 0)
    with pytest.raises(NonPositiveImaginaryPart):
        Tau(Fraction(1, 2), Fraction(-1))


def test_reduce_rank2_frozen_example():
    # brute-force word search over {T, T^-1, S} lands on the same point
    t, m = reduce_rank2(Tau(Fraction(3, 10), Fraction(2, 5)))
    assert (t.re, t.im) == (Fraction(-1, 5), Fraction(8, 5))
    assert m == ((1, -1), (1, 0))
    assert oracles.mobius_word_search(Fraction(3, 10), Fraction(2, 5)) == {(t.re, t.im)}


def test_reduce_rank2_transform_is_consistent():
    start = Tau(Fraction(3, 10), Fraction(2, 5))
    t, m = reduce_rank2(start)
    again = apply_mobius(m, start)
    assert (again.re, again.im) == (t.re, t.im)
    assert m[0][0] * m[1][1] - m[0][1] * m[1][0] == 1


def test_reduce_rank2_interior_points_are_fixed():
    t, m = reduce_rank2(Tau(Fraction(1, 4), Fraction(3, 2)))
    assert (t.re, t.im) == (Fraction(1, 4), Fraction(3, 2))
    assert m == ((1, 0), (0, 1))


def test_reduce_rank2_boundary_ties_prefer_positive_real_part():
    # left edge Re = -1/2 maps to the right edge
    t, _ = reduce_rank2(Tau(Fraction(-1, 2), Fraction(2)))
    assert t.re == Fraction(1, 2) and t.im == Fraction(2)
    # unit circle inside the strip with negative real part flips sign
    t, _ = reduce_rank2(Tau(Fraction(-7, 25), Fraction(24, 25)))
    assert (t.re, t.im) == (Fraction(7, 25), Fraction(24, 25))
    # a unit-circle point outside the strip lands on the right strip edge
    t, _ = reduce_rank2(Tau(Fraction(-3, 5), Fraction(4, 5)))
    assert (t.re, t.im) == (Fraction(1, 2), Fraction(1))


def test_reduce_rank2_float_corner_terminates_and_stabilizes():
    # the corner e^(i pi/3) in floats sits a few ulps off |tau| = 1; the
    # guard band must keep the loop finite and the answer next to the corner
    import math

    re, im = math.cos(math.pi / 3), math.sin(math.pi / 3)
    t, m = reduce_rank2(Tau(re, im))
    assert abs(t.re - 0.5) <= 1e-12 and abs(t.im - math.sqrt(3) / 2) <= 1e-12
    assert m[0][0] * m[1][1] - m[0][1] * m[1][0] == 1
    # repeated reduction reaches an exact float fixed point within a few passes
    for _ in range(3):
        t2, _ = reduce_rank2(t)
        if (t2.re, t2.im) == (t.re, t.im):
            break
        t = t2
    t3, _ = reduce_rank2(t)
    assert (t3.re, t3.im) == (t.re, t.im)


def test_reduce_rank2_matches_word_search_on_random_rationals():
    rng = np.random.default_rng(77)
    for _ in range(25):
        re = Fraction(int(rng.integers(-8, 9)), int(rng.integers(1, 7)))
        im = Fraction(int(rng.integers(1, 9)), int(rng.integers(1, 7)))
        t, m = reduce_rank2(Tau(re, im))
        assert oracles.in_fundamental_domain(t.re, t.im)
        assert m[0][0] * m[1][1] - m[0][1] * m[1][0] == 1
        landed = apply_mobius(m, Tau(re, im))
        assert (landed.re, landed.im) == (t.re, t.im)
        # the word search must reach the same orbit representative
        found = oracles.mobius_word_search(re, im, max_depth=12)
        assert (t.re, t.im) in found


# ---------------------------------------------------------------------------
# LLL
# ---------------------------------------------------------------------------


def _gso_exact(rows):
    """Local Gram-Schmidt on a Gram matrix, for checking reducedness."""
    n = len(rows)
    mu = [[Fraction(0)] * n for _ in range(n)]
    proj = [[Fraction(0)] * n for _ in range(n)]
    norms = [Fraction(0)] * n
    for i in range(n):
        for j in range(i):
            r = Fraction(rows[i][j]) - sum(mu[j][k] * proj[i][k] for k in range(j))
            proj[i][j] = r
            mu[i][j] = r / norms[j]
        norms[i] = Fraction(rows[i][i]) - sum(mu[i][k] * proj[i][k] for k in range(i))
    return mu, norms


def _assert_lll_reduced(entries, delta=Fraction(3, 4)):
    mu, norms = _gso_exact(entries)
    n = len(entries)
    for i in range(n):
        for j in range(i):
            assert abs(mu[i][j]) <= Fraction(1, 2)
    for i in range(1, n):
        lhs = delta * norms[i - 1]
        rhs = norms[i] + mu[i][i - 1] ** 2 * norms[i - 1]
        assert lhs <= rhs


def test_lll_identity_is_stable():
    g = GramMatrix([[1, 0], [0, 1]])
    red, u = lll_reduce_gram(g)
    assert red == g
    assert u == ((1, 0), (0, 1))


def test_lll_collapses_skewed_basis():
    b = LatticeBasis([[1, 0], [100, 1]])
    nb, u = lll_reduce(b)
    assert nb.gram() == GramMatrix([[1, 0], [0, 1]])
    assert u == ((1, 0), (-100, 1))


def test_lll_rejects_bad_delta():
    with pytest.raises(InvalidParameters):
        lll_reduce_gram(HEX, delta=Fraction(1, 4))
    with pytest.raises(InvalidParameters):
        lll_reduce_gram(HEX, delta=1)


def test_lll_random_sweep_preserves_lattice_and_is_reduced():
    rng = np.random.default_rng(4)
    for dim in (2, 3, 4, 5):
        for _ in range(6):
            rows = oracles.random_basis_rows(rng, dim, -9, 9)
            g = LatticeBasis(rows).gram()
            red, u = lll_reduce_gram(g)
            # unimodular change of basis: same determinant, u in GL_n(Z)
            assert red.det == g.det
            det_u = oracles.frac_det([list(r) for r in u])
            assert det_u in (1, -1)
            # red = u g u^T, recomputed here exactly
            ug = [[sum(Fraction(u[i][k]) * g.entries[k][j] for k in range(dim))
                   for j in range(dim)] for i in range(dim)]
            ugu = [[sum(ug[i][k] * Fraction(u[j][k]) for k in range(dim))
                    for j in range(dim)] for i in range(dim)]
            assert tuple(tuple(r) for r in ugu) == red.entries
            _assert_lll_reduced([list(r) for r in red.entries])


def test_lll_first_vector_is_reasonably_short():
    # delta = 3/4 guarantees |b1|^2 <= 2^(n-1) * lambda_1^2
    rng = np.random.default_rng(11)
    for _ in range(10):
        rows, bound = oracles.random_gram_in_budget(rng, 3, -4, 4)
        g = GramMatrix(rows)
        red, _ = lll_reduce_gram(g)
        lam1 = oracles.box_shortest(rows, bound)
        assert red.entries[0][0] <= 4 * lam1
