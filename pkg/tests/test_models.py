import itertools
import random
from fractions import Fraction
from math import comb, prod

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fatpoints.linalg import DenseMatrix, rank
from fatpoints.models import (
    PLANE,
    QUADRIC,
    IntersectionForm,
    basis,
    basis_size,
    chi_riemann_roch,
    evaluation_block_mod_p,
    evaluation_rows,
    pair,
    product_of_lines,
    projective_space,
    surface_numerics,
    toric_h0,
)

P = 10007


def test_plane_quartic_basis_count():
    assert len(basis(projective_space(2), 4)) == 15


def test_quadric_bidegree_two_two_count():
    monos = basis(product_of_lines(2), (2, 2))
    assert len(monos) == 9
    assert set(monos) == set(itertools.product(range(3), range(3)))


def test_constant_basis():
    assert basis(projective_space(1), 0) == [(0,)]


@pytest.mark.parametrize("n,d", [(1, 5), (2, 4), (3, 3), (4, 6)])
def test_projective_count_is_binomial(n, d):
    monos = basis(projective_space(n), d)
    assert len(monos) == comb(n + d, d) == basis_size(projective_space(n), d)
    assert len(set(monos)) == len(monos)


def test_basis_is_graded_lex_and_deterministic():
    monos = basis(projective_space(2), 2)
    assert monos == [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
    assert monos == basis(projective_space(2), 2)
    assert basis(product_of_lines(3), (1, 2, 1)) == basis(product_of_lines(3), (1, 2, 1))


def test_degree_validation():
    with pytest.raises(ValueError):
        basis(projective_space(2), (1, 2))
    with pytest.raises(ValueError):
        basis(product_of_lines(2), (-1, 2))
    with pytest.raises(ValueError):
        projective_space(0)


def test_rows_at_origin_of_line():
    assert evaluation_rows(projective_space(1), 2, (0,)) == [[1, 0, 0], [0, 1, 0]]


def test_rows_for_linear_forms():
    rows = evaluation_rows(projective_space(2), 1, (7, -3))
    assert rows == [[1, 7, -3], [0, 1, 0], [0, 0, 1]]
    assert rank(DenseMatrix.from_rows(rows)) == 3


def test_euler_relation_on_projective_space():
    """x0 dF/dx0 + sum xi dF/dxi = d F after homogenising with x0 = 1.

    dF/dx0 is computed directly from the homogenisation; the affine partials
    come from ``evaluation_rows``.
    """
    rng = random.Random(50)
    for _ in range(50):
        n, d = rng.randint(1, 3), rng.randint(0, 5)
        model = projective_space(n)
        monos = basis(model, d)
        coeffs = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in monos]
        pt = tuple(Fraction(rng.randint(-20, 20), rng.randint(1, 7)) for _ in range(n))
        rows = evaluation_rows(model, d, pt)
        f = sum(c * v for c, v in zip(coeffs, rows[0]))
        partials = [sum(c * v for c, v in zip(coeffs, rows[j + 1])) for j in range(n)]
        d0 = sum(c * (d - sum(m)) * prod(x ** e for x, e in zip(pt, m))
                 for c, m in zip(coeffs, monos))
        assert d0 + sum(x * g for x, g in zip(pt, partials)) == d * f


def test_euler_relation_per_factor_on_products():
    rng = random.Random(51)
    for _ in range(50):
        degs = (rng.randint(0, 4), rng.randint(0, 4))
        model = product_of_lines(2)
        monos = basis(model, degs)
        coeffs = [rng.randint(-9, 9) for _ in monos]
        pt = (rng.randint(-20, 20), rng.randint(-20, 20))
        rows = evaluation_rows(model, degs, pt)
        for j in range(2):
            dj = sum(c * (degs[j] - m[j]) * prod(x ** e for x, e in zip(pt, m))
                     for c, m in zip(coeffs, monos))
            partial = sum(c * v for c, v in zip(coeffs, rows[j + 1]))
            f = sum(c * v for c, v in zip(coeffs, rows[0]))
            assert dj + pt[j] * partial == degs[j] * f


@pytest.mark.parametrize("model,deg", [
    (projective_space(1), 7), (projective_space(2), 5), (projective_space(3), 4),
    (projective_space(4), 3), (product_of_lines(2), (3, 2)), (product_of_lines(3), (1, 2, 2)),
])
def test_vectorised_rows_match_generic(model, deg):
    rng = np.random.default_rng(3)
    pts = rng.integers(0, P, size=(4, model.dim))
    monos = basis(model, deg)
    block = evaluation_block_mod_p(monos, pts, P)
    generic = []
    for pt in pts.tolist():
        generic.extend(evaluation_rows(model, deg, pt, modulus=P, monomials=monos))
    assert block.tolist() == generic


@pytest.mark.parametrize("model", [projective_space(1), projective_space(2), projective_space(3),
                                   product_of_lines(2), product_of_lines(3)])
@pytest.mark.parametrize("d", [2, 3, 4])
def test_two_double_points(model, d):
    """Independent, save the quadric exception on P^n (n >= 2) and P^1 saturating at d = 2."""
    rng = random.Random(d * 10 + model.dim)
    pts = [tuple(rng.randint(-100, 100) for _ in range(model.dim)) for _ in range(2)]
    rows = evaluation_rows(model, d, pts[0]) + evaluation_rows(model, d, pts[1])
    want = min(basis_size(model, d), 2 * (model.dim + 1))
    if model.kind == "projective-space" and model.dim >= 2 and d == 2:
        want -= 1
    assert rank(DenseMatrix.from_rows(rows)) == want


def test_pairings():
    assert pair(PLANE.form, (1,), (1,)) == 1
    assert pair(QUADRIC.form, (1, 1), (1, 1)) == 2
    assert pair(QUADRIC.form, (1, 1), (-2, -2)) == -4
    with pytest.raises(ValueError):
        pair(QUADRIC.form, (1,), (1, 1))


def test_form_must_be_symmetric():
    with pytest.raises(ValueError):
        IntersectionForm(((0, 1), (2, 0)))


@given(st.tuples(st.integers(-50, 50), st.integers(-50, 50)),
       st.tuples(st.integers(-50, 50), st.integers(-50, 50)))
def test_pair_symmetric(a, b):
    assert pair(QUADRIC.form, a, b) == pair(QUADRIC.form, b, a)
    assert pair(PLANE.form, a[:1], b[:1]) == pair(PLANE.form, b[:1], a[:1])


def test_chi_examples():
    assert chi_riemann_roch(PLANE, (4,)) == 15
    assert chi_riemann_roch(QUADRIC, (2, 2)) == 9
    assert chi_riemann_roch(PLANE, (0,)) == 1
    assert chi_riemann_roch(QUADRIC, (0, 0)) == 1


@pytest.mark.parametrize("m", range(0, 11))
def test_chi_plane_closed_form(m):
    assert chi_riemann_roch(PLANE, (m,)) == (m + 1) * (m + 2) // 2


def test_chi_parity_violation():
    bad = PLANE.__class__("bad", PLANE.form, (-2,), 1, 0, (1,))
    with pytest.raises(ArithmeticError):
        chi_riemann_roch(bad, (1,))


def test_surface_lookup_and_h0():
    assert surface_numerics(projective_space(2)) is PLANE
    assert surface_numerics(product_of_lines(2)) is QUADRIC
    with pytest.raises(ValueError):
        surface_numerics(projective_space(3))
    assert toric_h0(PLANE, (-1,)) == 0
    assert toric_h0(QUADRIC, (2, 3)) == 12
