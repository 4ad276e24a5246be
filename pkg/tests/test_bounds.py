from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fatpoints.bounds import (
    asymptotic_ratio_check,
    degree_reports,
    effectivity_bound_check,
    find_d0,
    hodge_bound_check,
    obstruction_scan,
    twist_difference,
)
from fatpoints.models import PLANE, QUADRIC, SurfaceNumerics, chi_riemann_roch, pair, toric_h0

from oracles import brute_force_d0, plane_obstruction, quadric_obstruction


def exact(numerics):
    return lambda m: toric_h0(numerics, m)


def test_twist_difference_examples():
    assert twist_difference(PLANE, (3,), (1,)) == 5
    assert chi_riemann_roch(PLANE, (4,)) - chi_riemann_roch(PLANE, (3,)) == 5
    assert twist_difference(PLANE, (0,), (1,)) == 2
    assert twist_difference(QUADRIC, (0, 0), (1, 1)) == 3


def test_twist_difference_window():
    for a in range(-10, 11):
        assert twist_difference(PLANE, (a,), (1,)) == \
            chi_riemann_roch(PLANE, (a + 1,)) - chi_riemann_roch(PLANE, (a,))
        for b in range(-10, 11):
            for a2 in [(1, 1), (2, 1), (1, 3)]:
                m = (a, b)
                moved = (a + a2[0], b + a2[1])
                assert twist_difference(QUADRIC, m, a2) == \
                    chi_riemann_roch(QUADRIC, moved) - chi_riemann_roch(QUADRIC, m)


def test_twist_parity_violation():
    odd = SurfaceNumerics("odd", PLANE.form, (-2,), 1, 0, (1,))
    with pytest.raises(ArithmeticError):
        twist_difference(odd, (0,), (1,))


def test_hodge_examples():
    assert hodge_bound_check(QUADRIC.form, (1, 1), (2, 1))
    assert hodge_bound_check(QUADRIC.form, (1, 1), (1, 1))
    assert hodge_bound_check(PLANE.form, (1,), (7,))
    # proportional classes sit exactly on the boundary
    for form, l, m in [(PLANE.form, (1,), (7,)), (QUADRIC.form, (1, 1), (3, 3))]:
        assert pair(form, m, m) * pair(form, l, l) == pair(form, l, m) ** 2


def test_hodge_needs_positive_square():
    with pytest.raises(ValueError):
        hodge_bound_check(QUADRIC.form, (1, 0), (1, 1))


@given(st.integers(-20, 20), st.integers(-20, 20), st.integers(0, 5), st.integers(0, 5))
def test_hodge_holds_for_all_classes(m1, m2, a, b):
    if a * b == 0:
        a, b = a + 1, b + 1
    assert hodge_bound_check(QUADRIC.form, (a, b), (m1, m2))
    assert hodge_bound_check(PLANE.form, (a,), (m1,))


def test_effectivity_examples():
    assert effectivity_bound_check(PLANE.form, (1,), (3,), (1,), 6)
    assert not effectivity_bound_check(PLANE.form, (1,), (4,), (1,), 6)
    assert effectivity_bound_check(QUADRIC.form, (1, 1), (1, 0), (1, 1), 2)


def test_every_candidate_satisfies_effectivity_and_hodge():
    from fatpoints.bounds import candidate_cone
    for numerics in (PLANE, QUADRIC):
        l = numerics.polarization
        for d in range(1, 15):
            for m in candidate_cone(l, d):
                assert effectivity_bound_check(numerics.form, l, m, l, d)
                assert hodge_bound_check(numerics.form, l, m)


@pytest.mark.parametrize("d,lhs,rhs,possible", [
    (4, 5, Fraction(13, 3), True),
    (8, 14, Fraction(43, 3), False),
    (1, 0, Fraction(1, 3), False),
])
def test_plane_scan_examples(d, lhs, rhs, possible):
    rep = obstruction_scan(PLANE, (1,), d, h0_exact=exact(PLANE))
    assert rep.worst_candidate.lhs == lhs
    assert rep.worst_candidate.rhs == rhs
    assert rep.obstruction_possible is possible
    assert rep.candidates_checked == d // 2 + 1


def test_report_invariant():
    for numerics in (PLANE, QUADRIC):
        for rep in degree_reports(numerics, numerics.polarization, 30, h0_exact=exact(numerics)):
            w = rep.worst_candidate
            assert rep.obstruction_possible == (w is not None and w.lhs >= w.rhs)


# frozen from oracles.brute_force_d0 (closed forms, run before bounds.py existed)
@pytest.mark.parametrize("numerics,oracle,d0", [(PLANE, plane_obstruction, 7),
                                                 (QUADRIC, quadric_obstruction, 5)])
def test_find_d0(numerics, oracle, d0):
    assert brute_force_d0(oracle, 100) == d0
    assert find_d0(numerics, numerics.polarization, 100, h0_exact=exact(numerics)) == d0
    reps = degree_reports(numerics, numerics.polarization, 100, h0_exact=exact(numerics))
    assert [r.obstruction_possible for r in reps] == [oracle(d) for d in range(1, 101)]


def test_find_d0_absent_when_top_degree_obstructed():
    assert find_d0(PLANE, (1,), 2, h0_exact=exact(PLANE)) is None
    assert find_d0(PLANE, (1,), 1, h0_exact=exact(PLANE)) == 1


def test_find_d0_monotone_in_d_max():
    prev = 0
    for d_max in range(1, 40):
        d0 = find_d0(QUADRIC, (1, 1), d_max, h0_exact=exact(QUADRIC))
        if d0 is not None:
            assert d0 >= prev
            prev = d0


def test_estimate_is_conservative():
    for numerics in (PLANE, QUADRIC):
        l = numerics.polarization
        for d in range(1, 60):
            est = obstruction_scan(numerics, l, d)
            ex = obstruction_scan(numerics, l, d, h0_exact=exact(numerics))
            assert not est.h0_exact and ex.h0_exact
            assert est.worst_candidate.lhs >= ex.worst_candidate.lhs
            if not est.obstruction_possible:
                assert not ex.obstruction_possible


def test_estimate_still_yields_a_threshold():
    d0 = find_d0(PLANE, (1,), 100)
    assert d0 is not None and d0 >= 7


def test_nonstandard_polarization():
    assert find_d0(QUADRIC, (1, 2), 100, h0_exact=exact(QUADRIC)) is not None


def test_ratio_examples():
    assert asymptotic_ratio_check(PLANE, (1,), 40) == Fraction(231, 861)
    for d in range(20, 101):
        r = asymptotic_ratio_check(PLANE, (1,), d)
        assert Fraction(1, 4) < r <= Fraction(1, 4) + Fraction(10, d)


def test_degree_must_be_positive():
    with pytest.raises(ValueError):
        obstruction_scan(PLANE, (1,), 0)
    with pytest.raises(ValueError):
        asymptotic_ratio_check(PLANE, (1,), 0)
