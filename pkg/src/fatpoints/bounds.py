"""Effective degree thresholds for the double-point obstruction on surfaces.

If ``k`` general double points fail to impose independent conditions on
``|dL|``, the points lie on a curve of some class ``M`` with ``dL - 2M``
effective, and

    q + h0(M) - 1 >= (h0(dL) - 2) / 3.

Since ``h0(M)`` grows like ``L^2 d^2 / 8`` and ``h0(dL)`` like ``L^2 d^2 / 2``
this fails for large ``d``.  The functions here evaluate both sides exactly
over the candidate cone and locate the degree past which it always fails.

Candidate classes are the lattice points ``0 <= M <= dL/2`` (componentwise),
which is exact when the effective cone is the nonnegative orthant, as it is
for the built-in toric surfaces.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .models import IntersectionForm, SurfaceNumerics, chi_riemann_roch, pair, toric_h0

H0Callback = Callable[[Sequence[int]], int]


@dataclass(frozen=True)
class ObstructionCandidate:
    m_class: tuple[int, ...]
    h0_m: int
    lhs: int
    rhs: Fraction

    def to_dict(self) -> dict:
        return {
            "m_class": list(self.m_class),
            "h0_m": self.h0_m,
            "lhs": self.lhs,
            "rhs": str(self.rhs),
        }


@dataclass(frozen=True)
class BoundsReport:
    degree: int
    candidates_checked: int
    worst_candidate: ObstructionCandidate | None
    obstruction_possible: bool
    h0_exact: bool = True

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "candidates_checked": self.candidates_checked,
            "worst_candidate": self.worst_candidate.to_dict() if self.worst_candidate else None,
            "obstruction_possible": self.obstruction_possible,
            "h0_source": "exact" if self.h0_exact else "riemann-roch-estimate",
        }


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _scale(c, a):
    return tuple(c * x for x in a)


def twist_difference(numerics: SurfaceNumerics, m: Sequence[int], a2: Sequence[int]) -> int:
    """chi(M + A2) - chi(M) = gamma' + A2.M with gamma' = (A2^2 - A2.K) / 2."""
    form = numerics.form
    twice_gamma = pair(form, a2, a2) - pair(form, a2, numerics.canonical)
    if twice_gamma % 2:
        raise ArithmeticError(f"A2(A2 - K) = {twice_gamma} is odd")
    return twice_gamma // 2 + pair(form, a2, m)


def hodge_bound_check(form: IntersectionForm, l: Sequence[int], m: Sequence[int]) -> bool:
    """M^2 L^2 <= (L.M)^2; equality exactly when M is proportional to L."""
    l2 = pair(form, l, l)
    if l2 <= 0:
        raise ValueError(f"L^2 = {l2}; the Hodge bound needs L^2 > 0")
    return pair(form, m, m) * l2 <= pair(form, l, m) ** 2


def effectivity_bound_check(form: IntersectionForm, l: Sequence[int], m: Sequence[int],
                            a2: Sequence[int], d: int) -> bool:
    return 2 * pair(form, m, a2) <= d * pair(form, l, a2)


def candidate_cone(l: Sequence[int], d: int):
    """Lattice classes M with 0 <= M and 0 <= dL - 2M componentwise."""
    if any(x < 0 for x in l):
        raise ValueError("polarization must lie in the nonnegative orthant")
    return itertools.product(*(range(d * x // 2 + 1) for x in l))


def _estimator(numerics: SurfaceNumerics, a2, h1_allowance: int) -> H0Callback:
    # h0(M) <= h0(M + A2) <= chi(M + A2) + h1 allowance
    return lambda m: chi_riemann_roch(numerics, _add(m, a2)) + h1_allowance


def obstruction_scan(numerics: SurfaceNumerics, l: Sequence[int], d: int,
                     h0_exact: H0Callback | None = None, a2: Sequence[int] | None = None,
                     h1_allowance: int = 0) -> BoundsReport:
    """Evaluate both sides of the obstruction inequality at degree ``d``.

    Without ``h0_exact`` the left side uses the Riemann-Roch upper estimate
    ``chi(M + A2) + h1_allowance`` and the right side uses ``chi(dL)``; the
    report is flagged as estimated.
    """
    if d < 1:
        raise ValueError("degree must be at least 1")
    l = tuple(l)
    a2 = l if a2 is None else tuple(a2)
    if h0_exact is None:
        h0 = _estimator(numerics, a2, h1_allowance)
        h0_dl = chi_riemann_roch(numerics, _scale(d, l))
    else:
        h0 = h0_exact
        h0_dl = h0_exact(_scale(d, l))
    rhs = Fraction(h0_dl - 2, 3)
    q = numerics.irregularity

    worst = None
    checked = 0
    for m in candidate_cone(l, d):
        checked += 1
        h = h0(m)
        lhs = q + h - 1
        if worst is None or lhs > worst.lhs:
            worst = ObstructionCandidate(m, h, lhs, rhs)
    possible = worst is not None and worst.lhs >= worst.rhs
    return BoundsReport(d, checked, worst, possible, h0_exact is not None)


def degree_reports(numerics: SurfaceNumerics, l: Sequence[int], d_max: int,
                   **scan_kw) -> list[BoundsReport]:
    return [obstruction_scan(numerics, l, d, **scan_kw) for d in range(1, d_max + 1)]


def find_d0(numerics: SurfaceNumerics, l: Sequence[int], d_max: int,
            reports: list[BoundsReport] | None = None, **scan_kw) -> int | None:
    """Smallest d0 <= d_max with no possible obstruction on all of [d0, d_max]."""
    if d_max < 1:
        raise ValueError("d_max must be at least 1")
    if reports is None:
        reports = degree_reports(numerics, l, d_max, **scan_kw)
    d0 = None
    for rep in reversed(reports):
        if rep.obstruction_possible:
            break
        d0 = rep.degree
    return d0


def asymptotic_ratio_check(numerics: SurfaceNumerics, l: Sequence[int], d: int,
                           h0_exact: H0Callback | None = None) -> Fraction:
    """max h0(M) over the candidate cone, divided by h0(dL).

    ``h0_exact`` defaults to the toric count of the built-in surfaces.
    """
    if d < 1:
        raise ValueError("degree must be at least 1")
    if h0_exact is None:
        h0_exact = lambda m: toric_h0(numerics, m)  # noqa: E731
    best = max(h0_exact(m) for m in candidate_cone(l, d))
    return Fraction(best, h0_exact(_scale(d, tuple(l))))
