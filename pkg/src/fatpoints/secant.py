"""Secant varieties of Veronese and Segre-Veronese embeddings via Terracini.

The affine tangent space to the embedded variety at a point is the row span
of the value and first-partial rows at that point, so the span of ``k``
tangent spaces has projective dimension ``rank - 1`` of the stacked rows.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

import numpy as np

from .interpolation import (
    EXACT,
    MODULAR,
    InterpolationTask,
    build_conditions_matrix,
    sample_points,
    singular_system_basis,
)
from .linalg import (
    DEFAULT_PRIME,
    DenseMatrix,
    kernel_basis,
    max_rank_over_trials,
    rank,
    trial_rng,
)
from .models import AmbientModel, basis, evaluation_rows, projective_space

SQUARE_CASES = {(2, 4, 5), (3, 4, 9), (4, 4, 14)}


class GeometryViolation(RuntimeError):
    """The sampled configuration is visibly non-general; resample."""


@dataclass(frozen=True)
class SecantReport:
    model: str
    degree: tuple
    k: int
    ambient_dim: int
    expected_secant_dim: int
    observed_secant_dim: int
    secant_defect: int
    trials_used: int
    seed: int

    def to_dict(self) -> dict:
        return {
            "model": self.model,
            "degree": ",".join(map(str, self.degree)),
            "k": self.k,
            "ambient_dim": self.ambient_dim,
            "expected_secant_dim": self.expected_secant_dim,
            "observed_secant_dim": self.observed_secant_dim,
            "secant_defect": self.secant_defect,
            "trials_used": self.trials_used,
            "seed": self.seed,
        }


def tangent_span_matrix(model: AmbientModel, deg, points, modulus: int | None) -> DenseMatrix:
    """Stack the affine tangent spaces of the embedded variety at ``points``.

    Built point by point through ``evaluation_rows`` so that it is computed
    independently of the vectorised conditions-matrix path.
    """
    monos = basis(model, deg)
    rows = []
    for pt in points:
        rows.extend(evaluation_rows(model, deg, pt, modulus=modulus, monomials=monos))
    return DenseMatrix.from_rows(rows, modulus, cols=len(monos))


def secant_dimension(model: AmbientModel, deg, k: int, prime: int = DEFAULT_PRIME,
                     trials: int = 3, seed: int = 0, mode: str = MODULAR) -> SecantReport:
    if k < 1:
        raise ValueError("secant order k must be at least 1")
    # validates prime and degree exactly as the interpolation path does
    task = InterpolationTask(model, deg, k, prime=prime, trials=trials, seed=seed, mode=mode)
    modulus = task.modulus

    def build(rng: np.random.Generator) -> DenseMatrix:
        return tangent_span_matrix(model, task.deg, sample_points(model, k, rng, modulus), modulus)

    r, used = max_rank_over_trials(build, trials, seed)
    n_ambient = len(basis(model, task.deg)) - 1
    expected = min(n_ambient, k * (model.dim + 1) - 1)
    return SecantReport(
        model=model.model_id,
        degree=task.deg,
        k=k,
        ambient_dim=n_ambient,
        expected_secant_dim=expected,
        observed_secant_dim=r - 1,
        secant_defect=expected - (r - 1),
        trials_used=used,
        seed=seed,
    )


def duality_check(model: AmbientModel, deg, k: int, seed: int,
                  prime: int = DEFAULT_PRIME) -> bool:
    """Terracini span rank and double-point conditions rank agree on one shared sample."""
    sec = secant_dimension(model, deg, k, prime=prime, trials=1, seed=seed)
    task = InterpolationTask(model, deg, k, prime=prime, trials=1, seed=seed)
    pts = sample_points(model, k, trial_rng(seed, 0), prime)
    return sec.observed_secant_dim + 1 == rank(build_conditions_matrix(task, pts))


# ---------------------------------------------------------------------------
# doubled-quadric certificates


def _primitive(vec: list[Fraction]) -> list[int]:
    scale = lcm(*(x.denominator for x in vec))
    ints = [int(x * scale) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [x // g for x in ints]


def _square(coeffs: list[int], monos: list[tuple]) -> dict[tuple, int]:
    out: dict[tuple, int] = defaultdict(int)
    for ca, ma in zip(coeffs, monos):
        if not ca:
            continue
        for cb, mb in zip(coeffs, monos):
            if cb:
                out[tuple(x + y for x, y in zip(ma, mb))] += ca * cb
    return out


@dataclass(frozen=True)
class BaseCurveCertificate:
    case: tuple[int, int, int]
    seed: int
    points: tuple
    quadric: tuple[int, ...]
    quartic: tuple[int, ...]
    scalar: Fraction
    success: bool

    def to_dict(self) -> dict:
        n, d, k = self.case
        return {
            "case": f"{n},{d},{k}",
            "seed": self.seed,
            "points": [list(p) for p in self.points],
            "quadric": [str(c) for c in self.quadric],
            "quartic": [str(c) for c in self.quartic],
            "scalar": str(self.scalar),
            "success": self.success,
        }


def base_curve_certificate(case, seed: int) -> BaseCurveCertificate:
    """Check in exact arithmetic that the unique singular quartic is a doubled quadric.

    Coefficient vectors are primitive integer vectors in ``basis`` order;
    ``scalar`` satisfies ``quartic == scalar * quadric**2``.
    """
    case = tuple(case)
    if case not in SQUARE_CASES:
        raise ValueError(f"{case} is not one of the doubled-quadric cases {sorted(SQUARE_CASES)}")
    n, d, k = case
    model = projective_space(n)
    pts = sample_points(model, k, trial_rng(seed, 0), None)

    quad_monos = basis(model, 2)
    value_rows = [evaluation_rows(model, 2, p, monomials=quad_monos)[0] for p in pts]
    quad_kernel = kernel_basis(DenseMatrix.from_rows(value_rows, None, cols=len(quad_monos)))
    if len(quad_kernel) != 1:
        raise GeometryViolation(f"quadrics through the points: {len(quad_kernel)}-dimensional")

    task = InterpolationTask(model, d, k, trials=1, seed=seed, mode=EXACT)
    sing = singular_system_basis(task, pts)
    if len(sing) != 1:
        raise GeometryViolation(f"singular quartics: {len(sing)}-dimensional")

    q = _primitive(quad_kernel[0])
    f = _primitive(sing[0])
    quart_monos = basis(model, d)
    sq = _square(q, quad_monos)
    q2 = [sq.get(m, 0) for m in quart_monos]
    lead = next(i for i, c in enumerate(q2) if c)
    scalar = Fraction(f[lead], q2[lead])
    success = all(fc == scalar * qc for fc, qc in zip(f, q2))
    return BaseCurveCertificate(case, seed, tuple(pts), tuple(q), tuple(f), scalar, success)
