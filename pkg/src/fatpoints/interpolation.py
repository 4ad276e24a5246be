"""Double-point interpolation: conditions matrices and dimension reports.

A double point at ``p`` imposes ``dim + 1`` linear conditions on forms of a
given degree: the value and every first partial vanish at ``p``.  Stacking
these rows for ``k`` sampled points gives the conditions matrix; its rank at
general points decides whether the points impose independent conditions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .linalg import (
    DEFAULT_PRIME,
    DenseMatrix,
    InvalidConfiguration,
    _INT64_SAFE_PRIME,
    PrimeField,
    kernel_basis,
    max_rank_over_trials,
    trial_rng,
)
from .models import AmbientModel, basis, evaluation_block_mod_p, evaluation_rows

MODULAR = "modular"
EXACT = "exact-rational"

NONDEFECTIVE = "nondefective-certified"
PROBABLE_DEFECT = "defect-probable"

# integer coordinates for exact-rational sampling are drawn from [-B, B]
EXACT_COORD_BOUND = 100


@dataclass(frozen=True)
class InterpolationTask:
    model: AmbientModel
    deg: tuple
    points: int
    prime: int = DEFAULT_PRIME
    trials: int = 3
    seed: int = 0
    mode: str = MODULAR

    def __post_init__(self):
        object.__setattr__(self, "deg", self.model.degree(self.deg))
        if self.points < 0:
            raise ValueError("number of points must be nonnegative")
        if self.trials < 1:
            raise InvalidConfiguration("trials must be at least 1")
        if self.mode not in (MODULAR, EXACT):
            raise ValueError(f"unknown mode {self.mode!r}")
        PrimeField(self.prime)
        if self.prime <= sum(self.deg):
            raise InvalidConfiguration(
                f"prime {self.prime} must exceed the total degree {sum(self.deg)}"
            )

    @property
    def modulus(self) -> int | None:
        return self.prime if self.mode == MODULAR else None


@dataclass(frozen=True)
class DimensionReport:
    model: str
    degree: tuple
    k: int
    basis_size: int
    conditions: int
    expected_dim: int
    observed_dim: int
    defect: int
    certified: str
    trials_used: int
    seed: int
    exceeds_spanning_bound: bool = field(default=False, compare=False)

    def to_dict(self) -> dict:
        return {
            "model": self.model,
            "degree": ",".join(map(str, self.degree)),
            "k": self.k,
            "basis_size": self.basis_size,
            "conditions": self.conditions,
            "expected_dim": self.expected_dim,
            "observed_dim": self.observed_dim,
            "defect": self.defect,
            "certified": self.certified,
            "trials_used": self.trials_used,
            "seed": self.seed,
        }


def expected_dimension(h0: int, dim: int, k: int) -> int:
    """Naive parameter count: max(0, h0 - k(dim+1)) - 1."""
    if min(h0, dim, k) < 0:
        raise ValueError("inputs must be nonnegative")
    return max(0, h0 - k * (dim + 1)) - 1


def sample_points(model: AmbientModel, k: int, rng: np.random.Generator,
                  modulus: int | None) -> list[tuple]:
    """``k`` points of the affine chart: uniform in GF(p), or integers in [-100, 100]."""
    if modulus is not None:
        arr = rng.integers(0, modulus, size=(k, model.dim), dtype=np.int64)
    else:
        arr = rng.integers(-EXACT_COORD_BOUND, EXACT_COORD_BOUND + 1, size=(k, model.dim))
    return [tuple(int(x) for x in row) for row in arr]


def build_conditions_matrix(task: InterpolationTask, sampled_points: Sequence) -> DenseMatrix:
    if len(sampled_points) != task.points:
        raise ValueError(f"expected {task.points} points, got {len(sampled_points)}")
    monos = basis(task.model, task.deg)
    ncols = len(monos)
    p = task.modulus
    if p is not None and p < _INT64_SAFE_PRIME and sampled_points:
        block = evaluation_block_mod_p(monos, np.array(sampled_points, dtype=np.int64), p)
        return DenseMatrix.from_array(block, p)
    rows = []
    for pt in sampled_points:
        rows.extend(evaluation_rows(task.model, task.deg, pt, modulus=p, monomials=monos))
    if p is None:
        rows = [[Fraction(x) for x in r] for r in rows]
    return DenseMatrix.from_rows(rows, p, cols=ncols)


def conditions_builder(task: InterpolationTask):
    """Matrix builder for one fresh point configuration per trial."""
    def build(rng: np.random.Generator) -> DenseMatrix:
        pts = sample_points(task.model, task.points, rng, task.modulus)
        return build_conditions_matrix(task, pts)
    return build


def generic_dimension(task: InterpolationTask) -> DimensionReport:
    """Dimension of forms singular at ``k`` general points, as max rank over trials."""
    h0 = len(basis(task.model, task.deg))
    dim = task.model.dim
    rank, used = max_rank_over_trials(conditions_builder(task), task.trials, task.seed)
    observed = h0 - 1 - rank
    expected = expected_dimension(h0, dim, task.points)
    defect = observed - expected
    return DimensionReport(
        model=task.model.model_id,
        degree=task.deg,
        k=task.points,
        basis_size=h0,
        conditions=task.points * (dim + 1),
        expected_dim=expected,
        observed_dim=observed,
        defect=defect,
        certified=NONDEFECTIVE if defect == 0 else PROBABLE_DEFECT,
        trials_used=used,
        seed=task.seed,
        exceeds_spanning_bound=task.points * (dim + 1) > h0,
    )


def singular_system_basis(task: InterpolationTask,
                          sampled_points: Sequence | None = None) -> list[list]:
    """Coefficient vectors (in ``basis`` order) of forms singular at one sampled configuration."""
    if sampled_points is None:
        sampled_points = sample_points(task.model, task.points,
                                       trial_rng(task.seed, 0), task.modulus)
    return kernel_basis(build_conditions_matrix(task, sampled_points))
