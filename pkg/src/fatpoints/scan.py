"""Scan orchestration and verification of the known defective list for P^n."""

from __future__ import annotations

import hashlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import ceil

from .interpolation import MODULAR, DimensionReport, InterpolationTask, generic_dimension
from .linalg import DEFAULT_PRIME
from .models import AmbientModel, basis_size, projective_space

SPORADIC_EXCEPTIONS = frozenset({(2, 4, 5), (3, 4, 9), (4, 3, 7), (4, 4, 14)})


def is_exceptional(n: int, d: int, k: int) -> bool:
    """Whether ``k`` general double points on ``P^n`` are defective for degree ``d``."""
    return (d == 2 and 2 <= k <= n) or (n, d, k) in SPORADIC_EXCEPTIONS


def k_range(model: AmbientModel, deg) -> range:
    """1 .. saturation + 1, so the expected-empty boundary is crossed."""
    h0 = basis_size(model, deg)
    return range(1, ceil(h0 / (model.dim + 1)) + 2)


def exception_table(n_max: int, d_max: int, d_min: int = 2) -> frozenset:
    """Defective triples restricted to the scanned grid."""
    out = set()
    for n in range(1, n_max + 1):
        for d in range(d_min, d_max + 1):
            for k in k_range(projective_space(n), d):
                if is_exceptional(n, d, k):
                    out.add((n, d, k))
    return frozenset(out)


def cell_seed(base_seed: int, model_id: str, degree: tuple, k: int) -> int:
    """Stable 64-bit seed for one scan cell."""
    key = f"{base_seed}|{model_id}|{','.join(map(str, degree))}|{k}".encode()
    return int.from_bytes(hashlib.blake2b(key, digest_size=8).digest(), "big")


@dataclass(frozen=True)
class ScanCell:
    model: AmbientModel
    degree: tuple
    k: int
    seed: int

    @property
    def model_id(self) -> str:
        return self.model.model_id


def scan_cells(model: AmbientModel, degrees, base_seed: int = 0) -> list[ScanCell]:
    cells = []
    for deg in degrees:
        deg = model.degree(deg)
        for k in k_range(model, deg):
            cells.append(ScanCell(model, deg, k, cell_seed(base_seed, model.model_id, deg, k)))
    return cells


def _run_cell(args) -> DimensionReport:
    cell, prime, trials, mode = args
    task = InterpolationTask(cell.model, cell.degree, cell.k, prime=prime,
                             trials=trials, seed=cell.seed, mode=mode)
    return generic_dimension(task)


def run_cells(cells: list[ScanCell], prime: int = DEFAULT_PRIME, trials: int = 3,
              mode: str = MODULAR, workers: int = 1) -> list[DimensionReport]:
    """Evaluate every cell; output is sorted and independent of ``workers``."""
    jobs = [(c, prime, trials, mode) for c in cells]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_run_cell, jobs, chunksize=4))
    else:
        reports = [_run_cell(j) for j in jobs]
    return sorted(reports, key=lambda r: (r.model, r.degree, r.k))


@dataclass(frozen=True)
class VerificationResult:
    n_max: int
    d_max: int
    observed: frozenset
    expected: frozenset
    reports: tuple

    @property
    def missing(self) -> list:
        return sorted(self.expected - self.observed)

    @property
    def unexpected(self) -> list:
        return sorted(self.observed - self.expected)

    @property
    def passed(self) -> bool:
        return self.observed == self.expected


def verify_exceptions(n_max: int = 4, d_max: int = 6, prime: int = DEFAULT_PRIME,
                      trials: int = 3, seed: int = 0, workers: int = 1,
                      mode: str = MODULAR) -> VerificationResult:
    """Scan ``P^n`` for n <= n_max, d <= d_max and compare defects with the known list.

    Degree 1 is scanned but left out of the comparison.
    """
    if n_max < 1 or d_max < 1:
        raise ValueError("n_max and d_max must be at least 1")
    cells = []
    for n in range(1, n_max + 1):
        cells.extend(scan_cells(projective_space(n), range(1, d_max + 1), seed))
    reports = run_cells(cells, prime, trials, mode, workers)
    observed = frozenset(
        (int(r.model.removeprefix("pn")), r.degree[0], r.k)
        for r in reports if r.defect > 0 and r.degree[0] >= 2
    )
    return VerificationResult(n_max, d_max, observed, exception_table(n_max, d_max),
                              tuple(reports))
