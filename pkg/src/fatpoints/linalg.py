"""Exact dense linear algebra over prime fields and the rationals.

Matrices over GF(p) store reduced integers in ``[0, p)``; matrices over Q
store :class:`fractions.Fraction` entries.  Rank over GF(p) runs a
vectorised Gaussian elimination on ``int64`` arrays; rank over Q clears
denominators and runs fraction-free (Bareiss) elimination on Python ints.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Callable, Sequence

import numpy as np

DEFAULT_PRIME = 10007

# p*p must fit in int64 for the vectorised path
_INT64_SAFE_PRIME = 3_037_000_499


class InvalidConfiguration(ValueError):
    """Raised for arithmetic configuration errors (bad prime, zero trials)."""


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for all n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeField:
    """GF(p).  Elements are plain ints reduced into ``[0, p)``."""

    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise InvalidConfiguration(f"modulus {self.p} is not prime")

    def __call__(self, value) -> int:
        if isinstance(value, Fraction):
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        return int(value) % self.p

    def inv(self, value: int) -> int:
        value %= self.p
        if value == 0:
            raise ZeroDivisionError("zero has no inverse in GF(%d)" % self.p)
        return pow(value, -1, self.p)


@dataclass(frozen=True)
class DenseMatrix:
    """Immutable row-major matrix over GF(p) (``modulus`` set) or Q (``modulus`` None)."""

    rows: int
    cols: int
    entries: tuple
    modulus: int | None = None

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix shape")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], modulus: int | None = None,
                  cols: int | None = None) -> DenseMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        if modulus is None:
            flat = tuple(Fraction(x) for r in rows for x in r)
        else:
            field = PrimeField(modulus)
            flat = tuple(field(x) for r in rows for x in r)
        return cls(len(rows), cols, flat, modulus)

    @classmethod
    def from_array(cls, arr: np.ndarray, modulus: int) -> DenseMatrix:
        """Wrap an integer array already reduced mod ``modulus``."""
        arr = np.asarray(arr)
        m, n = arr.shape
        return cls(m, n, tuple(int(x) for x in arr.ravel().tolist()), modulus)

    @classmethod
    def identity(cls, n: int, modulus: int | None = None) -> DenseMatrix:
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)],
                             modulus, cols=n)

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> DenseMatrix:
        flat = tuple(self.entries[i * self.cols + j]
                     for j in range(self.cols) for i in range(self.rows))
        return DenseMatrix(self.cols, self.rows, flat, self.modulus)

    def vstack(self, other: DenseMatrix) -> DenseMatrix:
        if other.cols != self.cols or other.modulus != self.modulus:
            raise ValueError("incompatible matrices")
        return DenseMatrix(self.rows + other.rows, self.cols,
                           self.entries + other.entries, self.modulus)

    def apply(self, vector: Sequence) -> list:
        """Matrix-vector product in the matrix's field."""
        if len(vector) != self.cols:
            raise ValueError("dimension mismatch")
        out = []
        for i in range(self.rows):
            s = sum(a * b for a, b in zip(self.row(i), vector))
            out.append(s % self.modulus if self.modulus else Fraction(s))
        return out


# ---------------------------------------------------------------------------
# GF(p) elimination


def _as_int_array(matrix: DenseMatrix) -> np.ndarray:
    p = matrix.modulus
    dtype = np.int64 if p < _INT64_SAFE_PRIME else object
    return np.array(matrix.entries, dtype=dtype).reshape(matrix.rows, matrix.cols)


def _rref_mod_p(a: np.ndarray, p: int, full: bool) -> tuple[np.ndarray, list[int]]:
    """In-place row reduction mod p; ``full`` also clears above each pivot."""
    m, n = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r, c:] = a[r, c:] * pow(int(a[r, c]), -1, p) % p
        targets = np.flatnonzero(a[:, c]) if full else r + 1 + np.flatnonzero(a[r + 1:, c])
        targets = targets[targets != r]
        if targets.size:
            a[targets, c:] = (a[targets, c:] - np.outer(a[targets, c], a[r, c:])) % p
        pivots.append(c)
        r += 1
    return a, pivots


# ---------------------------------------------------------------------------
# Q elimination


def _integer_rows(matrix: DenseMatrix) -> list[list[int]]:
    out = []
    for i in range(matrix.rows):
        row = matrix.row(i)
        scale = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * scale) for x in row])
    return out


def _bareiss_echelon(a: list[list[int]], cols: int) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form; every division is exact."""
    m = len(a)
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(cols):
        if r == m:
            break
        piv = next((i for i in range(r, m) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        top = a[r]
        pc = top[c]
        for i in range(r + 1, m):
            row = a[i]
            f = row[c]
            if f == 0:
                if pc != prev:
                    for j in range(c + 1, cols):
                        row[j] = row[j] * pc // prev
                continue
            for j in range(c + 1, cols):
                row[j] = (pc * row[j] - f * top[j]) // prev
            row[c] = 0
        prev = pc
        pivots.append(c)
        r += 1
    return a, pivots


# ---------------------------------------------------------------------------
# public operations


def rank(matrix: DenseMatrix) -> int:
    """Rank of ``matrix`` over its scalar field."""
    if matrix.rows == 0 or matrix.cols == 0:
        return 0
    if matrix.modulus is not None:
        _, pivots = _rref_mod_p(_as_int_array(matrix), matrix.modulus, full=False)
    else:
        _, pivots = _bareiss_echelon(_integer_rows(matrix), matrix.cols)
    return len(pivots)


def _normalize(vec: list, modulus: int | None) -> list:
    lead = next(x for x in vec if x)
    if modulus is None:
        return [Fraction(x) / lead for x in vec]
    inv = pow(int(lead), -1, modulus)
    return [int(x) * inv % modulus for x in vec]


def kernel_basis(matrix: DenseMatrix) -> list[list]:
    """Basis of the right kernel, each vector scaled so its first nonzero entry is 1.

    Free columns are taken in increasing order; the vector for free column
    ``f`` has a 1 at ``f`` and zeros at the other free columns.
    """
    n = matrix.cols
    if matrix.rows == 0:
        return [[int(i == j) if matrix.modulus else Fraction(int(i == j)) for j in range(n)]
                for i in range(n)]
    if matrix.modulus is not None:
        p = matrix.modulus
        red, pivots = _rref_mod_p(_as_int_array(matrix), p, full=True)
        free = [c for c in range(n) if c not in set(pivots)]
        basis = []
        for f in free:
            vec = [0] * n
            vec[f] = 1
            for r, pc in enumerate(pivots):
                vec[pc] = (-int(red[r, f])) % p
            basis.append(_normalize(vec, p))
        return basis

    ech, pivots = _bareiss_echelon(_integer_rows(matrix), n)
    pivot_set = set(pivots)
    free = [c for c in range(n) if c not in pivot_set]
    basis = []
    for f in free:
        vec: list = [Fraction(0)] * n
        vec[f] = Fraction(1)
        for r in range(len(pivots) - 1, -1, -1):
            pc = pivots[r]
            row = ech[r]
            s = sum(row[j] * vec[j] for j in range(pc + 1, n) if vec[j])
            vec[pc] = Fraction(-s, row[pc]) if s else Fraction(0)
        basis.append(_normalize(vec, None))
    return basis


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Generator for one trial; depends only on ``(seed, trial)``."""
    return np.random.default_rng([seed, trial])


def max_rank_over_trials(builder: Callable[[np.random.Generator], DenseMatrix],
                         trials: int, seed: int) -> tuple[int, int]:
    """Return ``(max rank, trials used)``.

    Stops early once a trial reaches ``min(rows, cols)``, which no further
    trial can exceed.
    """
    if trials < 1:
        raise InvalidConfiguration("trials must be at least 1")
    best = -1
    for t in range(trials):
        mat = builder(trial_rng(seed, t))
        best = max(best, rank(mat))
        if best == min(mat.rows, mat.cols):
            return best, t + 1
    return best, trials


def rank_modular_with_retry(builder: Callable[[np.random.Generator], DenseMatrix],
                            trials: int, seed: int) -> int:
    """Maximum rank over ``trials`` sampled matrices.

    By semicontinuity the result is a lower bound for the generic rank.
    """
    return max_rank_over_trials(builder, trials, seed)[0]
