"""Ambient varieties: projective spaces and products of projective lines.

Each model works in one affine chart.  For projective space ``P^n`` the chart
coordinates are ``x_1..x_n`` and a degree-``d`` form is a polynomial of total
degree at most ``d``; for ``(P^1)^r`` the coordinates are one per factor and
a form of multidegree ``(a_1..a_r)`` has ``i``-th exponent at most ``a_i``.

The surface part (intersection forms, canonical classes, Riemann-Roch) lives
here too, since the built-in surfaces are ``P^2`` and ``P^1 x P^1``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb, prod
from typing import Sequence

import numpy as np

from .linalg import PrimeField

Monomial = tuple[int, ...]
MultiDegree = tuple[int, ...]

PROJECTIVE = "projective-space"
PRODUCT = "product-of-lines"


@dataclass(frozen=True)
class AmbientModel:
    kind: str
    dim: int

    def __post_init__(self):
        if self.kind not in (PROJECTIVE, PRODUCT):
            raise ValueError(f"unknown model kind {self.kind!r}")
        if self.dim < 1:
            raise ValueError("model dimension must be at least 1")

    @property
    def model_id(self) -> str:
        if self.kind == PROJECTIVE:
            return f"pn{self.dim}"
        return "p1xp1" if self.dim == 2 else f"p1^{self.dim}"

    def degree(self, deg) -> MultiDegree:
        """Normalise an int or sequence into a valid multidegree for this model."""
        if isinstance(deg, int):
            deg = (deg,) if self.kind == PROJECTIVE else (deg,) * self.dim
        deg = tuple(int(x) for x in deg)
        want = 1 if self.kind == PROJECTIVE else self.dim
        if len(deg) != want:
            raise ValueError(f"{self.model_id} needs a degree of length {want}, got {deg}")
        if any(x < 0 for x in deg):
            raise ValueError("degrees must be nonnegative")
        return deg


def projective_space(n: int) -> AmbientModel:
    return AmbientModel(PROJECTIVE, n)


def product_of_lines(r: int) -> AmbientModel:
    return AmbientModel(PRODUCT, r)


def _grlex_key(e: Monomial):
    return (sum(e), tuple(-x for x in e))


def basis(model: AmbientModel, deg) -> list[Monomial]:
    """Monomial basis of the degree-``deg`` system in graded lexicographic order."""
    deg = model.degree(deg)
    if model.kind == PROJECTIVE:
        d = deg[0]
        monos = [e for e in itertools.product(range(d + 1), repeat=model.dim) if sum(e) <= d]
    else:
        monos = list(itertools.product(*(range(a + 1) for a in deg)))
    monos.sort(key=_grlex_key)
    return monos


def basis_size(model: AmbientModel, deg) -> int:
    deg = model.degree(deg)
    if model.kind == PROJECTIVE:
        return comb(model.dim + deg[0], deg[0])
    return prod(a + 1 for a in deg)


def evaluation_rows(model: AmbientModel, deg, point: Sequence, modulus: int | None = None,
                    monomials: list[Monomial] | None = None) -> list[list]:
    """Value row and the ``dim`` first-partial rows of every basis monomial at ``point``.

    Works for any exact scalar type (int, Fraction); with ``modulus`` the
    entries are reduced into ``[0, modulus)``.
    """
    if len(point) != model.dim:
        raise ValueError("point has wrong number of coordinates")
    monos = basis(model, deg) if monomials is None else monomials

    rows = [[prod(x ** e for x, e in zip(point, mono)) for mono in monos]]
    for j in range(model.dim):
        row = []
        for mono in monos:
            ej = mono[j]
            if ej == 0:
                row.append(0)
                continue
            term = ej * point[j] ** (ej - 1)
            for i, (x, e) in enumerate(zip(point, mono)):
                if i != j:
                    term *= x ** e
            row.append(term)
        rows.append(row)
    if modulus is not None:
        field = PrimeField(modulus)
        rows = [[field(v) for v in row] for row in rows]
    return rows


def evaluation_block_mod_p(monomials: list[Monomial], points: np.ndarray, p: int) -> np.ndarray:
    """Vectorised ``evaluation_rows`` for many points at once over GF(p).

    ``points`` has shape (k, dim) with entries in [0, p).  Returns an int64
    array of shape (k*(dim+1), len(monomials)), point-major.
    """
    points = np.asarray(points, dtype=np.int64) % p
    k, dim = points.shape
    exps = np.array(monomials, dtype=np.int64).reshape(len(monomials), dim)
    top = int(exps.max()) if exps.size else 0
    # pow_tab[t, i, e] = points[t, i]**e mod p
    pow_tab = np.ones((k, dim, top + 1), dtype=np.int64)
    for e in range(1, top + 1):
        pow_tab[:, :, e] = pow_tab[:, :, e - 1] * points % p
    factors = np.empty((k, dim, len(monomials)), dtype=np.int64)
    for i in range(dim):
        factors[:, i, :] = pow_tab[:, i, exps[:, i]]
    out = np.empty((k, dim + 1, len(monomials)), dtype=np.int64)
    vals = np.ones((k, len(monomials)), dtype=np.int64)
    for i in range(dim):
        vals = vals * factors[:, i, :] % p
    out[:, 0, :] = vals
    for j in range(dim):
        ej = exps[:, j]
        deriv = pow_tab[:, j, np.maximum(ej - 1, 0)] * (ej % p) % p
        for i in range(dim):
            if i != j:
                deriv = deriv * factors[:, i, :] % p
        out[:, j + 1, :] = deriv
    return out.reshape(k * (dim + 1), len(monomials))


# ---------------------------------------------------------------------------
# intersection theory on surfaces


@dataclass(frozen=True)
class IntersectionForm:
    pairing: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rho = len(self.pairing)
        if any(len(r) != rho for r in self.pairing):
            raise ValueError("pairing must be square")
        if any(self.pairing[i][j] != self.pairing[j][i] for i in range(rho) for j in range(rho)):
            raise ValueError("pairing must be symmetric")

    @property
    def rank(self) -> int:
        return len(self.pairing)


DivisorClass = tuple[int, ...]


def pair(form: IntersectionForm, a: Sequence[int], b: Sequence[int]) -> int:
    """Intersection number ``a . b``."""
    if len(a) != form.rank or len(b) != form.rank:
        raise ValueError(f"classes must have length {form.rank}")
    return sum(a[i] * form.pairing[i][j] * b[j]
               for i in range(form.rank) for j in range(form.rank))


@dataclass(frozen=True)
class SurfaceNumerics:
    name: str
    form: IntersectionForm
    canonical: DivisorClass
    chi_structure_sheaf: int
    irregularity: int
    polarization: DivisorClass

    def __post_init__(self):
        for cls in (self.canonical, self.polarization):
            if len(cls) != self.form.rank:
                raise ValueError("class length does not match the intersection form")


PLANE = SurfaceNumerics(
    name="p2",
    form=IntersectionForm(((1,),)),
    canonical=(-3,),
    chi_structure_sheaf=1,
    irregularity=0,
    polarization=(1,),
)

QUADRIC = SurfaceNumerics(
    name="p1xp1",
    form=IntersectionForm(((0, 1), (1, 0))),
    canonical=(-2, -2),
    chi_structure_sheaf=1,
    irregularity=0,
    polarization=(1, 1),
)


def surface_numerics(model: AmbientModel) -> SurfaceNumerics:
    if model == projective_space(2):
        return PLANE
    if model == product_of_lines(2):
        return QUADRIC
    raise ValueError(f"{model.model_id} is not a built-in surface")


def degree_class(model: AmbientModel, deg) -> DivisorClass:
    """Divisor class of the degree-``deg`` system on a built-in surface."""
    surface_numerics(model)
    return model.degree(deg)


def chi_riemann_roch(numerics: SurfaceNumerics, m: Sequence[int]) -> int:
    """chi(O(M)) = chi(O_X) + (M^2 - M.K)/2."""
    twice = pair(numerics.form, m, m) - pair(numerics.form, m, numerics.canonical)
    if twice % 2:
        raise ArithmeticError(f"M(M-K) = {twice} is odd; numerics are inconsistent")
    return numerics.chi_structure_sheaf + twice // 2


def toric_h0(numerics: SurfaceNumerics, m: Sequence[int]) -> int:
    """Exact h^0 of a class on the built-in toric surfaces (0 off the effective cone)."""
    if any(x < 0 for x in m):
        return 0
    if numerics.name == PLANE.name:
        (a,) = m
        return comb(a + 2, 2)
    if numerics.name == QUADRIC.name:
        return prod(x + 1 for x in m)
    raise ValueError("exact h0 is only known for the built-in surfaces")
