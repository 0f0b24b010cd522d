"""Finite cochain complexes with orthonormal cells, and their torsion.

The torsion of a complex is a density; once the cells are declared
orthonormal and a basis of every ``H^j`` is fixed it becomes a positive
number.  This module uses the scalar convention

    tau(C, h) = prod_j |det[d s^{j-1}, s^j, h^j]|^{(-1)^j}

where the columns are written in the cell basis (or in a supplied volume
basis).  With it the acyclic complex ``Q --2--> Q`` has torsion 1/2, the
mapping torus of ``-1`` on a point-like complex has torsion 1/2, and
rescaling ``h^j`` by a matrix ``M_j`` multiplies tau by
``prod_j |det M_j|^{(-1)^j}``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import linalg as la

SCALAR_CONVENTION = "prod_j |det[d s^(j-1), s^j, h^j]|^((-1)^j)"


class NotAComplex(ValueError):
    pass


class DegenerateChoice(ValueError):
    pass


class InconsistentCohomology(ValueError):
    pass


@dataclass(frozen=True)
class CochainComplex:
    """``C^0 -> C^1 -> ... -> C^n`` with ``d_j: C^j -> C^{j+1}``.

    ``differentials[j]`` has shape ``(dims[j+1], dims[j])``.  Every matrix is
    on the same scalar backend.
    """

    dims: tuple[int, ...]
    differentials: tuple[np.ndarray, ...]
    tol: float = la.DEFAULT_TOL
    scalars: str = "auto"

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        object.__setattr__(self, "dims", dims)
        diffs = tuple(self.differentials)
        object.__setattr__(self, "differentials", diffs)
        if len(diffs) != max(len(dims) - 1, 0):
            raise ValueError(f"{len(dims)} degrees need {len(dims) - 1} differentials, got {len(diffs)}")
        for j, d in enumerate(diffs):
            if d.shape != (dims[j + 1], dims[j]):
                raise ValueError(f"d_{j} has shape {d.shape}, expected {(dims[j + 1], dims[j])}")
        kinds = {la.is_exact(d) for d in diffs}
        if len(kinds) > 1:
            raise ValueError("differentials mix exact and complex scalars")
        if self.scalars == "auto":
            inferred = "exact" if (not diffs or kinds == {True}) else "complex"
            object.__setattr__(self, "scalars", inferred)
        elif self.scalars not in ("exact", "complex"):
            raise ValueError(f"unknown scalar backend {self.scalars!r}")
        elif diffs and kinds != {self.scalars == "exact"}:
            raise ValueError("differentials do not match the declared scalar backend")

    @property
    def exact(self) -> bool:
        return self.scalars == "exact"

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def like(self) -> np.ndarray:
        return np.empty(0, dtype=object) if self.exact else np.empty(0, dtype=la.COMPLEX_DTYPE)

    def d(self, j: int) -> np.ndarray:
        """``d_j`` including the zero maps leaving/entering the ends."""
        src = self.dims[j] if 0 <= j <= self.top else 0
        tgt = self.dims[j + 1] if 0 <= j + 1 <= self.top else 0
        if 0 <= j < self.top:
            return self.differentials[j]
        return la.zeros(tgt, src, self.like())

    def check(self) -> None:
        for j in range(self.top - 1):
            dd = self.differentials[j + 1] @ self.differentials[j]
            if not la.allclose(dd, la.zeros(*dd.shape, self.like()), self.tol):
                raise NotAComplex(f"d_{j + 1} d_{j} != 0")

    def negated(self) -> "CochainComplex":
        return CochainComplex(self.dims, tuple(-d for d in self.differentials), self.tol, self.scalars)

    def shifted(self, k: int = 1) -> "CochainComplex":
        """``C^{.-k}``: the same spaces placed ``k`` degrees higher."""
        dims = (0,) * k + self.dims
        pad = tuple(la.zeros(dims[j + 1], dims[j], self.like()) for j in range(k))
        return CochainComplex(dims, pad + self.differentials, self.tol, self.scalars)


@dataclass(frozen=True)
class CohomologyData:
    """Cocycle lifts ``ĥ^j`` (columns in the cell basis) of a basis of each ``H^j``."""

    lifts: tuple[np.ndarray, ...]

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(h.shape[1] for h in self.lifts)

    def transformed(self, j: int, m: np.ndarray) -> "CohomologyData":
        lifts = list(self.lifts)
        lifts[j] = lifts[j] @ m
        return CohomologyData(tuple(lifts))

    def with_lift(self, j: int, lift: np.ndarray) -> "CohomologyData":
        lifts = list(self.lifts)
        lifts[j] = lift
        return CohomologyData(tuple(lifts))


@dataclass(frozen=True)
class TorsionValue:
    value: object
    exact: bool
    convention: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.value > 0:
            raise ValueError(f"torsion must be positive, got {self.value}")

    def __float__(self) -> float:
        return float(self.value)

    def close_to(self, other: "TorsionValue | object", tol: float = 1e-8) -> bool:
        b = other.value if isinstance(other, TorsionValue) else other
        if self.exact and isinstance(b, Fraction):
            return self.value == b
        a, b = float(self.value), float(b)
        return abs(a - b) <= tol * max(abs(a), abs(b))


def cohomology(c: CochainComplex) -> CohomologyData:
    """Deterministic cocycle lifts of a basis of every ``H^j``.

    Kernel vectors of ``d_j`` are appended after an image basis of
    ``d_{j-1}``; the kernel columns that become pivots are the lifts.
    """
    c.check()
    lifts = []
    for j in range(c.top + 1):
        ker = la.rank_kernel_image(c.d(j), c.tol).kernel
        img = la.rank_kernel_image(c.d(j - 1), c.tol).image
        stacked = la.hstack([img, ker], c.dims[j], c.like())
        info = la.rank_kernel_image(stacked, c.tol)
        chosen = [p - img.shape[1] for p in info.pivots if p >= img.shape[1]]
        lifts.append(ker[:, chosen] if chosen else la.zeros(c.dims[j], 0, c.like()))
    return CohomologyData(tuple(lifts))


def cohomology_dims(c: CochainComplex) -> tuple[int, ...]:
    ranks = [la.rank(c.d(j), c.tol) for j in range(-1, c.top + 1)]
    return tuple(c.dims[j] - ranks[j + 1] - ranks[j] for j in range(c.top + 1))


def validate_cohomology(c: CochainComplex, h: CohomologyData) -> None:
    if len(h.lifts) != c.top + 1:
        raise InconsistentCohomology("one lift matrix per degree is required")
    expected = cohomology_dims(c)
    for j, lift in enumerate(h.lifts):
        if lift.shape != (c.dims[j], expected[j]):
            raise InconsistentCohomology(
                f"degree {j}: lift shape {lift.shape}, expected {(c.dims[j], expected[j])}"
            )
        dz = c.d(j) @ lift
        if not la.allclose(dz, la.zeros(*dz.shape, c.like()), c.tol):
            raise InconsistentCohomology(f"degree {j}: lifts are not cocycles")


def class_coordinates(c: CochainComplex, h: CohomologyData, j: int, cocycles: np.ndarray) -> np.ndarray:
    """Coordinates in the basis ``h^j`` of the classes of the given cocycles."""
    img = la.rank_kernel_image(c.d(j - 1), c.tol).image
    basis = la.hstack([h.lifts[j], img], c.dims[j], c.like())
    x = la.solve(basis, cocycles, c.tol)
    return x[: h.lifts[j].shape[1]]


def default_sections(c: CochainComplex) -> list[np.ndarray]:
    """``s^j``: cell vectors at the pivot columns of ``d_j``."""
    out = []
    for j in range(c.top + 1):
        piv = la.rank_kernel_image(c.d(j), c.tol).pivots
        out.append(la.eye(c.dims[j], c.like())[:, list(piv)] if piv else la.zeros(c.dims[j], 0, c.like()))
    return out


def _power(x, e: int):
    return x if e > 0 else 1 / x


def torsion(
    c: CochainComplex,
    h: CohomologyData,
    sections: Sequence[np.ndarray] | None = None,
    volumes: Sequence[np.ndarray] | None = None,
) -> TorsionValue:
    """Torsion of ``c`` w.r.t. the cohomology basis ``h``.

    ``volumes[j]``, when given, is a basis of ``C^j`` (columns) replacing the
    orthonormal cell basis; the result is then divided degree by degree by
    ``|det volumes[j]|``.
    """
    validate_cohomology(c, h)
    secs = list(sections) if sections is not None else default_sections(c)
    value = Fraction(1) if c.exact else la.REAL_DTYPE(1)
    for j in range(c.top + 1):
        prev = c.d(j - 1) @ secs[j - 1] if j > 0 else la.zeros(c.dims[j], 0, c.like())
        b = la.hstack([prev, secs[j], h.lifts[j]], c.dims[j], c.like())
        if b.shape[1] != c.dims[j]:
            raise DegenerateChoice(f"degree {j}: {b.shape[1]} columns for a {c.dims[j]}-dimensional space")
        dj = la.abs_value(la.det(b, c.tol))
        if volumes is not None:
            dj = dj / la.abs_value(la.det(volumes[j], c.tol))
        if dj <= (0 if c.exact else c.tol):
            raise DegenerateChoice(f"degree {j}: d s^(j-1), s^j, h^j are dependent")
        value = value * _power(dj, 1 if j % 2 == 0 else -1)
    convention = {
        "scalar": SCALAR_CONVENTION,
        "volumes": "cell" if volumes is None else "supplied",
        "cohomology_basis": "supplied lifts",
    }
    return TorsionValue(value, c.exact, convention)


def _random_matrix(rng: np.random.Generator, rows: int, cols: int, like: np.ndarray) -> np.ndarray:
    if la.is_exact(like):
        return la.exact(rng.integers(-3, 4, size=(rows, cols)).tolist(), shape=(rows, cols))
    re = rng.standard_normal((rows, cols))
    im = rng.standard_normal((rows, cols))
    return (re + 1j * im).astype(la.COMPLEX_DTYPE)


def _random_invertible(rng: np.random.Generator, n: int, like: np.ndarray) -> np.ndarray:
    while True:
        m = _random_matrix(rng, n, n, like)
        d = la.det(m)
        if (d != 0) if la.is_exact(m) else abs(d) > 1e-3:
            return m


def random_choices(c: CochainComplex, h: CohomologyData, rng: np.random.Generator):
    """Random valid ``s^j`` and coboundary-perturbed lifts ``ĥ^j + d y``."""
    like = c.like()
    sections = []
    lifts = []
    for j in range(c.top + 1):
        info = la.rank_kernel_image(c.d(j), c.tol)
        base = default_sections(c)[j]
        k = base.shape[1]
        s = base @ _random_invertible(rng, k, like) if k else base
        if k and info.kernel.shape[1]:
            s = s + info.kernel @ _random_matrix(rng, info.kernel.shape[1], k, like)
        sections.append(s)
        lift = h.lifts[j]
        if j > 0 and lift.shape[1] and c.dims[j - 1]:
            lift = lift + c.d(j - 1) @ _random_matrix(rng, c.dims[j - 1], lift.shape[1], like)
        lifts.append(lift)
    return sections, CohomologyData(tuple(lifts))


def torsion_choice_independence_check(c: CochainComplex, h: CohomologyData, trials: int = 50, seed: int = 0) -> dict:
    """Recompute the torsion under random admissible choices.

    Reports the maximal relative deviation from the deterministic value
    (exactly zero over the rationals when the definition is well posed).
    """
    rng = np.random.default_rng(seed)
    ref = torsion(c, h)
    worst = Fraction(0) if c.exact else 0.0
    for _ in range(trials):
        secs, lifts = random_choices(c, h, rng)
        val = torsion(c, lifts, sections=secs).value
        dev = abs(val - ref.value) / ref.value
        worst = max(worst, dev if c.exact else float(dev))
    return {
        "trials": trials,
        "reference": ref.value,
        "max_deviation": worst,
        "exact": c.exact,
    }


def direct_sum(a: CochainComplex, b: CochainComplex) -> CochainComplex:
    n = max(a.top, b.top)
    like = a.like()

    def pad(c: CochainComplex):
        return c.dims + (0,) * (n - c.top)

    da, db = pad(a), pad(b)
    dims = tuple(x + y for x, y in zip(da, db))
    diffs = []
    for j in range(n):
        m = la.zeros(dims[j + 1], dims[j], like)
        m[: da[j + 1], : da[j]] = a.d(j)
        m[da[j + 1]:, da[j]:] = b.d(j)
        diffs.append(m)
    return CochainComplex(dims, tuple(diffs), a.tol, a.scalars)
