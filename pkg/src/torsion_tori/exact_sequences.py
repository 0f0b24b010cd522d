"""Short exact sequences of cochain complexes and their long exact sequences.

The long exact sequence

    ... -> H^j(C1) -> H^j(C2) -> H^j(C3) -> H^{j+1}(C1) -> ...

is stored as an acyclic cochain complex whose degree ``3j`` is ``H^j(C1)``,
``3j+1`` is ``H^j(C2)`` and ``3j+2`` is ``H^j(C3)``.  Its maps are written in
the coordinates of chosen cohomology bases, and those bases are its volume
elements, so its torsion is the torsion of an acyclic complex in cell
coordinates.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import linalg as la
from .cochain import (
    CochainComplex,
    CohomologyData,
    TorsionValue,
    class_coordinates,
    cohomology,
    torsion,
)


class NotExact(ValueError):
    pass


class NotChainMap(ValueError):
    pass


class IncompatibleVolumes(ValueError):
    pass


def _pad(c: CochainComplex, top: int) -> CochainComplex:
    if c.top >= top:
        return c
    dims = c.dims + (0,) * (top - c.top)
    extra = tuple(la.zeros(dims[j + 1], dims[j], c.like()) for j in range(c.top, top))
    return CochainComplex(dims, c.differentials + extra, c.tol, c.scalars)


def check_chain_map(src: CochainComplex, tgt: CochainComplex, maps: Sequence[np.ndarray], name: str = "map") -> None:
    """Raise :class:`NotChainMap` unless ``d maps_j = maps_{j+1} d`` in every degree."""
    for j in range(src.top + 1):
        if maps[j].shape != (tgt.dims[j], src.dims[j]):
            raise NotChainMap(f"{name}_{j} has shape {maps[j].shape}, expected {(tgt.dims[j], src.dims[j])}")
    for j in range(src.top):
        lhs = tgt.d(j) @ maps[j]
        rhs = maps[j + 1] @ src.d(j)
        if not la.allclose(lhs, rhs, src.tol):
            raise NotChainMap(f"{name} does not commute with d in degree {j}")


@dataclass(frozen=True)
class ShortExactSequence:
    """``0 -> C1 --nu--> C2 --mu--> C3 -> 0``; all three padded to a common top degree."""

    c1: CochainComplex
    c2: CochainComplex
    c3: CochainComplex
    nu: tuple[np.ndarray, ...]
    mu: tuple[np.ndarray, ...]

    def __post_init__(self):
        top = max(self.c1.top, self.c2.top, self.c3.top)
        for name in ("c1", "c2", "c3"):
            object.__setattr__(self, name, _pad(getattr(self, name), top))
        like = self.c2.like()
        for name, src, tgt in (("nu", self.c1, self.c2), ("mu", self.c2, self.c3)):
            maps = list(getattr(self, name))
            maps += [la.zeros(tgt.dims[j], src.dims[j], like) for j in range(len(maps), top + 1)]
            object.__setattr__(self, name, tuple(maps))

    @property
    def top(self) -> int:
        return self.c2.top

    @property
    def tol(self) -> float:
        return self.c2.tol

    def validate(self) -> None:
        for c in (self.c1, self.c2, self.c3):
            c.check()
        check_chain_map(self.c1, self.c2, self.nu, "nu")
        check_chain_map(self.c2, self.c3, self.mu, "mu")
        for j in range(self.top + 1):
            nu, mu = self.nu[j], self.mu[j]
            if la.rank(nu, self.tol) != self.c1.dims[j]:
                raise NotExact(f"nu_{j} is not injective")
            if la.rank(mu, self.tol) != self.c3.dims[j]:
                raise NotExact(f"mu_{j} is not surjective")
            comp = mu @ nu
            if not la.allclose(comp, la.zeros(*comp.shape, self.c2.like()), self.tol):
                raise NotExact(f"mu_{j} nu_{j} != 0")
            if self.c1.dims[j] + self.c3.dims[j] != self.c2.dims[j]:
                raise NotExact(f"im nu_{j} != ker mu_{j}")


@dataclass(frozen=True)
class LongExactSequence:
    """The LES as an acyclic complex, plus the cohomology bases it is written in."""

    complex: CochainComplex
    bases: tuple[CohomologyData, CohomologyData, CohomologyData]

    def position(self, which: int, j: int) -> int:
        """Degree of ``H^j(C_which)`` (``which`` in 1, 2, 3) inside the LES."""
        return 3 * j + which - 1


def connecting_map(s: ShortExactSequence, h1: CohomologyData, h3: CohomologyData, j: int) -> np.ndarray:
    """``delta: H^j(C3) -> H^{j+1}(C1)`` in the given bases, by the zig-zag.

    A cocycle of ``C3`` is lifted through ``mu``, hit with ``d`` and pulled
    back through ``nu``.
    """
    like = s.c2.like()
    z = h3.lifts[j]
    if j + 1 > s.top:
        return la.zeros(0, z.shape[1], like)
    if z.shape[1] == 0 or h1.lifts[j + 1].shape[1] == 0:
        return la.zeros(h1.lifts[j + 1].shape[1], z.shape[1], like)
    y = la.solve(s.mu[j], z, s.tol)
    x = la.solve(s.nu[j + 1], s.c2.d(j) @ y, s.tol)
    return class_coordinates(s.c1, h1, j + 1, x)


def long_exact_sequence(
    s: ShortExactSequence,
    h1: CohomologyData | None = None,
    h2: CohomologyData | None = None,
    h3: CohomologyData | None = None,
) -> LongExactSequence:
    """Assemble the LES; bases default to :func:`cohomology` of each complex."""
    s.validate()
    h1 = h1 or cohomology(s.c1)
    h2 = h2 or cohomology(s.c2)
    h3 = h3 or cohomology(s.c3)
    like = s.c2.like()
    dims = []
    for j in range(s.top + 1):
        dims += [h1.lifts[j].shape[1], h2.lifts[j].shape[1], h3.lifts[j].shape[1]]
    diffs = []
    for j in range(s.top + 1):
        diffs.append(class_coordinates(s.c2, h2, j, s.nu[j] @ h1.lifts[j]))
        diffs.append(class_coordinates(s.c3, h3, j, s.mu[j] @ h2.lifts[j]))
        if j < s.top:
            diffs.append(connecting_map(s, h1, h3, j))
    les = CochainComplex(tuple(dims), tuple(_fix_shapes(diffs, dims, like)), s.tol, s.c2.scalars)
    les.check()
    for j in range(les.top + 1):
        if la.rank(les.d(j), s.tol) + la.rank(les.d(j - 1), s.tol) != les.dims[j]:
            raise NotExact(f"long exact sequence fails to be exact at position {j}")
    return LongExactSequence(les, (h1, h2, h3))


def _fix_shapes(diffs, dims, like):
    # class_coordinates on empty inputs can return (0, k) or (k, 0) shapes
    out = []
    for j, d in enumerate(diffs):
        want = (dims[j + 1], dims[j])
        out.append(d if d.shape == want else la.zeros(*want, like))
    return out


def les_torsion(les: LongExactSequence) -> TorsionValue:
    c = les.complex
    empty = CohomologyData(tuple(la.zeros(n, 0, c.like()) for n in c.dims))
    t = torsion(c, empty)
    return TorsionValue(t.value, t.exact, dict(t.convention, cohomology_basis="acyclic", grading="H^j(C_k) at 3j+k-1"))


def compatible_volumes(
    s: ShortExactSequence,
    v1: Sequence[np.ndarray] | None = None,
    v3: Sequence[np.ndarray] | None = None,
) -> list[np.ndarray]:
    """Bases of ``C2``: ``nu`` of a basis of ``C1`` followed by ``mu``-preimages of a basis of ``C3``."""
    like = s.c2.like()
    out = []
    for j in range(s.top + 1):
        b1 = v1[j] if v1 is not None else la.eye(s.c1.dims[j], like)
        b3 = v3[j] if v3 is not None else la.eye(s.c3.dims[j], like)
        for name, b, n in (("C1", b1, s.c1.dims[j]), ("C3", b3, s.c3.dims[j])):
            if b.shape != (n, n) or (n and la.rank(b, s.tol) != n):
                raise IncompatibleVolumes(f"volume of {name} in degree {j} is not a basis")
        lift = la.solve(s.mu[j], b3, s.tol) if b3.shape[1] else la.zeros(s.c2.dims[j], 0, like)
        out.append(la.hstack([s.nu[j] @ b1, lift], s.c2.dims[j], like))
    return out


@dataclass(frozen=True)
class MultiplicativityReport:
    lhs: TorsionValue
    rhs: TorsionValue
    tau1: TorsionValue
    tau3: TorsionValue
    tau_les: TorsionValue
    ok: bool


def multiplicativity_check(
    s: ShortExactSequence,
    volumes: tuple[Sequence[np.ndarray] | None, Sequence[np.ndarray] | None] | None = None,
    bases: tuple[CohomologyData | None, CohomologyData | None, CohomologyData | None] | None = None,
) -> MultiplicativityReport:
    """Compare ``tau(C2)`` with ``tau(C1) tau(C3) tau(H)`` under compatible volumes.

    ``volumes`` are optional bases of ``C1`` and ``C3``; the volume of ``C2``
    is constructed from them.
    """
    v1, v3 = volumes if volumes is not None else (None, None)
    les = long_exact_sequence(s, *(bases or (None, None, None)))
    h1, h2, h3 = les.bases
    v2 = compatible_volumes(s, v1, v3)
    t2 = torsion(s.c2, h2, volumes=v2)
    t1 = torsion(s.c1, h1, volumes=v1)
    t3 = torsion(s.c3, h3, volumes=v3)
    th = les_torsion(les)
    rhs_value = t1.value * t3.value * th.value
    rhs = TorsionValue(rhs_value, t2.exact, dict(th.convention, product="tau(C1) tau(C3) tau(H)"))
    ok = t2.value == rhs_value if t2.exact else t2.close_to(rhs, 1e3 * s.tol)
    return MultiplicativityReport(t2, rhs, t1, t3, th, bool(ok))


def identity_sequence(c: CochainComplex) -> ShortExactSequence:
    """``0 -> C --id--> C -> 0 -> 0``."""
    like = c.like()
    zero = CochainComplex(tuple(0 for _ in c.dims), tuple(la.zeros(0, 0, like) for _ in c.differentials), c.tol, c.scalars)
    nu = tuple(la.eye(n, like) for n in c.dims)
    mu = tuple(la.zeros(0, n, like) for n in c.dims)
    return ShortExactSequence(c, c, zero, nu, mu)


def conjugated(s: ShortExactSequence, p1, p2, p3) -> ShortExactSequence:
    """Transport ``s`` along degreewise isomorphisms ``p_k: C_k -> C_k'``."""

    def move(c, p):
        inv = [la.inverse(m, c.tol) for m in p]
        diffs = tuple(p[j + 1] @ c.d(j) @ inv[j] for j in range(c.top))
        return CochainComplex(c.dims, diffs, c.tol, c.scalars), inv

    c1, i1 = move(s.c1, p1)
    c2, i2 = move(s.c2, p2)
    c3, _ = move(s.c3, p3)
    nu = tuple(p2[j] @ s.nu[j] @ i1[j] for j in range(s.top + 1))
    mu = tuple(p3[j] @ s.mu[j] @ i2[j] for j in range(s.top + 1))
    return ShortExactSequence(c1, c2, c3, nu, mu)


__all__ = [
    "NotExact",
    "NotChainMap",
    "IncompatibleVolumes",
    "ShortExactSequence",
    "LongExactSequence",
    "MultiplicativityReport",
    "check_chain_map",
    "connecting_map",
    "long_exact_sequence",
    "les_torsion",
    "compatible_volumes",
    "multiplicativity_check",
    "identity_sequence",
    "conjugated",
]
