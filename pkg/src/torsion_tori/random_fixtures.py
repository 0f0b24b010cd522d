"""Seeded generators of random exact-rational test objects.

Every complex over a field splits into "atoms": single cohomology cells and
pairs ``e -> d e`` in adjacent degrees.  The generators build objects in
such a normal form and then hide it behind random integer changes of basis.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg as la
from .cochain import CochainComplex, _random_invertible
from .exact_sequences import ShortExactSequence

_EXACT = np.empty(0, dtype=object)


@dataclass(frozen=True)
class _Atom:
    degree: int  # degree of the lowest cell
    paired: bool  # True for a pair (degree, degree + 1)


def _random_atoms(rng, top: int, max_dim: int) -> list[_Atom]:
    dims = [0] * (top + 1)
    atoms = []
    for _ in range(int(rng.integers(1, 3 * max_dim))):
        deg = int(rng.integers(0, top + 1))
        paired = bool(rng.integers(0, 2)) and deg < top
        need = [deg, deg + 1] if paired else [deg]
        if any(dims[k] >= max_dim for k in need):
            continue
        for k in need:
            dims[k] += 1
        atoms.append(_Atom(deg, paired))
    return atoms


def _cells(atoms: list[_Atom], top: int):
    """Index of each atom's cells in its degrees, and the resulting dims."""
    dims = [0] * (top + 1)
    where = []
    for a in atoms:
        pos = {}
        for k in ([a.degree, a.degree + 1] if a.paired else [a.degree]):
            pos[k] = dims[k]
            dims[k] += 1
        where.append(pos)
    return where, dims


def _normal_differentials(atoms, where, dims):
    top = len(dims) - 1
    diffs = [la.zeros_exact(dims[j + 1], dims[j]) for j in range(top)]
    for a, pos in zip(atoms, where):
        if a.paired:
            diffs[a.degree][pos[a.degree + 1], pos[a.degree]] = Fraction(1)
    return diffs


def _conjugate(diffs, bases):
    inv = [la.inverse(p) for p in bases]
    return [bases[j + 1] @ d @ inv[j] for j, d in enumerate(diffs)], inv


def random_complex(rng: np.random.Generator, max_top: int = 3, max_dim: int = 5) -> CochainComplex:
    """A random exact complex with degrees ``0..top`` (``top <= max_top``), each ``dim <= max_dim``."""
    top = int(rng.integers(1, max_top + 1))
    atoms = _random_atoms(rng, top, max_dim)
    where, dims = _cells(atoms, top)
    diffs = _normal_differentials(atoms, where, dims)
    bases = [_random_invertible(rng, n, _EXACT) for n in dims]
    conj, _ = _conjugate(diffs, bases)
    return CochainComplex(tuple(dims), tuple(conj))


def random_acyclic_complex(rng: np.random.Generator, max_top: int = 3, max_dim: int = 5) -> CochainComplex:
    top = int(rng.integers(1, max_top + 1))
    atoms = [a for a in _random_atoms(rng, top, max_dim) if a.paired] or [_Atom(0, True)]
    where, dims = _cells(atoms, top)
    diffs = _normal_differentials(atoms, where, dims)
    bases = [_random_invertible(rng, n, _EXACT) for n in dims]
    conj, _ = _conjugate(diffs, bases)
    return CochainComplex(tuple(dims), tuple(conj))


def random_ses(rng: np.random.Generator, max_top: int = 3, max_dim: int = 5) -> ShortExactSequence:
    """A random short exact sequence ``0 -> C1 -> C2 -> C3 -> 0``.

    ``C1`` is a subcomplex spanned by a random set of cells of the normal
    form of ``C2`` that is closed under ``d``.  A pair whose target lies in
    ``C1`` while its source does not produces a nonzero connecting map.
    """
    top = int(rng.integers(1, max_top + 1))
    atoms = _random_atoms(rng, top, max_dim)
    where, dims = _cells(atoms, top)
    d2 = _normal_differentials(atoms, where, dims)
    in_sub = [[False] * n for n in dims]
    for a, pos in zip(atoms, where):
        if a.paired:
            choice = int(rng.integers(0, 3))  # 0: neither, 1: target only, 2: both
            if choice >= 1:
                in_sub[a.degree + 1][pos[a.degree + 1]] = True
            if choice == 2:
                in_sub[a.degree][pos[a.degree]] = True
        elif rng.integers(0, 2):
            in_sub[a.degree][pos[a.degree]] = True
    sub_idx = [[i for i, b in enumerate(row) if b] for row in in_sub]
    quo_idx = [[i for i, b in enumerate(row) if not b] for row in in_sub]

    def restrict(rows_idx, cols_idx, j):
        return d2[j][np.ix_(rows_idx[j + 1], cols_idx[j])] if rows_idx[j + 1] and cols_idx[j] else la.zeros_exact(
            len(rows_idx[j + 1]), len(cols_idx[j])
        )

    d1 = [restrict(sub_idx, sub_idx, j) for j in range(top)]
    d3 = [restrict(quo_idx, quo_idx, j) for j in range(top)]
    incl = []
    proj = []
    for j in range(top + 1):
        e = la.eye_exact(dims[j])
        incl.append(e[:, sub_idx[j]] if sub_idx[j] else la.zeros_exact(dims[j], 0))
        proj.append(e[quo_idx[j], :] if quo_idx[j] else la.zeros_exact(0, dims[j]))

    p2 = [_random_invertible(rng, n, _EXACT) for n in dims]
    p1 = [_random_invertible(rng, len(i), _EXACT) for i in sub_idx]
    p3 = [_random_invertible(rng, len(i), _EXACT) for i in quo_idx]
    d2c, i2 = _conjugate(d2, p2)
    d1c, i1 = _conjugate(d1, p1)
    d3c, _ = _conjugate(d3, p3)
    nu = tuple(p2[j] @ incl[j] @ i1[j] for j in range(top + 1))
    mu = tuple(p3[j] @ proj[j] @ i2[j] for j in range(top + 1))
    c1 = CochainComplex(tuple(len(i) for i in sub_idx), tuple(d1c), scalars="exact")
    c2 = CochainComplex(tuple(dims), tuple(d2c), scalars="exact")
    c3 = CochainComplex(tuple(len(i) for i in quo_idx), tuple(d3c), scalars="exact")
    return ShortExactSequence(c1, c2, c3, nu, mu)


# finite-order blocks: (matrix, order)
_BLOCKS = {
    1: [[[1]]],
    2: [[[-1]], [[0, 1], [1, 0]]],
    3: [[[0, -1], [1, -1]], [[0, 0, 1], [1, 0, 0], [0, 1, 0]]],
    4: [[[0, -1], [1, 0]]],
    5: [[[0, 0, 0, -1], [1, 0, 0, -1], [0, 1, 0, -1], [0, 0, 1, -1]]],
    6: [[[0, -1], [1, 1]]],
}


def _block_orders(order: int) -> list[int]:
    return [k for k in _BLOCKS if order % k == 0]


def _random_block(rng, order: int, room: int):
    options = [b for k in _block_orders(order) for b in _BLOCKS[k] if len(b) <= room]
    if not options:
        return None
    return la.exact(options[int(rng.integers(0, len(options)))])


def random_finite_order_map(
    rng: np.random.Generator, order: int | None = None, max_top: int = 2, max_dim: int = 4
):
    """A random chain map ``f`` of finite order on a random exact complex.

    Returns ``(complex, maps, order)``.  ``f`` acts by finite-order blocks on
    cohomology cells and on contractible pairs ``V -> V``.
    """
    if order is None:
        order = int(rng.integers(2, 7))
    top = int(rng.integers(1, max_top + 1))
    dims = [0] * (top + 1)
    pieces = []  # (degree, paired, block)
    for _ in range(int(rng.integers(1, 2 * max_dim + 1))):
        deg = int(rng.integers(0, top + 1))
        paired = bool(rng.integers(0, 2)) and deg < top
        span = [deg, deg + 1] if paired else [deg]
        room = min(max_dim - dims[k] for k in span)
        block = _random_block(rng, order, room)
        if block is None:
            continue
        for k in span:
            dims[k] += block.shape[0]
        pieces.append((deg, paired, block))
    if not any(dims):
        dims[0] = 1
        pieces.append((0, False, la.exact([[1]])))
    diffs = [la.zeros_exact(dims[j + 1], dims[j]) for j in range(top)]
    maps = [la.zeros_exact(n, n) for n in dims]
    fill = [0] * (top + 1)
    for deg, paired, block in pieces:
        k = block.shape[0]
        span = [deg, deg + 1] if paired else [deg]
        start = {j: fill[j] for j in span}
        for j in span:
            maps[j][start[j]: start[j] + k, start[j]: start[j] + k] = block
            fill[j] += k
        if paired:
            for i in range(k):
                diffs[deg][start[deg + 1] + i, start[deg] + i] = Fraction(1)
    bases = [_random_invertible(rng, n, _EXACT) for n in dims]
    conj, inv = _conjugate(diffs, bases)
    fmaps = tuple(bases[j] @ maps[j] @ inv[j] for j in range(top + 1))
    return CochainComplex(tuple(dims), tuple(conj), scalars="exact"), fmaps, order


def unipotent_map(rng: np.random.Generator):
    """A chain map of infinite order: a Jordan block acting on ``H^0``."""
    c = CochainComplex((2,), (), scalars="exact")
    p = _random_invertible(rng, 2, _EXACT)
    f = p @ la.exact([[1, 1], [0, 1]]) @ la.inverse(p)
    return c, (f,)


def random_phases(rng: np.random.Generator, count: int, order: int, nonzero: bool = False) -> tuple[Fraction, ...]:
    low = 1 if nonzero else 0
    return tuple(Fraction(int(rng.integers(low, order)), order) for _ in range(count))


def random_h10_phases(rng: np.random.Generator, max_genus: int = 4) -> tuple[Fraction, ...]:
    """Phases of a finite-order action on ``H^{1,0}`` of a surface of genus ``<= max_genus``."""
    order = int(rng.integers(2, 7))
    return random_phases(rng, int(rng.integers(1, max_genus + 1)), order)


_GROUPS = ("su2", "su3", "su4")


def random_component_summary(rng: np.random.Generator, group: str | None = None, name: str = ""):
    """A component summary whose spectral flow is an integer.

    Samples on one component share their conormal phases, as the phases
    are locally constant; the CS lift is solved from a random integer
    spectral flow.
    """
    from .asymptotics import ComponentSummary, Sample
    from .lie import lie_data
    from . import spectral as sp

    if group is None:
        group = _GROUPS[int(rng.integers(0, len(_GROUPS)))]
    l = lie_data(group)
    order = int(rng.integers(2, 7))
    h10 = random_phases(rng, int(rng.integers(1, 4)), order)
    d_c = Fraction(int(rng.integers(0, 5)), 2)
    normal = random_phases(rng, int(rng.integers(1, 5)), order, nonzero=True)
    weights = [float(rng.uniform(0.5, 2.0)) for _ in range(int(rng.integers(1, 4)))]
    samples = tuple(Sample(w, normal) for w in weights)
    b1 = 1 + 2 * sum(1 for t in h10 if t == 0)
    dim_h0, dim_h1 = 0, int(2 * d_c)
    e = sp.EigenPhaseData(normal, h10, l.dim)
    rho = sp.rho_finite_order(e).rho
    h = l.dual_coxeter
    sf = int(rng.integers(-10, 11))
    rest = rho / 2 - Fraction(l.dim * (1 + b1), 2) + Fraction(dim_h0 + dim_h1, 2)
    cs = (rest - sf) / (4 * h)
    cs = cs - (cs // 1) + int(rng.integers(-1, 2))
    return ComponentSummary(group, cs, d_c, samples, h10, None, b1, dim_h0, dim_h1, True, name)


__all__ = [
    "random_complex",
    "random_acyclic_complex",
    "random_ses",
    "random_finite_order_map",
    "unipotent_map",
    "random_phases",
    "random_h10_phases",
    "random_component_summary",
]
