"""Algebraic mapping tori, the Wang sequence and closed forms for their torsion.

For a chain map ``f`` on ``C`` the torus complex is ``T^i = C^i + C^{i-1}``
with ``d_f(x, y) = (dx, -dy + mu x)`` and ``mu = 1 - f``.  The Wang sequence

    0 -> C^{.-1} --nu--> T --pi--> C -> 0,   nu(y) = (0, y),  pi(x, y) = x,

has connecting map ``[x] -> [mu x]``.  All four torsion routes below use the
same basis ``h_T`` of ``H(T)`` so that their values are directly comparable.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

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
from .exact_sequences import (
    LongExactSequence,
    NotChainMap,
    ShortExactSequence,
    check_chain_map,
    les_torsion,
    long_exact_sequence,
)

# exponent of the density factor |det[nu(h_-^{i-1}), h^i]| in degree i
DENSITY_EXPONENT = "(-1)^(i+1)"


class NoValidChoice(ValueError):
    pass


class MuBarSingular(ValueError):
    pass


@dataclass(frozen=True)
class ChainEndomorphism:
    """A chain map ``f_j: C^j -> C^j``; ``order`` is 0 unless ``f^order = 1``."""

    base: CochainComplex
    maps: tuple[np.ndarray, ...]
    order: int = 0

    def __post_init__(self):
        object.__setattr__(self, "maps", tuple(self.maps))
        if len(self.maps) != self.base.top + 1:
            raise NotChainMap(f"need {self.base.top + 1} maps, got {len(self.maps)}")
        check_chain_map(self.base, self.base, self.maps, "f")
        if self.order < 0:
            raise ValueError("order must be >= 0")
        if self.order:
            for j, m in enumerate(self.maps):
                p = la.matrix_power(m, self.order)
                if not la.allclose(p, la.eye(m.shape[0], m), self.base.tol):
                    raise la.NotFiniteOrder(f"f_{j}^{self.order} != 1")

    def mu(self, j: int) -> np.ndarray:
        m = self.maps[j]
        return la.eye(m.shape[0], m) - m

    def on_cohomology(self, h: CohomologyData | None = None) -> list[np.ndarray]:
        """Matrices of ``f^*`` on each ``H^j`` in the basis ``h``."""
        h = h or cohomology(self.base)
        return [class_coordinates(self.base, h, j, self.maps[j] @ h.lifts[j]) for j in range(self.base.top + 1)]

    def conjugate(self, g: Sequence[np.ndarray]) -> "ChainEndomorphism":
        """``g f g^{-1}`` on the complex transported by the automorphism ``g``."""
        c = self.base
        inv = [la.inverse(m, c.tol) for m in g]
        diffs = tuple(g[j + 1] @ c.d(j) @ inv[j] for j in range(c.top))
        nc = CochainComplex(c.dims, diffs, c.tol, c.scalars)
        return ChainEndomorphism(nc, tuple(g[j] @ self.maps[j] @ inv[j] for j in range(c.top + 1)), self.order)


@dataclass(frozen=True)
class AlgebraicMappingTorus:
    f: ChainEndomorphism
    complex: CochainComplex
    nu: tuple[np.ndarray, ...]
    pi: tuple[np.ndarray, ...]

    def wang_sequence(self) -> ShortExactSequence:
        c = self.f.base
        shifted = c.shifted(1).negated()
        return ShortExactSequence(shifted, self.complex, c, self.nu, self.pi)


def build_mapping_torus(f: ChainEndomorphism) -> AlgebraicMappingTorus:
    c = f.base
    like = c.like()
    n = c.top
    dim = lambda j: c.dims[j] if 0 <= j <= n else 0  # noqa: E731
    tdims = tuple(dim(i) + dim(i - 1) for i in range(n + 2))
    diffs = []
    for i in range(n + 1):
        m = la.zeros(tdims[i + 1], tdims[i], like)
        a, b = dim(i), dim(i + 1)
        m[:b, :a] = c.d(i)
        m[b:, :a] = f.mu(i)
        m[b:, a:] = -c.d(i - 1)
        diffs.append(m)
    t = CochainComplex(tdims, tuple(diffs), c.tol, c.scalars)
    t.check()
    nu, pi = [], []
    for i in range(n + 2):
        e = la.eye(tdims[i], like)
        nu.append(e[:, dim(i):])
        pi.append(e[: dim(i), :])
    return AlgebraicMappingTorus(f, t, tuple(nu), tuple(pi))


@dataclass(frozen=True)
class WangData:
    """The Wang LES written in the bases ``h_c`` of ``H(C)`` and ``h_t`` of ``H(T)``."""

    torus: AlgebraicMappingTorus
    les: LongExactSequence
    h_c: CohomologyData
    h_t: CohomologyData

    @property
    def n(self) -> int:
        return self.torus.f.base.top

    def nu_star(self, i: int) -> np.ndarray:
        """``H^{i-1}(C) -> H^i(T)``."""
        return self.les.complex.d(3 * i)

    def pi_star(self, i: int) -> np.ndarray:
        """``H^i(T) -> H^i(C)``."""
        return self.les.complex.d(3 * i + 1)

    def mu_star(self, i: int) -> np.ndarray:
        """``H^i(C) -> H^i(C)``, the connecting map."""
        return self.les.complex.d(3 * i + 2)


def wang_data(f: ChainEndomorphism, h_t: CohomologyData | None = None, h_c: CohomologyData | None = None) -> WangData:
    torus = build_mapping_torus(f)
    c = f.base
    h_c = h_c or cohomology(c)
    h_t = h_t or cohomology(torus.complex)
    like = c.like()
    n1 = c.top + 1
    lifts3 = tuple(h_c.lifts) + (la.zeros(0, 0, like),)
    lifts1 = (la.zeros(0, 0, like),) + tuple(h_c.lifts)
    les = long_exact_sequence(torus.wang_sequence(), CohomologyData(lifts1), h_t, CohomologyData(lifts3[: n1 + 1]))
    return WangData(torus, les, h_c, h_t)


def _abs(x):
    return la.abs_value(x)


def _inv_pow(x, sign: int):
    return x if sign > 0 else 1 / x


def _one(exact: bool):
    return Fraction(1) if exact else la.REAL_DTYPE(1)


def torsion_definition(f: ChainEndomorphism, h_t: CohomologyData | None = None) -> TorsionValue:
    """Torsion of the torus complex computed straight from the definition."""
    torus = build_mapping_torus(f)
    return torsion(torus.complex, h_t or cohomology(torus.complex))


def torsion_via_wang(
    f: ChainEndomorphism, h_t: CohomologyData | None = None, h_c: CohomologyData | None = None
) -> TorsionValue:
    """Torsion of the Wang long exact sequence.

    The cell bases of ``T`` are compatible with those of ``C^{.-1}`` and
    ``C``, and the torsions of ``C^{.-1}`` and ``C`` cancel, so this equals
    the torsion of ``T`` in the basis ``h_t`` whatever ``h_c`` is.
    """
    w = wang_data(f, h_t, h_c)
    t = les_torsion(w.les)
    return TorsionValue(t.value, t.exact, dict(t.convention, route="wang", torus_basis="h_T"))


def _det_cols(cols: Sequence[np.ndarray], n: int, like) -> object:
    return la.det(la.hstack(list(cols), n, like))


@dataclass
class ClosedFormChoices:
    """Choices for the general closed form, all in coordinates.

    ``h[i]`` lists classes of ``H^i(T)`` in the basis ``h_T``; ``h_plus[i]``
    and ``h_minus[i]`` list classes of ``H^i(C)`` in the basis ``h_C``.
    """

    h: list[np.ndarray]
    h_plus: list[np.ndarray]
    h_minus: list[np.ndarray]
    notes: list[str] = field(default_factory=list)


def _complement(vectors: np.ndarray, n: int, like) -> np.ndarray:
    if vectors.shape[1] == 0:
        return la.eye(n, like)
    return la.extend_to_basis(vectors)


def default_choices(w: WangData) -> ClosedFormChoices:
    """Deterministic choices meeting the three nonvanishing hypotheses."""
    like = w.torus.complex.like()
    n = w.n
    h, hp, hm = [], [], []
    for i in range(n + 2):
        dim_t = w.h_t.dims[i]
        nu_img = la.rank_kernel_image(w.nu_star(i)).image
        h.append(_complement(nu_img, dim_t, like) if dim_t else la.zeros(0, 0, like))
    for i in range(n + 1):
        dim_c = w.h_c.dims[i]
        pih = w.pi_star(i) @ h[i]
        hp.append(_complement(pih, dim_c, like) if dim_c else la.zeros(0, 0, like))
        mu_img = la.rank_kernel_image(w.mu_star(i)).image
        hm.append(_complement(mu_img, dim_c, like) if dim_c else la.zeros(0, 0, like))
    return ClosedFormChoices(h, hp, hm)


def _nonzero(x, exact: bool, tol: float) -> bool:
    return x != 0 if exact else abs(x) > tol


_LAMBDAS = [Fraction(1), Fraction(2), Fraction(1, 2), Fraction(3), Fraction(1, 3), Fraction(5), Fraction(1, 7)]


def _perturb_h_plus(hp, pih, outside, good, exact: bool, degree: int):
    """``h_+ + lambda K`` for the first ``lambda`` and ``K`` that satisfy ``good``.

    ``K`` mixes a direction outside ``ker mu`` (repairs ``mu*(h_+) ^ h_- = 0``)
    with a direction inside ``ker mu = im pi*`` (repairs ``h_+ ^ h_- = 0``
    without touching ``mu*(h_+)``).
    """
    rng = np.random.default_rng(degree)
    r, k = pih.shape[1], hp.shape[1]
    for attempt in range(20):
        mix = rng.integers(-2, 3, size=(r, k))
        inside = pih @ (la.exact(mix.tolist(), (r, k)) if exact else mix.astype(la.COMPLEX_DTYPE))
        for direction in (outside, inside, outside + inside):
            for lam in _LAMBDAS:
                scale = lam if exact else la.REAL_DTYPE(lam.numerator) / lam.denominator
                cand = hp + direction * scale
                if good(cand):
                    return cand
    raise NoValidChoice(f"degree {degree}: no perturbation of h_+ satisfies the hypotheses")


def _prepare_choices(w: WangData, ch: ClosedFormChoices) -> ClosedFormChoices:
    """Check the hypotheses, repair the third one, and normalize ``h_-``."""
    like = w.torus.complex.like()
    exact = w.torus.complex.exact
    tol = w.torus.complex.tol
    n = w.n
    h = list(ch.h)
    hp = list(ch.h_plus)
    hm = list(ch.h_minus)
    notes = list(ch.notes)
    zero_col = lambda r: la.zeros(r, 0, like)  # noqa: E731
    for i in range(n + 2):
        prev = w.nu_star(i) @ hm[i - 1] if 0 < i <= n + 1 else zero_col(w.h_t.dims[i])
        if not _nonzero(_det_cols([prev, h[i]], w.h_t.dims[i], like), exact, tol):
            raise NoValidChoice(f"degree {i}: nu*(h_-) and h do not form a basis of H(T)")
    for i in range(n + 1):
        dim_c = w.h_c.dims[i]
        pih = w.pi_star(i) @ h[i]
        if not _nonzero(_det_cols([pih, hp[i]], dim_c, like), exact, tol):
            raise NoValidChoice(f"degree {i}: pi*(h) and h_+ do not form a basis of H(C)")
        mu = w.mu_star(i)

        def good(cand):
            return _nonzero(_det_cols([mu @ cand, hm[i]], dim_c, like), exact, tol) and _nonzero(
                _det_cols([hm[i], cand], dim_c, like), exact, tol
            ) and _nonzero(_det_cols([pih, cand], dim_c, like), exact, tol)

        if not good(hp[i]):
            hp[i] = _perturb_h_plus(hp[i], pih, _complement(pih, dim_c, like), good, exact, i)
            notes.append(f"degree {i}: h_+ perturbed")
        # rescale the first column of h_- so that |h_- ^ h_+| = |pi*(h) ^ h_+|
        if hm[i].shape[1]:
            target = _abs(_det_cols([pih, hp[i]], dim_c, like))
            current = _abs(_det_cols([hm[i], hp[i]], dim_c, like))
            hm[i] = hm[i].copy()
            hm[i][:, 0] = hm[i][:, 0] * (target / current)
    return ClosedFormChoices(h, hp, hm, notes)


Pairing = Callable[[int, np.ndarray, np.ndarray], object]


def inner_pairing(i: int, a: np.ndarray, b: np.ndarray):
    """``det(a^T b)``: the coordinate inner product extended to top exterior powers."""
    return la.det(a.T @ b)


def _apply_theta(w: WangData, ch: ClosedFormChoices, theta: Pairing) -> tuple[ClosedFormChoices, list[int]]:
    """Rescale ``h^i`` for ``i > (n+1)/2`` (and solve the middle degree) so ``|theta(nu*(h_-^{n-i}))(h^i)| = 1``.

    Returns the degrees where the condition was imposed.  ``h_-`` is
    renormalized afterwards by :func:`_prepare_choices`.
    """
    n = w.n
    exact = w.torus.complex.exact
    h = list(ch.h)
    notes = list(ch.notes)
    imposed = []
    for i in range(n + 2):
        j = n - i  # h_-^{n-i} lives in H^{n-i}(C); nu* sends it to H^{n+1-i}(T)
        if j < 0 or j > n or 2 * i < n:
            continue
        a = w.nu_star(j + 1) @ ch.h_minus[j]
        b = h[i]
        if a.shape != b.shape or b.shape[1] == 0:
            continue
        val = _abs(theta(i, a, b))
        if not _nonzero(val, exact, w.torus.complex.tol):
            continue
        if 2 * i == n:
            # h_-^{i} scales with h^i: val scales by lambda^(2k) when h^i scales by lambda
            try:
                root = _root(1 / val, 2, exact)
            except NoValidChoice:
                notes.append(f"degree {i}: pairing normalization skipped, it needs an irrational rescaling")
                continue
            h[i] = h[i].copy()
            h[i][:, 0] = h[i][:, 0] * root
        else:
            h[i] = h[i].copy()
            h[i][:, 0] = h[i][:, 0] / val
        imposed.append(i)
    return ClosedFormChoices(h, list(ch.h_plus), list(ch.h_minus), notes), imposed


def _root(x, r: int, exact: bool):
    if exact:
        num = _exact_root(x.numerator, r)
        den = _exact_root(x.denominator, r)
        if num is not None and den is not None:
            return Fraction(num, den)
        raise NoValidChoice("the pairing normalization needs an irrational rescaling")
    return la.REAL_DTYPE(x) ** (la.REAL_DTYPE(1) / r)


def _exact_root(v: int, r: int):
    guess = round(v ** (1.0 / r))
    for g in (guess - 1, guess, guess + 1):
        if g >= 0 and g**r == v:
            return g
    return None


def _closed_form_value(w: WangData, ch: ClosedFormChoices, mu_dets: Sequence) -> object:
    like = w.torus.complex.like()
    exact = w.torus.complex.exact
    n = w.n
    value = _one(exact)
    for i in range(n + 2):
        prev = w.nu_star(i) @ ch.h_minus[i - 1] if i > 0 else la.zeros(w.h_t.dims[i], 0, like)
        dens = _abs(_det_cols([prev, ch.h[i]], w.h_t.dims[i], like))
        value = value * _inv_pow(dens, -1 if i % 2 == 0 else 1)
    for i in range(n + 1):
        value = value * _inv_pow(_abs(mu_dets[i]), -1 if i % 2 == 0 else 1)
    return value


def mu_tilde_det(w: WangData, ch: ClosedFormChoices, i: int):
    """``det mu~``, where ``mu~(h_- ^ h_+) = h_- ^ mu*(h_+)``."""
    like = w.torus.complex.like()
    dim_c = w.h_c.dims[i]
    num = _det_cols([ch.h_minus[i], w.mu_star(i) @ ch.h_plus[i]], dim_c, like)
    den = _det_cols([ch.h_minus[i], ch.h_plus[i]], dim_c, like)
    return num / den


@dataclass(frozen=True)
class ClosedFormReport:
    torsion: TorsionValue
    choices: ClosedFormChoices
    mu_dets: tuple
    theta_degrees: tuple[int, ...] = ()


def torsion_closed_form_general(
    f: ChainEndomorphism,
    choices: ClosedFormChoices | None = None,
    theta: Pairing | str | None = None,
    h_t: CohomologyData | None = None,
) -> ClosedFormReport:
    """Torsion of the mapping torus from the Wang data and a choice of ``h, h_+, h_-``.

    ``theta`` is an optional pairing used to rescale ``h`` as in the
    duality normalization; ``"inner"`` selects :func:`inner_pairing`.  The
    value does not depend on it.
    """
    w = wang_data(f, h_t)
    ch = choices or default_choices(w)
    ch = _prepare_choices(w, ch)
    imposed: list[int] = []
    if theta is not None:
        pairing = inner_pairing if theta == "inner" else theta
        ch, imposed = _apply_theta(w, ch, pairing)
        ch = _prepare_choices(w, ch)
    dets = tuple(mu_tilde_det(w, ch, i) for i in range(w.n + 1))
    value = _closed_form_value(w, ch, dets)
    conv = {
        "route": "closed form, general",
        "density_exponent": DENSITY_EXPONENT,
        "mu_exponent": "(-1)^(i+1)",
        "torus_basis": "h_T",
        "pairing": "none" if theta is None else ("inner" if theta == "inner" else "user"),
        "notes": list(ch.notes),
    }
    return ClosedFormReport(TorsionValue(value, w.torus.complex.exact, conv), ch, dets, tuple(imposed))


def quotient_det(t: np.ndarray, tol: float = la.DEFAULT_TOL):
    """``det`` of the map induced by ``t`` on ``V / ker t``."""
    info = la.rank_kernel_image(t, tol)
    n = t.shape[0]
    if info.rank == 0:
        return Fraction(1) if la.is_exact(t) else la.COMPLEX_DTYPE(1)
    ker = info.kernel
    comp = _complement(ker, n, t) if ker.shape[1] else la.eye(n, t)
    basis = la.hstack([ker, comp], n, t)
    coords = la.solve(basis, t @ comp, tol)
    block = coords[ker.shape[1]:, :]
    return la.det(block, tol)


def image_det(t: np.ndarray, tol: float = la.DEFAULT_TOL):
    """``det`` of ``t`` restricted to ``im t``; raises if ``t`` does not preserve it invertibly."""
    info = la.rank_kernel_image(t, tol)
    if info.rank == 0:
        return Fraction(1) if la.is_exact(t) else la.COMPLEX_DTYPE(1)
    img = info.image
    coords = la.solve(img, t @ img, tol)
    return la.det(coords, tol)


def mu_bar_invertible(t: np.ndarray, tol: float = la.DEFAULT_TOL) -> bool:
    return la.rank(t @ t, tol) == la.rank(t, tol)


@dataclass(frozen=True)
class FiniteOrderReport:
    torsion: TorsionValue
    mu_bar_dets: tuple
    mu_hat_dets: tuple


def torsion_closed_form_finite_order(f: ChainEndomorphism, h_t: CohomologyData | None = None) -> FiniteOrderReport:
    """Closed form with ``h_- = pi*(h)`` and ``h_+`` spanning ``im mu``.

    Requires ``mu`` to induce an isomorphism of ``H/ker mu``, which holds
    whenever ``f`` has finite order on cohomology.
    """
    w = wang_data(f, h_t)
    like = w.torus.complex.like()
    tol = w.torus.complex.tol
    exact = w.torus.complex.exact
    base = default_choices(w)
    hm, hp, bars, hats = [], [], [], []
    for i in range(w.n + 1):
        mu = w.mu_star(i)
        if not mu_bar_invertible(mu, tol):
            raise MuBarSingular(f"degree {i}: mu does not induce an isomorphism of H/ker mu")
        bar, hat = quotient_det(mu, tol), image_det(mu, tol)
        same = bar == hat if exact else abs(bar - hat) <= 1e3 * tol * max(1.0, float(abs(bar)))
        if not same:
            raise MuBarSingular(f"degree {i}: det on the quotient {bar} differs from det on the image {hat}")
        bars.append(bar)
        hats.append(hat)
        hm.append(w.pi_star(i) @ base.h[i])
        hp.append(la.rank_kernel_image(mu, tol).image if mu.size else la.zeros(w.h_c.dims[i], 0, like))
    ch = ClosedFormChoices(base.h, hp, hm)
    value = _closed_form_value(w, ch, bars)
    conv = {
        "route": "closed form, finite order",
        "density_exponent": DENSITY_EXPONENT,
        "mu_exponent": "(-1)^(i+1)",
        "torus_basis": "h_T",
    }
    return FiniteOrderReport(TorsionValue(value, exact, conv), tuple(bars), tuple(hats))


def oracle_triangle(f: ChainEndomorphism) -> dict:
    """All four torsion routes in the same basis of ``H(T)``."""
    torus = build_mapping_torus(f)
    h_t = cohomology(torus.complex)
    out = {
        "definition": torsion(torus.complex, h_t).value,
        "wang": torsion_via_wang(f, h_t).value,
        "general": torsion_closed_form_general(f, h_t=h_t).torsion.value,
    }
    try:
        out["finite_order"] = torsion_closed_form_finite_order(f, h_t).torsion.value
    except MuBarSingular:
        out["finite_order"] = None
    return out
