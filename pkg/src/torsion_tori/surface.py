"""Twisted cochains of a closed surface from a representation of its group.

The surface of genus ``g`` has one vertex, ``2g`` edges ``x_1, y_1, ...``
and one 2-cell attached along ``r = [x_1, y_1] ... [x_g, y_g]``.  With
coefficients in the complexified Lie algebra ``W`` (acted on by ``Ad``):

* ``C^0 = W``, ``C^1 = W^{2g}`` (values of a crossed homomorphism on the
  generators), ``C^2 = W``;
* ``d^0 v = (Ad_{rho(s)} v - v)_s``;
* ``d^1 c = sum_s rho(dr/ds) c_s`` with Fox derivatives ``dr/ds``.

Generators are indexed ``x_i -> 2(i-1)``, ``y_i -> 2(i-1)+1``.  A word is a
tuple of ``(generator, +1 | -1)`` letters.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import linalg as la
from .cochain import CochainComplex, CohomologyData, class_coordinates, cohomology, cohomology_dims
from .lie import LieData, lie_data
from .mapping_torus import ChainEndomorphism

Letter = tuple[int, int]
Word = tuple[Letter, ...]


class RelatorViolated(ValueError):
    pass


class Degenerate(ValueError):
    pass


class IncompatibleTwisting(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


# words ---------------------------------------------------------------------------


def inverse_word(w: Word) -> Word:
    return tuple((g, -e) for g, e in reversed(w))


def reduce_word(w: Sequence[Letter]) -> Word:
    out: list[Letter] = []
    for g, e in w:
        if out and out[-1] == (g, -e):
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


def relator(genus: int) -> Word:
    w: list[Letter] = []
    for i in range(genus):
        x, y = 2 * i, 2 * i + 1
        w += [(x, 1), (y, 1), (x, -1), (y, -1)]
    return tuple(w)


def generator_name(g: int) -> str:
    return f"{'xy'[g % 2]}{g // 2 + 1}"


def format_word(w: Word) -> str:
    return " ".join(generator_name(g) + ("" if e > 0 else "^-1") for g, e in w)


_TOKEN = re.compile(r"^([xy])(\d+)(\^-1)?$")


def parse_word(text: str) -> Word:
    """Parse ``"y1 x1^-1 y1^-1"``; the empty string is the identity."""
    out = []
    for tok in text.split():
        m = _TOKEN.match(tok)
        if not m:
            raise ValueError(f"bad letter {tok!r}")
        idx = 2 * (int(m.group(2)) - 1) + (m.group(1) == "y")
        out.append((idx, -1 if m.group(3) else 1))
    return tuple(out)


def fox_derivative(w: Word, s: int) -> list[tuple[int, Word]]:
    """``dw/ds`` as a signed list of group elements (prefix words)."""
    terms = []
    for t, (g, e) in enumerate(w):
        if g != s:
            continue
        if e > 0:
            terms.append((1, w[:t]))
        else:
            terms.append((-1, w[: t + 1]))
    return terms


def _cyclic_conjugator(w: Word, r: Word) -> tuple[Word, int] | None:
    """``(u, eps)`` with ``w = u r^eps u^-1`` as reduced words, if they exist."""
    w = reduce_word(w)
    outer: list[Letter] = []
    while len(w) >= 2 and w[0] == (w[-1][0], -w[-1][1]):
        outer.append(w[0])
        w = w[1:-1]
    for eps, target in ((1, r), (-1, inverse_word(r))):
        n = len(target)
        if len(w) != n:
            continue
        for t in range(n):
            # w = target[t:] + target[:t] = p^-1 target p with p = target[:t]
            if w == target[t:] + target[:t]:
                u = reduce_word(tuple(outer) + inverse_word(target[:t]))
                return u, eps
    return None


# representations ------------------------------------------------------------------


@dataclass(frozen=True)
class SurfaceRepresentation:
    genus: int
    group: str
    generators: tuple[np.ndarray, ...]
    tol: float = 1e-9

    def __post_init__(self):
        gens = tuple(np.asarray(g, dtype=complex) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        if self.genus < 1 or len(gens) != 2 * self.genus:
            raise ValueError(f"genus {self.genus} needs {2 * self.genus} generator images")
        n = self.lie.n
        for k, g in enumerate(gens):
            if g.shape != (n, n):
                raise ValueError(f"generator {generator_name(k)} has shape {g.shape}")
            if np.max(np.abs(g.conj().T @ g - np.eye(n))) > self.tol:
                raise ValueError(f"generator {generator_name(k)} is not unitary")
        dev = np.max(np.abs(self.evaluate(relator(self.genus)) - np.eye(n)))
        if dev > 1e3 * self.tol:
            raise RelatorViolated(f"product of commutators differs from 1 by {dev:.3g}")

    @property
    def lie(self) -> LieData:
        return lie_data(self.group)

    def evaluate(self, w: Word) -> np.ndarray:
        out = np.eye(self.lie.n, dtype=complex)
        for g, e in w:
            m = self.generators[g]
            out = out @ (m if e > 0 else m.conj().T)
        return out

    def Ad(self, w: Word) -> np.ndarray:
        return self.lie.Ad(self.evaluate(w))

    def group_ring(self, terms: list[tuple[int, Word]]) -> np.ndarray:
        dim = self.lie.dim
        out = np.zeros((dim, dim), dtype=complex)
        for sign, w in terms:
            out += sign * self.Ad(w)
        return out

    def commutant_dimension(self) -> int:
        """Dimension of the matrices commuting with every generator image."""
        n = self.lie.n
        eye = np.eye(n)
        stack = np.vstack([np.kron(g, eye) - np.kron(eye, g.T) for g in self.generators])
        sv = np.linalg.svd(stack, compute_uv=False)
        return int(np.sum(sv <= 1e-8 * max(1.0, sv[0]))) + max(0, n * n - len(sv))


def twisted_complex(rep: SurfaceRepresentation) -> CochainComplex:
    dim = rep.lie.dim
    ngen = 2 * rep.genus
    r = relator(rep.genus)
    d0 = np.vstack([rep.Ad(((s, 1),)) - np.eye(dim) for s in range(ngen)])
    d1 = np.hstack([rep.group_ring(fox_derivative(r, s)) for s in range(ngen)])
    c = CochainComplex(
        (dim, ngen * dim, dim),
        (la.cplx(d0), la.cplx(d1)),
        tol=rep.tol,
        scalars="complex",
    )
    c.check()
    return c


def is_irreducible(rep: SurfaceRepresentation) -> bool:
    h0 = cohomology_dims(twisted_complex(rep))[0] == 0
    return h0


# cup product and symplectic form --------------------------------------------------


def _split(rep: SurfaceRepresentation, c: np.ndarray) -> list[np.ndarray]:
    dim = rep.lie.dim
    v = np.asarray(c, dtype=complex).reshape(-1)
    return [v[k * dim:(k + 1) * dim] for k in range(2 * rep.genus)]


def crossed_value(rep: SurfaceRepresentation, c: np.ndarray, w: Word) -> np.ndarray:
    """Value of the crossed homomorphism with generator values ``c`` on ``w``."""
    parts = _split(rep, c)
    out = np.zeros(rep.lie.dim, dtype=complex)
    prefix: Word = ()
    for g, e in w:
        step = parts[g] if e > 0 else -rep.Ad(((g, 1),)).conj().T @ parts[g]
        out = out + rep.Ad(prefix) @ step
        prefix = prefix + ((g, e),)
    return out


def cup_pairing(rep: SurfaceRepresentation, a: np.ndarray, b: np.ndarray, form: np.ndarray | None = None) -> complex:
    """``<a cup b, [Sigma]>`` contracted with ``form`` (default: the normalized form).

    Evaluated on the 2-cycle ``sum_k [w_{k-1} | u_k] - sum [s | s^-1]`` of the
    bar complex, where ``u_k`` runs over the letters of the relator and the
    correction runs over its inverse letters.
    """
    lie = rep.lie
    m = lie.metric() * np.pi**lie.form.pi_power if form is None else form
    r = relator(rep.genus)
    total = 0j
    pa, pb = _split(rep, a), _split(rep, b)
    for k, (g, e) in enumerate(r):
        prefix = r[:k]
        av = crossed_value(rep, a, prefix)
        bv = crossed_value(rep, b, ((g, e),))
        total += av @ m @ (rep.Ad(prefix) @ bv)
        if e < 0:
            total += pa[g] @ m @ pb[g]
    return complex(total)


def omega(rep: SurfaceRepresentation, a: np.ndarray, b: np.ndarray) -> complex:
    """``omega(a, b) = -2 <a cup b, [Sigma]>``."""
    return -2 * cup_pairing(rep, a, b)


def poincare_pairing(rep: SurfaceRepresentation, a: np.ndarray, b: np.ndarray) -> complex:
    """``PD(a)(b) = 2 <a cup b, [Sigma]>``; equals ``-omega(a, b)``."""
    dim = 2 * rep.genus * rep.lie.dim
    if np.asarray(a).size != dim or np.asarray(b).size != dim:
        raise DimensionMismatch(f"classes must have {dim} coordinates")
    return 2 * cup_pairing(rep, a, b)


@dataclass(frozen=True)
class SymplecticPairing:
    matrix: np.ndarray  # omega(h_i, h_j)
    basis: np.ndarray  # cocycle lifts of the H^1 basis, as columns


def symplectic_form(rep: SurfaceRepresentation, h: CohomologyData | None = None) -> SymplecticPairing:
    c = twisted_complex(rep)
    h = h or cohomology(c)
    if h.dims[0] != 0:
        raise Degenerate("representation is reducible (H^0 != 0); omega is only defined here for H^0 = 0")
    lifts = np.asarray(h.lifts[1], dtype=complex)
    k = lifts.shape[1]
    om = np.zeros((k, k), dtype=complex)
    for i in range(k):
        for j in range(k):
            om[i, j] = omega(rep, lifts[:, i], lifts[:, j])
    scale = max(1e-300, np.max(np.abs(om)))
    if np.max(np.abs(om + om.T)) > 1e-8 * scale:
        raise Degenerate("omega is not antisymmetric")
    if k and np.linalg.matrix_rank(om, tol=1e-8 * scale) < k:
        raise Degenerate("omega is degenerate on H^1")
    return SymplecticPairing(om, lifts)


def pfaffian(a: np.ndarray) -> complex:
    """Pfaffian by skew-symmetric elimination with pivoting."""
    a = np.array(a, dtype=complex)
    n = a.shape[0]
    if n % 2:
        return 0j
    pf = 1 + 0j
    for k in range(0, n - 1, 2):
        kp = k + 1 + int(np.argmax(np.abs(a[k + 1:, k])))
        if kp != k + 1:
            a[[k + 1, kp]] = a[[kp, k + 1]]
            a[:, [k + 1, kp]] = a[:, [kp, k + 1]]
            pf = -pf
        if a[k + 1, k] == 0:
            return 0j
        pf *= a[k, k + 1]
        if k + 2 < n:
            tau = a[k, k + 2:] / a[k, k + 1]
            col = a[k + 2:, k + 1].copy()
            a[k + 2:, k + 2:] += np.outer(tau, col) - np.outer(col, tau)
    return pf


def symplectic_basis(om: np.ndarray) -> np.ndarray:
    """Columns ``a_1, b_1, a_2, b_2, ...`` with ``omega(a_i, b_j) = delta_ij``."""
    n = om.shape[0]
    vecs = [np.eye(n, dtype=complex)[:, i] for i in range(n)]
    out = []
    form = lambda u, v: u @ om @ v  # noqa: E731
    while vecs:
        best = None
        for i in range(len(vecs)):
            for j in range(i + 1, len(vecs)):
                val = abs(form(vecs[i], vecs[j]))
                if best is None or val > best[0]:
                    best = (val, i, j)
        if best is None or best[0] == 0:
            raise Degenerate("form is degenerate")
        _, i, j = best
        a, b = vecs[i], vecs[j]
        b = b / form(a, b)
        rest = [v for t, v in enumerate(vecs) if t not in (i, j)]
        # project the rest to the omega-orthogonal complement of span(a, b)
        rest = [v - form(v, b) * a + form(v, a) * b for v in rest]
        out += [a, b]
        vecs = rest
    return np.array(out).T


@dataclass(frozen=True)
class OmegaPropertyReport:
    theta_value: complex  # Theta(vol^-1)(vol^-1)
    vol: complex  # vol(e_1 ^ ... ^ e_2n)
    pfaffian: complex
    deviation: float


def omega_property(om: np.ndarray) -> OmegaPropertyReport:
    """``Theta(vol^-1)(vol^-1)`` for ``Theta(v)(w) = -omega(v, w)`` and ``vol = omega^d / d!``."""
    s = symplectic_basis(om)
    vol = 1 / np.linalg.det(s)
    theta = np.linalg.det(-om) / vol**2
    pf = pfaffian(om)
    return OmegaPropertyReport(complex(theta), complex(vol), complex(pf), float(abs(theta - 1)))


# automorphisms ---------------------------------------------------------------------


@dataclass(frozen=True)
class SurfaceAutomorphism:
    """Images of the generators and a conjugator ``g`` with ``rho(s) = g rho(phi(s)) g^-1``."""

    order: int
    substitution: tuple[Word, ...]
    conjugator: np.ndarray

    @staticmethod
    def identity(genus: int, n: int) -> "SurfaceAutomorphism":
        return SurfaceAutomorphism(1, tuple(((s, 1),) for s in range(2 * genus)), np.eye(n, dtype=complex))

    def apply(self, w: Word) -> Word:
        out: list[Letter] = []
        for g, e in w:
            img = self.substitution[g]
            out += list(img if e > 0 else inverse_word(img))
        return reduce_word(out)


def automorphism_chain_map(rep: SurfaceRepresentation, aut: SurfaceAutomorphism) -> ChainEndomorphism:
    """The chain map ``c -> Ad_g c(phi(.))`` induced by ``aut``."""
    ngen = 2 * rep.genus
    if len(aut.substitution) != ngen:
        raise IncompatibleTwisting(f"substitution must list {ngen} words")
    g = np.asarray(aut.conjugator, dtype=complex)
    ginv = np.linalg.inv(g)
    for s in range(ngen):
        lhs = rep.generators[s]
        rhs = g @ rep.evaluate(aut.substitution[s]) @ ginv
        if np.max(np.abs(lhs - rhs)) > 1e3 * rep.tol:
            raise IncompatibleTwisting(f"rho({generator_name(s)}) != g rho(phi({generator_name(s)})) g^-1")
    r = relator(rep.genus)
    conj = _cyclic_conjugator(aut.apply(r), r)
    if conj is None:
        raise IncompatibleTwisting("phi(r) is not conjugate to r or r^-1")
    u, eps = conj
    lie = rep.lie
    adg = lie.Ad(g)
    dim = lie.dim
    f0 = adg
    f1 = np.zeros((ngen * dim, ngen * dim), dtype=complex)
    for j in range(ngen):
        for k in range(ngen):
            block = adg @ rep.group_ring(fox_derivative(aut.substitution[j], k))
            f1[j * dim:(j + 1) * dim, k * dim:(k + 1) * dim] = block
    f2 = eps * adg @ rep.Ad(u)
    c = twisted_complex(rep)
    return ChainEndomorphism(c, (la.cplx(f0), la.cplx(f1), la.cplx(f2)), aut.order)


def induced_on_h1(f: ChainEndomorphism, h: CohomologyData | None = None) -> np.ndarray:
    h = h or cohomology(f.base)
    return np.asarray(class_coordinates(f.base, h, 1, f.maps[1] @ h.lifts[1]), dtype=complex)


def fixed_symplectic_form(om: np.ndarray, f1: np.ndarray, tol: float = 1e-8) -> np.ndarray:
    """``omega`` restricted to ``ker(1 - f)``; raises :class:`Degenerate` if it is degenerate there."""
    n = om.shape[0]
    u, sv, vh = np.linalg.svd(np.eye(n) - f1)
    null = vh[sv <= tol * max(1.0, sv[0] if sv.size else 1.0)].conj().T if sv.size else np.eye(n)
    restricted = null.T @ om @ null
    if restricted.size and np.linalg.matrix_rank(restricted, tol=tol * np.max(np.abs(om))) < restricted.shape[0]:
        raise Degenerate("omega restricted to the fixed space is degenerate")
    return restricted


# fixtures --------------------------------------------------------------------------

QI = np.array([[1j, 0], [0, -1j]])
QJ = np.array([[0, 1], [-1, 0]], dtype=complex)
QK = QI @ QJ


def su2_exp(v: Sequence[float]) -> np.ndarray:
    """``exp(v_1 i + v_2 j + v_3 k)`` for the quaternion units."""
    x = v[0] * QI + v[1] * QJ + v[2] * QK
    t = float(np.linalg.norm(v))
    if t == 0:
        return np.eye(2, dtype=complex)
    return np.cos(t) * np.eye(2) + np.sin(t) / t * x


def commutator_solution(c: np.ndarray, r: float = 0.6, phase: float = 0.4) -> tuple[np.ndarray, np.ndarray]:
    """``A, B`` in SU(2) with ``A B A^-1 B^-1 = c`` (``c != -1``)."""
    w, v = np.linalg.eig(c)
    order = np.argsort(np.angle(w))[::-1]
    w, v = w[order], v[:, order]
    q, _ = np.linalg.qr(v)
    phi = float(np.angle(q.conj().T @ c @ q)[0, 0])
    a = r * np.exp(1j * phi / 2)
    b = np.sqrt(1 - r * r) * np.exp(1j * phase)
    a_diag = np.array([[a, b], [-np.conj(b), np.conj(a)]])
    # find B with B A^-1 B^-1 = A^-1 C in the diagonal frame
    cd = q.conj().T @ c @ q
    target = np.linalg.inv(a_diag) @ cd
    source = np.linalg.inv(a_diag)
    ws, ps = np.linalg.eig(source)
    wt, pt = np.linalg.eig(target)
    ps = ps[:, np.argsort(np.angle(ws))]
    pt = pt[:, np.argsort(np.angle(wt))]
    ps, _ = np.linalg.qr(ps)
    pt, _ = np.linalg.qr(pt)
    bd = pt @ ps.conj().T
    bd = bd / np.sqrt(np.linalg.det(bd))
    return q @ a_diag @ q.conj().T, q @ bd @ q.conj().T


def quaternion_genus2() -> SurfaceRepresentation:
    """Irreducible SU(2) representation: ``x_1, x_2 -> i`` and ``y_1, y_2 -> j``."""
    return SurfaceRepresentation(2, "su2", (QI, QJ, QI, QJ))


def trivial_rep(genus: int, group: str = "su2") -> SurfaceRepresentation:
    n = lie_data(group).n
    return SurfaceRepresentation(genus, group, tuple(np.eye(n, dtype=complex) for _ in range(2 * genus)))


def central_rep(genus: int) -> SurfaceRepresentation:
    """Abelian SU(2) representation through a maximal torus (reducible)."""
    gens = tuple(su2_exp([0.3 * (k + 1), 0, 0]) for k in range(2 * genus))
    return SurfaceRepresentation(genus, "su2", gens)


def handle_swap(genus: int = 2) -> SurfaceAutomorphism:
    """``x_1 <-> x_2``, ``y_1 <-> y_2`` (other handles fixed), with ``g = 1``."""
    subs = [((s, 1),) for s in range(2 * genus)]
    subs[0], subs[2] = ((2, 1),), ((0, 1),)
    subs[1], subs[3] = ((3, 1),), ((1, 1),)
    return SurfaceAutomorphism(2, tuple(subs), np.eye(2, dtype=complex))


def generic_swap_fixture(t: float = 0.7, r: float = 0.6, phase: float = 0.4):
    """A less symmetric genus-2 SU(2) representation with a handle swap.

    ``g`` is the quaternion ``i``; ``[A_1, B_1] = exp(t j)`` and the second
    handle is the ``g``-conjugate of the first.
    """
    c = su2_exp([0, t, 0])
    a1, b1 = commutator_solution(c, r, phase)
    g = QI
    a2, b2 = g @ a1 @ g.conj().T, g @ b1 @ g.conj().T
    rep = SurfaceRepresentation(2, "su2", (a1, b1, a2, b2))
    aut = SurfaceAutomorphism(4, handle_swap(2).substitution, g)
    return rep, aut


def handle_rotation(genus: int) -> tuple[Word, ...]:
    """``(x_i, y_i) -> (x_{i+1}, y_{i+1})`` cyclically."""
    subs = []
    for i in range(genus):
        nxt = (i + 1) % genus
        subs += [((2 * nxt, 1),), ((2 * nxt + 1, 1),)]
    return tuple(subs)


def rotation_genus3_fixture(r: float = 0.55, phase: float = 1.1):
    """Genus-3 SU(2) representation invariant under the order-3 handle rotation.

    ``g = exp(pi i / 3)`` so ``g^3 = -1`` is central, and ``[A_1, B_1] = g^2``
    commutes with ``g`` and has order 3.
    """
    g = su2_exp([np.pi / 3, 0, 0])
    ginv = g.conj().T
    a1, b1 = commutator_solution(g @ g, r, phase)
    a2, b2 = ginv @ a1 @ g, ginv @ b1 @ g
    a3, b3 = ginv @ a2 @ g, ginv @ b2 @ g
    rep = SurfaceRepresentation(3, "su2", (a1, b1, a2, b2, a3, b3))
    aut = SurfaceAutomorphism(3, handle_rotation(3), g)
    return rep, aut


def hyperelliptic_substitution(genus: int) -> tuple[Word, ...]:
    """``x_i -> y_i x_i^-1 y_i^-1``, ``y_i -> y_i x_i y_i^-1 x_i^-1 y_i^-1``; acts by -1 on ``H_1``."""
    subs = []
    for i in range(genus):
        x, y = 2 * i, 2 * i + 1
        subs.append(((y, 1), (x, -1), (y, -1)))
        subs.append(((y, 1), (x, 1), (y, -1), (x, -1), (y, -1)))
    return tuple(subs)


def hyperelliptic_fixture(genus: int = 2, group: str = "su2"):
    rep = trivial_rep(genus, group)
    aut = SurfaceAutomorphism(2, hyperelliptic_substitution(genus), np.eye(lie_data(group).n, dtype=complex))
    return rep, aut
