"""Compact Lie algebras su(n): bases, adjoint maps, normalized forms, Casimir.

The stored basis ``X_a = i lambda_a / sqrt(2)`` (generalized Gell-Mann
``lambda_a``) is orthonormal for ``-tr(XY)``, so ``ad`` and ``Ad`` are real
antisymmetric and real orthogonal matrices respectively.

The normalized invariant form is

    <X, Y>_g = -(1 / (16 pi^2 h)) tr(ad X ad Y),

positive definite on a compact algebra.  ``pi`` is kept symbolic: the
rational coefficient ``-1/(16 h)`` multiplies ``pi^-2``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np


class NotScalar(ValueError):
    pass


@dataclass(frozen=True)
class NormalizedForm:
    """``coefficient * pi^pi_power * tr(ad X ad Y)``."""

    coefficient: Fraction
    pi_power: int = -2

    def scale(self) -> float:
        return float(self.coefficient) * np.pi**self.pi_power

    def rational_part(self, tr_ad: float) -> float:
        """The value with the ``pi`` power stripped."""
        return float(self.coefficient) * tr_ad


@dataclass(frozen=True)
class LieData:
    name: str
    n: int
    dim: int
    rank: int
    dual_coxeter: int
    structure_constants: np.ndarray  # f[a, b, c]: [X_a, X_b] = sum_c f[a, b, c] X_c
    basis: tuple[np.ndarray, ...] | None = None  # defining representation, if any
    cartan: tuple[int, ...] = ()  # basis indices spanning a Cartan subalgebra
    highest_root: np.ndarray | None = None  # values of the highest root on the Cartan basis (times -i)

    @property
    def form(self) -> NormalizedForm:
        return NormalizedForm(Fraction(-1, 16 * self.dual_coxeter))

    def ad(self, x: np.ndarray) -> np.ndarray:
        """``ad x`` in the stored basis; ``x`` is a coefficient vector."""
        return np.einsum("a,abc->cb", np.asarray(x, dtype=float), self.structure_constants)

    def killing(self, x: np.ndarray, y: np.ndarray) -> float:
        return float(np.trace(self.ad(x) @ self.ad(y)))

    def inner(self, x: np.ndarray, y: np.ndarray) -> float:
        """``<x, y>_g`` including the ``pi^-2``."""
        return self.form.scale() * self.killing(x, y)

    def metric(self) -> np.ndarray:
        """Gram matrix of the normalized form with the ``pi`` power stripped."""
        k = np.einsum("abc,dcb->ad", self.structure_constants, self.structure_constants)
        return float(self.form.coefficient) * k

    def to_matrix(self, x: np.ndarray) -> np.ndarray:
        if self.basis is None:
            raise ValueError(f"{self.name} has no defining representation")
        return sum(c * b for c, b in zip(np.asarray(x, dtype=complex), self.basis))

    def coefficients(self, m: np.ndarray) -> np.ndarray:
        """Coordinates of an element of the defining representation."""
        if self.basis is None:
            raise ValueError(f"{self.name} has no defining representation")
        return np.array([-np.trace(b @ m) for b in self.basis])

    def Ad(self, g: np.ndarray) -> np.ndarray:
        """Adjoint action of a group element on the complexified algebra."""
        if self.basis is None:
            raise ValueError(f"{self.name} has no defining representation")
        ginv = np.linalg.inv(g)
        stack = np.array([g @ b @ ginv for b in self.basis])
        basis = np.array(self.basis)
        return -np.einsum("cij,bji->cb", basis, stack)


def _gell_mann(n: int) -> list[np.ndarray]:
    mats = []
    for j in range(n):
        for k in range(j + 1, n):
            s = np.zeros((n, n), dtype=complex)
            s[j, k] = s[k, j] = 1
            a = np.zeros((n, n), dtype=complex)
            a[j, k] = -1j
            a[k, j] = 1j
            mats += [s, a]
    for l in range(1, n):
        d = np.zeros((n, n), dtype=complex)
        for m in range(l):
            d[m, m] = 1
        d[l, l] = -l
        mats.append(d * np.sqrt(2.0 / (l * (l + 1))))
    return mats


@lru_cache(maxsize=None)
def su(n: int) -> LieData:
    """su(n) for ``n >= 2`` with an orthonormal basis for ``-tr(XY)``."""
    if n < 2:
        raise ValueError("su(n) needs n >= 2")
    basis = [1j * g / np.sqrt(2.0) for g in _gell_mann(n)]
    arr = np.array(basis)
    comm = np.einsum("aij,bjk->abik", arr, arr) - np.einsum("bij,ajk->abik", arr, arr)
    f = -np.einsum("cij,abji->abc", arr, comm).real
    dim = n * n - 1
    cartan = tuple(range(n * (n - 1), dim))
    # X_theta = i diag(1, 0, ..., -1); theta(H) for H in the Cartan basis is -i * (H_11 - H_nn)
    theta = np.array([(-1j * (arr[c][0, 0] - arr[c][n - 1, n - 1])).real for c in cartan])
    return LieData(f"su({n})", n, dim, n - 1, n, f, tuple(basis), cartan, theta)


def lie_data(name: str) -> LieData:
    key = name.lower().replace("(", "").replace(")", "")
    if key.startswith("su") and key[2:].isdigit():
        return su(int(key[2:]))
    raise ValueError(f"unknown Lie algebra {name!r}")


def adjoint_matrix(l: LieData, x: np.ndarray) -> np.ndarray:
    return l.ad(x)


def random_element(l: LieData, rng: np.random.Generator) -> np.ndarray:
    return rng.standard_normal(l.dim)


def dual_coxeter_identity_check(n: int, trials: int = 100, seed: int = 0) -> dict:
    """Compare ``tr(ad X ad Y)`` with ``2n tr(XY)`` for random ``X, Y`` in su(n)."""
    l = su(n)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        x, y = random_element(l, rng), random_element(l, rng)
        lhs = l.killing(x, y)
        rhs = 2 * n * np.trace(l.to_matrix(x) @ l.to_matrix(y)).real
        scale = max(1.0, np.linalg.norm(x) * np.linalg.norm(y))
        worst = max(worst, abs(lhs - rhs) / scale)
    return {"n": n, "trials": trials, "max_deviation": worst}


@dataclass(frozen=True)
class CasimirReport:
    value: float
    raw_scalar: float
    off_scalar: float
    theta_norm: float
    dual_coxeter: int
    consistent: bool


def casimir_eigenvalue(l: LieData, scale: float = 1.0, tol: float = 1e-10) -> CasimirReport:
    """Casimir of the adjoint representation for the form ``scale * (-tr XY)``.

    ``sum_a ad(X_a) ad(X^a)`` is a negative multiple of the identity on a
    compact algebra; the reported value is its negative, so su(2) with
    ``-tr(XY)`` gives 4.  The result is cross-checked against
    ``<theta, theta> h``.
    """
    g = scale * _minus_trace_metric(l)
    ginv = np.linalg.inv(g)
    ads = np.array([l.ad(e) for e in np.eye(l.dim)])
    total = np.einsum("ab,aij,bjk->ik", ginv, ads, ads)
    raw = float(np.trace(total) / l.dim)
    off = float(np.linalg.norm(total - raw * np.eye(l.dim), 2))
    if off > tol * max(1.0, abs(raw)):
        raise NotScalar(f"Casimir deviates from a scalar by {off}")
    theta = theta_norm(l, g)
    value = -raw
    return CasimirReport(value, raw, off, theta, l.dual_coxeter, abs(value - theta * l.dual_coxeter) <= tol * max(1.0, value))


def _minus_trace_metric(l: LieData) -> np.ndarray:
    if l.basis is None:
        # -tr(XY) on su(n) is -tr(ad X ad Y) / (2h)
        k = np.einsum("abc,dcb->ad", l.structure_constants, l.structure_constants)
        return -k / (2 * l.dual_coxeter)
    arr = np.array(l.basis)
    return -np.einsum("aij,bji->ab", arr, arr).real


def theta_norm(l: LieData, metric: np.ndarray | None = None) -> float:
    """``<theta, theta>`` for the highest root, using the inverse of ``metric`` on the Cartan."""
    g = _minus_trace_metric(l) if metric is None else metric
    idx = list(l.cartan)
    gc = g[np.ix_(idx, idx)]
    t = l.highest_root
    return float(t @ np.linalg.solve(gc, t))


def ad_invariance_deviation(l: LieData, rng: np.random.Generator, trials: int = 20) -> float:
    """``max |<[Z,X],Y> + <X,[Z,Y]>|`` (with the ``pi`` power stripped)."""
    m = l.metric()
    worst = 0.0
    for _ in range(trials):
        x, y, z = (random_element(l, rng) for _ in range(3))
        adz = l.ad(z)
        worst = max(worst, abs((adz @ x) @ m @ y + x @ m @ (adz @ y)))
    return worst


def chern_class_relation_check(n: int, trials: int = 20, seed: int = 0) -> dict:
    """Check ``<ad X, ad Y>_{su(N)} = 2h <X, Y>_{su(n)}`` with ``N = dim su(n)``.

    The left side applies the normalization of su(N) to the images of ``X``
    and ``Y`` under ``ad``, with its own adjoint trace computed on gl(N).
    """
    l = su(n)
    big = l.dim
    rng = np.random.default_rng(seed)
    ident = np.eye(big)
    worst = 0.0
    for _ in range(trials):
        x, y = random_element(l, rng), random_element(l, rng)
        a, b = l.ad(x), l.ad(y)
        ka = np.kron(a, ident) - np.kron(ident, a.T)
        kb = np.kron(b, ident) - np.kron(ident, b.T)
        lhs = float(Fraction(-1, 16 * big)) * np.trace(ka @ kb)
        rhs = 2 * l.dual_coxeter * float(l.form.coefficient) * l.killing(x, y)
        worst = max(worst, abs(lhs - rhs) / max(1.0, abs(rhs)))
    return {"n": n, "trials": trials, "max_deviation": worst}
