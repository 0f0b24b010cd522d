"""Dense linear algebra over two scalar backends.

Exact matrices are numpy object arrays of :class:`fractions.Fraction`;
complex matrices are ``np.clongdouble`` arrays (64-bit mantissa per part on
x86-64).  A matrix never mixes the two.  All routines are pure and use a
fixed pivot rule so results are reproducible bit for bit:

* exact: first nonzero entry in the pivot column,
* complex: largest modulus in the pivot column (partial pivoting).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

import numpy as np

DEFAULT_TOL = 1e-9

COMPLEX_DTYPE = np.clongdouble
REAL_DTYPE = np.longdouble


class LinAlgError(ValueError):
    pass


class NonSquare(LinAlgError):
    pass


class NotFiniteOrder(LinAlgError):
    pass


class PhaseOffGrid(LinAlgError):
    pass


class Inconsistent(LinAlgError):
    """Raised when a linear system has no solution."""


def _to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, float) and x.is_integer():
        return Fraction(int(x))
    raise TypeError(f"cannot convert {x!r} to an exact rational")


def exact(rows, shape: tuple[int, int] | None = None) -> np.ndarray:
    """Build an exact rational matrix (or vector) from nested numbers."""
    arr = np.asarray(rows, dtype=object)
    if arr.size == 0:
        return np.empty(shape if shape is not None else arr.shape, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    for idx, val in np.ndenumerate(arr):
        out[idx] = _to_fraction(val)
    return out


def cplx(rows, shape: tuple[int, int] | None = None) -> np.ndarray:
    arr = np.asarray(rows)
    if arr.size == 0:
        return np.empty(shape if shape is not None else arr.shape, dtype=COMPLEX_DTYPE)
    if arr.dtype == object:
        arr = np.vectorize(complex, otypes=[complex])(arr)
    return arr.astype(COMPLEX_DTYPE)


def is_exact(m: np.ndarray) -> bool:
    return m.dtype == object


def zeros(rows: int, cols: int, like: np.ndarray) -> np.ndarray:
    if is_exact(like):
        out = np.empty((rows, cols), dtype=object)
        out.fill(Fraction(0))
        return out
    return np.zeros((rows, cols), dtype=COMPLEX_DTYPE)


def eye(n: int, like: np.ndarray) -> np.ndarray:
    out = zeros(n, n, like)
    for i in range(n):
        out[i, i] = Fraction(1) if is_exact(like) else 1
    return out


def zeros_exact(rows: int, cols: int) -> np.ndarray:
    return zeros(rows, cols, np.empty(0, dtype=object))


def eye_exact(n: int) -> np.ndarray:
    return eye(n, np.empty(0, dtype=object))


def to_complex(m: np.ndarray) -> np.ndarray:
    if not is_exact(m):
        return m.astype(COMPLEX_DTYPE)
    out = np.empty(m.shape, dtype=COMPLEX_DTYPE)
    for idx, val in np.ndenumerate(m):
        out[idx] = REAL_DTYPE(val.numerator) / REAL_DTYPE(val.denominator)
    return out


def _scale(m: np.ndarray) -> float:
    """Magnitude the tolerance is relative to: the largest entry, but at least 1.

    The floor keeps matrices made only of rounding noise (such as
    ``Ad(1) - 1``) from being treated as full rank.
    """
    if m.size == 0:
        return 1.0
    return max(1.0, float(np.max(np.abs(m))))


def _is_zero(x, threshold: float) -> bool:
    if isinstance(x, Fraction):
        return x == 0
    return abs(x) <= threshold


def abs_value(x):
    """|x| as an exact Fraction for rationals, a longdouble otherwise."""
    if isinstance(x, Fraction):
        return abs(x)
    return REAL_DTYPE(abs(x))


class RankKernelImage(NamedTuple):
    rank: int
    kernel: np.ndarray
    image: np.ndarray
    pivots: tuple[int, ...]


def _rref(m: np.ndarray, tol: float) -> tuple[np.ndarray, list[int]]:
    return _rref_columns(m, m.shape[1], tol, _scale(m))


def rank_kernel_image(m: np.ndarray, tol: float = DEFAULT_TOL) -> RankKernelImage:
    """Rank, kernel basis and column-space basis of ``m``.

    Kernel and image bases are returned as matrices whose *columns* are the
    basis vectors.  The image basis consists of the pivot columns of ``m``
    itself, which is what the torsion code uses to pick ``s^j``.
    """
    rows, cols = m.shape
    if rows == 0 or cols == 0:
        kernel = eye(cols, m) if cols else zeros(0, 0, m)
        return RankKernelImage(0, kernel, zeros(rows, 0, m), ())
    r, pivots = _rref(m, tol)
    free = [c for c in range(cols) if c not in pivots]
    kernel = zeros(cols, len(free), m)
    one = Fraction(1) if is_exact(m) else 1
    for k, fc in enumerate(free):
        kernel[fc, k] = one
        for i, pc in enumerate(pivots):
            kernel[pc, k] = -r[i, fc]
    image = m[:, pivots] if pivots else zeros(rows, 0, m)
    return RankKernelImage(len(pivots), kernel, image, tuple(pivots))


def rank(m: np.ndarray, tol: float = DEFAULT_TOL, scale: float | None = None) -> int:
    """Rank of ``m``; ``scale`` overrides the entry scale the tolerance is relative to."""
    if m.size == 0:
        return 0
    return len(_rref_columns(m, m.shape[1], tol, _scale(m) if scale is None else scale)[1])


def det(m: np.ndarray, tol: float = DEFAULT_TOL):
    """Determinant by Gaussian elimination with the backend's pivot rule."""
    n, k = m.shape
    if n != k:
        raise NonSquare(f"det of a {n}x{k} matrix")
    exact_mode = is_exact(m)
    if n == 0:
        return Fraction(1) if exact_mode else COMPLEX_DTYPE(1)
    a = m.copy()
    result = Fraction(1) if exact_mode else COMPLEX_DTYPE(1)
    for c in range(n):
        if exact_mode:
            p = next((i for i in range(c, n) if a[i, c] != 0), None)
            if p is None:
                return Fraction(0)
        else:
            p = c + int(np.argmax(np.abs(a[c:, c])))
            if a[p, c] == 0:
                return COMPLEX_DTYPE(0)
        if p != c:
            a[[c, p]] = a[[p, c]]
            result = -result
        piv = a[c, c]
        result = result * piv
        below = a[c + 1:, c] / piv
        a[c + 1:, c:] = a[c + 1:, c:] - np.outer(below, a[c, c:])
    return result


def solve(a: np.ndarray, b: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """One solution ``x`` of ``a @ x = b`` (free variables set to zero).

    ``b`` may be a vector or a matrix of right-hand sides.  Raises
    :class:`Inconsistent` when no solution exists.
    """
    vec = b.ndim == 1
    bb = b.reshape(-1, 1) if vec else b
    rows, cols = a.shape
    nrhs = bb.shape[1]
    if cols == 0:
        residual = bb
        x = zeros(0, nrhs, a)
    else:
        aug = np.concatenate([a, bb], axis=1)
        r, pivots = _rref_columns(aug, cols, tol, scale=_scale(a))
        x = zeros(cols, nrhs, a)
        for i, pc in enumerate(pivots):
            x[pc] = r[i, cols:]
        residual = bb - a @ x
    thresh = 0.0 if is_exact(a) else 1e3 * tol * max(_scale(a), _scale(bb))
    if residual.size and not all(_is_zero(v, thresh) for v in residual.flat):
        raise Inconsistent("linear system has no solution")
    return x[:, 0] if vec else x


def _rref_columns(aug: np.ndarray, ncols: int, tol: float, scale: float):
    """RREF that only pivots on the first ``ncols`` columns."""
    a = aug.copy()
    rows = a.shape[0]
    exact_mode = is_exact(a)
    threshold = 0.0 if exact_mode else tol * scale
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r >= rows:
            break
        if exact_mode:
            p = next((i for i in range(r, rows) if a[i, c] != 0), None)
        else:
            col = np.abs(a[r:, c])
            i = int(np.argmax(col))
            p = r + i if col[i] > threshold else None
        if p is None:
            continue
        if p != r:
            a[[r, p]] = a[[p, r]]
        a[r] = a[r] / a[r, c]
        for i in range(rows):
            if i != r and not _is_zero(a[i, c], 0.0):
                a[i] = a[i] - a[i, c] * a[r]
        pivots.append(c)
        r += 1
    return a, pivots


def inverse(m: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    n, k = m.shape
    if n != k:
        raise NonSquare(f"inverse of a {n}x{k} matrix")
    return solve(m, eye(n, m), tol)


def extend_to_basis(vectors: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Standard basis vectors completing the columns of ``vectors`` to a basis.

    Returns the added vectors as columns; the first pivot-free standard
    vectors are taken, in index order.
    """
    n = vectors.shape[0]
    stacked = np.concatenate([vectors, eye(n, vectors)], axis=1)
    info = rank_kernel_image(stacked, tol)
    k = vectors.shape[1]
    extra = [p - k for p in info.pivots if p >= k]
    if info.rank - len(extra) != k:
        raise LinAlgError("input vectors are linearly dependent")
    return eye(n, vectors)[:, extra] if extra else zeros(n, 0, vectors)


def matrix_power(m: np.ndarray, p: int) -> np.ndarray:
    out = eye(m.shape[0], m)
    for _ in range(p):
        out = out @ m
    return out


def allclose(a: np.ndarray, b: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    """Exact equality for rationals, relative ``tol`` for complex entries."""
    if a.shape != b.shape:
        return False
    if is_exact(a) and is_exact(b):
        return bool(np.all(a == b))
    aa, bb = to_complex(a), to_complex(b)
    scale = max(_scale(aa), _scale(bb))
    return bool(np.max(np.abs(aa - bb), initial=0.0) <= tol * scale)


@dataclass(frozen=True)
class EigenPhases:
    """Multiset of phases ``θ = j/order`` of a finite-order linear map."""

    order: int
    multiplicities: tuple[int, ...]

    @property
    def phases(self) -> list[Fraction]:
        out: list[Fraction] = []
        for j, mult in enumerate(self.multiplicities):
            out.extend([Fraction(j, self.order)] * mult)
        return out

    @property
    def dim(self) -> int:
        return sum(self.multiplicities)


def eigenphases_finite_order(m: np.ndarray, order: int, tol: float = DEFAULT_TOL) -> EigenPhases:
    """Phases of a finite-order matrix, snapped to the grid ``j/order``.

    Multiplicities come from the ranks of the spectral projectors
    ``P_j = (1/m) Σ_k ξ^{-jk} M^k`` (no eigensolver involved); each resulting
    phase is then matched against ``numpy.linalg.eigvals`` as a cross-check.
    """
    n, k = m.shape
    if n != k:
        raise NonSquare("eigenphases need a square matrix")
    if order < 1:
        raise ValueError("order must be positive")
    mc = to_complex(m)
    if n == 0:
        return EigenPhases(order, (0,) * order)
    ident = np.eye(n, dtype=COMPLEX_DTYPE)
    powers = [ident]
    for _ in range(order):
        powers.append(powers[-1] @ mc)
    if np.max(np.abs(powers[order] - ident)) > tol * max(1.0, _scale(mc)) ** order:
        raise NotFiniteOrder(f"matrix does not satisfy M^{order} = I within tol {tol}")
    two_pi = 2 * np.pi * REAL_DTYPE(1)
    pscale = max(_scale(p) for p in powers)
    mults = []
    for j in range(order):
        proj = np.zeros((n, n), dtype=COMPLEX_DTYPE)
        for kk in range(order):
            angle = -two_pi * REAL_DTYPE(j * kk % order) / order
            proj += (np.cos(angle) + 1j * np.sin(angle)) * powers[kk]
        proj /= order
        # projectors of M are bounded by the scale of its powers
        mults.append(rank(proj, tol=max(tol, 1e-12), scale=pscale))
    if sum(mults) != n:
        raise PhaseOffGrid(f"projector ranks {mults} do not sum to dimension {n}")
    eig = np.linalg.eigvals(mc.astype(np.complex128))
    for j, mult in enumerate(mults):
        if not mult:
            continue
        target = np.exp(2j * np.pi * j / order)
        close = np.sum(np.abs(eig - target) <= max(1e-6, 1e3 * tol))
        if close < mult:
            raise PhaseOffGrid(f"phase {j}/{order} not matched by an eigenvalue")
    return EigenPhases(order, tuple(mults))


def phases_from_list(phases: Iterable[Fraction]) -> list[Fraction]:
    out = []
    for p in phases:
        q = _to_fraction(p) if not isinstance(p, Fraction) else p
        if not 0 <= q < 1:
            raise ValueError(f"phase {q} outside [0, 1)")
        out.append(q)
    return out


def hstack(blocks: Sequence[np.ndarray], rows: int, like: np.ndarray) -> np.ndarray:
    blocks = [b for b in blocks if b.shape[1]]
    if not blocks:
        return zeros(rows, 0, like)
    return np.concatenate(blocks, axis=1)


def fraction_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"
