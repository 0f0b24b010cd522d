from fractions import Fraction as F

import numpy as np
import pytest

from torsion_tori import linalg as la
from torsion_tori.cochain import _random_invertible

EXACT = np.empty(0, dtype=object)


def test_rank_kernel_image_identity():
    r = la.rank_kernel_image(la.eye_exact(2))
    assert r.rank == 2
    assert r.kernel.shape == (2, 0)
    assert (r.image == la.eye_exact(2)).all()


def test_rank_kernel_image_zero():
    r = la.rank_kernel_image(la.zeros_exact(2, 2))
    assert r.rank == 0
    assert (r.kernel == la.eye_exact(2)).all()


def test_rank_of_dependent_rows():
    m = la.exact([[1, 2], [2, 4]])
    r = la.rank_kernel_image(m)
    assert r.rank == 1
    assert (m @ r.kernel == 0).all()


def test_rank_plus_nullity_complex(rng):
    a = rng.standard_normal((4, 2)) @ rng.standard_normal((2, 5))
    r = la.rank_kernel_image(la.cplx(a))
    assert r.rank == 2
    assert r.rank + r.kernel.shape[1] == 5


def test_empty_matrix_has_rank_zero():
    assert la.rank_kernel_image(la.zeros_exact(0, 3)).rank == 0


@pytest.mark.parametrize(
    "rows, expected",
    [([[1, 0], [0, 1]], 1), ([[2, 0], [0, 3]], 6), ([[0, 1], [1, 0]], -1)],
)
def test_det_examples(rows, expected):
    assert la.det(la.exact(rows)) == expected


def test_det_non_square():
    with pytest.raises(la.NonSquare):
        la.det(la.zeros_exact(2, 3))


def test_det_multiplicative_exactly(rng):
    for _ in range(30):
        n = int(rng.integers(1, 7))
        a = _random_invertible(rng, n, EXACT)
        b = _random_invertible(rng, n, EXACT)
        assert la.det(a @ b) == la.det(a) * la.det(b)


def test_exact_results_are_fractions():
    d = la.det(la.exact([[F(1, 3), 1], [2, 5]]))
    assert isinstance(d, F) and d == F(-1, 3)


def test_solve_and_inconsistent():
    a = la.exact([[1, 1], [2, 2]])
    x = la.solve(a, la.exact([[2], [4]]))
    assert (a @ x == la.exact([[2], [4]])).all()
    with pytest.raises(la.Inconsistent):
        la.solve(a, la.exact([[1], [0]]))


def test_inverse_roundtrip(rng):
    a = _random_invertible(rng, 4, EXACT)
    assert (a @ la.inverse(a) == la.eye_exact(4)).all()


def test_eigenphases_identity():
    assert la.eigenphases_finite_order(la.eye_exact(3), 1).phases == [0, 0, 0]


def test_eigenphases_minus_identity():
    assert la.eigenphases_finite_order(-la.eye_exact(2), 2).phases == [F(1, 2), F(1, 2)]


def test_eigenphases_rotation_order_three():
    r = la.exact([[0, -1], [1, -1]])
    assert la.eigenphases_finite_order(r, 3).phases == [F(1, 3), F(2, 3)]


def test_not_finite_order():
    with pytest.raises(la.NotFiniteOrder):
        la.eigenphases_finite_order(la.exact([[1, 1], [0, 1]]), 3)


def test_eigenphases_stable_under_conjugation(rng):
    c, s = np.cos(2 * np.pi / 5), np.sin(2 * np.pi / 5)
    m = np.eye(4, dtype=complex)
    m[:2, :2] = [[c, -s], [s, c]]
    m[3, 3] = -1
    base = la.eigenphases_finite_order(la.cplx(m), 10).phases
    for _ in range(5):
        q, _ = np.linalg.qr(rng.standard_normal((4, 4)))
        assert la.eigenphases_finite_order(la.cplx(q @ m @ q.T), 10).phases == base


def test_allclose_tolerance_is_explicit():
    a = la.cplx([[1.0]])
    assert la.allclose(a, a + 1e-12, tol=1e-9)
    assert not la.allclose(a, a + 1e-6, tol=1e-9)
