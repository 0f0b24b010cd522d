import numpy as np
import pytest

from torsion_tori import lie


@pytest.mark.parametrize("n", [2, 3, 4])
def test_dual_coxeter_identity(n):
    assert lie.dual_coxeter_identity_check(n, 50, 1)["max_deviation"] < 1e-10


@pytest.mark.parametrize("n", [2, 3, 4])
def test_casimir_is_scalar_and_matches_theta(n):
    r = lie.casimir_eigenvalue(lie.su(n))
    assert r.off_scalar < 1e-10
    assert r.consistent
    assert abs(r.value - 2 * n) < 1e-10
    assert abs(r.theta_norm - 2) < 1e-10


@pytest.mark.parametrize("n", [2, 3])
def test_chern_class_relation(n):
    assert lie.chern_class_relation_check(n, 5, 0)["max_deviation"] < 1e-10


def test_form_is_invariant_and_positive(rng):
    l = lie.su(3)
    assert lie.ad_invariance_deviation(l, rng) < 1e-12
    assert np.all(np.linalg.eigvalsh(l.metric()) > 0)


def test_dimensions_and_names():
    l = lie.lie_data("SU(3)")
    assert (l.dim, l.rank, l.dual_coxeter) == (8, 2, 3)
    with pytest.raises(ValueError):
        lie.lie_data("g2")


def test_adjoint_of_group_element_is_orthogonal(rng):
    l = lie.su(2)
    x = l.to_matrix(rng.standard_normal(3))
    w, v = np.linalg.eigh(-1j * x)
    g = v @ np.diag(np.exp(1j * w)) @ v.conj().T
    a = l.Ad(g)
    assert np.allclose(a.imag, 0, atol=1e-12)
    assert np.allclose(a.real @ a.real.T, np.eye(3), atol=1e-12)
