import cmath
from fractions import Fraction as F

import pytest

from torsion_tori import random_fixtures as rf
from torsion_tori import spectral as sp


@pytest.mark.parametrize(
    "phases, expected", [([0, 0, 0], 0), ([F(1, 2), F(1, 2)], 1), ([F(1, 3), F(2, 3)], 1)]
)
def test_tr_log(phases, expected):
    assert sp.tr_log(phases) == expected


def test_phase_out_of_range():
    with pytest.raises(sp.PhaseOutOfRange):
        sp.tr_log([F(3, 2)])


def test_rho_of_identity_is_zero():
    r = sp.rho_finite_order(sp.EigenPhaseData((0, 0, 0), (0, 0), 3))
    assert r.rho == 0 and r.eta_a == 0 and r.eta_theta == 0


def test_rho_halves():
    r = sp.rho_finite_order(sp.EigenPhaseData((F(1, 2), F(1, 2)), (), 3, rk_n=2))
    assert r.eta_a == 0 and r.rho == 0


def test_eta_single_third():
    assert sp.rho_finite_order(sp.EigenPhaseData((F(1, 3),), (), 3)).eta_a == F(2, 3)


def test_rank_must_match_nonzero_phases():
    with pytest.raises(ValueError):
        sp.EigenPhaseData((F(1, 3), 0), (), 3, rk_n=2)


def test_rho_is_permutation_invariant_and_additive(rng):
    for _ in range(20):
        a = sp.EigenPhaseData(rf.random_phases(rng, 4, 6), rf.random_phases(rng, 2, 6), 8)
        b = sp.EigenPhaseData(rf.random_phases(rng, 3, 5), rf.random_phases(rng, 1, 5), 8)
        perm = sp.EigenPhaseData(a.phases_moduli[::-1], a.phases_h10[::-1], 8)
        assert sp.rho_finite_order(perm).rho == sp.rho_finite_order(a).rho
        total = sp.rho_finite_order(a + b).rho
        assert total == sp.rho_finite_order(a).rho + sp.rho_finite_order(b).rho


def test_framing_correction_examples():
    assert sp.framing_correction([0, 0], 5) == 1
    assert abs(sp.framing_correction([F(1, 4)], 2) - (-1)) < 1e-15


def test_framing_ignores_minus_half():
    assert sp.framing_exponent([F(-1, 2), F(1, 4)]) == F(1, 4)


def test_central_charge():
    assert sp.central_charge(2, 2, 3) == F(3, 2)


def test_framing_identity_holds_exactly_when_predicted(rng):
    for _ in range(200):
        dim_g = (3, 8, 15)[int(rng.integers(0, 3))]
        r = sp.framing_identity_check(rf.random_h10_phases(rng), dim_g)
        assert (r.deviation < 1e-10) == r.predicted_to_hold


def test_framing_identity_examples():
    assert sp.framing_identity_check([F(1, 3)], 8).deviation < 1e-12
    assert sp.framing_identity_check([F(1, 3), F(2, 3)], 3).deviation < 1e-12
    single = sp.framing_identity_check([F(1, 3)], 3)
    assert not single.predicted_to_hold
    # the exponents differ by 3/2, a quarter turn
    assert abs(single.deviation - 2**0.5) < 1e-12


@pytest.mark.parametrize("theta", [F(1, 2), F(1, 3), F(1, 4)])
def test_phase_identity(theta):
    r = sp.phase_identity_check(theta)
    assert r.deviation < 1e-12


def test_phase_identity_values():
    assert abs(sp.phase_identity_check(F(1, 2)).lhs - 0.5) < 1e-15
    assert abs(sp.phase_identity_check(F(1, 4)).lhs - (0.5 + 0.5j)) < 1e-15


def test_xi_is_one():
    with pytest.raises(sp.XiIsOne):
        sp.phase_identity_check(0)


def test_integrand_identity(rng):
    for _ in range(50):
        ps = rf.random_phases(rng, int(rng.integers(1, 6)), int(rng.integers(2, 10)), nonzero=True)
        assert sp.integrand_identity_check(ps).deviation < 1e-10


def test_spectral_flow_trivial_connection():
    r = sp.spectral_flow(0, 0, 2, 3, 2, 3, 6)
    assert r.value == 0 and r.integral


def test_spectral_flow_flags_non_integer():
    r = sp.spectral_flow(F(1, 4), F(2, 3), 2, 3, 1, 0, 0)
    assert r.value == F(-14, 3)
    assert not r.integral and r.flags


def test_spectral_flow_lift_shift():
    a = sp.spectral_flow(F(1, 4), 2, 2, 3, 1, 0, 0).value
    b = sp.spectral_flow(F(5, 4), 2, 2, 3, 1, 0, 0).value
    assert b - a == -8
