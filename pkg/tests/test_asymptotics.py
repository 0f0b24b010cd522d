import cmath
from dataclasses import replace
from fractions import Fraction as F

import pytest

from torsion_tori import asymptotics as asy
from torsion_tori import random_fixtures as rf


def point(rho=F(0), **kw):
    base = dict(group="su2", cs_value=0, d_c=0, samples=(asy.Sample(1.0, (), rho),), center_order=2, b1=1, dim_h0=0, dim_h1=0)
    base.update(kw)
    return asy.ComponentSummary(**base)


def test_isolated_point():
    t = asy.leading_term_rho([point()])
    assert len(t.terms) == 1
    assert abs(t.terms[0].amplitude - 0.5) < 1e-15
    assert t.terms[0].exponent == 0


def test_cancelling_pair():
    c = point(samples=(asy.Sample(1.0, (), F(2)), asy.Sample(1.0, (), F(-2) % 8)))
    assert abs(asy.leading_term_rho([c]).terms[0].amplitude) < 1e-15


def test_constant_phase_component():
    samples = tuple(asy.Sample(w, (F(1, 2),)) for w in (0.5, 1.5))
    c = point(samples=samples, d_c=1, dim_h1=2)
    rho = c.rho(samples[0])
    amp = asy.leading_term_rho([c]).terms[0].amplitude
    expected = (0.5 + 1.5) / 2 * cmath.exp(2j * cmath.pi * float(rho) / 8) / 2
    assert abs(amp - expected) < 1e-14


def test_forms_agree_on_trivial_summary():
    c = point()
    for k in (0, 1, 10):
        assert abs(asy.leading_term_rho([c]).value(k) - asy.leading_term_sf([c]).value(k)) < 1e-12


def test_forms_agree_on_random_summaries(rng):
    for _ in range(30):
        c = rf.random_component_summary(rng)
        a, b = asy.leading_term_rho([c]), asy.leading_term_sf([c])
        assert not b.flags
        for k in (10, 100, 1000):
            assert abs(a.value(k) - b.value(k)) <= 1e-10 * max(1.0, abs(a.value(k)))


def test_k_zero_returns_sum_of_amplitudes(rng):
    cs = [point(), point(rho=F(4))]
    t = asy.leading_term_rho(cs)
    assert abs(t.value(0) - sum(x.amplitude for x in t.terms)) < 1e-15


def test_cs_lift_invariance(rng):
    c = rf.random_component_summary(rng)
    for form in (asy.leading_term_rho, asy.leading_term_sf):
        assert abs(form([c]).value(7) - form([c.shift_cs(3)]).value(7)) < 1e-10 * max(1, abs(form([c]).value(7)))


def test_linearity(rng):
    a, b = rf.random_component_summary(rng), rf.random_component_summary(rng)
    t = asy.leading_term_rho([a, b])
    assert abs(t.value(9) - asy.leading_term_rho([a]).value(9) - asy.leading_term_rho([b]).value(9)) < 1e-9


def test_errors():
    with pytest.raises(asy.EmptyComponent):
        asy.leading_term_rho([point(samples=())])
    with pytest.raises(asy.MissingSFFields):
        asy.leading_term_sf([point(b1=None)])
    with pytest.raises(asy.ReducibleComponent):
        asy.leading_term_rho([point(irreducible=False)])
    with pytest.raises(asy.InvalidComponent):
        point(d_c=F(1, 3))
    with pytest.raises(asy.InvalidComponent):
        asy.Sample(-1.0, ())


def test_identification_without_h10_phases_has_no_gap():
    c = point(samples=(asy.Sample(1.0, (F(1, 3),)),), center_order=1)
    r = asy.identification_check(c, 100)
    assert r.gap < 1e-12 and r.ratio is None


def test_cover_doubles_the_sum():
    c = point(samples=(asy.Sample(1.0, (F(1, 3),)),))
    base = asy._rho_amplitude(replace(c, center_order=1))
    cover = asy._rho_amplitude(replace(asy.cover_from_base(c), center_order=1))
    assert abs(cover - c.center_order * base) < 1e-14


def test_identification_decays_when_framing_identity_holds():
    c = asy.ComponentSummary("su3", F(1, 7), 1, (asy.Sample(1.3, (F(1, 3), F(2, 3))),), (F(1, 3),), None, 1, 0, 2)
    r = asy.identification_check(c, 100)
    assert r.framing_identity_holds
    assert abs(r.ratio - 2) < 0.1


def test_identification_stalls_when_framing_identity_fails():
    c = asy.ComponentSummary("su2", F(1, 5), 1, (asy.Sample(0.8, (F(1, 3),)),), (F(1, 3),), None, 1, 0, 2)
    r = asy.identification_check(c, 100)
    assert not r.framing_identity_holds
    assert abs(r.ratio - 1) < 0.05
