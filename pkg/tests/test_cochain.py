from fractions import Fraction as F

import numpy as np
import pytest

from torsion_tori import linalg as la
from torsion_tori import random_fixtures as rf
from torsion_tori.cochain import (
    CochainComplex,
    CohomologyData,
    NotAComplex,
    cohomology,
    cohomology_dims,
    direct_sum,
    torsion,
    torsion_choice_independence_check,
)
from torsion_tori.surface import quaternion_genus2, trivial_rep, twisted_complex


def line(d):
    return CochainComplex((1, 1), (la.exact([[d]]),))


def test_acyclic_line_has_no_cohomology():
    assert cohomology_dims(line(1)) == (0, 0)


def test_zero_differential_keeps_everything():
    assert cohomology_dims(line(0)) == (1, 1)


def test_trivial_genus2_complex_is_untwisted_per_direction():
    # three copies of the cellular complex of the genus-2 surface
    assert cohomology_dims(twisted_complex(trivial_rep(2))) == (3, 12, 3)


def test_not_a_complex():
    c = CochainComplex((1, 1, 1), (la.exact([[1]]), la.exact([[1]])))
    with pytest.raises(NotAComplex):
        c.check()


def test_torsion_times_two_is_half():
    assert torsion(line(2), cohomology(line(2))).value == F(1, 2)


def test_torsion_identity_differential_is_one():
    assert torsion(line(1), cohomology(line(1))).value == 1


def test_torsion_zero_differentials_with_cell_basis():
    c = CochainComplex((2, 1), (la.zeros_exact(1, 2),))
    h = CohomologyData((la.eye_exact(2), la.eye_exact(1)))
    assert torsion(c, h).value == 1


def test_choice_independence_exact(rng):
    for _ in range(10):
        c = rf.random_acyclic_complex(rng)
        assert torsion_choice_independence_check(c, cohomology(c), 10, 1)["max_deviation"] == 0


def test_choice_independence_surface():
    c = twisted_complex(quaternion_genus2())
    rep = torsion_choice_independence_check(c, cohomology(c), 10, 2)
    assert rep["max_deviation"] < 1e-8


def test_rescaling_a_cohomology_basis_scales_torsion(rng):
    c = CochainComplex((1, 1), (la.zeros_exact(1, 1),))
    h = cohomology(c)
    base = torsion(c, h).value
    assert torsion(c, h.transformed(0, la.exact([[3]]))).value == base * 3
    assert torsion(c, h.transformed(1, la.exact([[3]]))).value == base / 3


def test_direct_sum_multiplies(rng):
    a, b = rf.random_complex(rng), rf.random_complex(rng)
    s = direct_sum(a, b)
    ha, hb = cohomology(a), cohomology(b)
    lifts = []
    for j in range(s.top + 1):
        x = ha.lifts[j] if j <= a.top else la.zeros_exact(0, 0)
        y = hb.lifts[j] if j <= b.top else la.zeros_exact(0, 0)
        block = la.zeros_exact(x.shape[0] + y.shape[0], x.shape[1] + y.shape[1])
        block[: x.shape[0], : x.shape[1]] = x
        block[x.shape[0]:, x.shape[1]:] = y
        lifts.append(block)
    tau = torsion(s, CohomologyData(tuple(lifts))).value
    assert tau == torsion(a, ha).value * torsion(b, hb).value


def test_shift_and_negate_preserve_cohomology(rng):
    c = rf.random_complex(rng)
    assert cohomology_dims(c.shifted(1).negated()) == (0,) + cohomology_dims(c)
