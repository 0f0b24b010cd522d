import json
from fractions import Fraction as F

import numpy as np
import pytest

from torsion_tori import random_fixtures as rf
from torsion_tori import serialize as ser
from torsion_tori import surface as sf
from torsion_tori.cochain import cohomology, torsion
from torsion_tori.mapping_torus import ChainEndomorphism, oracle_triangle
from torsion_tori.spectral import EigenPhaseData


def roundtrip(doc):
    return json.loads(json.dumps(doc))


def test_exact_matrix_format():
    from torsion_tori import linalg as la

    d = ser.matrix_to_json(la.exact([[F(1, 2), 0], [3, -1]]))
    assert d == {"rows": 2, "cols": 2, "entries": ["1/2", "0", "3", "-1"]}
    assert (ser.matrix_from_json(d) == la.exact([[F(1, 2), 0], [3, -1]])).all()


def test_complex_matrix_format():
    d = ser.matrix_to_json(np.array([[1 + 2j]]))
    assert d["entries"] == [[1.0, 2.0]]


def test_malformed_matrix():
    with pytest.raises(ser.SchemaError):
        ser.matrix_from_json({"rows": 2, "cols": 2, "entries": ["1"]})


def test_complex_roundtrip(rng):
    c = rf.random_complex(rng)
    back = ser.complex_from_json(roundtrip(ser.complex_to_json(c)))
    assert torsion(back, cohomology(back)).value == torsion(c, cohomology(c)).value


def test_ses_roundtrip(rng):
    s = rf.random_ses(rng)
    back = ser.ses_from_json(roundtrip(ser.ses_to_json(s)))
    back.validate()


def test_chain_map_roundtrip(rng):
    c, maps, order = rf.random_finite_order_map(rng)
    f = ChainEndomorphism(c, maps, order)
    c2 = ser.complex_from_json(roundtrip(ser.complex_to_json(c)))
    g = ser.chain_map_from_json(roundtrip(ser.chain_map_to_json(f)), c2)
    assert oracle_triangle(g) == oracle_triangle(f)


def test_rep_and_automorphism_roundtrip():
    rep, aut = sf.generic_swap_fixture()
    rep2 = ser.rep_from_json(roundtrip(ser.rep_to_json(rep)))
    aut2 = ser.automorphism_from_json(roundtrip(ser.automorphism_to_json(aut)))
    assert aut2.substitution == aut.substitution
    sf.automorphism_chain_map(rep2, aut2)


def test_phase_and_component_roundtrip(rng):
    e = EigenPhaseData((F(1, 3),), (F(1, 2), 0), 8)
    assert ser.phases_from_json(roundtrip(ser.phases_to_json(e))) == e
    cs = [rf.random_component_summary(rng) for _ in range(3)]
    back = ser.components_from_json(roundtrip(ser.components_to_json(cs)))
    assert back == cs


def test_wrong_kind_and_version():
    with pytest.raises(ser.SchemaError):
        ser.complex_from_json({"version": 1, "kind": "ses", "dims": [], "differentials": []})
    with pytest.raises(ser.SchemaError):
        ser.complex_from_json({"version": 2, "kind": "complex", "dims": [1], "differentials": []})
