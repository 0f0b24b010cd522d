"""Regenerate the JSON fixtures shipped with the package."""
from __future__ import annotations

import json
from fractions import Fraction as F
from pathlib import Path

import numpy as np

from torsion_tori import linalg as la
from torsion_tori import random_fixtures as rf
from torsion_tori import serialize as ser
from torsion_tori import surface as sf
from torsion_tori.asymptotics import ComponentSummary, Sample
from torsion_tori.cochain import CochainComplex
from torsion_tori.exact_sequences import identity_sequence
from torsion_tori.mapping_torus import ChainEndomorphism
from torsion_tori.spectral import EigenPhaseData

OUT = Path(__file__).resolve().parents[1] / "src" / "torsion_tori" / "fixtures"


def tag(value, provenance):
    return {"value": value, "provenance": provenance}


def write(name, kind, family, payload, expected):
    doc = {"version": ser.VERSION, "name": name, "kind": kind, "family": family, "payload": payload, "expected": expected}
    (OUT / f"{name}.json").write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def line(d):
    return CochainComplex((1, 1), (la.exact([[d]]),))


def circle(maps, dims):
    c = CochainComplex(dims, (), scalars="exact")
    return c, ChainEndomorphism(c, tuple(la.exact(m) for m in maps), 0)


def main():
    OUT.mkdir(exist_ok=True)
    for old in OUT.glob("*.json"):
        old.unlink()

    write("complex_times_two", "complex", "torsion", {"complex": ser.complex_to_json(line(2))},
          {"torsion": tag("1/2", "DERIVED"), "cohomology_dims": tag([0, 0], "TRIVIAL")})
    write("complex_identity", "complex", "torsion", {"complex": ser.complex_to_json(line(1))},
          {"torsion": tag("1", "TRIVIAL"), "cohomology_dims": tag([0, 0], "TRIVIAL")})
    write("complex_zero_differential", "complex", "torsion", {"complex": ser.complex_to_json(line(0))},
          {"torsion": tag("1", "TRIVIAL"), "cohomology_dims": tag([1, 1], "TRIVIAL")})

    rng = np.random.default_rng(11)
    write("ses_identity", "ses", "multiplicativity", {"ses": ser.ses_to_json(identity_sequence(rf.random_complex(rng)))},
          {"multiplicative": tag(True, "TRIVIAL")})
    write("ses_random", "ses", "multiplicativity", {"ses": ser.ses_to_json(rf.random_ses(rng))},
          {"multiplicative": tag(True, "DERIVED")})

    for name, m, dims, tau, prov in [
        ("circle_minus_one", [[[-1]]], (1,), "1/2", "DERIVED"),
        ("circle_identity", [[[1]]], (1,), "1", "DERIVED"),
        ("circle_rotation_order3", [[[0, -1], [1, -1]]], (2,), "1/3", "DERIVED"),
    ]:
        c, f = circle(m, dims)
        write(name, "mapping-torus", "oracle-triangle",
              {"complex": ser.complex_to_json(c), "map": ser.chain_map_to_json(f)}, {"torsion": tag(tau, prov)})

    write("surface_quaternion_genus2", "surface-rep", "surface", {"rep": ser.rep_to_json(sf.quaternion_genus2())},
          {"cohomology_dims": tag([0, 6, 0], "DERIVED")})
    write("surface_trivial_genus2", "surface-rep", "surface", {"rep": ser.rep_to_json(sf.trivial_rep(2))},
          {"cohomology_dims": tag([3, 12, 3], "TRIVIAL")})
    write("surface_handle_swap", "surface-rep", "surface",
          {"rep": ser.rep_to_json(sf.quaternion_genus2()), "automorphism": ser.automorphism_to_json(sf.handle_swap(2))},
          {"cohomology_dims": tag([0, 6, 0], "DERIVED"), "h1_phases": tag(["1/2"] * 6, "DERIVED"),
           "torsion": tag(64.0, "DERIVED")})
    rep, aut = sf.hyperelliptic_fixture(2)
    write("surface_hyperelliptic", "surface-rep", "surface",
          {"rep": ser.rep_to_json(rep), "automorphism": ser.automorphism_to_json(aut)},
          {"cohomology_dims": tag([3, 12, 3], "TRIVIAL"), "h1_phases": tag(["1/2"] * 12, "DERIVED")})

    write("phases_identity", "phase-data", "rho", {"phases": ser.phases_to_json(EigenPhaseData((0, 0), (0,), 3))},
          {"rho": tag("0", "TRIVIAL")})
    write("phases_halves", "phase-data", "rho",
          {"phases": ser.phases_to_json(EigenPhaseData((F(1, 2), F(1, 2)), (), 3))},
          {"eta_a": tag("0", "DERIVED"), "rho": tag("0", "DERIVED")})
    write("phases_third", "phase-data", "rho", {"phases": ser.phases_to_json(EigenPhaseData((F(1, 3),), (), 3))},
          {"eta_a": tag("2/3", "DERIVED")})
    write("framing_su3_third", "phase-data", "framing", {"phases": ser.phases_to_json(EigenPhaseData((), (F(1, 3),), 8))},
          {"framing_identity": tag(True, "DERIVED")})
    write("framing_su2_balanced", "phase-data", "framing",
          {"phases": ser.phases_to_json(EigenPhaseData((), (F(1, 3), F(2, 3)), 3))},
          {"framing_identity": tag(True, "DERIVED")})
    # dimG (n_above - n_below) = 3 is not divisible by 4, so the two sides differ
    write("framing_su2_third", "phase-data", "framing", {"phases": ser.phases_to_json(EigenPhaseData((), (F(1, 3),), 3))},
          {"framing_identity": tag(False, "DERIVED")})

    point = ComponentSummary("su2", 0, 0, (Sample(1.0, (), F(0)),), (), 2, 1, 0, 0, name="isolated_point")
    pair = ComponentSummary("su2", 0, 0, (Sample(1.0, (), F(2)), Sample(1.0, (), F(-2) % 8)), (), 2, 1, 0, 0, name="cancelling_pair")
    write("components_isolated_point", "component-summary", "form-equivalence",
          {"components": ser.components_to_json([point])}, {"value_at_0": tag([0.5, 0.0], "TRIVIAL")})
    write("components_cancelling_pair", "component-summary", "form-equivalence",
          {"components": ser.components_to_json([pair])}, {"value_at_0": tag([0.0, 0.0], "DERIVED")})
    rng = np.random.default_rng(5)
    randoms = [rf.random_component_summary(rng, name=f"random_{i}") for i in range(4)]
    write("components_random", "component-summary", "form-equivalence",
          {"components": ser.components_to_json(randoms)}, {})

    ident = [
        ComponentSummary("su3", F(1, 7), 1, (Sample(1.3, (F(1, 3), F(2, 3))),), (F(1, 3),), None, 1, 0, 2, name="su3_third"),
        ComponentSummary("su2", F(1, 5), 1, (Sample(0.8, (F(1, 4),)),), (F(1, 4), F(3, 4)), None, 1, 0, 2, name="su2_balanced"),
        ComponentSummary("su2", F(1, 5), 1, (Sample(0.8, (F(1, 3),)),), (F(1, 3),), None, 1, 0, 2, name="su2_third"),
    ]
    write("identification_decay", "component-summary", "identification",
          {"components": ser.components_to_json(ident)},
          {"k": tag(100, "TRIVIAL"), "decays": tag([True, True, False], "DERIVED")})


if __name__ == "__main__":
    main()
