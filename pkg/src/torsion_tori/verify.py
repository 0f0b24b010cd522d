"""Verification suite over the shipped fixtures and seeded random families.

The report is a JSON-ready dict with no timings, so two runs with the same
seed produce byte-identical output.
"""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Callable

import numpy as np

from . import asymptotics as asy
from . import linalg as la
from . import lie
from . import random_fixtures as rf
from . import serialize as ser
from . import spectral as sp
from . import surface as sf
from .cochain import cohomology, cohomology_dims, torsion, torsion_choice_independence_check
from .exact_sequences import multiplicativity_check
from .mapping_torus import ChainEndomorphism, oracle_triangle

log = logging.getLogger(__name__)

PROVENANCE = ("TRIVIAL", "DERIVED", "PAPER")


class FixtureNotFound(LookupError):
    pass


class FixtureError(ValueError):
    pass


@dataclass(frozen=True)
class Fixture:
    name: str
    kind: str
    family: str
    payload: dict
    expected: dict
    path: str

    def want(self, key: str, default=None):
        entry = self.expected.get(key)
        return default if entry is None else entry["value"]


def fixture_dir() -> Path:
    return Path(str(resources.files("torsion_tori") / "fixtures"))


def load_fixture(path: Path) -> Fixture:
    try:
        d = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise FixtureError(f"{path}: {e}") from None
    name = d.get("name", Path(path).stem)
    for key, entry in d.get("expected", {}).items():
        if not isinstance(entry, dict) or entry.get("provenance") not in PROVENANCE:
            raise FixtureError(f"fixture {name}: expected value {key!r} lacks a provenance tag")
    return Fixture(name, d["kind"], d["family"], d["payload"], d.get("expected", {}), str(path))


def load_fixtures(directory: Path | None = None) -> list[Fixture]:
    directory = Path(directory) if directory else fixture_dir()
    if not directory.is_dir():
        raise FixtureNotFound(f"no fixture directory at {directory}")
    return [load_fixture(p) for p in sorted(directory.glob("*.json"))]


# result helpers --------------------------------------------------------------------


def _result(name: str, ok: bool, **details) -> dict:
    return {"name": name, "status": "pass" if ok else "fail", "details": ser.to_jsonable(details)}


def _error(name: str, exc: Exception) -> dict:
    return {"name": name, "status": "error", "details": {"error": type(exc).__name__, "message": f"fixture {name}: {exc}"}}


def _exact_complex(d: dict, tol: float):
    c = ser.complex_from_json(d, tol)
    c.check()
    return c


# fixture checks --------------------------------------------------------------------


def _check_complex(fx: Fixture, tol: float, seed: int) -> dict:
    c = _exact_complex(fx.payload["complex"], tol)
    h = cohomology(c)
    tau = torsion(c, h).value
    dims = list(cohomology_dims(c))
    rep = torsion_choice_independence_check(c, h, trials=20, seed=seed)
    ok = rep["max_deviation"] == 0 if c.exact else rep["max_deviation"] < 1e-8
    want = fx.want("torsion")
    if want is not None:
        ok &= tau == Fraction(want)
    if fx.want("cohomology_dims") is not None:
        ok &= dims == fx.want("cohomology_dims")
    return _result(fx.name, ok, torsion=tau, cohomology_dims=dims, max_deviation=rep["max_deviation"])


def _check_ses(fx: Fixture, tol: float, seed: int) -> dict:
    s = ser.ses_from_json(fx.payload["ses"])
    for c in (s.c1, s.c2, s.c3):
        c.check()
    r = multiplicativity_check(s)
    return _result(fx.name, r.ok == fx.want("multiplicative", True), lhs=r.lhs, rhs=r.rhs)


def _check_mapping_torus(fx: Fixture, tol: float, seed: int) -> dict:
    c = _exact_complex(fx.payload["complex"], tol)
    f = ser.chain_map_from_json(fx.payload["map"], c)
    tri = oracle_triangle(f)
    values = [v for v in tri.values() if v is not None]
    ok = all(v == values[0] for v in values)
    want = fx.want("torsion")
    if want is not None:
        ok &= values[0] == Fraction(want)
    return _result(fx.name, ok, **tri)


def _check_surface(fx: Fixture, tol: float, seed: int) -> dict:
    rep = ser.rep_from_json(fx.payload["rep"])
    c = sf.twisted_complex(rep)
    c.check()
    dims = list(cohomology_dims(c))
    ok = dims == fx.want("cohomology_dims", dims)
    details: dict = {"cohomology_dims": dims}
    if dims[0] == 0:
        om = sf.symplectic_form(rep).matrix
        prop = sf.omega_property(om)
        details["omega_property_deviation"] = prop.deviation
        ok &= prop.deviation < 1e-8
    if "automorphism" in fx.payload:
        aut = ser.automorphism_from_json(fx.payload["automorphism"])
        f = sf.automorphism_chain_map(rep, aut)
        phases = la.eigenphases_finite_order(sf.induced_on_h1(f), aut.order, 1e-8).phases
        details["h1_phases"] = phases
        if fx.want("h1_phases") is not None:
            ok &= [ser.frac_str(p) for p in phases] == fx.want("h1_phases")
        if fx.want("torsion") is not None:
            tri = oracle_triangle(f)
            vals = [float(v) for v in tri.values() if v is not None]
            details["triangle"] = vals
            ok &= all(abs(v - fx.want("torsion")) <= 1e-8 * abs(fx.want("torsion")) for v in vals)
    return _result(fx.name, ok, **details)


def _check_phase_data(fx: Fixture, tol: float, seed: int) -> dict:
    e = ser.phases_from_json(fx.payload["phases"])
    r = sp.rho_finite_order(e)
    ok = True
    for key in ("rho", "eta_a", "eta_theta"):
        if fx.want(key) is not None:
            ok &= getattr(r, key) == Fraction(fx.want(key))
    details: dict = {"rho": r.rho, "eta_a": r.eta_a, "eta_theta": r.eta_theta}
    if fx.want("framing_identity") is not None:
        fr = sp.framing_identity_check(e.phases_h10, e.dim_g)
        holds = fr.deviation <= 1e-10
        details.update(framing_deviation=fr.deviation, framing_identity=holds)
        ok &= holds == fx.want("framing_identity") == fr.predicted_to_hold
    return _result(fx.name, ok, **details)


def _check_components(fx: Fixture, tol: float, seed: int) -> dict:
    comps = ser.components_from_json(fx.payload["components"])
    details: dict = {}
    ok = True
    if fx.family == "identification":
        reports = [asy.identification_check(c, int(fx.want("k", 100))) for c in comps]
        details["ratios"] = [r.ratio for r in reports]
        details["framing_identity"] = [r.framing_identity_holds for r in reports]
        for r, want in zip(reports, fx.want("decays")):
            decays = r.ratio is None or abs(r.ratio - 2) <= 0.1
            ok &= decays == want
        return _result(fx.name, ok, **details)
    rho = asy.leading_term_rho(comps)
    sfl = asy.leading_term_sf(comps)
    devs = []
    for k in (0, 10, 100, 1000):
        a, b = rho.value(k), sfl.value(k)
        devs.append(abs(a - b) / max(1.0, abs(a)))
    details.update(max_form_deviation=max(devs), value_at_0=rho.value(0), flags=list(sfl.flags))
    ok &= max(devs) < 1e-10
    if fx.want("value_at_0") is not None:
        want = complex(*fx.want("value_at_0"))
        ok &= abs(rho.value(0) - want) < 1e-10
    return _result(fx.name, ok, **details)


_KIND_CHECKS: dict[str, Callable[[Fixture, float, int], dict]] = {
    "complex": _check_complex,
    "ses": _check_ses,
    "mapping-torus": _check_mapping_torus,
    "surface-rep": _check_surface,
    "phase-data": _check_phase_data,
    "component-summary": _check_components,
}


# seeded random families ------------------------------------------------------------


def _random_torsion(seed: int, count: int) -> list[dict]:
    rng = np.random.default_rng(seed)
    worst = Fraction(0)
    for i in range(count):
        c = rf.random_complex(rng)
        worst = max(worst, torsion_choice_independence_check(c, cohomology(c), 5, seed + i)["max_deviation"])
    return [_result(f"random-complexes[{count}]", worst == 0, max_deviation=worst)]


def _random_multiplicativity(seed: int, count: int) -> list[dict]:
    rng = np.random.default_rng(seed)
    bad = sum(not multiplicativity_check(rf.random_ses(rng)).ok for _ in range(count))
    return [_result(f"random-ses[{count}]", bad == 0, failures=bad)]


def _random_triangle(seed: int, count: int) -> list[dict]:
    rng = np.random.default_rng(seed)
    bad = 0
    for _ in range(count):
        c, maps, order = rf.random_finite_order_map(rng)
        tri = oracle_triangle(ChainEndomorphism(c, maps, order))
        vals = list(tri.values())
        bad += any(v != vals[0] for v in vals)
    return [_result(f"random-finite-order[{count}]", bad == 0, failures=bad)]


def _lie_family(seed: int, count: int) -> list[dict]:
    out = []
    for n in (2, 3, 4):
        dc = lie.dual_coxeter_identity_check(n, count, seed)
        cas = lie.casimir_eigenvalue(lie.su(n))
        ch = lie.chern_class_relation_check(n, 5, seed)
        ok = dc["max_deviation"] < 1e-10 and cas.off_scalar < 1e-10 and cas.consistent and ch["max_deviation"] < 1e-10
        out.append(
            _result(
                f"su({n})", ok, dual_coxeter_deviation=dc["max_deviation"], casimir=cas.value, chern_deviation=ch["max_deviation"]
            )
        )
    return out


def _phase_family(seed: int, count: int) -> list[dict]:
    worst = 0.0
    for m in range(2, 25):
        for j in range(1, m):
            worst = max(worst, sp.phase_identity_check(Fraction(j, m)).deviation)
    rng = np.random.default_rng(seed)
    worst_int = 0.0
    for _ in range(count):
        ps = rf.random_phases(rng, int(rng.integers(1, 7)), int(rng.integers(2, 13)), nonzero=True)
        worst_int = max(worst_int, sp.integrand_identity_check(ps).deviation)
    return [
        _result("simple-fact-grid", worst < 1e-12, max_deviation=worst),
        _result(f"integrand[{count}]", worst_int < 1e-10, max_deviation=worst_int),
    ]


def _sf_family(seed: int, count: int) -> list[dict]:
    out = []
    for name in ("su2", "su3", "su4"):
        l = lie.lie_data(name)
        b1 = 3
        r = sp.spectral_flow(0, 0, l.dual_coxeter, l.dim, b1, l.dim, l.dim * b1)
        out.append(_result(f"trivial-{name}", r.value == 0 and r.integral, value=r.value))
    return out


def _random_forms(seed: int, count: int) -> list[dict]:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for i in range(count):
        c = rf.random_component_summary(rng, name=f"c{i}")
        a, b = asy.leading_term_rho([c]), asy.leading_term_sf([c])
        for k in (10, 100, 1000):
            worst = max(worst, abs(a.value(k) - b.value(k)) / max(1.0, abs(a.value(k))))
    return [_result(f"random-components[{count}]", worst < 1e-10, max_deviation=worst)]


_FAMILIES: list[tuple[str, Callable[[int, int], list[dict]] | None, int]] = [
    ("torsion", _random_torsion, 20),
    ("multiplicativity", _random_multiplicativity, 20),
    ("oracle-triangle", _random_triangle, 20),
    ("surface", None, 0),
    ("lie", _lie_family, 20),
    ("phase-identities", _phase_family, 50),
    ("rho", None, 0),
    ("framing", None, 0),
    ("spectral-flow", _sf_family, 0),
    ("form-equivalence", _random_forms, 20),
    ("identification", None, 0),
]

FAMILY_NAMES = tuple(name for name, _, _ in _FAMILIES)


def run_verify_suite(
    filter: str | None = None, seed: int = 0, tol: float = la.DEFAULT_TOL, fixtures: Path | None = None
) -> tuple[int, dict]:
    """Run every family whose name contains ``filter``; returns ``(exit status, report)``."""
    selected = [f for f in _FAMILIES if filter is None or filter in f[0]]
    if not selected:
        raise FixtureNotFound(f"no verification family matches {filter!r}")
    loaded = load_fixtures(fixtures)
    families = []
    for name, generator, count in selected:
        log.info("running family %s", name)
        results = []
        for fx in (f for f in loaded if f.family == name):
            try:
                results.append(_KIND_CHECKS[fx.kind](fx, tol, seed))
            except Exception as e:  # every failure is reported against its fixture
                results.append(_error(fx.name, e))
        if generator is not None:
            results += generator(seed, count)
        families.append({"family": name, "results": results})
    statuses = [r["status"] for fam in families for r in fam["results"]]
    report = {
        "version": ser.VERSION,
        "seed": seed,
        "tol": tol,
        "families": families,
        "passed": statuses.count("pass"),
        "failed": len(statuses) - statuses.count("pass"),
    }
    return (0 if report["failed"] == 0 else 1), report
