"""Command-line interface: ``torsion-tori <group> <command> ...``.

Every command reads JSON files, writes one JSON document to stdout and logs
to stderr.  Exit status is 0 on success, 1 on computation errors and 2 on
usage errors.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import asymptotics as asy
from . import lie
from . import linalg as la
from . import mapping_torus as mt
from . import serialize as ser
from . import spectral as sp
from . import surface as sf
from .cochain import cohomology, cohomology_dims, torsion
from .verify import run_verify_suite

log = logging.getLogger("torsion_tori")


class UsageError(Exception):
    pass


def _read(path: str) -> dict:
    return json.loads(Path(path).read_text())


def _complex(args):
    c = ser.complex_from_json(_read(args.complex), args.tol)
    c.check()
    return c


def cmd_torsion_compute(args) -> dict:
    c = _complex(args)
    h = ser.cohomology_from_json(_read(args.cohomology_basis), c.exact) if args.cohomology_basis else cohomology(c)
    return {"torsion": torsion(c, h).value, "cohomology_dims": list(cohomology_dims(c)), "exact": c.exact}


def cmd_torsion_mapping_torus(args) -> dict:
    c = _complex(args)
    f = ser.chain_map_from_json(_read(args.map), c)
    if args.method == "all":
        return {"torsion": mt.oracle_triangle(f)}
    h_t = cohomology(mt.build_mapping_torus(f).complex)
    if args.method == "definition":
        value = mt.torsion_definition(f, h_t).value
    elif args.method == "wang":
        value = mt.torsion_via_wang(f, h_t).value
    elif args.method == "general":
        value = mt.torsion_closed_form_general(f, h_t=h_t).torsion.value
    else:
        value = mt.torsion_closed_form_finite_order(f, h_t).torsion.value
    return {"method": args.method, "torsion": value}


def cmd_surface_cohomology(args) -> dict:
    rep = ser.rep_from_json(_read(args.rep))
    c = sf.twisted_complex(rep)
    return {"cohomology_dims": list(cohomology_dims(c)), "irreducible": sf.is_irreducible(rep)}


def cmd_surface_omega(args) -> dict:
    rep = ser.rep_from_json(_read(args.rep))
    om = sf.symplectic_form(rep).matrix
    prop = sf.omega_property(om)
    return {"omega": om, "antisymmetry": float(np.max(np.abs(om + om.T))), "omega_property": prop}


def cmd_lie_check(args) -> dict:
    l = lie.su(args.n)
    dc = lie.dual_coxeter_identity_check(args.n, args.trials, args.seed)
    cas = lie.casimir_eigenvalue(l)
    ch = lie.chern_class_relation_check(args.n, min(args.trials, 20), args.seed)
    inv = lie.ad_invariance_deviation(l, np.random.default_rng(args.seed))
    return {
        "algebra": l.name,
        "dual_coxeter": l.dual_coxeter,
        "identity_deviation": dc["max_deviation"],
        "casimir": cas,
        "chern_class_deviation": ch["max_deviation"],
        "invariance_deviation": inv,
    }


def cmd_invariants_rho(args) -> dict:
    r = sp.rho_finite_order(ser.phases_from_json(_read(args.phases)))
    return {"rho": r.rho, "eta_a": r.eta_a, "eta_theta": r.eta_theta}


def cmd_invariants_sf(args) -> dict:
    l = lie.lie_data(args.group)
    r = sp.spectral_flow(Fraction(args.cs), Fraction(args.rho), l.dual_coxeter, l.dim, args.b1, args.h0, args.h1)
    return {"spectral_flow": r.value, "integral": r.integral, "cs_lift": r.cs_lift, "flags": list(r.flags)}


def cmd_invariants_framing(args) -> dict:
    e = ser.phases_from_json(_read(args.phases))
    omegas = [sp.shifted(t) for t in e.phases_h10]
    out: dict = {"framing_identity": sp.framing_identity_check(e.phases_h10, e.dim_g)}
    if args.alpha is not None:
        out["alpha"] = Fraction(args.alpha)
        out["framing_correction"] = sp.framing_correction(omegas, Fraction(args.alpha))
    if args.k is not None:
        if args.group is None:
            raise UsageError("invariants framing: --k needs --group")
        l = lie.lie_data(args.group)
        zeta = sp.central_charge(args.k, l.dual_coxeter, l.dim)
        out["central_charge"] = zeta
        out["framing_correction_at_k"] = sp.framing_correction(omegas, -zeta / 2)
    return out


def _terms(t: asy.LeadingOrderTerm, k: int) -> dict:
    return {
        "terms": [{"amplitude": x.amplitude, "exponent": x.exponent, "phase": x.phase} for x in t.terms],
        "value_at_k": t.value(k),
        "flags": list(t.flags),
    }


def cmd_asymptotics_leading(args) -> dict:
    comps = ser.components_from_json(_read(args.components))
    out: dict = {"k": args.k}
    if args.form in ("rho", "both"):
        out["rho"] = _terms(asy.leading_term_rho(comps, args.k), args.k)
    if args.form in ("sf", "both"):
        out["sf"] = _terms(asy.leading_term_sf(comps, args.k), args.k)
    return out


def cmd_asymptotics_identify(args) -> dict:
    comps = ser.components_from_json(_read(args.components))
    return {"reports": [dict(name=c.name, **ser.to_jsonable(asy.identification_check(c, args.k))) for c in comps]}


def cmd_verify(args) -> tuple[int, dict]:
    return run_verify_suite(args.filter, args.seed, args.tol, Path(args.fixtures) if args.fixtures else None)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="torsion-tori", description=__doc__.splitlines()[0])
    p.add_argument("--seed", type=int, default=0, help="seed for all randomness")
    p.add_argument("--tol", type=float, default=la.DEFAULT_TOL, help="relative tolerance for complex scalars")
    p.add_argument("--log-level", default="WARNING")
    groups = p.add_subparsers(dest="area", required=True)

    t = groups.add_parser("torsion").add_subparsers(dest="command", required=True)
    c = t.add_parser("compute")
    c.add_argument("--complex", required=True)
    c.add_argument("--cohomology-basis")
    c.set_defaults(func=cmd_torsion_compute)
    c = t.add_parser("mapping-torus")
    c.add_argument("--complex", required=True)
    c.add_argument("--map", required=True)
    c.add_argument("--method", choices=["definition", "wang", "general", "finite", "all"], default="wang")
    c.set_defaults(func=cmd_torsion_mapping_torus)

    s = groups.add_parser("surface").add_subparsers(dest="command", required=True)
    for name, func in (("cohomology", cmd_surface_cohomology), ("omega", cmd_surface_omega)):
        c = s.add_parser(name)
        c.add_argument("--rep", required=True)
        c.set_defaults(func=func)

    lp = groups.add_parser("lie").add_subparsers(dest="command", required=True)
    c = lp.add_parser("check")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--trials", type=int, default=100)
    c.set_defaults(func=cmd_lie_check)

    i = groups.add_parser("invariants").add_subparsers(dest="command", required=True)
    c = i.add_parser("rho")
    c.add_argument("--phases", required=True)
    c.set_defaults(func=cmd_invariants_rho)
    c = i.add_parser("sf")
    c.add_argument("--cs", required=True, help="lift of the Chern-Simons value, e.g. 1/4")
    c.add_argument("--rho", required=True)
    c.add_argument("--group", required=True)
    c.add_argument("--b1", type=int, required=True)
    c.add_argument("--h0", type=int, required=True)
    c.add_argument("--h1", type=int, required=True)
    c.set_defaults(func=cmd_invariants_sf)
    c = i.add_parser("framing")
    c.add_argument("--phases", required=True)
    c.add_argument("--alpha")
    c.add_argument("--k", type=int)
    c.add_argument("--group")
    c.set_defaults(func=cmd_invariants_framing)

    a = groups.add_parser("asymptotics").add_subparsers(dest="command", required=True)
    c = a.add_parser("leading")
    c.add_argument("--components", required=True)
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--form", choices=["rho", "sf", "both"], default="both")
    c.set_defaults(func=cmd_asymptotics_leading)
    c = a.add_parser("identify")
    c.add_argument("--components", required=True)
    c.add_argument("--k", type=int, default=100)
    c.set_defaults(func=cmd_asymptotics_identify)

    v = groups.add_parser("verify")
    v.add_argument("--filter")
    v.add_argument("--fixtures", help="directory of fixture files (default: the shipped ones)")
    v.set_defaults(func=cmd_verify)
    return p


def _emit(doc) -> None:
    sys.stdout.write(ser.dumps({"version": ser.VERSION, **doc}) + "\n")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=args.log_level.upper(), stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    try:
        result = args.func(args)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        log.error("%s", e)
        return 2
    except (ValueError, LookupError, ArithmeticError, OSError, AssertionError) as e:
        log.error("%s: %s", type(e).__name__, e)
        _emit({"error": type(e).__name__, "message": str(e)})
        return 1
    status = 0
    if isinstance(result, tuple):
        status, result = result
    _emit(result)
    return status


if __name__ == "__main__":
    sys.exit(main())
