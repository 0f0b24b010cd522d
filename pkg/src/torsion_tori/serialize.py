"""JSON encoding of the library's objects.

Every top-level document carries ``"version": 1`` and a ``"kind"``.  A matrix
is ``{"rows", "cols", "entries"}`` with the entries flat in row-major order,
either all ``"p/q"`` strings (exact) or all ``[re, im]`` pairs (complex).
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

import numpy as np

from . import linalg as la
from .asymptotics import ComponentSummary, Sample
from .cochain import CochainComplex, CohomologyData
from .exact_sequences import ShortExactSequence
from .mapping_torus import ChainEndomorphism
from .spectral import EigenPhaseData
from .surface import SurfaceAutomorphism, SurfaceRepresentation, format_word, parse_word

VERSION = 1


class SchemaError(ValueError):
    pass


def _frac(x) -> Fraction:
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, int):
        return Fraction(x)
    raise SchemaError(f"expected a rational string such as '1/2', got {x!r}")


def frac_str(x) -> str:
    q = Fraction(x)
    return str(q.numerator) if q.denominator == 1 else la.fraction_str(q)


def matrix_to_json(m: np.ndarray) -> dict:
    rows, cols = m.shape
    if la.is_exact(m):
        entries = [frac_str(x) for x in m.reshape(-1)]
    else:
        entries = [[float(x.real), float(x.imag)] for x in m.reshape(-1)]
    return {"rows": rows, "cols": cols, "entries": entries}


def matrix_from_json(d: dict, exact: bool | None = None) -> np.ndarray:
    try:
        rows, cols, entries = int(d["rows"]), int(d["cols"]), list(d["entries"])
    except (KeyError, TypeError) as e:
        raise SchemaError(f"malformed matrix: {e}") from None
    if len(entries) != rows * cols:
        raise SchemaError(f"matrix {rows}x{cols} has {len(entries)} entries")
    is_pairs = bool(entries) and isinstance(entries[0], list)
    if exact is None:
        exact = not is_pairs
    if exact:
        if is_pairs:
            raise SchemaError("complex entries where rationals were expected")
        out = np.empty((rows, cols), dtype=object)
        for i, x in enumerate(entries):
            out[divmod(i, cols)] = _frac(x)
        return out
    out = np.empty((rows, cols), dtype=la.COMPLEX_DTYPE)
    for i, x in enumerate(entries):
        out[divmod(i, cols)] = complex(x[0], x[1]) if isinstance(x, list) else complex(float(_frac(x)))
    return out


def _doc(kind: str, **fields) -> dict:
    return {"version": VERSION, "kind": kind, **fields}


def _expect(d: dict, kind: str) -> None:
    if not isinstance(d, dict):
        raise SchemaError(f"expected a {kind} object")
    if d.get("version", VERSION) != VERSION:
        raise SchemaError(f"unsupported version {d.get('version')}")
    if d.get("kind", kind) != kind:
        raise SchemaError(f"expected kind {kind!r}, got {d.get('kind')!r}")


def complex_to_json(c: CochainComplex) -> dict:
    return _doc("complex", dims=list(c.dims), differentials=[matrix_to_json(d) for d in c.differentials])


def complex_from_json(d: dict, tol: float = la.DEFAULT_TOL) -> CochainComplex:
    _expect(d, "complex")
    try:
        dims = [int(x) for x in d["dims"]]
        diffs = [matrix_from_json(m) for m in d["differentials"]]
    except KeyError as e:
        raise SchemaError(f"complex lacks {e}") from None
    return CochainComplex(tuple(dims), tuple(diffs), tol)


def cohomology_to_json(h: CohomologyData) -> dict:
    return _doc("cohomology-basis", lifts=[matrix_to_json(m) for m in h.lifts])


def cohomology_from_json(d: dict, exact: bool | None = None) -> CohomologyData:
    _expect(d, "cohomology-basis")
    return CohomologyData(tuple(matrix_from_json(m, exact) for m in d["lifts"]))


def chain_map_to_json(f: ChainEndomorphism) -> dict:
    return _doc("chain-map", order=f.order, maps=[matrix_to_json(m) for m in f.maps])


def chain_map_from_json(d: dict, base: CochainComplex) -> ChainEndomorphism:
    _expect(d, "chain-map")
    maps = tuple(matrix_from_json(m, base.exact) for m in d["maps"])
    return ChainEndomorphism(base, maps, int(d.get("order", 0)))


def ses_to_json(s: ShortExactSequence) -> dict:
    return _doc(
        "ses",
        c1=complex_to_json(s.c1),
        c2=complex_to_json(s.c2),
        c3=complex_to_json(s.c3),
        nu=[matrix_to_json(m) for m in s.nu],
        mu=[matrix_to_json(m) for m in s.mu],
    )


def ses_from_json(d: dict) -> ShortExactSequence:
    _expect(d, "ses")
    c1, c2, c3 = (complex_from_json(d[k]) for k in ("c1", "c2", "c3"))
    nu = tuple(matrix_from_json(m, c2.exact) for m in d["nu"])
    mu = tuple(matrix_from_json(m, c2.exact) for m in d["mu"])
    return ShortExactSequence(c1, c2, c3, nu, mu)


def rep_to_json(r: SurfaceRepresentation) -> dict:
    return _doc("surface-rep", genus=r.genus, group=r.group, generators=[matrix_to_json(g) for g in r.generators])


def rep_from_json(d: dict) -> SurfaceRepresentation:
    _expect(d, "surface-rep")
    gens = tuple(np.asarray(matrix_from_json(m, exact=False), dtype=complex) for m in d["generators"])
    return SurfaceRepresentation(int(d["genus"]), str(d["group"]), gens)


def automorphism_to_json(a: SurfaceAutomorphism) -> dict:
    return _doc(
        "surface-automorphism",
        order=a.order,
        substitution=[format_word(w) for w in a.substitution],
        conjugator=matrix_to_json(np.asarray(a.conjugator, dtype=complex)),
    )


def automorphism_from_json(d: dict) -> SurfaceAutomorphism:
    _expect(d, "surface-automorphism")
    subs = tuple(parse_word(w) for w in d["substitution"])
    g = np.asarray(matrix_from_json(d["conjugator"], exact=False), dtype=complex)
    return SurfaceAutomorphism(int(d["order"]), subs, g)


def phases_to_json(e: EigenPhaseData) -> dict:
    return _doc(
        "phase-data",
        dim_g=e.dim_g,
        phases_moduli=[frac_str(p) for p in e.phases_moduli],
        phases_h10=[frac_str(p) for p in e.phases_h10],
    )


def phases_from_json(d: dict) -> EigenPhaseData:
    _expect(d, "phase-data")
    return EigenPhaseData(
        tuple(_frac(p) for p in d.get("phases_moduli", [])),
        tuple(_frac(p) for p in d.get("phases_h10", [])),
        int(d["dim_g"]),
        d.get("rk_n"),
        d.get("rk_h10"),
    )


def component_to_json(c: ComponentSummary) -> dict:
    out: dict[str, Any] = {
        "name": c.name,
        "group": c.group,
        "cs": frac_str(c.cs_value),
        "d_c": frac_str(c.d_c),
        "center_order": c.center_order,
        "phases_h10": [frac_str(p) for p in c.phases_h10],
        "samples": [],
    }
    for s in c.samples:
        sd: dict[str, Any] = {"weight": s.weight, "phases": [frac_str(p) for p in s.phases]}
        if s.rho is not None:
            sd["rho"] = frac_str(s.rho)
        out["samples"].append(sd)
    for key in ("b1", "dim_h0", "dim_h1"):
        if getattr(c, key) is not None:
            out[key] = getattr(c, key)
    if not c.irreducible:
        out["irreducible"] = False
    return out


def component_from_json(d: dict) -> ComponentSummary:
    samples = tuple(
        Sample(float(s["weight"]), tuple(_frac(p) for p in s.get("phases", [])), _frac(s["rho"]) if "rho" in s else None)
        for s in d.get("samples", [])
    )
    return ComponentSummary(
        str(d["group"]),
        _frac(d["cs"]),
        _frac(d.get("d_c", "0")),
        samples,
        tuple(_frac(p) for p in d.get("phases_h10", [])),
        d.get("center_order"),
        d.get("b1"),
        d.get("dim_h0"),
        d.get("dim_h1"),
        bool(d.get("irreducible", True)),
        str(d.get("name", "")),
    )


def components_to_json(cs) -> dict:
    return _doc("components", components=[component_to_json(c) for c in cs])


def components_from_json(d: dict) -> list[ComponentSummary]:
    _expect(d, "components")
    return [component_from_json(c) for c in d["components"]]


def to_jsonable(x):
    """Plain JSON values for report output: Fractions become ``"p/q"``, complexes ``[re, im]``."""
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else frac_str(x)
    if isinstance(x, (bool, str)) or x is None:
        return x
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        return float(x)
    if isinstance(x, (complex, np.complexfloating)):
        return [float(x.real), float(x.imag)]
    if isinstance(x, np.ndarray):
        return matrix_to_json(x) if x.ndim == 2 else [to_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    if hasattr(x, "__dataclass_fields__"):
        return {k: to_jsonable(getattr(x, k)) for k in x.__dataclass_fields__}
    return str(x)


def dumps(x) -> str:
    return json.dumps(to_jsonable(x), indent=2, sort_keys=True)
