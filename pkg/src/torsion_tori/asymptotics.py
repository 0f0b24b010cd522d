"""Leading-order term of the quantum invariant of a finite order mapping torus.

A :class:`ComponentSummary` carries the finite data attached to one
component of the fixed flat connections: its Chern-Simons value, its half
dimension ``d_c``, the action of ``f`` on ``H^{1,0}``, and weighted sample
points with the phases of ``df`` on the conormal.  The leading term is

    Z ~ sum_c e^{2 pi i k CS_c} k^{d_c} b_c,
    b_c = (1/|Z(G)|) sum_samples sqrt(tau) e^{2 pi i rho / 8},

with ``sqrt(tau) = weight / prod |1 - xi_j|``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

from . import spectral as sp
from .lie import lie_data

FORM_TOL = 1e-10


class EmptyComponent(ValueError):
    pass


class MissingSFFields(ValueError):
    pass


class ReducibleComponent(ValueError):
    pass


class InvalidComponent(ValueError):
    pass


@dataclass(frozen=True)
class Sample:
    """A quadrature point: symplectic volume weight and conormal phases there.

    ``rho`` overrides the value computed from the phases when given.
    """

    weight: float
    phases: tuple[Fraction, ...]
    rho: Fraction | None = None

    def __post_init__(self):
        object.__setattr__(self, "phases", tuple(sp._phase(p) for p in self.phases))
        if self.rho is not None:
            object.__setattr__(self, "rho", Fraction(self.rho))
        if not self.weight > 0:
            raise InvalidComponent(f"sample weight {self.weight} is not positive")
        if any(p == 0 for p in self.phases):
            raise InvalidComponent("conormal phases must be nonzero")


@dataclass(frozen=True)
class ComponentSummary:
    group: str
    cs_value: Fraction  # the chosen real lift of CS mod 1
    d_c: Fraction
    samples: tuple[Sample, ...]
    phases_h10: tuple[Fraction, ...] = ()
    center_order: int | None = None
    b1: int | None = None
    dim_h0: int | None = None
    dim_h1: int | None = None
    irreducible: bool = True
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "cs_value", Fraction(self.cs_value))
        object.__setattr__(self, "d_c", Fraction(self.d_c))
        object.__setattr__(self, "samples", tuple(self.samples))
        object.__setattr__(self, "phases_h10", tuple(sp._phase(p) for p in self.phases_h10))
        if self.center_order is None:
            object.__setattr__(self, "center_order", self.lie.n)
        if self.d_c < 0 or (2 * self.d_c).denominator != 1:
            raise InvalidComponent(f"d_c = {self.d_c} is not a nonnegative half-integer")
        if self.dim_h0 is not None and self.dim_h1 is not None:
            if Fraction(self.dim_h1 - self.dim_h0, 2) != self.d_c:
                raise InvalidComponent("d_c must equal (dim H^1 - dim H^0) / 2")

    @property
    def lie(self):
        return lie_data(self.group)

    @property
    def has_sf_fields(self) -> bool:
        return None not in (self.b1, self.dim_h0, self.dim_h1)

    def eta_theta(self) -> Fraction:
        return sp.eta_theta(sp.EigenPhaseData((), self.phases_h10, self.lie.dim))

    def rho(self, s: Sample) -> Fraction:
        if s.rho is not None:
            return s.rho
        return sp.eta_a(sp.EigenPhaseData(s.phases, (), self.lie.dim)) - self.eta_theta()

    def shift_cs(self, n: int) -> "ComponentSummary":
        return replace(self, cs_value=self.cs_value + n)


def sqrt_torsion(s: Sample) -> float:
    """``weight / |det(1 - df)|`` on the conormal."""
    mod = 1.0
    for p in s.phases:
        mod *= abs(1 - cmath.exp(2j * math.pi * float(p)))
    return s.weight / mod


@dataclass(frozen=True)
class Term:
    amplitude: complex
    exponent: Fraction
    phase: Fraction


@dataclass(frozen=True)
class LeadingOrderTerm:
    terms: tuple[Term, ...]
    k: int | None = None
    flags: tuple[str, ...] = field(default_factory=tuple)

    def value(self, k: int) -> complex:
        """``sum e^{2 pi i k q_j} k^{d_j} b_j`` (with ``0^0 = 1``)."""
        total = 0j
        for t in self.terms:
            power = 1.0 if t.exponent == 0 else float(k) ** float(t.exponent)
            total += cmath.exp(2j * math.pi * float((k * t.phase) % 1)) * power * t.amplitude
        return total

    def __add__(self, other: "LeadingOrderTerm") -> "LeadingOrderTerm":
        return LeadingOrderTerm(self.terms + other.terms, self.k, self.flags + other.flags)


def _check(c: ComponentSummary) -> None:
    if not c.irreducible:
        raise ReducibleComponent(f"component {c.name or '?'} contains only reducible connections")
    if not c.samples:
        raise EmptyComponent(f"component {c.name or '?'} has no samples")


def _rho_amplitude(c: ComponentSummary) -> complex:
    total = 0j
    for s in c.samples:
        total += sqrt_torsion(s) * cmath.exp(2j * math.pi * float(c.rho(s) % 8) / 8)
    return total / c.center_order


def leading_term_rho(components: Sequence[ComponentSummary], k: int | None = None) -> LeadingOrderTerm:
    terms = []
    for c in components:
        _check(c)
        terms.append(Term(_rho_amplitude(c), c.d_c, c.cs_value % 1))
    return LeadingOrderTerm(tuple(terms), k)


def _e(x: Fraction) -> complex:
    """``exp(2 pi i x)`` with ``x`` reduced mod 1 first."""
    return cmath.exp(2j * math.pi * float(x % 1))


def _sf_amplitude(c: ComponentSummary) -> tuple[complex, list[str]]:
    if not c.has_sf_fields:
        raise MissingSFFields(f"component {c.name or '?'} lacks b1, dim H^0 or dim H^1")
    l = c.lie
    h, dim_g = l.dual_coxeter, l.dim
    flags = []
    prefactor = _e(Fraction(dim_g * (1 + c.b1), 8))
    total = 0j
    for s in c.samples:
        sf = sp.spectral_flow(c.cs_value, c.rho(s), h, dim_g, c.b1, c.dim_h0, c.dim_h1)
        if not sf.integral:
            flags.append(f"{c.name or 'component'}: spectral flow {sf.value} is not an integer")
        # e^{2 pi i CS (k + h)} is split into e^{2 pi i k CS} (the term phase) and e^{2 pi i h CS}
        phase = _e(h * c.cs_value) * _e(sf.value / 4 - Fraction(c.dim_h0 + c.dim_h1, 8))
        total += sqrt_torsion(s) * phase
    return prefactor * total / c.center_order, flags


def leading_term_sf(
    components: Sequence[ComponentSummary], k: int | None = None, tol: float = FORM_TOL
) -> LeadingOrderTerm:
    """The spectral-flow form; checked against the rho form on every call."""
    terms = []
    flags: list[str] = []
    for c in components:
        _check(c)
        amp, f = _sf_amplitude(c)
        flags += f
        terms.append(Term(amp, c.d_c, c.cs_value % 1))
    result = LeadingOrderTerm(tuple(terms), k, tuple(flags))
    reference = leading_term_rho(components, k)
    for a, b in zip(result.terms, reference.terms):
        if abs(a.amplitude - b.amplitude) > tol * max(1.0, abs(b.amplitude)):
            raise AssertionError(f"rho and spectral-flow forms disagree: {a.amplitude} vs {b.amplitude}")
    return result


def cover_from_base(c: ComponentSummary) -> ComponentSummary:
    """Lift samples on the base to the ``|Z(G)|``-sheeted cover by repetition."""
    return replace(c, samples=c.samples * c.center_order)


@dataclass(frozen=True)
class IdentificationReport:
    k: int
    lhs: complex
    rhs: complex
    gap: float
    gap_double: float  # the gap at 2k
    ratio: float | None  # gap(k) / gap(2k); None when both vanish
    framing_identity_holds: bool


def _identification_sides(c: ComponentSummary, k: int) -> tuple[complex, complex]:
    l = c.lie
    zeta = sp.central_charge(k, l.dual_coxeter, l.dim)
    framing = sp.framing_correction([sp.shifted(t) for t in c.phases_h10], -zeta / 2)
    integral = 0j
    for s in c.samples:
        det = 1 + 0j
        for p in s.phases:
            det *= 1 - cmath.exp(2j * math.pi * float(p))
        integral += s.weight / det
    cs = _e(k * c.cs_value)
    lhs = framing * cs * integral
    rhs = cs * _rho_amplitude(cover_from_base(c))
    return lhs, rhs


def identification_check(c: ComponentSummary, k: int, tol: float = 1e-12) -> IdentificationReport:
    """Compare the framed fixed-point contribution with the stationary-phase form.

    ``c`` holds samples on the base; the right side integrates over the
    ``|Z(G)|``-fold cover.  The gap is evaluated at ``k`` and ``2k``; its
    only ``k`` dependence is through the central charge.
    """
    _check(c)
    lhs, rhs = _identification_sides(c, k)
    lhs2, rhs2 = _identification_sides(c, 2 * k)
    gap, gap2 = abs(lhs - rhs), abs(lhs2 - rhs2)
    scale = max(1.0, abs(rhs))
    ratio = None if gap2 <= tol * scale else gap / gap2
    holds = sp.framing_identity_check(c.phases_h10, c.lie.dim).predicted_to_hold
    return IdentificationReport(k, lhs, rhs, gap, gap2, ratio, holds)
