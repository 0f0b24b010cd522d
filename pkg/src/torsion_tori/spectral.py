"""Eta and rho invariants of finite order mapping tori from eigenphase data.

Phases are exact rationals ``theta`` in ``[0, 1)`` standing for eigenvalues
``exp(2 pi i theta)``.  With ``trlog`` the sum of the phases,

    eta_A     = -4 trlog(df* on T M)   + 2 rk N
    eta_theta = -4 dimG trlog(f* on H^{1,0}) + 2 dimG rk(f* - 1 on H^{1,0})
    rho       = eta_A - eta_theta.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence


class PhaseOutOfRange(ValueError):
    pass


class XiIsOne(ValueError):
    pass


def _phase(x) -> Fraction:
    q = x if isinstance(x, Fraction) else Fraction(x)
    if not 0 <= q < 1:
        raise PhaseOutOfRange(f"phase {q} outside [0, 1)")
    return q


def tr_log(phases: Iterable) -> Fraction:
    """Sum of the phases, each required to lie in ``[0, 1)``."""
    return sum((_phase(p) for p in phases), Fraction(0))


def nonzero_count(phases: Iterable) -> int:
    return sum(1 for p in phases if _phase(p) != 0)


def shifted(theta) -> Fraction:
    """The representative of ``theta`` in ``[-1/2, 1/2)``."""
    t = _phase(theta)
    return t if t < Fraction(1, 2) else t - 1


@dataclass(frozen=True)
class EigenPhaseData:
    """Phases of ``df*`` on the moduli tangent space and of ``f*`` on ``H^{1,0}``.

    ``rk_n`` and ``rk_h10`` default to the number of nonzero phases and are
    checked against it when given.
    """

    phases_moduli: tuple[Fraction, ...]
    phases_h10: tuple[Fraction, ...]
    dim_g: int
    rk_n: int | None = None
    rk_h10: int | None = None

    def __post_init__(self):
        pm = tuple(_phase(p) for p in self.phases_moduli)
        ph = tuple(_phase(p) for p in self.phases_h10)
        object.__setattr__(self, "phases_moduli", pm)
        object.__setattr__(self, "phases_h10", ph)
        for name, phases in (("rk_n", pm), ("rk_h10", ph)):
            count = nonzero_count(phases)
            given = getattr(self, name)
            if given is None:
                object.__setattr__(self, name, count)
            elif given != count:
                raise ValueError(f"{name} = {given} but {count} phases are nonzero")

    def __add__(self, other: "EigenPhaseData") -> "EigenPhaseData":
        if other.dim_g != self.dim_g:
            raise ValueError("cannot add phase data for different groups")
        return EigenPhaseData(self.phases_moduli + other.phases_moduli, self.phases_h10 + other.phases_h10, self.dim_g)


@dataclass(frozen=True)
class SpectralReport:
    eta_a: Fraction
    eta_theta: Fraction
    rho: Fraction
    framing_correction: complex | None = None
    spectral_flow: Fraction | None = None
    flags: tuple[str, ...] = ()


def eta_a(e: EigenPhaseData) -> Fraction:
    return -4 * tr_log(e.phases_moduli) + 2 * e.rk_n


def eta_theta(e: EigenPhaseData) -> Fraction:
    return -4 * e.dim_g * tr_log(e.phases_h10) + 2 * e.dim_g * e.rk_h10


def rho_finite_order(e: EigenPhaseData) -> SpectralReport:
    ea, et = eta_a(e), eta_theta(e)
    rho = ea - et
    assert rho == ea - et
    return SpectralReport(ea, et, rho)


def framing_exponent(omegas: Iterable) -> Fraction:
    """``sum of omega~`` over the nonzero ``omega~`` in the open interval ``(-1/2, 1/2)``."""
    total = Fraction(0)
    half = Fraction(1, 2)
    for w in omegas:
        q = w if isinstance(w, Fraction) else Fraction(w)
        if not -half <= q < half:
            raise PhaseOutOfRange(f"shifted phase {q} outside [-1/2, 1/2)")
        if q != 0 and q != -half:
            total += q
    return total


def framing_correction(omegas: Iterable, alpha: float) -> complex:
    """``det(f)^alpha = exp(sum -2 pi i alpha omega~)`` over nonzero ``omega~`` in ``(-1/2, 1/2)``."""
    return cmath.exp(-2j * math.pi * float(alpha) * float(framing_exponent(omegas)))


def central_charge(k: int, h: int, dim_g: int) -> Fraction:
    return Fraction(k * dim_g, k + h)


@dataclass(frozen=True)
class FramingIdentityReport:
    lhs: complex  # det(f)^(-dimG / 2)
    rhs: complex  # exp(-pi i eta_theta / 4)
    deviation: float
    n_below: int  # phases in (0, 1/2)
    n_above: int  # phases in (1/2, 1)
    predicted_to_hold: bool


def framing_identity_check(phases_h10: Sequence, dim_g: int) -> FramingIdentityReport:
    """Compare ``det(f)^{-dimG/2}`` with ``exp(-pi i eta(D_theta) / 4)``.

    Both sides are computed independently.  They agree exactly when
    ``dimG (n_above - n_below)`` is divisible by 4, where ``n_below`` and
    ``n_above`` count the phases in ``(0, 1/2)`` and ``(1/2, 1)``: the two
    exponents differ by ``dimG (n_above - n_below) / 2``.
    """
    e = EigenPhaseData((), tuple(phases_h10), dim_g)
    lhs = framing_correction([shifted(t) for t in e.phases_h10], -Fraction(dim_g, 2))
    rhs = cmath.exp(-1j * math.pi * float(eta_theta(e)) / 4)
    half = Fraction(1, 2)
    below = sum(1 for t in e.phases_h10 if 0 < t < half)
    above = sum(1 for t in e.phases_h10 if t > half)
    return FramingIdentityReport(lhs, rhs, abs(lhs - rhs), below, above, dim_g * (above - below) % 4 == 0)


@dataclass(frozen=True)
class PhaseIdentityReport:
    lhs: complex
    rhs: complex
    deviation: float


def phase_identity_check(theta) -> PhaseIdentityReport:
    """``1/(1 - xi) = exp(-pi i theta) i / |1 - xi|`` for ``xi = exp(2 pi i theta)``."""
    t = _phase(theta)
    if t == 0:
        raise XiIsOne("xi = 1 has no inverse of 1 - xi")
    xi = cmath.exp(2j * math.pi * float(t))
    lhs = 1 / (1 - xi)
    rhs = cmath.exp(-1j * math.pi * float(t)) * 1j / abs(1 - xi)
    return PhaseIdentityReport(lhs, rhs, abs(lhs - rhs))


def integrand_identity_check(phases: Sequence) -> PhaseIdentityReport:
    """``prod 1/(1 - xi_j) = exp(pi i eta_A / 4) prod 1/|1 - xi_j|`` over nonzero phases."""
    ps = [_phase(p) for p in phases]
    if any(p == 0 for p in ps):
        raise XiIsOne("conormal phases must be nonzero")
    lhs = 1 + 0j
    mod = 1.0
    for p in ps:
        xi = cmath.exp(2j * math.pi * float(p))
        lhs /= 1 - xi
        mod /= abs(1 - xi)
    ea = -4 * tr_log(ps) + 2 * len(ps)
    rhs = cmath.exp(1j * math.pi * float(ea) / 4) * mod
    return PhaseIdentityReport(lhs, rhs, abs(lhs - rhs) / max(1.0, abs(lhs)))


@dataclass(frozen=True)
class SpectralFlowReport:
    value: Fraction
    integral: bool
    cs_lift: Fraction
    flags: tuple[str, ...] = field(default_factory=tuple)


def spectral_flow(cs, rho, h: int, dim_g: int, b1: int, dim_h0: int, dim_h1: int) -> SpectralFlowReport:
    """``SF = -4h CS + rho/2 - dimG (1 + b1)/2 + (dim H^0 + dim H^1)/2`` for the given lift of CS.

    A non-integral value is flagged, never rounded.
    """
    cs = Fraction(cs)
    rho = Fraction(rho)
    value = -4 * h * cs + rho / 2 - Fraction(dim_g * (1 + b1), 2) + Fraction(dim_h0 + dim_h1, 2)
    integral = value.denominator == 1
    flags = () if integral else ("non-integral spectral flow: inconsistent input data",)
    return SpectralFlowReport(value, integral, cs, flags)
