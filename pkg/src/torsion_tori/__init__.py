"""Torsion, eta and rho invariants of finite order mapping tori.

Exact rational and complex linear algebra for cochain complexes, their
torsion, algebraic mapping tori, twisted cohomology of surface groups, and
the leading-order asymptotics assembled from per-component data.
"""
from .cochain import CochainComplex, CohomologyData, cohomology, torsion
from .exact_sequences import ShortExactSequence, long_exact_sequence, multiplicativity_check
from .mapping_torus import (
    ChainEndomorphism,
    build_mapping_torus,
    oracle_triangle,
    torsion_closed_form_finite_order,
    torsion_closed_form_general,
    torsion_via_wang,
)
from .spectral import EigenPhaseData, rho_finite_order, spectral_flow

__version__ = "0.1.0"

__all__ = [
    "CochainComplex",
    "CohomologyData",
    "cohomology",
    "torsion",
    "ShortExactSequence",
    "long_exact_sequence",
    "multiplicativity_check",
    "ChainEndomorphism",
    "build_mapping_torus",
    "oracle_triangle",
    "torsion_closed_form_finite_order",
    "torsion_closed_form_general",
    "torsion_via_wang",
    "EigenPhaseData",
    "rho_finite_order",
    "spectral_flow",
]
