"""Grid homology: gradings, the tilde complex, homology and Euler characteristics."""

from .complex import TildeComplex, tilde_differential
from .euler import (
    ROUTES,
    euler,
    euler_tilde,
    euler_via_det,
    euler_via_gamma,
    euler_via_homology,
    hat_poincare,
    nu_half_units,
    tilde_poincare,
    winding_matrix,
)
from .gradings import GradingTables, alexander, base_state, maslov, sign_maslov_constant
from .homology import PoincarePoly, hat_from_tilde, tilde_homology

__all__ = [
    "GradingTables",
    "PoincarePoly",
    "ROUTES",
    "TildeComplex",
    "alexander",
    "base_state",
    "euler",
    "euler_tilde",
    "euler_via_det",
    "euler_via_gamma",
    "euler_via_homology",
    "hat_from_tilde",
    "hat_poincare",
    "maslov",
    "nu_half_units",
    "sign_maslov_constant",
    "tilde_differential",
    "tilde_homology",
    "tilde_poincare",
    "winding_matrix",
]
