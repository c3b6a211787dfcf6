"""
Three-dimensional toolkit: kites, polygon sandwiching and the CHSH witness.
"""
from .kites import H, H_INV, Kite, kite_matrix
from .sandwich import (SandwichResult, area_maximal_quadrilaterals, corner_exclusion_evidence, max_area_quadrilateral,
                       sandwich, verify_sandwich)
from .witness import (build_omega, chsh_functional, chsh_value, entangle_3d, omega_matrix, polygon_base,
                      strict_separation_margin)

__all__ = [
    'H', 'H_INV', 'Kite', 'kite_matrix',
    'SandwichResult', 'area_maximal_quadrilaterals', 'max_area_quadrilateral', 'sandwich', 'verify_sandwich',
    'build_omega', 'chsh_functional', 'chsh_value', 'entangle_3d', 'omega_matrix', 'polygon_base',
    'strict_separation_margin', 'corner_exclusion_evidence',
]
