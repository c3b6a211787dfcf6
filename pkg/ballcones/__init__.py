"""
Lorentz and PSD cones: centered-tensor criteria, Clifford and pinching retracts, semiquantum certificates.
"""
from .centered import (CenteredDecomposition, CenteredTensor, lorentz_max_membership_centered,
                       lorentz_min_membership_centered, min_decomposition_centered)
from .clifford import CliffordFamily, check_clifford_relations, clifford_family
from .retracts import (lorentz_coordinate_retract, lorentz_psd_retract, psd_lorentz_iso_2x2, psd_pinching_retract,
                       psd_to_disk_retract)
from .semiquantum import certify_entangleable_semiquantum, disk_level, spot_check_functional
from .icecream import certify_ice_cream_frame, ice_cream_frame_slacks
from .asphericity import simplex_asphericity_squared, simplex_asphericity_value, simplex_radii_squared

__all__ = [
    'CenteredDecomposition', 'CenteredTensor', 'lorentz_max_membership_centered',
    'lorentz_min_membership_centered', 'min_decomposition_centered',
    'CliffordFamily', 'check_clifford_relations', 'clifford_family',
    'lorentz_coordinate_retract', 'lorentz_psd_retract', 'psd_lorentz_iso_2x2', 'psd_pinching_retract',
    'psd_to_disk_retract',
    'certify_entangleable_semiquantum', 'disk_level', 'spot_check_functional',
    'certify_ice_cream_frame', 'ice_cream_frame_slacks',
    'simplex_asphericity_squared', 'simplex_asphericity_value', 'simplex_radii_squared',
]
