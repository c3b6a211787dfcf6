"""
Symmetric GPTs, tensor norms and entanglement robustness.
"""
from .models import (REFERENCE_CONSTANTS, BallKind, Gpt, NormedSpace, ProjectiveNormResult, SymmetricGpt,
                     diamond_space, euclidean_space, hexagon_space, square_space)
from .norms import (dual_norm, dual_symmetric_gpt, gauge_norm, injective_norm, omega_state, projected_tensor,
                    projective_norm, projective_norm_lp, space_norm, unit_value)
from .robustness import (RobustnessResult, apply_local_positive_maps, entanglement_robustness, local_positive_map,
                         robustness_lower_bound)

__all__ = [
    'REFERENCE_CONSTANTS', 'BallKind', 'Gpt', 'NormedSpace', 'ProjectiveNormResult', 'SymmetricGpt',
    'diamond_space', 'euclidean_space', 'hexagon_space', 'square_space',
    'dual_norm', 'dual_symmetric_gpt', 'gauge_norm', 'injective_norm', 'omega_state', 'projected_tensor',
    'projective_norm', 'projective_norm_lp', 'space_norm', 'unit_value',
    'RobustnessResult', 'apply_local_positive_maps', 'entanglement_robustness', 'local_positive_map',
    'robustness_lower_bound',
]
