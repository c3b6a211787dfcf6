"""
Retracts between cones, descent to dimension three, and certificate lifting.
"""
from .models import DescentStep, DescentTrace, RetractPair, RetractVerification, StepKind
from .retracts import (check_retract, compose_retracts, dualize_retract, facet_retract, identity_retract,
                       make_retract, sample_extreme_rays, section_retract, verify_retract)
from .descent import descend_to_3d
from .lifting import certify_entangleable_polyhedral, lift_certificate

__all__ = [
    'DescentStep', 'DescentTrace', 'RetractPair', 'RetractVerification', 'StepKind',
    'check_retract', 'compose_retracts', 'dualize_retract', 'facet_retract', 'identity_retract',
    'make_retract', 'sample_extreme_rays', 'section_retract', 'verify_retract',
    'descend_to_3d', 'certify_entangleable_polyhedral', 'lift_certificate',
]
