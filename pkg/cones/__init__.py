"""
Cone representations and the queries defined on them.
"""
from .models import (ClassicalCone, Cone, ConeKind, LorentzCone, PolygonCone, PolyhedralCone, PsdCone,
                     as_polyhedral, cone_from_dict, is_polyhedral)
from .operations import (Membership, MembershipResult, apply_linear, dual_cone, extreme_rays, facets,
                         facet_functionals, is_classical, membership, polygon_section,
                         strictly_positive_functional)

__all__ = [
    'ClassicalCone', 'Cone', 'ConeKind', 'LorentzCone', 'PolygonCone', 'PolyhedralCone', 'PsdCone',
    'as_polyhedral', 'cone_from_dict', 'is_polyhedral',
    'Membership', 'MembershipResult', 'apply_linear', 'dual_cone', 'extreme_rays', 'facets',
    'facet_functionals', 'is_classical', 'membership', 'polygon_section', 'strictly_positive_functional',
]
