"""
Minimal and maximal tensor products, nuclearity, and separation certificates.
"""
from .models import (EvidenceEntry, NuclearityResult, NuclearityVerdict, RightFactor, SeparationCertificate,
                     TensorElement)
from .products import (apply_local_maps, max_membership, min_membership, min_tensor_generators, pair_functional,
                       pullback_functional, tensor_product)
from .certificates import build_certificate, certify, verify_certificate
from .nuclearity import nuclearity_bruteforce

__all__ = [
    'EvidenceEntry', 'NuclearityResult', 'NuclearityVerdict', 'RightFactor', 'SeparationCertificate',
    'TensorElement',
    'apply_local_maps', 'max_membership', 'min_membership', 'min_tensor_generators', 'pair_functional',
    'pullback_functional', 'tensor_product',
    'build_certificate', 'certify', 'verify_certificate', 'nuclearity_bruteforce',
]
