import logging

from cones.double_description import dual_extreme_rays
from cones.models import Cone, as_polyhedral
from cones.operations import dual_cone
from utils.config import DEFAULT_NUCLEARITY_PRODUCT_DIM
from utils.exceptions import CapExceededError

from .certificates import certify
from .models import NuclearityResult, NuclearityVerdict, TensorElement
from .products import min_membership, min_tensor_generators

logger = logging.getLogger(__name__)


def nuclearity_bruteforce(c1: Cone, c2: Cone,
                          max_product_dim: int = DEFAULT_NUCLEARITY_PRODUCT_DIM) -> NuclearityResult:
    """Decide whether the minimal and maximal tensor products coincide.

    The facets of the minimal product are found by double description. The pair is
    nuclear iff each facet functional lies in the minimal product of the dual cones;
    a facet outside it yields, by LP duality, a witness in the maximal product that the
    facet separates from the minimal product.
    """
    p1 = as_polyhedral(c1)
    p2 = as_polyhedral(c2)
    product_dim = p1.dim * p2.dim
    if product_dim > max_product_dim:
        raise CapExceededError("tensor product dimension", product_dim, max_product_dim)

    shape = (p1.dim, p2.dim)
    generators = [g.vec() for g in min_tensor_generators(p1, p2)]
    facet_normals = dual_extreme_rays(generators, product_dim, max_dim=max_product_dim,
                                      max_generators=max(len(generators), 1))
    logger.info(f"min product {shape}: {len(generators)} generators, {len(facet_normals)} facets")

    d1 = dual_cone(p1)
    d2 = dual_cone(p2)
    for index, normal in enumerate(facet_normals):
        facet = TensorElement.from_vec(normal, shape)
        outcome = min_membership(d1, d2, facet)
        if outcome.inside:
            continue
        witness = outcome.functional
        logger.info(f"facet {index} is not a sum of product functionals; pair is entangleable")
        cert = certify(p1, p2, witness, facet, proof_chain=(
            {"step": "nuclearity_bruteforce", "facet_index": index, "facet_count": len(facet_normals)},
        ))
        return NuclearityResult(NuclearityVerdict.ENTANGLEABLE, certificate=cert, facet_count=len(facet_normals))

    return NuclearityResult(NuclearityVerdict.NUCLEAR, facet_count=len(facet_normals))
