"""Double description (Motzkin) enumeration of the extreme rays of {f : f.g >= 0 for all g}.

Given generators of a proper cone C, the routine returns the extreme rays of C*,
which are at the same time the facet normals of C.
"""
import logging
import threading
from fractions import Fraction
from typing import FrozenSet, List, Sequence, Tuple

import numpy as np
from cachetools import LRUCache, cached
from cachetools.keys import hashkey

from exactnum.linalg import as_exact, inverse, primitive_integer_vector, rank
from utils.config import DEFAULT_MAX_DD_DIM, DEFAULT_MAX_GENERATORS
from utils.exceptions import CapExceededError, InvalidConeError

logger = logging.getLogger(__name__)

Vector = Tuple[Fraction, ...]

_dd_cache = LRUCache(maxsize=512)
_dd_lock = threading.Lock()


def _dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b) if x != 0 and y != 0), Fraction(0))


def _normalize(v: Sequence[Fraction]) -> Vector:
    return tuple(primitive_integer_vector(list(v)))


def dual_extreme_rays(
    generators: Sequence[Sequence],
    dim: int,
    max_dim: int = DEFAULT_MAX_DD_DIM,
    max_generators: int = DEFAULT_MAX_GENERATORS
) -> List[Vector]:
    """Extreme rays of the dual of cone(generators), as primitive integer vectors in sorted order."""
    if dim > max_dim:
        raise CapExceededError("cone dimension", dim, max_dim)
    if len(generators) > max_generators:
        raise CapExceededError("generator count", len(generators), max_generators)
    key = tuple(tuple(as_exact(g)) for g in generators)
    return list(_dual_extreme_rays(key, dim))


@cached(cache=_dd_cache, key=lambda gens, dim: hashkey(gens, dim), lock=_dd_lock)
def _dual_extreme_rays(generators: Tuple[Vector, ...], dim: int) -> Tuple[Vector, ...]:
    gens = [tuple(g) for g in generators]
    for g in gens:
        if len(g) != dim:
            raise InvalidConeError(f"generator of length {len(g)} in dimension {dim}")
    if not gens or rank(np.array(gens, dtype=object)) != dim:
        raise InvalidConeError("generators do not span the ambient space")

    # Greedy choice of d independent constraints seeds the iteration.
    chosen: List[int] = []
    for i, g in enumerate(gens):
        trial = [gens[j] for j in chosen] + [g]
        if rank(np.array(trial, dtype=object)) == len(trial):
            chosen.append(i)
        if len(chosen) == dim:
            break

    basis_inverse = inverse(np.array([gens[i] for i in chosen], dtype=object))
    rays: List[Vector] = []
    zero_sets: List[FrozenSet[int]] = []
    for j in range(dim):
        rays.append(_normalize(basis_inverse[:, j]))
        zero_sets.append(frozenset(chosen[k] for k in range(dim) if k != j))

    remaining = [i for i in range(len(gens)) if i not in chosen]
    for step, index in enumerate(remaining):
        a = gens[index]
        values = [_dot(a, r) for r in rays]
        positive = [k for k, v in enumerate(values) if v > 0]
        negative = [k for k, v in enumerate(values) if v < 0]
        if not negative:
            zero_sets = [z | {index} if values[k] == 0 else z for k, z in enumerate(zero_sets)]
            continue

        new_rays: List[Vector] = []
        new_zero: List[FrozenSet[int]] = []
        for k, v in enumerate(values):
            if v >= 0:
                new_rays.append(rays[k])
                new_zero.append(zero_sets[k] | {index} if v == 0 else zero_sets[k])

        for p in positive:
            for n in negative:
                common = zero_sets[p] & zero_sets[n]
                if len(common) < dim - 2:
                    continue
                if any(common <= zero_sets[r] for r in range(len(rays)) if r != p and r != n):
                    continue
                vp, vn = values[p], values[n]
                combined = [vp * xn - vn * xp for xp, xn in zip(rays[p], rays[n])]
                new_rays.append(_normalize(combined))
                new_zero.append(common | {index})

        rays, zero_sets = new_rays, new_zero
        logger.debug(f"DD step {step + 1}/{len(remaining)}: {len(rays)} rays")

    unique = sorted(set(rays))
    logger.debug(f"DD finished: {len(gens)} generators in dim {dim} -> {len(unique)} dual rays")
    return tuple(unique)


def clear_cache() -> None:
    with _dd_lock:
        _dd_cache.clear()
