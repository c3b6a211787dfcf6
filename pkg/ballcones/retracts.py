"""Retracts among PSD and Lorentz cones: Clifford, pinching, the 2x2 isomorphism and coordinate drops."""
import logging
from fractions import Fraction

from cones.hermitian import off_diagonal_pairs
from cones.models import LorentzCone, PsdCone
from exactnum.linalg import as_exact
from retractlab.models import RetractPair
from retractlab.retracts import compose_retracts, make_retract
from utils.config import DEFAULT_RETRACT_SAMPLES, DEFAULT_SEED
from utils.exceptions import ParameterRangeError

from .clifford import I2, PAULI_X, PAULI_Y, PAULI_Z, clifford_family, hermitian_vector, trace_functional

logger = logging.getLogger(__name__)


def _hermitian_index(n: int):
    """Coordinate positions: diagonal i -> i, pair (i, j) -> (s, a) positions."""
    index = {('d', i): i for i in range(n)}
    k = n
    for i, j in off_diagonal_pairs(n):
        index[('s', i, j)] = k
        index[('a', i, j)] = k + 1
        k += 2
    return index


def lorentz_psd_retract(n: int, samples: int = DEFAULT_RETRACT_SAMPLES, seed: int = DEFAULT_SEED) -> RetractPair:
    """L_{2n} as a retract of PSD_{2^n}: phi = (tr(A U_i), tr A) / 2^n and psi(x) = sum x_i U_i + x_{2n+1} Id.

    Positivity of psi follows from (sum x_i U_i)^2 = |x|^2 Id; both sides are also sampled.
    """
    family = clifford_family(n)
    phi = family.phi() * Fraction(1, family.size)
    psi = family.psi()
    return make_retract(PsdCone(n=family.size), LorentzCone(n=2 * n), phi, psi,
                        label=f"clifford n={n}", samples=samples, seed=seed)


def psd_pinching_retract(k: int, n: int, samples: int = DEFAULT_RETRACT_SAMPLES,
                         seed: int = DEFAULT_SEED) -> RetractPair:
    """PSD_k inside PSD_n: compression to the leading k x k corner and zero-padding back."""
    if k < 1 or k > n:
        raise ParameterRangeError("k", k, f"[1, {n}]")
    source_index = _hermitian_index(n)
    target_index = _hermitian_index(k)
    phi = [[0] * (n * n) for _ in range(k * k)]
    for key, pos in target_index.items():
        phi[pos][source_index[key]] = 1
    psi = as_exact(phi).T
    return make_retract(PsdCone(n=n), PsdCone(n=k), phi, psi, label=f"pinching {n}->{k}",
                        samples=samples, seed=seed)


def psd_lorentz_iso_2x2(samples: int = DEFAULT_RETRACT_SAMPLES, seed: int = DEFAULT_SEED) -> RetractPair:
    """PSD_2 onto L_3: A -> (tr AX, tr AY, tr AZ, tr A) / 2, inverse x -> x1 X + x2 Y + x3 Z + t Id."""
    basis = (PAULI_X, PAULI_Y, PAULI_Z, I2)
    phi = as_exact([trace_functional(b) for b in basis]) * Fraction(1, 2)
    psi = as_exact([hermitian_vector(b) for b in basis]).T
    return make_retract(PsdCone(n=2), LorentzCone(n=3), phi, psi, label="psd2 ~ L3", samples=samples, seed=seed)


def lorentz_coordinate_retract(n: int, m: int, samples: int = DEFAULT_RETRACT_SAMPLES,
                               seed: int = DEFAULT_SEED) -> RetractPair:
    """L_m inside L_n (m <= n): keep the first m coordinates and the apex."""
    if m < 1 or m > n:
        raise ParameterRangeError("m", m, f"[1, {n}]")
    kept = list(range(m)) + [n]
    phi = [[1 if j == i else 0 for j in range(n + 1)] for i in kept]
    psi = as_exact(phi).T
    return make_retract(LorentzCone(n=n), LorentzCone(n=m), phi, psi, label=f"lorentz {n}->{m}",
                        samples=samples, seed=seed)


def psd_to_disk_retract(n: int, samples: int = DEFAULT_RETRACT_SAMPLES, seed: int = DEFAULT_SEED) -> RetractPair:
    """PSD_n -> PSD_2 -> L_3 -> L_2, composed and verified."""
    if n < 2:
        raise ParameterRangeError("n", n, "[2, inf)")
    chain = psd_lorentz_iso_2x2(samples, seed)
    if n > 2:
        chain = compose_retracts(psd_pinching_retract(2, n, samples, seed), chain)
    logger.debug(f"psd_to_disk_retract: n={n}")
    return compose_retracts(chain, lorentz_coordinate_retract(3, 2, samples, seed))

