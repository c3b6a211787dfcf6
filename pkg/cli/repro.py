"""Reproduction suite: every headline construction replayed on seeded instances."""
import logging
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from ballcones import (CenteredTensor, certify_entangleable_semiquantum, check_clifford_relations, clifford_family,
                       lorentz_max_membership_centered, lorentz_min_membership_centered,
                       simplex_asphericity_squared, simplex_asphericity_value)
from cones.hermitian import vector_to_complex
from cones.library import (cone_over_polytope, cross_polytope_cone, cube_cone, diamond_cone, orthant, polygon_cone,
                           square_cone, triangle_cone)
from cones.models import PsdCone
from cones.operations import facet_functionals
from cones.polygons import convex_hull
from dim3lab import H_INV, build_omega, entangle_3d
from exactnum.linalg import identity, matmul, rank
from gptnorms import (SymmetricGpt, apply_local_positive_maps, diamond_space, entanglement_robustness,
                      hexagon_space, injective_norm, local_positive_map, omega_state, projected_tensor,
                      projective_norm, projective_norm_lp, robustness_lower_bound, square_space, unit_value)
from retractlab import certify_entangleable_polyhedral
from tensorcone import (TensorElement, max_membership, min_membership, min_tensor_generators, nuclearity_bruteforce,
                        verify_certificate)
from tensorcone.products import bilinear_value
from utils.config import get_toolkit_config_defaults
from utils.exceptions import ClassicalConeError, InvalidConeError

logger = logging.getLogger(__name__)

F = Fraction


@dataclass
class ReproContext:
    seed: int
    tol: float
    counts: Dict[str, int]
    psd_samples: int = 1000
    retract_samples: int = 200
    caps: Dict[str, int] = field(default_factory=dict)
    # test hook: replaces built-in constants by name
    overrides: Dict[str, Any] = field(default_factory=dict)

    def rng(self, salt: str) -> random.Random:
        return random.Random(f"{self.seed}:{salt}")

    def constant(self, name: str, default: Any) -> Any:
        return self.overrides.get(name, default)


CriterionFn = Callable[[ReproContext], Tuple[bool, Any]]
CRITERIA: Dict[str, Tuple[str, CriterionFn]] = {}


def criterion(name: str, description: str):
    def register(fn: CriterionFn) -> CriterionFn:
        CRITERIA[name] = (description, fn)
        return fn
    return register


class ReproResults:
    """Track criterion outcomes."""
    def __init__(self):
        self.passed = 0
        self.failed = 0
        self.total = 0
        self.results: List[Dict[str, Any]] = []
        self.failed_tests: List[Dict[str, Any]] = []

    def add_result(self, name: str, passed: bool, measured: Any = None, seconds: float = 0.0,
                   error: Optional[str] = None):
        self.total += 1
        result = {"name": name, "passed": passed, "measured": measured, "seconds": round(seconds, 3),
                  "error": error}
        self.results.append(result)
        if passed:
            self.passed += 1
            logger.info(f"[PASS] {name}: {measured}")
        else:
            self.failed += 1
            self.failed_tests.append(result)
            logger.warning(f"[FAIL] {name}: {error or measured}")

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.results, columns=["name", "passed", "measured", "seconds", "error"])

    def summary_text(self) -> str:
        lines = ["Reproduction Summary", "====================",
                 self.to_frame()[["name", "passed", "measured", "seconds"]].to_string(index=False),
                 f"Total: {self.total}  Passed: {self.passed}  Failed: {self.failed}"]
        for test in self.failed_tests:
            lines.append(f"[FAIL] {test['name']}: {test.get('error') or test.get('measured')}")
        return "\n".join(lines)

    def to_dict(self) -> Dict[str, Any]:
        return {"total": self.total, "passed": self.passed, "failed": self.failed, "results": self.results}

    def __len__(self):
        return self.total

    def __iter__(self):
        return iter(self.results)


def _open_unit(rng: random.Random, den: int = 97) -> Fraction:
    return F(rng.randint(-den + 1, den - 1), den)


def _circle_point(rng: random.Random) -> Tuple[Fraction, Fraction]:
    t = F(rng.randint(-60, 60), rng.randint(1, 20))
    return (1 - t * t) / (1 + t * t), 2 * t / (1 + t * t)


def random_polygon(rng: random.Random, low: int = 4, high: int = 7) -> List[Tuple[Fraction, Fraction]]:
    """Rational points on the unit circle, all of them vertices of their hull."""
    k = rng.randint(low, high)
    points = set()
    while len(points) < k:
        points.add(_circle_point(rng))
    return convex_hull(points)


def random_polyhedral_cone(rng: random.Random, dim: int, max_generators: int = 8):
    while True:
        k = rng.randint(dim, max_generators)
        points = [tuple(F(rng.randint(-3, 3)) for _ in range(dim - 1)) for _ in range(k)]
        lifted = [p + (F(1),) for p in points]
        if rank(np.array(lifted, dtype=object)) < dim:
            continue
        try:
            return cone_over_polytope(points)
        except InvalidConeError:
            continue


def random_tensor(rng: random.Random, shape: Tuple[int, int]) -> TensorElement:
    return TensorElement([[_open_unit(rng, 13) for _ in range(shape[1])] for _ in range(shape[0])])


@criterion("omega-identity", "w11 + w12 + w21 - w22 = 2 w33 for random kite parameters")
def check_omega_identity(ctx: ReproContext) -> Tuple[bool, Any]:
    rng = ctx.rng("omega")
    factor = ctx.constant("omega_factor", 2)
    n = ctx.counts.get("omega_instances", 1000)
    bad = 0
    for _ in range(n):
        w = build_omega(*(_open_unit(rng) for _ in range(4))).matrix
        if w[0][0] + w[0][1] + w[1][0] - w[1][1] != factor * w[2][2]:
            bad += 1
    return bad == 0, f"{n - bad}/{n} exact"


@criterion("diamond-witness", "H^-1 is in the maximal and outside the minimal diamond product")
def check_diamond_witness(ctx: ReproContext) -> Tuple[bool, Any]:
    c = diamond_cone()
    z = TensorElement(H_INV)
    mx = max_membership(c, c, z)
    mn = min_membership(c, c, z)
    ok = mx.member and len(mx.evidence) == 16 and not mn.inside and mn.value <= -1
    return ok, f"max member {mx.member}, min value {mn.value}"


@criterion("polygon-pairs", "entangle_3d certifies random polygon pairs and rejects triangles")
def check_polygon_pairs(ctx: ReproContext) -> Tuple[bool, Any]:
    rng = ctx.rng("polygons")
    n = ctx.counts.get("polygon_pairs", 10)
    verified = 0
    for _ in range(n):
        c1, c2 = polygon_cone(random_polygon(rng)), polygon_cone(random_polygon(rng))
        cert = entangle_3d(c1, c2, max_slides=ctx.caps.get("max_corner_slides", 8))
        if verify_certificate(cert, c1, c2, ctx.tol):
            verified += 1
    try:
        entangle_3d(triangle_cone(), square_cone())
        rejected = False
    except ClassicalConeError:
        rejected = True
    return verified == n and rejected, f"{verified}/{n} verified, triangle rejected: {rejected}"


@criterion("easy-direction", "nuclearity_bruteforce(R+^3, C) is nuclear for random polyhedral C")
def check_easy_direction(ctx: ReproContext) -> Tuple[bool, Any]:
    rng = ctx.rng("easy")
    n = ctx.counts.get("easy_direction_cones", 20)
    nuclear = 0
    for k in range(n):
        c = random_polyhedral_cone(rng, 3 + k % 2)
        if nuclearity_bruteforce(orthant(3), c, ctx.caps.get("nuclearity_product_dim", 36)).nuclear:
            nuclear += 1
    return nuclear == n, f"{nuclear}/{n} nuclear"


@criterion("polyhedral-descent", "certify_entangleable_polyhedral on cube/cube and cube/cross-polytope")
def check_polyhedral_descent(ctx: ReproContext) -> Tuple[bool, Any]:
    verified = 0
    dual_steps = 0
    pairs = [(cube_cone(3), cube_cone(3)), (cube_cone(3), cross_polytope_cone(3))]
    for c1, c2 in pairs:
        cert = certify_entangleable_polyhedral(c1, c2)
        verified += int(verify_certificate(cert, c1, c2, ctx.tol))
        for step in cert.proof_chain:
            if step.get("step") == "descent":
                for side in ("first", "second"):
                    dual_steps += sum(1 for s in step.get(side, []) if s["kind"] == "dual_facet_retract")
    return verified == len(pairs) and dual_steps >= 1, f"{verified}/{len(pairs)} verified, {dual_steps} dual step(s)"


@criterion("ice-cream-gap", "B = Id_n, t = 1 is in the max product and leaves the min product below r = n")
def check_ice_cream_gap(ctx: ReproContext) -> Tuple[bool, Any]:
    failures = []
    for n in range(2, 7):
        z = CenteredTensor.identity(n)
        if not lorentz_max_membership_centered(z, ctx.tol):
            failures.append(f"max n={n}")
        if lorentz_min_membership_centered(z, n - 1e-6, ctx.tol):
            failures.append(f"min below n={n}")
        if not lorentz_min_membership_centered(z, n, ctx.tol):
            failures.append(f"min at n={n}")
    return not failures, ", ".join(failures) or "n = 2..6"


@criterion("clifford", "Clifford relations, phi psi = 2^n Id, and the eigenvalues t +- |x| of psi(x)")
def check_clifford(ctx: ReproContext) -> Tuple[bool, Any]:
    rng = np.random.default_rng(ctx.seed)
    worst = 0.0
    problems = []
    for n in range(1, 5):
        family = clifford_family(n)
        problems += check_clifford_relations(family)
        expected = identity(2 * n + 1) * (2 ** n)
        if not (matmul(family.phi(), family.psi()) == expected).all():
            problems.append(f"phi psi != 2^{n} Id")
        psi = np.array(family.psi(), dtype=float)
        for _ in range(ctx.psd_samples // 4):
            x = rng.normal(size=2 * n + 1)
            eig = np.linalg.eigvalsh(vector_to_complex(psi @ x, family.size))
            norm = float(np.linalg.norm(x[:-1]))
            worst = max(worst, abs(eig[0] - (x[-1] - norm)), abs(eig[-1] - (x[-1] + norm)))
    return not problems and worst <= ctx.tol * 10, f"max eigenvalue deviation {worst:.2e}"


@criterion("semiquantum", "certify_entangleable_semiquantum(square cone, 2) replays and passes spot checks")
def check_semiquantum(ctx: ReproContext) -> Tuple[bool, Any]:
    c = square_cone()
    cert = certify_entangleable_semiquantum(c, 2, samples=ctx.psd_samples, seed=ctx.seed,
                                           retract_samples=ctx.retract_samples)
    spot = next((s for s in cert.proof_chain if s.get("step") == "rank_one_spot_check"), {})
    ok = verify_certificate(cert, c, PsdCone(n=2), ctx.tol) and bool(spot.get("passed"))
    return ok, f"separation {cert.separation_value}, spot minimum {spot.get('minimum')}"


def random_min_member(rng: random.Random, cone) -> TensorElement:
    """Nonnegative rational combination of a few products of extreme rays."""
    products = min_tensor_generators(cone, cone)
    total = TensorElement([[F(0)] * cone.dim for _ in range(cone.dim)])
    for p in rng.sample(products, min(len(products), rng.randint(1, 4))):
        total = total + p.scaled(F(rng.randint(1, 9), rng.randint(1, 5)))
    return total


def random_max_member(rng: random.Random, cone, centre: Sequence[Fraction]) -> TensorElement:
    """Random tensor pushed along gamma (x) gamma until every dual pair is nonnegative on it."""
    m = random_tensor(rng, (cone.dim, cone.dim))
    duals = facet_functionals(cone)
    shift = F(0)
    for f in duals:
        fc = sum((a * b for a, b in zip(f, centre)), F(0))
        for g in duals:
            gc = sum((a * b for a, b in zip(g, centre)), F(0))
            shift = max(shift, -bilinear_value(f, m, g) / (fc * gc))
    shift += F(rng.randint(0, 3), 4)
    return m + TensorElement.product(centre, centre).scaled(shift)


@criterion("norm-duality", "eps <= pi, exact LP duality and the four norm/cone implications")
def check_norm_duality(ctx: ReproContext) -> Tuple[bool, Any]:
    rng = ctx.rng("norms")
    n = ctx.counts.get("norm_instances", 100)
    failures = []
    for space in (square_space(), diamond_space(), hexagon_space()):
        s = SymmetricGpt.from_space(space)
        c = s.gpt.cone
        label = f"{len(space.vertices)}-gon"
        for k in range(n):
            z = random_tensor(rng, (2, 2))
            eps = injective_norm(space, space, z)
            result = projective_norm_lp(space, space, z)
            if eps > result.value or result.dual_value != result.value:
                failures.append(f"{label} {k}: duality")
            # (c) pi(z) <= 1 puts omega(z) in the minimal product; (d) eps(z) <= 1 in the maximal one
            if result.value > 0 and not min_membership(c, c, omega_state(s, s, z.scaled(1 / result.value))).inside:
                failures.append(f"{label} {k}: (c)")
            if eps > 0 and not max_membership(c, c, omega_state(s, s, z.scaled(1 / eps))).member:
                failures.append(f"{label} {k}: (d)")
            # (a) minimal-product members have pi(Pi (x) Pi omega) <= (u (x) u)(omega)
            inside = random_min_member(rng, c)
            if not min_membership(c, c, inside).inside:
                failures.append(f"{label} {k}: sampled min member rejected")
            elif projective_norm(space, space, projected_tensor(s, s, inside)) > unit_value(s, s, inside):
                failures.append(f"{label} {k}: (a)")
            # (b) maximal-product members have eps(Pi (x) Pi omega) <= (u (x) u)(omega)
            member = random_max_member(rng, c, s.centre)
            if not max_membership(c, c, member).member:
                failures.append(f"{label} {k}: sampled max member rejected")
            elif injective_norm(space, space, projected_tensor(s, s, member)) > unit_value(s, s, member):
                failures.append(f"{label} {k}: (b)")
    return not failures, "; ".join(failures[:3]) or f"{n} instances per ball, implications (a)-(d)"



@criterion("squit-robustness", "square-ball CHSH tensor: pi = 2, eps = 1, bound 1/2 <= robustness")
def check_squit_robustness(ctx: ReproContext) -> Tuple[bool, Any]:
    s = SymmetricGpt.from_space(square_space())
    z = TensorElement([[1, 1], [1, -1]])
    pi = projective_norm(s.space, s.space, z)
    eps = injective_norm(s.space, s.space, z)
    bound = robustness_lower_bound(s, s, z)
    value = entanglement_robustness(s.gpt, s.gpt, omega_state(s, s, z)).value
    ok = pi == 2 and eps == 1 and bound == F(1, 2) and value >= bound
    return ok, f"pi {pi}, eps {eps}, bound {bound}, robustness {value}"


@criterion("asphericity", "regular simplex circumradius/inradius equals d")
def check_asphericity(ctx: ReproContext) -> Tuple[bool, Any]:
    ok = all(simplex_asphericity_squared(d) == d * d and abs(simplex_asphericity_value(d) - d) <= ctx.tol
             for d in range(2, 7))
    return ok, "d = 2..6"


def _random_state(rng: random.Random, s: SymmetricGpt) -> Tuple[Fraction, ...]:
    gens = s.gpt.cone.generators
    weights = [F(rng.randint(1, 9)) for _ in gens]
    total = sum(weights)
    return tuple(sum((w * g[i] for w, g in zip(weights, gens)), F(0)) / total for i in range(s.gpt.dim))


@criterion("robustness-monotonicity", "robustness does not increase under local positive normalized maps")
def check_monotonicity(ctx: ReproContext) -> Tuple[bool, Any]:
    rng = ctx.rng("monotone")
    n = ctx.counts.get("monotonicity_instances", 50)
    spaces = [square_space(), diamond_space()]
    failures = 0
    for k in range(n):
        s1, s2 = SymmetricGpt.from_space(spaces[k % 2]), SymmetricGpt.from_space(spaces[(k // 2) % 2])
        z = random_tensor(rng, (2, 2))
        eps = injective_norm(s1.space, s2.space, z)
        if eps == 0:
            continue
        omega = omega_state(s1, s2, z.scaled(1 / eps))
        lam1 = local_positive_map(s1.gpt, F(rng.randint(0, 8), 8), _random_state(rng, s1))
        lam2 = local_positive_map(s2.gpt, F(rng.randint(0, 8), 8), _random_state(rng, s2))
        before = entanglement_robustness(s1.gpt, s2.gpt, omega).value
        after = entanglement_robustness(s1.gpt, s2.gpt, apply_local_positive_maps(lam1, lam2, omega)).value
        if after > before:
            failures += 1
    return failures == 0, f"{n - failures}/{n} monotone"


def list_criteria() -> List[Tuple[str, str]]:
    return [(name, description) for name, (description, _) in CRITERIA.items()]


def run_repro(config: Optional[Dict[str, Any]] = None, only: Optional[Sequence[str]] = None,
              seed: Optional[int] = None, tol: Optional[float] = None,
              overrides: Optional[Dict[str, Any]] = None) -> ReproResults:
    """Run the selected criteria; failures and errors are recorded, never raised."""
    config = config or get_toolkit_config_defaults()
    ctx = ReproContext(
        seed=seed if seed is not None else config['sampling']['seed'],
        tol=tol if tol is not None else config['numerics']['float_tol'],
        counts=dict(config.get('repro', {})),
        psd_samples=config['sampling'].get('psd_samples', 1000),
        retract_samples=config['sampling'].get('retract_samples', 200),
        caps=dict(config.get('caps', {})),
        overrides=dict(overrides or {}),
    )
    names = list(only) if only else list(CRITERIA)
    results = ReproResults()
    for name in names:
        if name not in CRITERIA:
            results.add_result(name, False, error="unknown criterion")
            continue
        _, fn = CRITERIA[name]
        start = time.perf_counter()
        try:
            passed, measured = fn(ctx)
            results.add_result(name, passed, measured, time.perf_counter() - start)
        except Exception as e:
            logger.error(f"criterion {name} raised: {str(e)}", exc_info=True)
            results.add_result(name, False, seconds=time.perf_counter() - start, error=str(e))
    return results
