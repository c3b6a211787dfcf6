"""Command-line front door: cone analysis, certificates and the reproduction suite."""
import argparse
import logging
import sys
import time
from pathlib import Path
from typing import Any, Callable, Dict, Optional, Sequence, Tuple

from ballcones import certify_entangleable_semiquantum, certify_ice_cream_frame
from cones.models import Cone, LorentzCone, PsdCone, is_polyhedral
from cones.operations import dual_cone, extreme_rays, facets, is_classical
from dim3lab import entangle_3d
from exactnum.rational import parse_rational
from gptnorms import REFERENCE_CONSTANTS, entanglement_robustness, injective_norm, projective_norm_lp
from retractlab import certify_entangleable_polyhedral
from tensorcone import SeparationCertificate, max_membership, min_membership, verify_certificate
from utils.config import load_toolkit_config
from utils.exceptions import CapExceededError, ClassicalConeError, ToolkitError, UnsupportedConeError
from utils.logger import configure_from_config

from . import __version__
from .io import (dumps, load_certificate, load_cone, load_robustness_input, load_space, load_tensor, render_text,
                 write_json, write_report)
from .repro import list_criteria, run_repro

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NEGATIVE = 2

# (exit code, result, summary)
Outcome = Tuple[int, Dict[str, Any], Dict[str, Any]]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="conetoolkit",
                                     description="Exact entangleability certificates for pairs of convex cones")
    parser.add_argument("--config", help="toolkit YAML config (default: config/toolkit_config.yaml)")
    parser.add_argument("--log-level", help="override logging.level")
    parser.add_argument("--out", help="write the JSON report here (plus a .txt summary)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cone-info", help="dimension, kind, classicality, extreme rays and facets")
    p.add_argument("path")

    p = sub.add_parser("dual", help="dual cone JSON")
    p.add_argument("path")
    p.add_argument("--write", help="write the dual cone document here")

    p = sub.add_parser("tensor-analyze", help="membership of a tensor in the minimal/maximal products")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--tensor", required=True)
    p.add_argument("--mode", choices=["min", "max", "both"], default="both")

    p = sub.add_parser("certify", help="separation certificate for a cone pair")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--out", dest="cert_out", help="write the certificate here")
    p.add_argument("--frame", help="ice-cream frame matrix T for a Lorentz second factor")
    p.add_argument("--r", help="outer radius for the ice-cream frame")

    p = sub.add_parser("verify", help="replay a certificate exactly")
    p.add_argument("--cert", required=True)
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)

    p = sub.add_parser("robustness", help="entanglement robustness of a state")
    p.add_argument("--state", required=True)

    p = sub.add_parser("norms", help="injective and projective norms of a tensor")
    p.add_argument("--space-x", required=True)
    p.add_argument("--space-y", required=True)
    p.add_argument("--tensor", required=True)

    p = sub.add_parser("repro", help="run the reproduction suite")
    p.add_argument("--only", action="append", help="criterion name (repeatable)")
    p.add_argument("--seed", type=int)
    p.add_argument("--tol", type=float)
    p.add_argument("--list", action="store_true", help="list criteria and exit")
    return parser


def _load_cone(path: str, config: Dict[str, Any]) -> Cone:
    """Load a cone document and hold it to the configured size caps."""
    cone = load_cone(path)
    caps = config['caps']
    if cone.dim > caps['max_dim']:
        raise CapExceededError("cone dimension", cone.dim, caps['max_dim'])
    count = len(getattr(cone, "generators", ()))
    if is_polyhedral(cone) and count > caps['max_generators']:
        raise CapExceededError("generator count", count, caps['max_generators'])
    return cone


def _cone_info(args, config) -> Outcome:
    cone = _load_cone(args.path, config)
    verdict = is_classical(cone)
    result: Dict[str, Any] = {"cone": cone.to_dict(), "dim": cone.dim, "kind": cone.kind.value,
                              "classical": verdict.classical, "basis": verdict.basis, "reason": verdict.reason}
    if is_polyhedral(cone):
        rays = extreme_rays(cone)
        result["extreme_rays"] = rays
        result["facets"] = [{"functional": f.functional, "rays": list(f.ray_indices)} for f in facets(cone)]
    summary = {"dim": cone.dim, "kind": cone.kind.value, "classical": verdict.classical}
    if "extreme_rays" in result:
        summary["extreme rays"] = len(result["extreme_rays"])
        summary["facets"] = len(result["facets"])
    return EXIT_OK, result, summary


def _dual(args, config) -> Outcome:
    cone = _load_cone(args.path, config)
    dual = dual_cone(cone, max_dim=config['caps']['max_dd_dim']).to_dict()
    if args.write:
        write_json(args.write, dual)
    return EXIT_OK, {"dual": dual}, {"dual kind": dual["kind"]}


def _tensor_analyze(args, config) -> Outcome:
    a, b = _load_cone(args.a, config), _load_cone(args.b, config)
    z = load_tensor(args.tensor)
    result: Dict[str, Any] = {}
    summary: Dict[str, Any] = {}
    if args.mode in ("max", "both"):
        mx = max_membership(a, b, z)
        result["max"] = {"member": mx.member, "evidence": [e.to_dict() for e in mx.evidence],
                         "violation": mx.violation.to_dict() if mx.violation else None}
        summary["maximal product"] = "member" if mx.member else "outside"
    if args.mode in ("min", "both"):
        mn = min_membership(a, b, z)
        result["min"] = {
            "inside": mn.inside,
            "decomposition": [{"pair": list(pair), "coefficient": c} for pair, c in mn.decomposition],
            "functional": mn.functional.to_dict()["matrix"] if mn.functional is not None else None,
            "value": mn.value,
        }
        summary["minimal product"] = "inside" if mn.inside else f"outside (value {mn.value})"
    return EXIT_OK, result, summary


def _certify_pair(a: Cone, b: Cone, args, config) -> SeparationCertificate:
    for position, cone in (("first", a), ("second", b)):
        verdict = is_classical(cone)
        if verdict.classical:
            raise ClassicalConeError(position, basis=verdict.basis)
    if not is_polyhedral(a):
        raise UnsupportedConeError(a.kind.value, "certify as first factor")
    if isinstance(b, PsdCone):
        sampling = config['sampling']
        return certify_entangleable_semiquantum(a, b.n, samples=sampling['psd_samples'], seed=sampling['seed'],
                                                retract_samples=sampling['retract_samples'])
    if isinstance(b, LorentzCone):
        if not args.frame or not args.r:
            raise UnsupportedConeError("lorentz", "certify without --frame and --r")
        return certify_ice_cream_frame(a, load_tensor(args.frame).matrix, parse_rational(args.r))
    if a.dim == 3 and b.dim == 3:
        return entangle_3d(a, b, max_slides=config['caps']['max_corner_slides'])
    return certify_entangleable_polyhedral(a, b)


def _certify(args, config) -> Outcome:
    a, b = _load_cone(args.a, config), _load_cone(args.b, config)
    try:
        cert = _certify_pair(a, b, args, config)
    except ClassicalConeError as e:
        logger.warning(str(e))
        return EXIT_NEGATIVE, {"reason": e.message, "basis": e.basis}, {"verdict": e.message}
    if args.cert_out:
        write_json(args.cert_out, cert.to_dict())
    summary = {"verdict": "entangleable", "separation value": cert.separation_value,
               "proof steps": len(cert.proof_chain)}
    return EXIT_OK, {"certificate": cert.to_dict()}, summary


def _verify(args, config) -> Outcome:
    cert = load_certificate(args.cert)
    a, b = _load_cone(args.a, config), _load_cone(args.b, config)
    valid = verify_certificate(cert, a, b, config['numerics']['float_tol'])
    verdict = "certificate valid" if valid else "certificate invalid"
    return (EXIT_OK if valid else EXIT_NEGATIVE), {"valid": valid}, {"verdict": verdict}


def _robustness(args, config) -> Outcome:
    g1, g2, state = load_robustness_input(args.state)
    result = entanglement_robustness(g1, g2, state)
    return EXIT_OK, result.to_dict(), {"robustness": result.value}


def _norms(args, config) -> Outcome:
    x, y = load_space(args.space_x), load_space(args.space_y)
    z = load_tensor(args.tensor)
    eps = injective_norm(x, y, z)
    projective = projective_norm_lp(x, y, z)
    result = {"injective": eps, "projective": projective.to_dict(), "reference_constants": REFERENCE_CONSTANTS}
    return EXIT_OK, result, {"injective norm": eps, "projective norm": projective.value}


def _repro(args, config) -> Outcome:
    if args.list:
        criteria = list_criteria()
        return EXIT_OK, {"criteria": [{"name": n, "description": d} for n, d in criteria]}, \
            {name: description for name, description in criteria}
    results = run_repro(config, only=args.only, seed=args.seed, tol=args.tol)
    print(results.summary_text())
    summary = {"passed": f"{results.passed}/{results.total}"}
    return (EXIT_OK if results.ok else EXIT_ERROR), results.to_dict(), summary


COMMANDS: Dict[str, Callable[[argparse.Namespace, Dict[str, Any]], Outcome]] = {
    "cone-info": _cone_info,
    "dual": _dual,
    "tensor-analyze": _tensor_analyze,
    "certify": _certify,
    "verify": _verify,
    "robustness": _robustness,
    "norms": _norms,
    "repro": _repro,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse, dispatch, report. Returns the process exit code."""
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    try:
        config = load_toolkit_config(args.config)
    except ToolkitError as e:
        print(f"error: {e.message}", file=sys.stderr)
        return EXIT_ERROR
    configure_from_config(config, args.log_level)
    seed = args.seed if getattr(args, "seed", None) is not None else config['sampling']['seed']
    config['sampling']['seed'] = seed

    report: Dict[str, Any] = {"command": argv, "version": __version__, "seed": seed}
    start = time.perf_counter()
    try:
        code, result, summary = COMMANDS[args.command](args, config)
    except ToolkitError as e:
        logger.error(f"{args.command} failed: {e.message}")
        code, result, summary = EXIT_ERROR, {"error": type(e).__name__, "message": e.message}, {"error": e.message}
    except Exception as e:
        logger.exception(f"{args.command} failed unexpectedly")
        code, result, summary = EXIT_ERROR, {"error": type(e).__name__, "message": str(e)}, {"error": str(e)}
    report.update({"exit_code": code, "result": result, "summary": summary,
                   "timings": {"seconds": time.perf_counter() - start}})

    if args.out:
        # relative paths land under output.report_dir
        write_report(str(Path(config['output']['report_dir']) / args.out), report)
    elif args.command != "repro":
        print(dumps(result))
    print(render_text(report))
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
