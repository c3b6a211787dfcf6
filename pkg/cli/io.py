"""Reading input documents and writing reports."""
import json
import logging
from pathlib import Path
from typing import Any, Dict, Union

from cones.models import Cone, cone_from_dict
from gptnorms.models import Gpt, NormedSpace, SymmetricGpt
from tensorcone.models import SeparationCertificate, TensorElement
from utils.exceptions import SchemaError
from utils.json_encoder import ToolkitJSONEncoder

from .schemas import CertificateDoc, ConeDoc, RobustnessDoc, SpaceDoc, TensorDoc, validate_document

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def read_json(path: PathLike) -> Any:
    try:
        with open(path, 'r', encoding='utf-8') as f:
            return json.load(f)
    except FileNotFoundError as e:
        raise SchemaError(str(path), ["file not found"]) from e
    except json.JSONDecodeError as e:
        raise SchemaError(str(path), [f"malformed JSON: {e}"]) from e


def load_cone(path: PathLike) -> Cone:
    doc = validate_document(ConeDoc, read_json(path), str(path))
    return cone_from_dict(doc)


def load_tensor(path: PathLike) -> TensorElement:
    data = read_json(path)
    if isinstance(data, list):
        data = {"matrix": data}
    doc = validate_document(TensorDoc, data, str(path))
    return TensorElement.from_rows(doc["matrix"])


def load_space(path: PathLike) -> NormedSpace:
    return NormedSpace.from_dict(validate_document(SpaceDoc, read_json(path), str(path)))


def load_certificate(path: PathLike) -> SeparationCertificate:
    doc = validate_document(CertificateDoc, read_json(path), str(path))
    return SeparationCertificate.from_dict(doc)


def _gpt(doc: Dict[str, Any]):
    if "space" in doc or "centre" in doc:
        return SymmetricGpt.from_dict(doc).gpt
    return Gpt.from_dict(doc)


def load_robustness_input(path: PathLike):
    """(gpt_a, gpt_b, state) from a robustness document."""
    raw = read_json(path)
    doc = validate_document(RobustnessDoc, raw, str(path))
    return _gpt(doc["a"]), _gpt(doc["b"]), TensorElement.from_rows(doc["state"])


def dumps(data: Any) -> str:
    return json.dumps(data, cls=ToolkitJSONEncoder, indent=2, sort_keys=False)


def write_json(path: PathLike, data: Any) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as f:
        f.write(dumps(data))
        f.write("\n")
    logger.info(f"wrote {path}")
    return path


def render_text(report: Dict[str, Any]) -> str:
    """Human-readable summary of a report."""
    lines = [f"command: {report.get('command')}", f"version: {report.get('version')}"]
    if "seed" in report:
        lines.append(f"seed: {report['seed']}")
    for key, value in report.get("summary", {}).items():
        lines.append(f"{key}: {value}")
    if "timings" in report:
        lines.append(f"seconds: {report['timings'].get('seconds', 0):.3f}")
    return "\n".join(lines)


def write_report(out: PathLike, report: Dict[str, Any]) -> Path:
    """JSON report at `out` plus a .txt summary next to it."""
    path = write_json(out, report)
    path.with_suffix(".txt").write_text(render_text(report) + "\n", encoding="utf-8")
    return path
