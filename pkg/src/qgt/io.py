"""Reading and writing the JSON/DSL files used by the command line."""

from __future__ import annotations

import hashlib
import json
import logging
import os
import pickle
from pathlib import Path

from .algebra import FiniteDimAlgebra, build_algebra
from .errors import QGTError, ValidationError
from .fields import Field
from .presentations import Presentation, parse_presentation, presentation_from_json
from .quiver import triangulation_from_json
from .surface import validate_surface

log = logging.getLogger(__name__)


def read_text(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise QGTError(f"cannot read {path}: {exc.strerror}") from None


def read_json(path: str) -> dict:
    text = read_text(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise QGTError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}") from None


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def write_output(text: str, path: str | None):
    if path is None or path == "-":
        print(text, end="")
        return
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise QGTError(f"cannot write {path}: {exc.strerror}") from None


def kind_of(data: dict) -> str:
    """surface, presentation or triangulation."""
    if "triangles" in data:
        return "surface"
    if "relations" in data:
        return "presentation"
    if "f" in data or ("quiver" in data and "f" in data["quiver"]):
        return "triangulation"
    raise ValidationError("unrecognized input: expected a surface, quiver or presentation file")


def load_any(path: str):
    data = read_json(path)
    kind = kind_of(data)
    if kind == "surface":
        return kind, validate_surface(data)
    if kind == "presentation":
        return kind, presentation_from_json(data)
    return kind, triangulation_from_json(data.get("quiver", data))


def load_presentation(path: str, quiver_path: str | None = None) -> Presentation:
    """A presentation from JSON, or from a DSL file plus a quiver JSON."""
    if path.endswith(".json"):
        data = read_json(path)
        if kind_of(data) != "presentation":
            raise ValidationError(f"{path} is not a presentation file")
        return presentation_from_json(data)
    if quiver_path is None:
        raise ValidationError("a relation DSL file needs --quiver")
    tq = triangulation_from_json(read_json(quiver_path))
    pres = parse_presentation(read_text(path), tq.quiver)
    return Presentation(pres.quiver, pres.relations, pres.field, {"tq": tq})


def _cache_key(pres: Presentation, F: Field, max_len: int) -> str:
    body = dumps({"p": pres.to_json(), "field": str(F), "cap": max_len})
    return hashlib.sha256(body.encode()).hexdigest()


def cached_build(pres: Presentation, F: Field | None = None, max_len: int = 64) -> FiniteDimAlgebra:
    """build_algebra memoized in $QGT_CACHE_DIR when set."""
    F = F or pres.field
    root = os.environ.get("QGT_CACHE_DIR")
    if not root:
        return build_algebra(pres, F, max_len)
    path = Path(root) / f"{_cache_key(pres, F, max_len)}.pkl"
    if path.exists():
        try:
            with path.open("rb") as fh:
                return pickle.load(fh)
        except (OSError, pickle.UnpicklingError, EOFError):
            log.warning("ignoring unreadable cache entry %s", path)
    A = build_algebra(pres, F, max_len)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        with tmp.open("wb") as fh:
            pickle.dump(A, fh)
        tmp.replace(path)
    except OSError as exc:
        log.warning("cannot write cache entry %s: %s", path, exc)
    return A
