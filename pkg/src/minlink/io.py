"""Reading and writing curves and run reports."""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import List, Optional, Sequence, Union

from .geom import GeometryError, PolyCurve, clean_vertices


class InputError(ValueError):
    """Bad or unreadable input file."""


def _check_vertices(rows, dim=None) -> List[tuple]:
    out = []
    for k, row in enumerate(rows):
        try:
            v = tuple(float(x) for x in row)
        except (TypeError, ValueError) as exc:
            raise InputError(f"vertex {k}: not a list of numbers") from exc
        if not v:
            raise InputError(f"vertex {k}: empty")
        if not all(math.isfinite(x) for x in v):
            raise InputError(f"vertex {k}: non-finite coordinate")
        if dim is not None and len(v) != dim:
            raise InputError(f"vertex {k}: expected {dim} coordinates, got {len(v)}")
        out.append(v)
    return out


def parse_curve_text(text: str, fmt: str) -> PolyCurve:
    if fmt == "json":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON: {exc}") from exc
        if not isinstance(doc, dict) or "vertices" not in doc:
            raise InputError('curve JSON needs a "vertices" list')
        rows = doc["vertices"]
        if doc.get("kind") == "gadget" and "vertices_float" in doc:
            rows = doc["vertices_float"]
        dim = doc.get("dim")
        if dim is not None and (not isinstance(dim, int) or dim < 1):
            raise InputError('"dim" must be a positive integer')
    elif fmt == "csv":
        rows = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
        if rows and not _is_numeric(rows[0]):
            rows = rows[1:]  # header
        dim = None
    else:
        raise InputError(f"unknown curve format {fmt!r}")
    if not isinstance(rows, list):
        raise InputError('"vertices" must be a list')
    verts = _check_vertices(rows, dim)
    if len({len(v) for v in verts}) > 1:
        raise InputError("vertices have mixed dimensions")
    try:
        return clean_vertices(verts)
    except (GeometryError, ValueError) as exc:
        raise InputError(str(exc)) from exc


def _is_numeric(row) -> bool:
    try:
        [float(x) for x in row]
        return True
    except ValueError:
        return False


def curve_format(path: Union[str, Path]) -> str:
    return "csv" if str(path).lower().endswith(".csv") else "json"


def read_curve(path: Union[str, Path]) -> PolyCurve:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_curve_text(text, curve_format(path))


def curve_to_json(vertices: Sequence[Sequence[float]]) -> dict:
    vs = [list(map(float, v)) for v in vertices]
    return {"dim": len(vs[0]) if vs else 0, "vertices": vs}


def write_curve(path: Union[str, Path], vertices: Sequence[Sequence[float]]) -> None:
    path = Path(path)
    if curve_format(path) == "csv":
        with path.open("w", newline="") as fh:
            w = csv.writer(fh)
            for v in vertices:
                w.writerow([repr(float(x)) for x in v])
    else:
        path.write_text(json.dumps(curve_to_json(vertices), indent=2) + "\n")


def digest(P: PolyCurve) -> str:
    h = hashlib.sha256()
    for v in P.vertices:
        h.update(",".join(repr(x) for x in v).encode())
        h.update(b";")
    return h.hexdigest()


@dataclass
class RunReport:
    variant: str
    input_digest: str
    n: int
    dim: int
    delta: float
    eps: Optional[float]
    link_count: int
    achieved: bool
    vertices: List[List[float]]
    indices: Optional[List[int]] = None
    spans: Optional[List[List[float]]] = None
    link_distances: List[float] = field(default_factory=list)
    global_distance: Optional[float] = None
    bound: Optional[float] = None
    oracle_link_count: Optional[int] = None
    wall_time: float = 0.0

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)
