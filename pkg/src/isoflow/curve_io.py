"""Curve (de)serialization: CSV with an "x,y" header, or a small JSON schema."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .curves import SampledCurve, ensure_anticlockwise
from .errors import GeometryError


def curve_to_csv(curve: SampledCurve) -> str:
    lines = ["x,y"]
    for x, y in curve.vertices:
        lines.append(f"{x:.17g},{y:.17g}")
    return "\n".join(lines) + "\n"


def curve_from_csv(text: str, closed: bool = True) -> SampledCurve:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines or lines[0].lower().replace(" ", "") != "x,y":
        raise GeometryError('CSV curve files start with the header "x,y"')
    rows = []
    for ln in lines[1:]:
        parts = ln.split(",")
        if len(parts) != 2:
            raise GeometryError(f"malformed CSV row: {ln!r}")
        rows.append((float(parts[0]), float(parts[1])))
    vertices = np.asarray(rows, dtype=float)
    if closed:
        vertices = ensure_anticlockwise(vertices)
    return SampledCurve(vertices, closed=closed)


def curve_to_json(curve: SampledCurve) -> str:
    return json.dumps({
        "closed": curve.closed,
        "vertices": [[float(x), float(y)] for x, y in curve.vertices],
    })


def curve_from_json(text: str) -> SampledCurve:
    data = json.loads(text)
    if not isinstance(data, dict) or "vertices" not in data:
        raise GeometryError('JSON curve files look like {"closed": bool, "vertices": [[x,y],...]}')
    closed = bool(data.get("closed", True))
    vertices = np.asarray(data["vertices"], dtype=float)
    if closed:
        vertices = ensure_anticlockwise(vertices)
    return SampledCurve(vertices, closed=closed)


def load_curve(path) -> SampledCurve:
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".json":
        return curve_from_json(text)
    return curve_from_csv(text)


def save_curve(curve: SampledCurve, path) -> None:
    path = Path(path)
    if path.suffix.lower() == ".json":
        path.write_text(curve_to_json(curve))
    else:
        path.write_text(curve_to_csv(curve))
