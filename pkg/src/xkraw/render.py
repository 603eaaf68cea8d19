"""Deterministic text renderings: CSV rows, JSON documents and SVG bubble plots.

CSV uses ``,`` separators, ``\\n`` line ends, exact ``a/b`` strings for
rationals and 15 significant digits for floats.
"""
from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence
from xml.etree import ElementTree as ET

import numpy as np

from .exactnum import PiMultiple

ZERO_MAGNITUDE = 1e-9
MAX_RADIUS = 0.45


def fmt(value) -> str:
    """Render one CSV cell."""
    if value is None:
        return ""
    if isinstance(value, PiMultiple):
        return f"{value.coef}pi"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (float, np.floating)):
        v = float(value)
        if v == 0:
            return "0"
        return f"{v:.15g}"
    return str(value)


def to_csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(fmt(v) for v in row) + "\n")
    return buf.getvalue()


def _jsonable(value):
    if isinstance(value, (Fraction, PiMultiple)):
        return fmt(value)
    if isinstance(value, np.ndarray):
        return [_jsonable(v) for v in value.tolist()]
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def to_json(doc) -> str:
    return json.dumps(_jsonable(doc), indent=2, sort_keys=True) + "\n"


@dataclass(frozen=True)
class BubblePlotSpec:
    """One row of circles per time; sites sit at unit spacing.

    By default the radius is ``MAX_RADIUS * |c|``. With ``area_mode`` the
    circle area is proportional to ``|c|`` instead.
    """

    magnitudes: np.ndarray  # shape (times, sites)
    time_labels: tuple[str, ...]
    area_mode: bool = False
    title: str = ""

    def radius(self, magnitude: float) -> float:
        if magnitude <= ZERO_MAGNITUDE:
            return 0.0
        m = min(float(magnitude), 1.0)
        return MAX_RADIUS * (math.sqrt(m) if self.area_mode else m)


_SCALE = 60  # pixels per site spacing
_LEFT = 2.0  # site units reserved for time labels


def render_svg(spec: BubblePlotSpec) -> str:
    rows, sites = spec.magnitudes.shape
    width = (_LEFT + sites + 0.5) * _SCALE
    top = 1.0 if spec.title else 0.5
    height = (top + rows + 1.0) * _SCALE
    svg = ET.Element("svg", {
        "xmlns": "http://www.w3.org/2000/svg",
        "viewBox": f"0 0 {width:g} {height:g}",
        "width": f"{width:g}",
        "height": f"{height:g}",
        "font-family": "sans-serif",
        "font-size": "14",
    })
    if spec.title:
        t = ET.SubElement(svg, "text", {"x": f"{width / 2:g}", "y": f"{0.6 * _SCALE:g}",
                                        "text-anchor": "middle"})
        t.text = spec.title

    def cx(j):
        return (_LEFT + j + 0.5) * _SCALE

    def cy(r):
        return (top + r + 0.5) * _SCALE

    for r in range(rows):
        y = cy(r)
        ET.SubElement(svg, "line", {"x1": f"{cx(0):g}", "y1": f"{y:g}",
                                    "x2": f"{cx(sites - 1):g}", "y2": f"{y:g}",
                                    "stroke": "#bbbbbb", "stroke-width": "1"})
        label = ET.SubElement(svg, "text", {"x": f"{0.2 * _SCALE:g}", "y": f"{y + 5:g}"})
        label.text = f"t = {spec.time_labels[r]}"
        for j in range(sites):
            rad = spec.radius(spec.magnitudes[r, j])
            if rad == 0.0:
                continue
            ET.SubElement(svg, "circle", {
                "cx": f"{cx(j):g}", "cy": f"{y:g}", "r": f"{rad * _SCALE:.6g}",
                "fill": "#1f4e9c", "data-site": str(j),
                "data-magnitude": f"{float(spec.magnitudes[r, j]):.15g}",
            })
    for j in range(sites):
        t = ET.SubElement(svg, "text", {"x": f"{cx(j):g}", "y": f"{(top + rows + 0.6) * _SCALE:g}",
                                        "text-anchor": "middle"})
        t.text = str(j)
    return ET.tostring(svg, encoding="unicode") + "\n"
