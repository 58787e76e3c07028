"""JSON input formats and named presets.

Region files::

    {"format": "cvtq-region/1",
     "shape": {"type": "polygon", "vertices": [[x, y], ...]}
            | {"type": "disc", "center": [x, y], "radius": r},
     "density": {"type": "uniform"}
              | {"type": "polynomial", "terms": [{"coef": c, "px": p, "py": q}, ...]}}

Point-set files::

    {"format": "cvtq-points/1", "points": [[x, y], ...]}
"""
from __future__ import annotations

import json
import math

from .cases import RHOMBUS, TRIANGLE
from .dquant import PRESETS as POINT_PRESETS
from .dquant import DiscreteUniform
from .errors import InvalidInputError
from .region import Density, Region

REGION_FORMAT = "cvtq-region/1"
POINTS_FORMAT = "cvtq-points/1"


class FormatError(InvalidInputError):
    """Malformed input file; carries a 1-based line and column when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None, where: str = ""):
        self.line, self.column, self.where = line, column, where
        loc = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(f"{loc}{message}" + (f" (at {where})" if where else ""))


def _example1() -> Region:
    return Region.curve_bounded(lambda x: math.sqrt(max(0.0, 1.0 - x * x)), lambda x: x - 1.0,
                                0.0, 1.0, name="example1")


REGION_PRESETS = {
    "example1": _example1,
    "prop2-disc": lambda: Region.disc((0.0, 0.0), 1.0, name="prop2-disc"),
    "prop3-triangle": lambda: Region.polygon(TRIANGLE, name="prop3-triangle"),
    "prop4-rhombus": lambda: Region.polygon(RHOMBUS, name="prop4-rhombus"),
}


def _locate(text: str, key: str):
    """Best-effort line/column of the first occurrence of a JSON key.

    A missing key is reported at the opening brace of the document.
    """
    pos = text.find(f'"{key}"')
    if pos < 0:
        pos = max(text.find("{"), 0)
    line = text.count("\n", 0, pos) + 1
    return line, pos - (text.rfind("\n", 0, pos) + 1) + 1


def _decode(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(e.msg, e.lineno, e.colno) from None


def _fail(text, key, message, where):
    line, col = _locate(text, key)
    raise FormatError(message, line, col, where)


def _xy(text, value, key, where):
    if (not isinstance(value, list) or len(value) != 2
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)):
        _fail(text, key, "expected a pair of numbers [x, y]", where)
    return float(value[0]), float(value[1])


def _number(text, value, key, where):
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        _fail(text, key, "expected a number", where)
    return float(value)


def _check_format(text, doc, expected):
    if not isinstance(doc, dict):
        raise FormatError("top level must be a JSON object", 1, 1)
    if doc.get("format") != expected:
        _fail(text, "format", f"format must be {expected!r}, got {doc.get('format')!r}", "format")


def parse_region(text: str) -> Region:
    doc = _decode(text)
    _check_format(text, doc, REGION_FORMAT)
    shape = doc.get("shape")
    if not isinstance(shape, dict):
        _fail(text, "shape", "missing or invalid 'shape' object", "shape")
    density = _parse_density(text, doc.get("density", {"type": "uniform"}))
    kind = shape.get("type")
    try:
        if kind == "polygon":
            verts = shape.get("vertices")
            if not isinstance(verts, list):
                _fail(text, "vertices", "'vertices' must be a list", "shape.vertices")
            pts = [_xy(text, v, "vertices", f"shape.vertices[{i}]") for i, v in enumerate(verts)]
            return Region.polygon(pts, density)
        if kind == "disc":
            center = _xy(text, shape.get("center"), "center", "shape.center")
            radius = _number(text, shape.get("radius"), "radius", "shape.radius")
            return Region.disc(center, radius, density)
    except FormatError:
        raise
    except InvalidInputError as e:
        _fail(text, "shape", str(e), "shape")
    _fail(text, "type", f"unknown shape type {kind!r}", "shape.type")


def _parse_density(text, d) -> Density:
    if not isinstance(d, dict):
        _fail(text, "density", "'density' must be an object", "density")
    kind = d.get("type")
    if kind == "uniform":
        return Density.uniform()
    if kind == "polynomial":
        terms = d.get("terms")
        if not isinstance(terms, list) or not terms:
            _fail(text, "terms", "'terms' must be a non-empty list", "density.terms")
        out = []
        for i, t in enumerate(terms):
            where = f"density.terms[{i}]"
            if not isinstance(t, dict) or set(t) != {"coef", "px", "py"}:
                _fail(text, "terms", "each term needs exactly 'coef', 'px', 'py'", where)
            px, py = t["px"], t["py"]
            if not all(isinstance(v, int) and not isinstance(v, bool) for v in (px, py)):
                _fail(text, "px", "exponents must be integers", where)
            out.append((_number(text, t["coef"], "coef", where), px, py))
        try:
            return Density.polynomial(out)
        except InvalidInputError as e:
            _fail(text, "terms", str(e), "density.terms")
    _fail(text, "density", f"unknown density type {kind!r}", "density.type")


def parse_points(text: str) -> DiscreteUniform:
    doc = _decode(text)
    _check_format(text, doc, POINTS_FORMAT)
    pts = doc.get("points")
    if not isinstance(pts, list) or not pts:
        _fail(text, "points", "'points' must be a non-empty list", "points")
    xy = [_xy(text, p, "points", f"points[{i}]") for i, p in enumerate(pts)]
    try:
        return DiscreteUniform(tuple(xy))
    except InvalidInputError as e:
        _fail(text, "points", str(e), "points")


def dump_region(region: Region) -> str:
    shape = region.shape
    if region.kind == "polygon":
        s = {"type": "polygon", "vertices": [list(v) for v in shape.polygon.vertices]}
    elif region.kind == "disc" and not shape.halfplanes:
        s = {"type": "disc", "center": list(shape.center), "radius": shape.radius}
    else:
        raise InvalidInputError(f"{region.kind} regions have no file representation")
    dens = region.density
    if dens.is_uniform:
        d = {"type": "uniform"}
    else:
        d = {"type": "polynomial", "terms": [{"coef": c, "px": p, "py": q} for c, p, q in dens.terms]}
    return json.dumps({"format": REGION_FORMAT, "shape": s, "density": d})


def dump_points(dist: DiscreteUniform) -> str:
    return json.dumps({"format": POINTS_FORMAT, "points": [list(p) for p in dist.points]})


def load_input(source: str):
    """Preset name or file path -> Region or DiscreteUniform.

    OSError propagates for unreadable files; anything else malformed raises FormatError.
    """
    if source in REGION_PRESETS:
        return REGION_PRESETS[source]()
    if source in POINT_PRESETS:
        return POINT_PRESETS[source]()
    with open(source, encoding="utf-8") as fh:
        text = fh.read()
    doc = _decode(text)
    fmt = doc.get("format") if isinstance(doc, dict) else None
    if fmt == POINTS_FORMAT:
        return parse_points(text)
    return parse_region(text)
