"""Text formats: point sets, PGM P2, masked grids, JSON reports, curve CSV, recipes."""

import json
import logging
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from .errors import DiagramParseError, ImageFormatError, RecipeError
from .geometry import diagram_box, dot_diagram_cells, is_drawable, parse_dot_diagram, render_dot_diagram
from .models import (
    Image, InclusionReport, PixelSet, Point, SequenceRecipe, StructuringElement, bounding_box,
)
from .morphology import zero_set

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]
ABSENT_VALUE = "_"
CURVE_COLUMNS = ["step", "zero_pixels"]


def read_text(path: PathLike) -> str:
    return Path(path).read_text(encoding="utf-8")


def points_to_json(points: Iterable[Point]) -> List[List[int]]:
    return [list(p) for p in sorted(points)]


def _json_points(text: str) -> List[Point]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DiagramParseError(f"invalid JSON point set: {exc}") from exc
    if isinstance(data, dict):
        data = data.get("points")
    if not isinstance(data, list) or not data:
        raise DiagramParseError("a JSON point set is a non-empty array of integer arrays")
    try:
        return [tuple(int(c) for c in p) for p in data]
    except (TypeError, ValueError) as exc:
        raise DiagramParseError("a JSON point set is a non-empty array of integer arrays") from exc


def _is_json(text: str) -> bool:
    return text.lstrip()[:1] in ("[", "{")


def parse_structuring_element(text: str) -> StructuringElement:
    """A dot diagram with an ``o`` marker, or a JSON array of points."""
    if _is_json(text):
        return StructuringElement.from_points(_json_points(text))
    points, _ = parse_dot_diagram(text, require_origin=True)
    return StructuringElement.from_points(points)


def parse_pixel_set(text: str) -> PixelSet:
    if _is_json(text):
        return PixelSet.from_points(_json_points(text))
    points, _ = parse_dot_diagram(text)
    return PixelSet.from_points(points)


def format_structuring_element(element: StructuringElement, as_json: bool = False) -> str:
    if as_json or element.dimension != 2:
        return json.dumps(points_to_json(element.points)) + "\n"
    return render_dot_diagram(element.points)


def format_pixel_set(pixels: Iterable[Point]) -> str:
    """A dot diagram when one reads back to the same points, JSON otherwise."""
    points = frozenset(pixels)
    if is_drawable(points):
        return render_dot_diagram(points)
    return json.dumps(points_to_json(points)) + "\n"


def format_value(v: float) -> str:
    return str(int(v)) if float(v).is_integer() else repr(float(v))


def _parse_number(token: str) -> float:
    try:
        value = float(token)
    except ValueError as exc:
        raise ImageFormatError(f"not a number: {token!r}") from exc
    if not np.isfinite(value) or value < 0:
        raise ImageFormatError(f"pixel values must be finite and non-negative, got {token!r}")
    return value


def parse_value_grid(text: str) -> List[List[str]]:
    rows = [line.split() for line in text.strip("\n").split("\n")]
    rows = [row for row in rows if row]
    if not rows:
        raise ImageFormatError("empty value grid")
    if any(len(row) != len(rows[0]) for row in rows):
        raise ImageFormatError("ragged rows in value grid")
    return rows


def render_value_grid(image: Image, box: Optional[Tuple[Point, Point]] = None) -> str:
    """Values laid out like a dot diagram of the domain, ``_`` off the domain.

    The grid spans ``box`` when given, the bounding box of the domain otherwise.
    """
    if image.domain.dimension != 2:
        raise ImageFormatError("value grids are two-dimensional")
    (x0, y0), (x1, y1) = box if box is not None else bounding_box(image.domain.points)
    values = image.to_mapping()
    lines = []
    for y in range(y1, y0 - 1, -1):
        cells = [format_value(values[(x, y)]) if (x, y) in values else ABSENT_VALUE
                 for x in range(x0, x1 + 1)]
        lines.append(" ".join(cells))
    return "\n".join(lines) + "\n"


def parse_masked_grid(mask_text: str, grid_text: str) -> Image:
    """An image from a dot-diagram mask and a same-shaped grid of numbers."""
    cells, _ = dot_diagram_cells(mask_text)
    mask_rows = [row for row in mask_text.strip("\n").split("\n")]
    grid = parse_value_grid(grid_text)
    if len(grid) != len(mask_rows) or len(grid[0]) != len(mask_rows[0].rstrip()):
        raise ImageFormatError(
            f"value grid is {len(grid[0])}x{len(grid)}, mask is {len(mask_rows[0].rstrip())}x{len(mask_rows)}")
    values: Dict[Point, float] = {}
    for r, row in enumerate(grid):
        for col, token in enumerate(row):
            member = (col, r) in cells
            if member and token == ABSENT_VALUE:
                raise ImageFormatError(f"missing value at row {r}, column {col}")
            if not member and token != ABSENT_VALUE:
                raise ImageFormatError(f"value outside the mask at row {r}, column {col}")
            if member:
                values[cells[(col, r)]] = _parse_number(token)
    return Image.from_mapping(values)


def render_masked_grid(image: Image) -> Tuple[str, str]:
    """Mask and value grid that parse back to ``image``."""
    if not is_drawable(image.domain.points):
        raise ImageFormatError("the domain has no dot diagram; write the image as JSON")
    box = diagram_box(image.domain.points)
    return render_dot_diagram(image.domain.points), render_value_grid(image, box)


def _pgm_tokens(text: str) -> List[str]:
    tokens = []
    for line in text.splitlines():
        tokens.extend(line.split("#", 1)[0].split())
    return tokens


def parse_pgm(text: str) -> Tuple[Image, int]:
    """Read an ASCII PGM (P2); the bottom-left pixel is (0, 0)."""
    tokens = _pgm_tokens(text)
    if not tokens or tokens[0] != "P2":
        raise ImageFormatError("not an ASCII PGM (missing P2 magic)")
    try:
        width, height, maxval = (int(t) for t in tokens[1:4])
    except ValueError as exc:
        raise ImageFormatError("malformed PGM header") from exc
    if width < 1 or height < 1 or not 0 < maxval < 65536:
        raise ImageFormatError(f"bad PGM header {width}x{height} maxval {maxval}")
    body = tokens[4:]
    if len(body) != width * height:
        raise ImageFormatError(f"PGM body has {len(body)} values, expected {width * height}")
    values: Dict[Point, float] = {}
    for i, token in enumerate(body):
        try:
            v = int(token)
        except ValueError as exc:
            raise ImageFormatError(f"PGM values are integers, got {token!r}") from exc
        if not 0 <= v <= maxval:
            raise ImageFormatError(f"PGM value {v} outside 0..{maxval}")
        row, col = divmod(i, width)
        values[(col, height - 1 - row)] = float(v)
    return Image.from_mapping(values), maxval


def render_pgm(image: Image, maxval: Optional[int] = None) -> str:
    """Write an ASCII PGM; the domain must be a 2-D rectangle with integral values."""
    domain = image.domain
    if domain.dimension != 2 or not domain.is_rectangle:
        raise ImageFormatError("PGM output needs a two-dimensional rectangular domain")
    if not np.all(np.mod(image.values, 1) == 0):
        raise ImageFormatError("PGM output needs integral values")
    top = int(image.values.max()) if len(image.values) else 0
    maxval = maxval if maxval is not None else max(top, 1)
    if top > maxval:
        raise ImageFormatError(f"value {top} exceeds maxval {maxval}")
    (x0, y0), (x1, y1) = domain.lo, domain.hi
    rows = []
    for y in range(y1, y0 - 1, -1):
        rows.append(" ".join(str(int(image.value_at((x, y)))) for x in range(x0, x1 + 1)))
    return f"P2\n{x1 - x0 + 1} {y1 - y0 + 1}\n{maxval}\n" + "\n".join(rows) + "\n"


def load_image(path: PathLike, mask: Optional[PathLike] = None) -> Tuple[Image, Optional[int]]:
    """PGM when no mask is given, masked grid otherwise.

    Returns the image and the PGM maxval, None for a masked grid.
    """
    text = read_text(path)
    if mask is None:
        return parse_pgm(text)
    return parse_masked_grid(read_text(mask), text), None


def image_report(image: Image) -> Dict[str, Any]:
    return {
        'domain': points_to_json(image.domain.points),
        'values': [format_value(v) for v in image.values],
        'zero_set': points_to_json(zero_set(image)),
    }


def dumps(data: Any) -> str:
    """Stable JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def report_to_json(report: InclusionReport) -> str:
    return dumps(report.to_dict(encode_json=True))


def curve_frame(curve: Sequence[Tuple[int, int]]) -> pd.DataFrame:
    return pd.DataFrame(list(curve), columns=CURVE_COLUMNS)


def curve_to_csv(curve: Sequence[Tuple[int, int]]) -> str:
    return curve_frame(curve).to_csv(index=False, lineterminator="\n")


def read_curve_csv(path: PathLike) -> List[Tuple[int, int]]:
    frame = pd.read_csv(path)
    if list(frame.columns) != CURVE_COLUMNS:
        raise ImageFormatError(f"curve CSV needs columns {CURVE_COLUMNS}")
    return [(int(s), int(z)) for s, z in frame.itertuples(index=False)]


def parse_recipe(text: str) -> SequenceRecipe:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise RecipeError(f"invalid recipe JSON: {exc}") from exc
    if not isinstance(data, dict) or "kind" not in data:
        raise RecipeError("a recipe is an object with 'kind' and 'params'")
    data.setdefault("params", {})
    data.setdefault("provenance", "")
    try:
        return SequenceRecipe.from_dict(data)
    except (KeyError, ValueError, TypeError) as exc:
        raise RecipeError(f"invalid recipe: {exc}") from exc


def recipe_to_json(recipe: SequenceRecipe) -> str:
    return dumps(recipe.to_dict(encode_json=True))
