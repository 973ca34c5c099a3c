"""Lattice geometry: Minkowski arithmetic, restriction sets, dot diagrams."""

import itertools
import logging
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .errors import DiagramParseError, DimensionMismatchError, DomainError, StructuringElementError
from .models import (
    PixelSet, Point, PointSet, StructuringElement, bounding_box, canonical,
    common_dimension, origin,
)

logger = logging.getLogger(__name__)

MEMBER = "#"
ORIGIN = "o"
ABSENT = "."


def add(p: Point, q: Point) -> Point:
    return tuple(a + b for a, b in zip(p, q))


def sub(p: Point, q: Point) -> Point:
    return tuple(a - b for a, b in zip(p, q))


def scale(p: Point, k: int) -> Point:
    return tuple(k * a for a in p)


def translate(points: Iterable[Point], v: Point) -> PointSet:
    return frozenset(add(p, v) for p in points)


def _same_dimension(a: Sequence[Point], b: Sequence[Point]) -> None:
    if len(a[0]) != len(b[0]):
        raise DimensionMismatchError(
            f"dimension {len(a[0])} does not match dimension {len(b[0])}")


def minkowski_sum(a: Iterable[Point], b: Iterable[Point]) -> PointSet:
    """{p + q | p in a, q in b}."""
    a, b = canonical(a), canonical(b)
    common_dimension(a)
    common_dimension(b)
    _same_dimension(a, b)
    return frozenset(add(p, q) for p in a for q in b)


def minkowski_diff(a: Iterable[Point], b: Iterable[Point]) -> PointSet:
    """{p - q | p in a, q in b}."""
    a, b = canonical(a), canonical(b)
    common_dimension(a)
    common_dimension(b)
    _same_dimension(a, b)
    return frozenset(sub(p, q) for p in a for q in b)


def negate(points: Iterable[Point]) -> PointSet:
    return frozenset(tuple(-c for c in p) for p in points)


def is_symmetric(points: Iterable[Point]) -> bool:
    members = frozenset(points)
    return negate(members) == members


def _restrict(b: StructuringElement, x: Point, p: PixelSet, factor: int) -> PointSet:
    if len(x) != b.dimension or p.dimension != b.dimension:
        raise DimensionMismatchError("point, pixel set and structuring element dimensions differ")
    if x not in p:
        raise DomainError(f"point {x} is not in the pixel set")
    return frozenset(q for q in b if add(x, scale(q, factor)) in p)


def restrict_plus(b: StructuringElement, x: Point, p: PixelSet) -> PointSet:
    """B(x;P,+) = {b in B : x + b in P}."""
    return _restrict(b, x, p, 1)


def restrict_minus(b: StructuringElement, x: Point, p: PixelSet) -> PointSet:
    """B(x;P,-) = {b in B : x - b in P}."""
    return _restrict(b, x, p, -1)


def rectangle(lo: Point, hi: Point) -> PixelSet:
    """The pixel set Z^m ∩ prod [lo_i, hi_i]."""
    if len(lo) != len(hi):
        raise DimensionMismatchError("lo and hi differ in dimension")
    if any(a > b for a, b in zip(lo, hi)):
        raise DomainError(f"empty rectangle: lo {lo} exceeds hi {hi}")
    axes = [range(a, b + 1) for a, b in zip(lo, hi)]
    return PixelSet(points=tuple(itertools.product(*axes)), lo=tuple(lo), hi=tuple(hi))


def box_element(lo: Point, hi: Point) -> StructuringElement:
    """A rectangular structuring element; the box must contain the origin."""
    return StructuringElement(points=rectangle(lo, hi).points)


def l1_ball(omega: int, dimension: int) -> StructuringElement:
    """Q_omega = {x in Z^m : |x|_1 <= omega}."""
    if omega < 0:
        raise StructuringElementError("omega must be non-negative")
    if dimension < 1:
        raise DimensionMismatchError("dimension must be >= 1")
    axis = range(-omega, omega + 1)
    points = (p for p in itertools.product(axis, repeat=dimension) if sum(abs(c) for c in p) <= omega)
    return StructuringElement(points=tuple(points))


def dot_diagram_cells(text: str, require_origin: bool = False) -> Tuple[Dict[Tuple[int, int], Point], bool]:
    """Map each member cell (column, row) of a dot diagram to its lattice point.

    Rows run top to bottom with decreasing second coordinate, columns left to
    right with increasing first coordinate. An ``o`` cell is the origin; with
    no ``o`` the bottom-left cell is (0, 0).
    """
    rows = [line.rstrip("\r").rstrip() for line in text.strip("\n").split("\n")]
    if not rows or not any(rows):
        raise DiagramParseError("empty dot diagram")
    width = len(rows[0])
    if any(len(row) != width for row in rows):
        raise DiagramParseError("ragged rows in dot diagram")
    bad = {c for row in rows for c in row} - {MEMBER, ORIGIN, ABSENT}
    if bad:
        raise DiagramParseError(f"unexpected cells {sorted(bad)} in dot diagram")

    markers = [(col, r) for r, row in enumerate(rows) for col, c in enumerate(row) if c == ORIGIN]
    if len(markers) > 1:
        raise DiagramParseError("dot diagram has more than one origin marker")
    if require_origin and not markers:
        raise DiagramParseError("dot diagram of a structuring element needs an origin marker")

    anchor_col, anchor_row = markers[0] if markers else (0, len(rows) - 1)
    cells = {
        (col, r): (col - anchor_col, anchor_row - r)
        for r, row in enumerate(rows)
        for col, c in enumerate(row)
        if c in (MEMBER, ORIGIN)
    }
    if not cells:
        raise DiagramParseError("dot diagram has no member cells")
    return cells, bool(markers)


def parse_dot_diagram(text: str, require_origin: bool = False) -> Tuple[PointSet, bool]:
    """Parse a 2-D dot diagram into its member points and whether an origin
    marker was present."""
    cells, has_origin = dot_diagram_cells(text, require_origin)
    return frozenset(cells.values()), has_origin


def diagram_box(points: Iterable[Point], at: Optional[Point] = None) -> Tuple[Point, Point]:
    """The grid a dot diagram of ``points`` spans, relative to ``at``.

    With ``at`` a member the grid is the bounding box and ``at`` carries the
    ``o`` marker. Otherwise the grid is padded down to ``at`` so that its
    bottom-left cell reads back as the anchor; a point set reaching below or
    left of ``at`` has no such diagram.
    """
    members = frozenset(points)
    if not members:
        raise DiagramParseError("cannot render an empty point set")
    if common_dimension(members) != 2:
        raise DimensionMismatchError("dot diagrams are two-dimensional")
    at = at if at is not None else origin(2)
    lo, hi = bounding_box(members)
    if at in members:
        return lo, hi
    if lo[0] < at[0] or lo[1] < at[1]:
        raise DiagramParseError(f"a point set without {at} must lie above and right of it to be drawn")
    return at, hi


def is_drawable(points: Iterable[Point], at: Optional[Point] = None) -> bool:
    try:
        diagram_box(points, at)
    except (DiagramParseError, DimensionMismatchError):
        return False
    return True


def render_dot_diagram(points: Iterable[Point], at: Optional[Point] = None) -> str:
    """Render a 2-D point set relative to ``at`` (default the origin).

    Parsing the result gives back the same points.
    """
    members = frozenset(points)
    at = at if at is not None else origin(2)
    (x0, y0), (x1, y1) = diagram_box(members, at)
    lines: List[str] = []
    for y in range(y1, y0 - 1, -1):
        cells = []
        for x in range(x0, x1 + 1):
            if (x, y) not in members:
                cells.append(ABSENT)
            elif (x, y) == at:
                cells.append(ORIGIN)
            else:
                cells.append(MEMBER)
        lines.append("".join(cells))
    return "\n".join(lines) + "\n"


def structuring_element_from_diagram(text: str) -> StructuringElement:
    points, _ = parse_dot_diagram(text, require_origin=True)
    return StructuringElement.from_points(points)


def subset_witness(a: Iterable[Point], b: FrozenSet[Point]) -> Optional[Point]:
    """The least point of ``a`` missing from ``b``, or None when a ⊆ b."""
    for p in canonical(a):
        if p not in b:
            return p
    return None
