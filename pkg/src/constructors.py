"""Structuring-element sequences that are shift-included by construction."""

import itertools
import logging
from typing import Any, Dict, Iterable, List, Sequence

from .errors import RecipeError, StructuringElementError
from .geometry import box_element, l1_ball, translate
from .models import (
    Point, RecipeKind, Scope, SequenceRecipe, StructuringElement, bounding_box, box_size, origin,
)

logger = logging.getLogger(__name__)

# Where each recipe's nesting guarantee holds.
RECIPE_SCOPE = {
    RecipeKind.TRANSLATE_UNION: Scope.WHOLE_SPACE,
    RecipeKind.RECTANGLE_CHAIN: Scope.RESTRICTED,
    RecipeKind.SQUARE_ITERATION: Scope.RESTRICTED,
    RecipeKind.L1_CHAIN: Scope.RESTRICTED,
}

PROVENANCE = {
    RecipeKind.TRANSLATE_UNION:
        "each step is a union of translates of the previous element (whole lattice)",
    RecipeKind.RECTANGLE_CHAIN:
        "unit extensions of a rectangle along one axis (any rectangular pixel set)",
    RecipeKind.SQUARE_ITERATION:
        "squares grown by alternating positive and negative unit shifts (any rectangular pixel set)",
    RecipeKind.L1_CHAIN:
        "l1 balls of increasing radius (any rectangular pixel set)",
}


def decompose_build(b1: StructuringElement, vectors: Iterable[Point]) -> StructuringElement:
    """B1 ∪ (B1 + v_1) ∪ ... ∪ (B1 + v_k)."""
    points = set(b1.points)
    for v in vectors:
        v = tuple(v)
        if len(v) != b1.dimension:
            raise StructuringElementError(f"translate {v} does not match dimension {b1.dimension}")
        points |= translate(b1.points, v)
    return StructuringElement.from_points(points)


def _box_of(element: StructuringElement, name: str):
    lo, hi = bounding_box(element.points)
    if box_size(lo, hi) != len(element):
        raise RecipeError(f"{name} is not a rectangle")
    return list(lo), list(hi)


def rectangle_chain(r1: StructuringElement, r2: StructuringElement) -> List[StructuringElement]:
    """Unit-step chain of rectangles from R1 to R2.

    Axes are extended in order; along each axis the upper side grows first,
    then the lower side.
    """
    lo, hi = _box_of(r1, "R1")
    lo2, hi2 = _box_of(r2, "R2")
    if len(lo) != len(lo2):
        raise RecipeError("R1 and R2 differ in dimension")
    if any(a < b for a, b in zip(lo, lo2)) or any(a > b for a, b in zip(hi, hi2)):
        raise RecipeError("R1 is not contained in R2")

    chain = [r1]
    for axis in range(len(lo)):
        while hi[axis] < hi2[axis]:
            hi[axis] += 1
            chain.append(box_element(tuple(lo), tuple(hi)))
        while lo[axis] > lo2[axis]:
            lo[axis] -= 1
            chain.append(box_element(tuple(lo), tuple(hi)))
    logger.debug("rectangle chain of %d steps", len(chain))
    return chain


def square_iteration(n: int, dimension: int = 2) -> List[StructuringElement]:
    """C_0 .. C_n: C_k adds the positive unit shifts of C_{k-1} when k is odd
    and the negative ones when k is even, so C_k is a (k+1)-wide cube."""
    if n < 0:
        raise RecipeError("n must be non-negative")
    squares = [StructuringElement.from_points([origin(dimension)])]
    for k in range(1, n + 1):
        step = 1 if k % 2 else -1
        shifts = [v for v in itertools.product((0, step), repeat=dimension) if any(v)]
        squares.append(decompose_build(squares[-1], shifts))
    return squares


def l1_chain(omega_max: int, dimension: int = 2) -> List[StructuringElement]:
    """[Q_0, ..., Q_omega_max]."""
    if omega_max < 0:
        raise RecipeError("omega_max must be non-negative")
    return [l1_ball(omega, dimension) for omega in range(omega_max + 1)]


def _points(raw: Any, what: str) -> List[Point]:
    try:
        return [tuple(int(c) for c in p) for p in raw]
    except (TypeError, ValueError) as exc:
        raise RecipeError(f"{what} must be a list of integer points") from exc


def _int_param(params: Dict[str, Any], key: str, default: Any = None) -> int:
    value = params.get(key, default)
    if value is None:
        raise RecipeError(f"recipe needs parameter '{key}'")
    try:
        return int(value)
    except (TypeError, ValueError) as exc:
        raise RecipeError(f"parameter '{key}' must be an integer") from exc


def _translate_union(params: Dict[str, Any]) -> List[StructuringElement]:
    if "base" not in params:
        raise RecipeError("translate-union recipe needs 'base'")
    try:
        sequence = [StructuringElement.from_points(_points(params["base"], "base"))]
    except (StructuringElementError, ValueError) as exc:
        raise RecipeError(f"invalid base element: {exc}") from exc
    for i, vectors in enumerate(params.get("steps", [])):
        sequence.append(decompose_build(sequence[-1], _points(vectors, f"steps[{i}]")))
    return sequence


def _rectangle_sequence(params: Dict[str, Any]) -> List[StructuringElement]:
    boxes = params.get("rectangles")
    if not boxes:
        raise RecipeError("rectangle-chain recipe needs a non-empty 'rectangles' list")
    try:
        rects = [box_element(tuple(b["lo"]), tuple(b["hi"])) for b in boxes]
    except (KeyError, TypeError, ValueError) as exc:
        raise RecipeError(f"invalid rectangle: {exc}") from exc
    sequence = [rects[0]]
    for r1, r2 in zip(rects, rects[1:]):
        sequence.extend(rectangle_chain(r1, r2)[1:])
    return sequence


def build_sequence(recipe: SequenceRecipe) -> List[StructuringElement]:
    """Expand a recipe into its structuring-element sequence."""
    params = recipe.params or {}
    if recipe.kind is RecipeKind.TRANSLATE_UNION:
        sequence = _translate_union(params)
    elif recipe.kind is RecipeKind.RECTANGLE_CHAIN:
        sequence = _rectangle_sequence(params)
    elif recipe.kind is RecipeKind.SQUARE_ITERATION:
        sequence = square_iteration(_int_param(params, "n"), _int_param(params, "dimension", 2))
    elif recipe.kind is RecipeKind.L1_CHAIN:
        sequence = l1_chain(_int_param(params, "omega_max"), _int_param(params, "dimension", 2))
    else:
        raise RecipeError(f"unknown recipe kind {recipe.kind}")
    logger.info("built %s sequence of %d elements", recipe.kind.value, len(sequence))
    return sequence


def make_recipe(kind: RecipeKind, **params) -> SequenceRecipe:
    return SequenceRecipe(kind=kind, params=params, provenance=PROVENANCE[kind])


def recipe_scope(recipe: SequenceRecipe) -> Scope:
    return RECIPE_SCOPE[recipe.kind]


def cardinalities(sequence: Sequence[StructuringElement]) -> List[int]:
    return [len(b) for b in sequence]
