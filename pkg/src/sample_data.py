"""Embedded worked examples for the regression pack and the tests."""

from typing import Iterable, List, Tuple

from .constructors import decompose_build, square_iteration
from .formats import parse_value_grid
from .geometry import box_element, l1_ball, rectangle
from .models import (
    ExampleFixture, Image, PixelSet, Point, SequenceFixture, StructuringElement,
)

CROSS = ((0, 0), (-1, 0), (1, 0), (0, -1), (0, 1))


def _se(points: Iterable[Point]) -> StructuringElement:
    return StructuringElement.from_points(points)


def _pixels(points: Iterable[Point]) -> PixelSet:
    return PixelSet.from_points(points)


def grid_image(text: str) -> Image:
    """An image from a value grid whose bottom-left cell is (0, 0); ``_`` cells
    are off the domain."""
    rows = parse_value_grid(text)
    height = len(rows)
    values = {
        (col, height - 1 - r): float(token)
        for r, row in enumerate(rows)
        for col, token in enumerate(row)
        if token != "_"
    }
    return Image.from_mapping(values)


def create_cross_in_square() -> ExampleFixture:
    """Cross inside the 3x3 square on a 6x6 grid: opening preservation fails."""
    g = grid_image("""
        0 0 0 0 0 0
        0 0 1 1 1 0
        0 0 1 1 1 0
        0 1 1 1 1 0
        0 0 1 0 0 0
        0 0 0 0 0 0
    """)
    return ExampleFixture(
        name="cross-in-square",
        b1=_se(CROSS),
        b2=box_element((-1, -1), (1, 1)),
        domain=rectangle((0, 0), (5, 5)),
        verdicts={"subset": True, "S,P": False, "S,M": False, "WS,P,-": False, "WS,P,+": False},
        counterexamples={"S,M": (None, (-1, -1))},
        image=g,
        grids={
            "erosion_b1": """
                0 0 0 0 0 0
                0 0 0 0 0 0
                0 0 0 1 0 0
                0 0 1 0 0 0
                0 0 0 0 0 0
                0 0 0 0 0 0
            """,
            "opening_b1": """
                0 0 0 0 0 0
                0 0 0 1 0 0
                0 0 1 1 1 0
                0 1 1 1 0 0
                0 0 1 0 0 0
                0 0 0 0 0 0
            """,
            "erosion_b2": """
                0 0 0 0 0 0
                0 0 0 0 0 0
                0 0 0 1 0 0
                0 0 0 0 0 0
                0 0 0 0 0 0
                0 0 0 0 0 0
            """,
            "opening_b2": """
                0 0 0 0 0 0
                0 0 1 1 1 0
                0 0 1 1 1 0
                0 0 1 1 1 0
                0 0 0 0 0 0
                0 0 0 0 0 0
            """,
        },
        oracle_domain=rectangle((0, 0), (3, 3)),
        oracle={"opening": False, "closing": False},
    )


def create_cover_without_subset() -> ExampleFixture:
    """Both translate-cover properties hold although B1 is not a subset of B2.

    (0,1) is never reachable from P, so only the subset test rejects it.
    """
    return ExampleFixture(
        name="cover-without-subset",
        b1=_se([(-1, 0), (0, 0), (1, 0), (0, 1)]),
        b2=_se([(-2, 0), (-1, 0), (0, 0), (1, 0), (2, 0), (-1, 1), (1, 1)]),
        domain=_pixels([(0, 0), (1, 0)]),
        verdicts={"subset": False, "S,P,+": True, "S,P,-": True, "S,P": False},
        counterexamples={"S,P": (None, (0, 1))},
    )


def create_positive_only() -> ExampleFixture:
    """Positive property without the negative one."""
    b1 = _se([(0, 0), (0, -1)])
    return ExampleFixture(
        name="positive-only",
        b1=b1,
        b2=decompose_build(b1, [(0, 3)]),
        domain=_pixels([(0, 0), (0, 1), (0, 3)]),
        verdicts={"subset": True, "S,P,+": True, "S,P,-": False, "S,M": True, "WS,P": True},
        counterexamples={"S,P,-": ((0, 3), (0, 2))},
        oracle={"opening": True, "closing": True},
    )


def create_staggered_row() -> ExampleFixture:
    """Whole-space inclusion that fails on a non-rectangular pixel set."""
    return ExampleFixture(
        name="staggered-row",
        b1=_se([(0, 0), (1, 0)]),
        b2=box_element((0, 0), (1, 1)),
        domain=_pixels([(0, 0), (1, 1), (2, 1), (3, 1), (4, 1), (5, 1)]),
        verdicts={"S,M": True, "WS,M": True, "S,P": False, "WS,P,-": False},
        image=grid_image("""
            _ 1 0 0 0 0
            1 _ _ _ _ _
        """),
        grids={
            "erosion_b1": """
                _ 0 0 0 0 0
                1 _ _ _ _ _
            """,
            "opening_b1": """
                _ 0 0 0 0 0
                1 _ _ _ _ _
            """,
            "erosion_b2": """
                _ 0 0 0 0 0
                1 _ _ _ _ _
            """,
            "opening_b2": """
                _ 1 0 0 0 0
                1 _ _ _ _ _
            """,
        },
        oracle={"opening": False},
    )


def create_one_row() -> ExampleFixture:
    """Shift inclusion on a one-row pixel set without whole-space inclusion."""
    return ExampleFixture(
        name="one-row",
        b1=_se([(0, 0), (0, 1)]),
        b2=_se([(0, 0), (0, 1), (1, 1)]),
        domain=rectangle((0, 0), (5, 0)),
        verdicts={"S,P": True, "WS,P": True, "S,M": False, "WS,M": False},
        counterexamples={"S,M": (None, (1, 1))},
        oracle={"opening": True, "closing": True},
    )


def create_diagonal_pair() -> ExampleFixture:
    """A union of two translates that still breaks opening on a 5x3 grid."""
    b1 = _se([(0, 0), (2, 2)])
    return ExampleFixture(
        name="diagonal-pair",
        b1=b1,
        b2=decompose_build(b1, [(0, -2)]),
        domain=rectangle((0, 0), (4, 2)),
        verdicts={"S,M": True, "WS,M": True, "S,P": False, "WS,P,-": False, "WS,P": False},
        image=grid_image("""
            0 0 1 0 0
            0 0 0 0 0
            1 0 1 0 1
        """),
        grids={
            "erosion_b1": """
                0 0 1 0 0
                0 0 0 0 0
                1 0 0 0 1
            """,
            "opening_b1": """
                0 0 1 0 0
                0 0 0 0 0
                1 0 0 0 1
            """,
            "erosion_b2": """
                0 0 0 0 0
                0 0 0 0 0
                1 0 0 0 1
            """,
            "opening_b2": """
                0 0 1 0 0
                0 0 0 0 0
                1 0 1 0 1
            """,
        },
        oracle={"opening": False},
    )


def create_weak_corner() -> ExampleFixture:
    """Weak shift inclusion without shift inclusion."""
    corner = [(0, 0), (1, 0), (0, -1)]
    return ExampleFixture(
        name="weak-corner",
        b1=_se([(0, 0), (0, -1)]),
        b2=_se(corner),
        domain=_pixels(corner),
        verdicts={"S,P": False, "WS,P": True, "WS,P,+": True, "WS,P,-": True, "S,M": False, "WS,M": False},
        counterexamples={"S,P": ((0, 0), (1, 0))},
        oracle={"opening": True, "closing": True},
    )


def create_example_fixtures() -> List[ExampleFixture]:
    """Create the seven counterexample fixtures."""
    return [
        create_cross_in_square(),
        create_cover_without_subset(),
        create_positive_only(),
        create_staggered_row(),
        create_one_row(),
        create_diagonal_pair(),
        create_weak_corner(),
    ]


def create_sequence_fixtures() -> List[SequenceFixture]:
    """Create the seven whole-space sequence fixtures."""
    origin_only = _se([(0, 0)])
    star = _se([(0, 1), (-1, 0), (0, 0), (1, 0), (2, 0), (0, -1)])
    corner = _se([(0, 0), (0, 1), (1, 0)])
    return [
        SequenceFixture("squares", (origin_only, box_element((-1, -1), (1, 1)), box_element((-2, -2), (2, 2)))),
        SequenceFixture("diamonds", (origin_only, l1_ball(1, 2), l1_ball(2, 2))),
        SequenceFixture("square-to-bar", (origin_only, box_element((-1, -1), (1, 1)),
                                          box_element((-2, -1), (2, 1)))),
        SequenceFixture("drifting-squares", (origin_only, box_element((0, 0), (1, 1)),
                                             box_element((-1, -1), (1, 1)), box_element((-1, -1), (2, 2)))),
        SequenceFixture("star", (origin_only, star, decompose_build(star, [(1, 1)]))),
        SequenceFixture("staircase", (origin_only, corner,
                                      _se([(0, 0), (0, 1), (1, 0), (1, 1), (2, 0), (0, 2)]))),
        SequenceFixture("square-to-wide", (origin_only, box_element((-1, -1), (1, 1)),
                                           box_element((-1, -1), (2, 1)))),
    ]


def create_square_fixture(n: int = 3) -> SequenceFixture:
    """Squares C_0..C_n, shift-included on any rectangle."""
    return SequenceFixture("square-iteration", tuple(square_iteration(n)), domain=rectangle((-3, -3), (4, 4)))


def create_implication_corpus() -> List[Tuple[str, StructuringElement, StructuringElement, PixelSet]]:
    """(name, B1, B2, P) for every counterexample fixture."""
    return [(f.name, f.b1, f.b2, f.domain) for f in create_example_fixtures()]
