"""Hypothesis strategies shared by the property suites."""

import numpy as np
from hypothesis import strategies as st

from src.constructors import decompose_build
from src.geometry import box_element, rectangle
from src.models import Image, PixelSet, StructuringElement


def points(radius: int = 2, dimension: int = 2):
    return st.tuples(*[st.integers(-radius, radius)] * dimension)


@st.composite
def structuring_elements(draw, radius: int = 1, max_size: int = 5):
    extra = draw(st.sets(points(radius), max_size=max_size - 1))
    return StructuringElement.from_points(extra | {(0, 0)})


@st.composite
def nested_elements(draw, radius: int = 1, max_size: int = 5):
    """A pair B1 ⊆ B2, both containing the origin."""
    b2 = draw(structuring_elements(radius, max_size))
    chosen = draw(st.sets(st.sampled_from(b2.points), max_size=len(b2)))
    return StructuringElement.from_points(chosen | {(0, 0)}), b2


@st.composite
def pixel_sets(draw, radius: int = 2, max_size: int = 10):
    return PixelSet.from_points(draw(st.sets(points(radius), min_size=1, max_size=max_size)))


@st.composite
def rectangles(draw, max_side: int = 4):
    lo = draw(st.tuples(st.integers(-3, 3), st.integers(-3, 3)))
    w = draw(st.integers(1, max_side))
    h = draw(st.integers(1, max_side))
    return rectangle(lo, (lo[0] + w - 1, lo[1] + h - 1))


@st.composite
def images(draw, domain=None, levels: int = 5):
    domain = domain if domain is not None else draw(pixel_sets())
    values = draw(st.lists(st.integers(0, levels - 1), min_size=len(domain), max_size=len(domain)))
    return Image(domain, np.array(values, dtype=np.float64))


@st.composite
def domain_images(draw, max_size: int = 10, levels: int = 5):
    """A pair of images on one domain."""
    domain = draw(pixel_sets(max_size=max_size))
    return draw(images(domain, levels)), draw(images(domain, levels))


@st.composite
def nested_rectangles(draw, reach: int = 2):
    """Boxes B1 ⊆ B2 around the origin."""
    lo2 = draw(st.tuples(st.integers(-reach, 0), st.integers(-reach, 0)))
    hi2 = draw(st.tuples(st.integers(0, reach), st.integers(0, reach)))
    lo1 = tuple(draw(st.integers(a, 0)) for a in lo2)
    hi1 = tuple(draw(st.integers(0, b)) for b in hi2)
    return box_element(lo1, hi1), box_element(lo2, hi2)


@st.composite
def separated_pairs(draw):
    """B1 with two or more points and B2 = B1 plus one point too far away to
    lie in any translate of B1 inside B2."""
    extra = draw(st.sets(points(1).filter(lambda p: p != (0, 0)), min_size=1, max_size=4))
    b1 = StructuringElement.from_points(extra | {(0, 0)})
    far = draw(st.tuples(st.integers(-6, 6), st.integers(-6, 6)).filter(lambda p: max(map(abs, p)) >= 4))
    return b1, StructuringElement.from_points(set(b1.points) | {far}), far


@st.composite
def whole_space_chains(draw, translates: int = 1):
    """{o} = B0, B1 = B0 + translates, B2 = B1 + translates."""
    step = st.lists(points(1), min_size=1, max_size=translates)
    b0 = StructuringElement.from_points([(0, 0)])
    b1 = decompose_build(b0, draw(step))
    b2 = decompose_build(b1, draw(step))
    return [b0, b1, b2]
