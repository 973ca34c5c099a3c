"""Erosion, dilation, opening and closing on images over arbitrary pixel sets.

Every operator only selects existing values (min or max), so results are
compared exactly, with no tolerance.
"""

import logging
from functools import lru_cache
from typing import List, Sequence, Tuple

import numpy as np

from .errors import DimensionMismatchError, DomainError, UnverifiedSequenceError
from .geometry import add, minkowski_diff, minkowski_sum, scale
from .inclusion import verify_sequence
from .models import Image, InclusionKind, MorphMode, PixelSet, PointSet, StructuringElement

logger = logging.getLogger(__name__)


@lru_cache(maxsize=512)
def offset_table(domain: PixelSet, element: StructuringElement, factor: int) -> np.ndarray:
    """Index table of shape (|P|, |B|): entry [i, j] is the index of
    x_i + factor * b_j in ``domain``, or |P| when that point lies outside.
    """
    if domain.dimension != element.dimension:
        raise DimensionMismatchError(
            f"image dimension {domain.dimension} does not match "
            f"structuring element dimension {element.dimension}")
    sentinel = len(domain)
    table = np.full((len(domain), len(element)), sentinel, dtype=np.intp)
    for i, x in enumerate(domain.points):
        for j, b in enumerate(element.points):
            y = add(x, scale(b, factor))
            if y in domain:
                table[i, j] = domain.index_of(y)
    # The origin column keeps every row non-empty.
    assert np.all((table < sentinel).any(axis=1))
    table.setflags(write=False)
    return table


def _select(values: np.ndarray, table: np.ndarray, fill: float, reducer) -> np.ndarray:
    pad = np.full(values.shape[:-1] + (1,), fill, dtype=np.float64)
    padded = np.concatenate([values, pad], axis=-1)
    return reducer(padded[..., table], axis=-1)


def erode_values(values: np.ndarray, table: np.ndarray) -> np.ndarray:
    """Min over the erosion table; ``values`` may carry leading batch axes."""
    return _select(values, table, np.inf, np.min)


def dilate_values(values: np.ndarray, table: np.ndarray) -> np.ndarray:
    return _select(values, table, -np.inf, np.max)


def open_values(values: np.ndarray, plus: np.ndarray, minus: np.ndarray) -> np.ndarray:
    return dilate_values(erode_values(values, plus), minus)


def close_values(values: np.ndarray, plus: np.ndarray, minus: np.ndarray) -> np.ndarray:
    return erode_values(dilate_values(values, minus), plus)


def erosion(g: Image, b: StructuringElement) -> Image:
    """ε_B(g)(x) = min g(x + b) over b in B(x;P,+)."""
    return Image(g.domain, erode_values(g.values, offset_table(g.domain, b, 1)))


def dilation(g: Image, b: StructuringElement) -> Image:
    """δ_B(g)(x) = max g(x - b) over b in B(x;P,-)."""
    return Image(g.domain, dilate_values(g.values, offset_table(g.domain, b, -1)))


def opening(g: Image, b: StructuringElement) -> Image:
    return dilation(erosion(g, b), b)


def closing(g: Image, b: StructuringElement) -> Image:
    return erosion(dilation(g, b), b)


def apply_mode(g: Image, b: StructuringElement, mode: MorphMode) -> Image:
    return opening(g, b) if mode is MorphMode.OPENING else closing(g, b)


def threshold(g: Image, t: float) -> Image:
    """τ_t: 0 where g(x) <= t, else 1."""
    if t < 0:
        raise ValueError("threshold must be non-negative")
    return Image(g.domain, np.where(g.values <= t, 0.0, 1.0))


def zero_set(g: Image) -> PointSet:
    return frozenset(p for p, v in zip(g.domain.points, g.values) if v == 0)


def image_leq(f: Image, g: Image) -> bool:
    """Pointwise f <= g."""
    if f.domain != g.domain:
        raise DomainError("images are defined on different pixel sets")
    return bool(np.all(f.values <= g.values))


def extended_domain(domain: PixelSet, bn: StructuringElement) -> PixelSet:
    """(P + B_n) ∪ (P - B_n)."""
    return PixelSet.from_points(minkowski_sum(domain, bn) | minkowski_diff(domain, bn))


def extend_image(g: Image, bn: StructuringElement) -> Image:
    """Copy g onto (P + B_n) ∪ (P - B_n), zero outside P."""
    domain = extended_domain(g.domain, bn)
    values = np.zeros(len(domain))
    for p, v in zip(g.domain.points, g.values):
        values[domain.index_of(p)] = v
    return Image(domain, values)


def restrict_image(g: Image, domain: PixelSet) -> Image:
    """The restriction of g to a sub-domain."""
    return Image(domain, np.array([g.value_at(p) for p in domain.points]))


def granulometric_curve(
    g: Image,
    sequence: Sequence[StructuringElement],
    mode: MorphMode = MorphMode.OPENING,
    force: bool = False,
) -> List[Tuple[int, int]]:
    """Zero-set size of O_{B_k}(g) (or C_{B_k}(g)) for each step k.

    The sequence is first checked for weak shift inclusion on the image's
    domain in the sign governing ``mode``; an unverified sequence raises
    unless ``force`` is set.
    """
    if not sequence:
        raise ValueError("granulometry needs at least one structuring element")
    if len(sequence) > 1:
        reports = verify_sequence(sequence, g.domain, InclusionKind.WEAK, sign=mode.governing_sign)
        failed = [i for i, r in enumerate(reports) if not r.verdict]
        if failed:
            if not force:
                raise UnverifiedSequenceError(
                    f"steps {failed[0]}->{failed[0] + 1} are not weak-shift-included "
                    f"on this pixel set ({mode.value})")
            logger.warning("granulometry forced over an unverified sequence (pairs %s)", failed)

    curve = []
    for k, element in enumerate(sequence):
        filtered = apply_mode(g, element, mode)
        curve.append((k, len(zero_set(filtered))))
    logger.debug("granulometric curve (%s): %s", mode.value, curve)
    return curve


def is_monotone(curve: Sequence[Tuple[int, int]], mode: MorphMode = MorphMode.OPENING) -> bool:
    """Non-decreasing for opening curves, non-increasing for closing curves."""
    counts = [c for _, c in curve]
    pairs = zip(counts, counts[1:])
    if mode is MorphMode.OPENING:
        return all(a <= b for a, b in pairs)
    return all(a >= b for a, b in pairs)
