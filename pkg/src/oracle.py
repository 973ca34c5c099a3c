"""Exhaustive certification of zero-set preservation.

Why binary images are enough: thresholding at 0 commutes with erosion and
dilation, so zero_set(O_B(g)) = zero_set(O_B(tau_0(g))) and likewise for
closing. Every grayscale image therefore has a binary image with the same
zero sets after filtering, and checking all 2^|P| binary images on P decides
the property for every non-negative image on P.
"""

import itertools
import logging
import multiprocessing
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from .config import DEFAULT_SETTINGS, Settings
from .errors import EnumerationCapError, StructuringElementError
from .geometry import minkowski_diff, minkowski_sum, negate, subset_witness, translate
from .inclusion import check_weak_negative, check_weak_positive, verify_sequence
from .models import (
    Image, InclusionKind, MorphMode, PixelSet, Point, PropertyVerdict, StructuringElement, origin,
)
from .morphology import (
    apply_mode, close_values, extended_domain, offset_table, open_values,
)

logger = logging.getLogger(__name__)


def _check_cap(domain: PixelSet, settings: Settings) -> None:
    if len(domain) > settings.enumeration_cap:
        raise EnumerationCapError(
            f"pixel set has {len(domain)} pixels; the enumeration cap is {settings.enumeration_cap}")


def _bits(indices: np.ndarray, n: int) -> np.ndarray:
    """Row k holds the binary image with index indices[k]: bit i is the value
    at the i-th point of the pixel set."""
    return ((indices[:, None] >> np.arange(n, dtype=np.int64)) & 1).astype(np.float64)


def binary_image(domain: PixelSet, index: int) -> Image:
    return Image(domain, _bits(np.array([index], dtype=np.int64), len(domain))[0])


def enumerate_binary_images(domain: PixelSet, settings: Optional[Settings] = None) -> Iterator[Image]:
    """All 2^|P| binary images on P, in index order."""
    settings = settings or DEFAULT_SETTINGS
    _check_cap(domain, settings)
    for index in range(1 << len(domain)):
        yield binary_image(domain, index)


def violating_pixel(g: Image, b1: StructuringElement, b2: StructuringElement,
                    mode: MorphMode) -> Optional[Point]:
    """First pixel where g breaks zero-set preservation for ``mode``.

    Opening: a zero of O_{B1}(g) that is not a zero of O_{B2}(g).
    Closing: a zero of C_{B2}(g) that is not a zero of C_{B1}(g).
    """
    f1 = apply_mode(g, b1, mode).values
    f2 = apply_mode(g, b2, mode).values
    bad = (f1 == 0) & (f2 != 0) if mode is MorphMode.OPENING else (f2 == 0) & (f1 != 0)
    hits = np.flatnonzero(bad)
    return g.domain.points[hits[0]] if hits.size else None


def _scan_chunk(task) -> Tuple[Optional[int], Optional[int]]:
    start, stop, n, (plus1, minus1, plus2, minus2) = task
    values = _bits(np.arange(start, stop, dtype=np.int64), n)
    o1, o2 = open_values(values, plus1, minus1), open_values(values, plus2, minus2)
    c1, c2 = close_values(values, plus1, minus1), close_values(values, plus2, minus2)
    open_bad = np.flatnonzero(((o1 == 0) & (o2 != 0)).any(axis=1))
    close_bad = np.flatnonzero(((c2 == 0) & (c1 != 0)).any(axis=1))
    return (
        start + int(open_bad[0]) if open_bad.size else None,
        start + int(close_bad[0]) if close_bad.size else None,
    )


def _least(found) -> Optional[int]:
    found = [i for i in found if i is not None]
    return min(found) if found else None


def property_holds(b1: StructuringElement, b2: StructuringElement, domain: PixelSet,
                   settings: Optional[Settings] = None) -> PropertyVerdict:
    """Check zero-set preservation for opening and closing over every binary
    image on P.

    The whole space is always enumerated, in chunks that may run on a process
    pool; the counterexample is the violating image with the least index, the
    opening one winning ties.
    """
    settings = settings or DEFAULT_SETTINGS
    _check_cap(domain, settings)
    n = len(domain)
    total = 1 << n
    tables = (
        offset_table(domain, b1, 1), offset_table(domain, b1, -1),
        offset_table(domain, b2, 1), offset_table(domain, b2, -1),
    )
    tasks = [(start, min(start + settings.chunk_size, total), n, tables)
             for start in range(0, total, settings.chunk_size)]
    logger.info("enumerating %d binary images in %d chunks (jobs=%d)", total, len(tasks), settings.jobs)
    if settings.jobs > 1 and len(tasks) > 1:
        with multiprocessing.Pool(processes=settings.jobs) as pool:
            results = pool.map(_scan_chunk, tasks)
    else:
        results = [_scan_chunk(task) for task in tasks]

    first_open = _least(r[0] for r in results)
    first_close = _least(r[1] for r in results)
    if first_open is None and first_close is None:
        return PropertyVerdict(holds_opening=True, holds_closing=True, images_checked=total)

    if first_open is not None and (first_close is None or first_open <= first_close):
        mode, index = MorphMode.OPENING, first_open
    else:
        mode, index = MorphMode.CLOSING, first_close
    image = binary_image(domain, index)
    pixel = violating_pixel(image, b1, b2, mode)
    logger.info("%s preservation fails for image %d at pixel %s", mode.value, index, pixel)
    return PropertyVerdict(
        holds_opening=first_open is None,
        holds_closing=first_close is None,
        images_checked=total,
        counterexample_image=image,
        counterexample_pixel=pixel,
        counterexample_operator=mode,
        counterexample_index=index,
    )


def equivalence_audit(b1: StructuringElement, b2: StructuringElement, domain: PixelSet,
                      settings: Optional[Settings] = None) -> bool:
    """True iff the oracle agrees with the weak checks: opening against the
    weak negative property, closing against the weak positive one."""
    missing = subset_witness(b1, b2.members)
    if missing is not None:
        raise StructuringElementError(f"equivalence audit expects B1 ⊆ B2; {missing} is missing")
    verdict = property_holds(b1, b2, domain, settings)
    weak_negative = check_weak_negative(b1, b2, domain).verdict
    weak_positive = check_weak_positive(b1, b2, domain).verdict
    agrees = verdict.holds_opening == weak_negative and verdict.holds_closing == weak_positive
    if not agrees:
        logger.warning("oracle/checker mismatch: B1=%s B2=%s opening %s/%s closing %s/%s",
                       b1.points, b2.points, verdict.holds_opening, weak_negative,
                       verdict.holds_closing, weak_positive)
    return agrees


def nested_pairs(window: Sequence[Point], max_size: int) -> Iterator[Tuple[StructuringElement, StructuringElement]]:
    """Every pair 0 ∈ B1 ⊆ B2 ⊆ window with |B2| <= max_size."""
    window = sorted(set(tuple(p) for p in window))
    zero = origin(len(window[0]))
    if zero not in window:
        raise StructuringElementError("the window must contain the origin")
    others = [p for p in window if p != zero]
    for size in range(max_size):
        for extra in itertools.combinations(others, size):
            b2 = StructuringElement.from_points((zero,) + extra)
            for k in range(len(extra) + 1):
                for chosen in itertools.combinations(extra, k):
                    yield StructuringElement.from_points((zero,) + chosen), b2


def equivalence_sweep(domain: PixelSet, window: Sequence[Point], max_size: int = 4,
                      settings: Optional[Settings] = None) -> pd.DataFrame:
    """Oracle against weak checks on every nested pair inside ``window``."""
    rows = []
    for b1, b2 in nested_pairs(window, max_size):
        verdict = property_holds(b1, b2, domain, settings)
        weak_negative = check_weak_negative(b1, b2, domain).verdict
        weak_positive = check_weak_positive(b1, b2, domain).verdict
        rows.append({
            'b1': b1.points,
            'b2': b2.points,
            'holds_opening': verdict.holds_opening,
            'weak_negative': weak_negative,
            'holds_closing': verdict.holds_closing,
            'weak_positive': weak_positive,
        })
    frame = pd.DataFrame(rows)
    frame['agrees'] = ((frame['holds_opening'] == frame['weak_negative'])
                       & (frame['holds_closing'] == frame['weak_positive']))
    logger.info("equivalence sweep: %d instances, %d mismatches", len(frame), int((~frame['agrees']).sum()))
    return frame


def absorption_holds(b1: StructuringElement, b2: StructuringElement, domain: PixelSet,
                     samples: int = 1000, levels: int = 8,
                     settings: Optional[Settings] = None) -> Tuple[bool, bool]:
    """Pointwise ordering on random grayscale images.

    Returns (O_{B2}(g) <= O_{B1}(g) for every sample, C_{B1}(g) <= C_{B2}(g)
    for every sample).
    """
    settings = settings or DEFAULT_SETTINGS
    rng = np.random.default_rng(settings.random_seed)
    values = rng.integers(0, levels, size=(samples, len(domain))).astype(np.float64)
    plus1, minus1 = offset_table(domain, b1, 1), offset_table(domain, b1, -1)
    plus2, minus2 = offset_table(domain, b2, 1), offset_table(domain, b2, -1)
    opening_ok = bool(np.all(open_values(values, plus2, minus2) <= open_values(values, plus1, minus1)))
    closing_ok = bool(np.all(close_values(values, plus1, minus1) <= close_values(values, plus2, minus2)))
    return opening_ok, closing_ok


def _indicator(domain_points, ones) -> Image:
    domain = PixelSet.from_points(domain_points)
    return Image(domain, np.array([1.0 if p in ones else 0.0 for p in domain.points]))


def characteristic_witness(b1: StructuringElement, b2: StructuringElement, at: Point) -> Image:
    """χ_{B2} on (b2 - B1 + B1) ∪ (b2 - B2 + B2).

    When no translate of B1 through ``at`` fits in B2, O_{B1} vanishes at
    ``at`` while O_{B2} does not.
    """
    if at not in b2:
        raise StructuringElementError(f"{at} is not a member of B2")
    support = (minkowski_sum(translate(negate(b1.points), at), b1.points)
               | minkowski_sum(translate(negate(b2.points), at), b2.points))
    return _indicator(support, b2.members)


def anti_characteristic_witness(b1: StructuringElement, b2: StructuringElement, at: Point) -> Image:
    """1 - χ_{-B2} on (-b2 + B1 - B1) ∪ (-b2 + B2 - B2); violates closing
    preservation at -b2 under the same failure."""
    if at not in b2:
        raise StructuringElementError(f"{at} is not a member of B2")
    shift = tuple(-c for c in at)
    support = (translate(minkowski_diff(b1.points, b1.points), shift)
               | translate(minkowski_diff(b2.points, b2.points), shift))
    zeros = negate(b2.points)
    domain = PixelSet.from_points(support)
    return Image(domain, np.array([0.0 if p in zeros else 1.0 for p in domain.points]))


def weak_violation_image(b1: StructuringElement, b2: StructuringElement, domain: PixelSet,
                         x: Point, at: Point, mode: MorphMode) -> Image:
    """Binary image built from a failing weak check at (x, b2).

    Opening (weak negative failure): 1 on ((x - b2) + B2) ∩ P.
    Closing (weak positive failure): 0 on ((x + b2) - B2) ∩ P, 1 elsewhere.
    """
    if mode is MorphMode.OPENING:
        anchor = tuple(a - b for a, b in zip(x, at))
        ones = translate(b2.points, anchor)
        return Image(domain, np.array([1.0 if p in ones else 0.0 for p in domain.points]))
    anchor = tuple(a + b for a, b in zip(x, at))
    zeros = translate(negate(b2.points), anchor)
    return Image(domain, np.array([0.0 if p in zeros else 1.0 for p in domain.points]))


def extended_domain_audit(chain: Sequence[StructuringElement], domain: PixelSet,
                          settings: Optional[Settings] = None) -> pd.DataFrame:
    """Check a chain on the extended pixel set (P + B_n) ∪ (P - B_n).

    One row per consecutive pair: the shift-inclusion verdict there and the
    oracle verdicts. Rows with a False entry are findings, not errors.
    """
    extended = extended_domain(domain, chain[-1])
    reports = verify_sequence(chain, extended, InclusionKind.SHIFT)
    rows: List[dict] = []
    for step, (report, b1, b2) in enumerate(zip(reports, chain, chain[1:])):
        verdict = property_holds(b1, b2, extended, settings)
        rows.append({
            'step': step,
            'shift_included': report.verdict,
            'holds_opening': verdict.holds_opening,
            'holds_closing': verdict.holds_closing,
        })
    frame = pd.DataFrame(rows, columns=['step', 'shift_included', 'holds_opening', 'holds_closing'])
    findings = frame[~frame[['shift_included', 'holds_opening', 'holds_closing']].all(axis=1)]
    if len(findings):
        logger.warning("extended-domain audit: %d pair(s) fail on %d pixels", len(findings), len(extended))
    return frame
