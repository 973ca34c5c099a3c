"""Decision procedures for shift inclusion and weak shift inclusion."""

import logging
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import pandas as pd

from .errors import DimensionMismatchError
from .geometry import add, scale, sub, subset_witness
from .models import (
    Counterexample, ImplicationClaim, ImplicationMatrix, InclusionKind, InclusionMode,
    InclusionReport, PixelSet, Point, Relation, Scope, Sign, StructuringElement,
    WitnessEntry,
)

logger = logging.getLogger(__name__)

CorpusEntry = Tuple[str, StructuringElement, StructuringElement, PixelSet]

# The eight arrows of the implication diagram: (label, antecedent, consequent, expected).
DIAGRAM_CLAIMS = (
    ("a: S,M => WS,M", Relation.S_M, Relation.WS_M, True),
    ("a: WS,M => S,M", Relation.WS_M, Relation.S_M, True),
    ("b: S,P => S,M", Relation.S_P, Relation.S_M, False),
    ("c: S,M => S,P", Relation.S_M, Relation.S_P, False),
    ("d: WS,P => WS,M", Relation.WS_P, Relation.WS_M, False),
    ("e: WS,M => WS,P", Relation.WS_M, Relation.WS_P, False),
    ("f: S,P => WS,P", Relation.S_P, Relation.WS_P, True),
    ("g: WS,P => S,P", Relation.WS_P, Relation.S_P, False),
)


def _check_dimensions(b1: StructuringElement, b2: StructuringElement,
                      domain: Optional[PixelSet] = None) -> None:
    dims = {b1.dimension, b2.dimension}
    if domain is not None:
        dims.add(domain.dimension)
    if len(dims) != 1:
        raise DimensionMismatchError(f"mixed dimensions {sorted(dims)}")


def _restricted(element: StructuringElement, x: Point, domain: PixelSet, factor: int) -> List[Point]:
    return [b for b in element.points if add(x, scale(b, factor)) in domain]


class _TranslateFit:
    """Memoised test of B1 + v ⊆ B2."""

    def __init__(self, b1: StructuringElement, b2: StructuringElement):
        self._b1 = b1.points
        self._b2 = b2.members
        self._cache: Dict[Point, bool] = {}

    def __call__(self, v: Point) -> bool:
        hit = self._cache.get(v)
        if hit is None:
            hit = all(add(p, v) in self._b2 for p in self._b1)
            self._cache[v] = hit
        return hit


def _shift_cover(fit: _TranslateFit) -> Callable:
    def covers(x, q2, q1, domain, factor):
        return fit(sub(q2, q1))
    return covers


def _weak_cover(b1: StructuringElement, b2: StructuringElement) -> Callable:
    members = b2.members

    def covers(x, q2, q1, domain, factor):
        # Window of B1 anchored at x ± b1, restricted with the opposite sign.
        anchor = add(x, scale(q1, factor))
        shift = sub(q2, q1)
        return all(add(q, shift) in members for q in _restricted(b1, anchor, domain, -factor))
    return covers


def _scan(b1: StructuringElement, b2: StructuringElement, domain: PixelSet,
          kind: InclusionKind, sign: Sign) -> InclusionReport:
    """Evaluate one signed property; the first failing (x, b2) in
    lexicographic order is the counterexample."""
    _check_dimensions(b1, b2, domain)
    mode = InclusionMode(kind, sign, Scope.RESTRICTED)
    factor = sign.factor
    covers = _shift_cover(_TranslateFit(b1, b2)) if kind is InclusionKind.SHIFT else _weak_cover(b1, b2)
    witness: List[WitnessEntry] = []
    evaluated = 0
    for x in domain.points:
        candidates = _restricted(b1, x, domain, factor)
        for q2 in _restricted(b2, x, domain, factor):
            chosen = None
            for q1 in candidates:
                evaluated += 1
                if covers(x, q2, q1, domain, factor):
                    chosen = q1
                    break
            if chosen is None:
                logger.debug("%s fails at x=%s b2=%s after %d tuples", mode.label(), x, q2, evaluated)
                return InclusionReport(
                    verdict=False, mode=mode,
                    counterexample=Counterexample(b2=q2, x=x, sign=sign),
                    stats={'evaluated': evaluated},
                )
            witness.append(WitnessEntry(b2=q2, b1=chosen, x=x, sign=sign))
    logger.debug("%s holds; %d tuples evaluated", mode.label(), evaluated)
    return InclusionReport(verdict=True, mode=mode, witness=tuple(witness), stats={'evaluated': evaluated})


def check_positive(b1: StructuringElement, b2: StructuringElement, domain: PixelSet) -> InclusionReport:
    """B1 ⊆_{S,P,+} B2 (the subset requirement is not part of this check)."""
    return _scan(b1, b2, domain, InclusionKind.SHIFT, Sign.POSITIVE)


def check_negative(b1: StructuringElement, b2: StructuringElement, domain: PixelSet) -> InclusionReport:
    """B1 ⊆_{S,P,-} B2 (the subset requirement is not part of this check)."""
    return _scan(b1, b2, domain, InclusionKind.SHIFT, Sign.NEGATIVE)


def check_weak_positive(b1: StructuringElement, b2: StructuringElement, domain: PixelSet) -> InclusionReport:
    """B1 ⊆_{WS,P,+} B2; equivalent to zero-set preservation under closing."""
    return _scan(b1, b2, domain, InclusionKind.WEAK, Sign.POSITIVE)


def check_weak_negative(b1: StructuringElement, b2: StructuringElement, domain: PixelSet) -> InclusionReport:
    """B1 ⊆_{WS,P,-} B2; equivalent to zero-set preservation under opening."""
    return _scan(b1, b2, domain, InclusionKind.WEAK, Sign.NEGATIVE)


def _not_subset(mode: InclusionMode, missing: Point) -> InclusionReport:
    return InclusionReport(
        verdict=False, mode=mode,
        counterexample=Counterexample(b2=missing, reason="not-subset"),
        stats={'evaluated': 0},
    )


def _restricted_inclusion(b1: StructuringElement, b2: StructuringElement, domain: PixelSet,
                          kind: InclusionKind, sign: Sign) -> InclusionReport:
    _check_dimensions(b1, b2, domain)
    mode = InclusionMode(kind, sign, Scope.RESTRICTED)
    missing = subset_witness(b1, b2.members)
    if missing is not None:
        return _not_subset(mode, missing)
    signs = (Sign.POSITIVE, Sign.NEGATIVE) if sign is Sign.BOTH else (sign,)
    witness: List[WitnessEntry] = []
    evaluated = 0
    for s in signs:
        part = _scan(b1, b2, domain, kind, s)
        evaluated += part.stats['evaluated']
        if not part.verdict:
            return InclusionReport(verdict=False, mode=mode, counterexample=part.counterexample,
                                   stats={'evaluated': evaluated})
        witness.extend(part.witness)
    return InclusionReport(verdict=True, mode=mode, witness=tuple(witness), stats={'evaluated': evaluated})


def check_shift_inclusion(b1: StructuringElement, b2: StructuringElement, domain: PixelSet,
                          sign: Sign = Sign.BOTH) -> InclusionReport:
    """B1 ⊆_{S,P} B2: subset, then the positive and the negative property."""
    return _restricted_inclusion(b1, b2, domain, InclusionKind.SHIFT, sign)


def check_weak_inclusion(b1: StructuringElement, b2: StructuringElement, domain: PixelSet,
                         sign: Sign = Sign.BOTH) -> InclusionReport:
    """B1 ⊆_{WS,P} B2: subset, then the weak positive and weak negative property."""
    return _restricted_inclusion(b1, b2, domain, InclusionKind.WEAK, sign)


def _scan_whole_space(b1: StructuringElement, b2: StructuringElement, mode: InclusionMode) -> InclusionReport:
    # With P = M every restriction set is the whole element, so the positive,
    # negative and weak quantifiers all reduce to: every b2 has a b1 with
    # B1 + (b2 - b1) ⊆ B2.
    fit = _TranslateFit(b1, b2)
    witness: List[WitnessEntry] = []
    evaluated = 0
    for q2 in b2.points:
        chosen = None
        for q1 in b1.points:
            evaluated += 1
            if fit(sub(q2, q1)):
                chosen = q1
                break
        if chosen is None:
            logger.debug("%s fails at b2=%s", mode.label(), q2)
            return InclusionReport(verdict=False, mode=mode,
                                   counterexample=Counterexample(b2=q2, sign=mode.sign),
                                   stats={'evaluated': evaluated})
        witness.append(WitnessEntry(b2=q2, b1=chosen))
    translates = tuple(sorted({sub(w.b2, w.b1) for w in witness}))
    return InclusionReport(verdict=True, mode=mode, witness=tuple(witness),
                           translates=translates, stats={'evaluated': evaluated})


def _whole_space(b1: StructuringElement, b2: StructuringElement, kind: InclusionKind) -> InclusionReport:
    _check_dimensions(b1, b2)
    mode = InclusionMode(kind, Sign.BOTH, Scope.WHOLE_SPACE)
    missing = subset_witness(b1, b2.members)
    if missing is not None:
        return _not_subset(mode, missing)
    return _scan_whole_space(b1, b2, mode)


def check_whole_space(b1: StructuringElement, b2: StructuringElement) -> InclusionReport:
    """B1 ⊆_{S,M} B2, decided by the finite decomposition criterion.

    On success the witness is the map φ: B2 -> B1 and ``translates`` holds the
    vectors b2 - φ(b2), so that B2 is the union of the B1 + v.
    """
    return _whole_space(b1, b2, InclusionKind.SHIFT)


def check_weak_whole_space(b1: StructuringElement, b2: StructuringElement) -> InclusionReport:
    """B1 ⊆_{WS,M} B2."""
    return _whole_space(b1, b2, InclusionKind.WEAK)


def check_whole_space_signed(b1: StructuringElement, b2: StructuringElement, sign: Sign) -> InclusionReport:
    """Positive-only or negative-only whole-space scan, without the subset requirement."""
    _check_dimensions(b1, b2)
    if sign is Sign.BOTH:
        raise ValueError("use check_whole_space for the two-sided check")
    return _scan_whole_space(b1, b2, InclusionMode(InclusionKind.SHIFT, sign, Scope.WHOLE_SPACE))


def verify_sequence(sequence: Sequence[StructuringElement], domain: Optional[PixelSet],
                    kind: InclusionKind = InclusionKind.SHIFT,
                    sign: Sign = Sign.BOTH) -> List[InclusionReport]:
    """Check each consecutive pair; ``domain=None`` means the whole lattice.

    Transitivity makes the consecutive pairs sufficient.
    """
    if len(sequence) < 2:
        raise ValueError("a sequence needs at least two structuring elements")
    reports = []
    for b1, b2 in zip(sequence, sequence[1:]):
        if domain is None:
            report = check_whole_space(b1, b2) if kind is InclusionKind.SHIFT else check_weak_whole_space(b1, b2)
        else:
            report = _restricted_inclusion(b1, b2, domain, kind, sign)
        reports.append(report)
    logger.info("verified %d pairs (%s): %d failed", len(reports), kind.value,
                sum(1 for r in reports if not r.verdict))
    return reports


def sequence_holds(reports: Iterable[InclusionReport]) -> bool:
    return all(r.verdict for r in reports)


def relations(b1: StructuringElement, b2: StructuringElement, domain: PixelSet) -> Dict[Relation, bool]:
    """All four relations of the implication diagram for one instance."""
    return {
        Relation.S_M: check_whole_space(b1, b2).verdict,
        Relation.S_P: check_shift_inclusion(b1, b2, domain).verdict,
        Relation.WS_M: check_weak_whole_space(b1, b2).verdict,
        Relation.WS_P: check_weak_inclusion(b1, b2, domain).verdict,
    }


def relation_table(corpus: Sequence[CorpusEntry]) -> pd.DataFrame:
    rows = []
    for name, b1, b2, domain in corpus:
        row = {'instance': name}
        row.update({rel.value: held for rel, held in relations(b1, b2, domain).items()})
        rows.append(row)
    return pd.DataFrame(rows, columns=['instance'] + [rel.value for rel in Relation])


def audit_implication_matrix(corpus: Optional[Sequence[CorpusEntry]] = None) -> ImplicationMatrix:
    """Observe every arrow of the implication diagram on a corpus.

    A "yes" arrow is observed when no instance falsifies it; a "no" arrow is
    observed once some instance has the antecedent without the consequent.
    """
    if corpus is None:
        from .sample_data import create_implication_corpus
        corpus = create_implication_corpus()
    observed = [(name, relations(b1, b2, domain)) for name, b1, b2, domain in corpus]
    claims = []
    for label, antecedent, consequent, expected in DIAGRAM_CLAIMS:
        falsifier = next((name for name, rel in observed if rel[antecedent] and not rel[consequent]), None)
        claims.append(ImplicationClaim(
            label=label, antecedent=antecedent, consequent=consequent,
            expected=expected, observed=falsifier is None, falsifier=falsifier,
        ))
    matrix = ImplicationMatrix(claims=tuple(claims), instances=len(observed))
    if not matrix.consistent:
        logger.warning("implication audit disagrees with the diagram: %s",
                       [c.label for c in claims if not c.agrees])
    return matrix
