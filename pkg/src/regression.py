"""Replay the embedded worked examples and report every deviation."""

import logging
from typing import Callable, Dict, List, Optional, Sequence

from .config import Settings
from .errors import MorphologyError
from .formats import parse_value_grid, render_value_grid
from .geometry import subset_witness
from .inclusion import (
    check_negative, check_positive, check_shift_inclusion, check_weak_inclusion,
    check_weak_negative, check_weak_positive, check_weak_whole_space, check_whole_space,
    sequence_holds, verify_sequence,
)
from .models import ExampleFixture, Image, InclusionReport, PackEntry, SequenceFixture
from .morphology import closing, dilation, erosion, opening
from .oracle import equivalence_audit, property_holds
from .sample_data import create_example_fixtures, create_sequence_fixtures

logger = logging.getLogger(__name__)

CHECKS: Dict[str, Callable[[ExampleFixture], InclusionReport]] = {
    "S,P,+": lambda f: check_positive(f.b1, f.b2, f.domain),
    "S,P,-": lambda f: check_negative(f.b1, f.b2, f.domain),
    "S,P": lambda f: check_shift_inclusion(f.b1, f.b2, f.domain),
    "S,M": lambda f: check_whole_space(f.b1, f.b2),
    "WS,P,+": lambda f: check_weak_positive(f.b1, f.b2, f.domain),
    "WS,P,-": lambda f: check_weak_negative(f.b1, f.b2, f.domain),
    "WS,P": lambda f: check_weak_inclusion(f.b1, f.b2, f.domain),
    "WS,M": lambda f: check_weak_whole_space(f.b1, f.b2),
}

OPERATORS = {
    "erosion": erosion,
    "dilation": dilation,
    "opening": opening,
    "closing": closing,
}


def grid_diff(expected: str, image: Image) -> List[str]:
    """Cell-by-cell differences between an expected value grid and an image."""
    want = parse_value_grid(expected)
    got = parse_value_grid(render_value_grid(image))
    if len(want) != len(got) or len(want[0]) != len(got[0]):
        return [f"shape {len(got[0])}x{len(got)} differs from expected {len(want[0])}x{len(want)}"]
    diff = []
    for r, (want_row, got_row) in enumerate(zip(want, got)):
        for c, (a, b) in enumerate(zip(want_row, got_row)):
            if a != b and not (a != "_" and b != "_" and float(a) == float(b)):
                diff.append(f"row {r} col {c}: expected {a}, got {b}")
    return diff


def _apply(name: str, fixture: ExampleFixture) -> Image:
    operator, _, which = name.partition("_")
    element = fixture.b1 if which == "b1" else fixture.b2
    return OPERATORS[operator](fixture.image, element)


def _verdict(label: str, fixture: ExampleFixture) -> bool:
    if label == "subset":
        return subset_witness(fixture.b1, fixture.b2.members) is None
    return CHECKS[label](fixture).verdict


def replay_example(fixture: ExampleFixture, settings: Optional[Settings] = None) -> List[PackEntry]:
    entries = []
    for label, expected in fixture.verdicts.items():
        observed = _verdict(label, fixture)
        entries.append(PackEntry(fixture.name, f"verdict {label}", observed == expected,
                                 "" if observed == expected else f"expected {expected}, got {observed}"))

    for label, (x, b2) in fixture.counterexamples.items():
        found = CHECKS[label](fixture).counterexample
        got = (found.x, found.b2) if found is not None else None
        ok = got == (x, b2)
        entries.append(PackEntry(fixture.name, f"counterexample {label}", ok,
                                 "" if ok else f"expected x={x} b2={b2}, got {got}"))

    for name, expected in fixture.grids.items():
        diff = grid_diff(expected, _apply(name, fixture))
        entries.append(PackEntry(fixture.name, f"grid {name}", not diff, "; ".join(diff)))

    if fixture.oracle:
        domain = fixture.oracle_domain or fixture.domain
        verdict = property_holds(fixture.b1, fixture.b2, domain, settings)
        observed = {"opening": verdict.holds_opening, "closing": verdict.holds_closing}
        for operator, expected in fixture.oracle.items():
            ok = observed[operator] == expected
            entries.append(PackEntry(fixture.name, f"oracle {operator}", ok,
                                     "" if ok else f"expected {expected}, got {observed[operator]}"))
        if subset_witness(fixture.b1, fixture.b2.members) is None:
            agrees = equivalence_audit(fixture.b1, fixture.b2, domain, settings)
            entries.append(PackEntry(fixture.name, "oracle equals weak checks", agrees,
                                     "" if agrees else "oracle and weak checks disagree"))
    return entries


def replay_sequence(fixture: SequenceFixture) -> PackEntry:
    reports = verify_sequence(fixture.sequence, fixture.domain, fixture.kind)
    observed = sequence_holds(reports)
    detail = ""
    if observed != fixture.expected:
        failed = [i for i, r in enumerate(reports) if not r.verdict]
        detail = f"expected {fixture.expected}, got {observed} (failing pairs {failed})"
    return PackEntry(fixture.name, "sequence", observed == fixture.expected, detail)


def replay_pack(examples: Optional[Sequence[ExampleFixture]] = None,
                sequences: Optional[Sequence[SequenceFixture]] = None,
                settings: Optional[Settings] = None) -> List[PackEntry]:
    """Replay every example and sequence fixture; a crash counts as a failure."""
    examples = create_example_fixtures() if examples is None else examples
    sequences = create_sequence_fixtures() if sequences is None else sequences
    entries: List[PackEntry] = []
    for fixture in examples:
        try:
            entries.extend(replay_example(fixture, settings))
        except MorphologyError as exc:
            entries.append(PackEntry(fixture.name, "replay", False, str(exc)))
    for fixture in sequences:
        entries.append(replay_sequence(fixture))
    failed = sum(1 for e in entries if not e.passed)
    logger.info("regression pack: %d checks, %d failed", len(entries), failed)
    return entries
