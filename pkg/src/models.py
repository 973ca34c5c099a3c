"""Data models for the shift-inclusion morphology toolkit."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Tuple

import numpy as np
import pandas as pd
from dataclasses_json import dataclass_json

from .errors import DimensionMismatchError, DomainError, StructuringElementError

Point = Tuple[int, ...]
PointSet = FrozenSet[Point]


def origin(dimension: int) -> Point:
    """The all-zero point of Z^dimension."""
    return (0,) * dimension


def common_dimension(points: Iterable[Point]) -> int:
    """Return the shared dimension of ``points``; raise if it varies."""
    dimension = None
    for p in points:
        if dimension is None:
            dimension = len(p)
        elif len(p) != dimension:
            raise DimensionMismatchError(
                f"point {p} has dimension {len(p)}, expected {dimension}")
    if dimension is None:
        raise DomainError("point set is empty")
    if dimension < 1:
        raise DimensionMismatchError("points must have dimension >= 1")
    return dimension


def canonical(points: Iterable[Point]) -> Tuple[Point, ...]:
    """Deduplicate and sort lexicographically."""
    return tuple(sorted({tuple(int(c) for c in p) for p in points}))


def bounding_box(points: Iterable[Point]) -> Tuple[Point, Point]:
    pts = list(points)
    dimension = common_dimension(pts)
    lo = tuple(min(p[i] for p in pts) for i in range(dimension))
    hi = tuple(max(p[i] for p in pts) for i in range(dimension))
    return lo, hi


def box_size(lo: Point, hi: Point) -> int:
    size = 1
    for a, b in zip(lo, hi):
        size *= b - a + 1
    return size


class Sign(Enum):
    """Which restriction set a check quantifies over."""
    POSITIVE = "pos"
    NEGATIVE = "neg"
    BOTH = "both"

    @property
    def factor(self) -> int:
        if self is Sign.BOTH:
            raise ValueError("Sign.BOTH has no single factor")
        return 1 if self is Sign.POSITIVE else -1

    @property
    def opposite(self) -> "Sign":
        if self is Sign.BOTH:
            return Sign.BOTH
        return Sign.NEGATIVE if self is Sign.POSITIVE else Sign.POSITIVE


class InclusionKind(Enum):
    SHIFT = "S"
    WEAK = "WS"


class Scope(Enum):
    RESTRICTED = "restricted"
    WHOLE_SPACE = "whole-space"


class MorphMode(Enum):
    """Opening or closing; each is governed by one sign of the inclusion checks."""
    OPENING = "opening"
    CLOSING = "closing"

    @property
    def governing_sign(self) -> Sign:
        # Opening pairs with the negative property, closing with the positive one.
        return Sign.NEGATIVE if self is MorphMode.OPENING else Sign.POSITIVE


class RecipeKind(Enum):
    TRANSLATE_UNION = "translate-union"
    RECTANGLE_CHAIN = "rectangle-chain"
    SQUARE_ITERATION = "square-iteration"
    L1_CHAIN = "l1-chain"


class Relation(Enum):
    """The four inclusion relations compared by the implication audit."""
    S_M = "S,M"
    S_P = "S,P"
    WS_M = "WS,M"
    WS_P = "WS,P"


@dataclass(frozen=True)
class PixelSet:
    """A finite, non-empty image domain P in Z^m.

    ``lo``/``hi`` are filled in whenever the points form a full box, so a
    rectangle descriptor is never stale.
    """
    points: Tuple[Point, ...]
    lo: Optional[Point] = None
    hi: Optional[Point] = None
    _members: FrozenSet[Point] = field(init=False, repr=False, compare=False)
    _index: Dict[Point, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        points = canonical(self.points)
        if not points:
            raise DomainError("a pixel set must be non-empty")
        common_dimension(points)
        box_lo, box_hi = bounding_box(points)
        is_box = box_size(box_lo, box_hi) == len(points)
        if self.lo is not None or self.hi is not None:
            if (self.lo, self.hi) != (box_lo, box_hi) or not is_box:
                raise DomainError(
                    f"rectangle descriptor {self.lo}..{self.hi} does not enumerate the set")
        if is_box:
            object.__setattr__(self, "lo", box_lo)
            object.__setattr__(self, "hi", box_hi)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "_members", frozenset(points))
        object.__setattr__(self, "_index", {p: i for i, p in enumerate(points)})

    @classmethod
    def from_points(cls, points: Iterable[Point]) -> "PixelSet":
        return cls(points=tuple(points))

    @property
    def dimension(self) -> int:
        return len(self.points[0])

    @property
    def is_rectangle(self) -> bool:
        return self.lo is not None

    @property
    def members(self) -> PointSet:
        return self._members

    def bounding_rectangle(self) -> Tuple[Point, Point]:
        return bounding_box(self.points)

    def index_of(self, p: Point) -> int:
        try:
            return self._index[p]
        except KeyError:
            raise DomainError(f"point {p} is not in the pixel set") from None

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[Point]:
        return iter(self.points)

    def __contains__(self, p) -> bool:
        return p in self._members


@dataclass(frozen=True)
class StructuringElement:
    """A finite point set containing the origin."""
    points: Tuple[Point, ...]
    _members: FrozenSet[Point] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        points = canonical(self.points)
        if not points:
            raise StructuringElementError("a structuring element must be non-empty")
        dimension = common_dimension(points)
        if origin(dimension) not in points:
            raise StructuringElementError(
                f"structuring element {list(points)} does not contain the origin")
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "_members", frozenset(points))

    @classmethod
    def from_points(cls, points: Iterable[Point]) -> "StructuringElement":
        return cls(points=tuple(points))

    @property
    def dimension(self) -> int:
        return len(self.points[0])

    @property
    def members(self) -> PointSet:
        return self._members

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[Point]:
        return iter(self.points)

    def __contains__(self, p) -> bool:
        return p in self._members


@dataclass(frozen=True, eq=False)
class Image:
    """A non-negative image on a pixel set, stored in the set's canonical order."""
    domain: PixelSet
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64).reshape(-1)
        if values.shape != (len(self.domain),):
            raise DomainError(
                f"image has {values.size} values for a domain of {len(self.domain)} pixels")
        if not np.all(np.isfinite(values)) or np.any(values < 0):
            raise DomainError("image values must be finite and non-negative")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_mapping(cls, values: Mapping[Point, float]) -> "Image":
        domain = PixelSet.from_points(values.keys())
        return cls(domain, np.array([values[p] for p in domain.points], dtype=np.float64))

    @classmethod
    def constant(cls, domain: PixelSet, value: float) -> "Image":
        return cls(domain, np.full(len(domain), float(value)))

    @property
    def is_binary(self) -> bool:
        return bool(np.all((self.values == 0) | (self.values == 1)))

    def value_at(self, p: Point) -> float:
        return float(self.values[self.domain.index_of(p)])

    def to_mapping(self) -> Dict[Point, float]:
        return {p: float(v) for p, v in zip(self.domain.points, self.values)}

    def __eq__(self, other) -> bool:
        if not isinstance(other, Image):
            return NotImplemented
        return self.domain == other.domain and bool(np.array_equal(self.values, other.values))

    __hash__ = None


@dataclass_json
@dataclass(frozen=True)
class WitnessEntry:
    """One satisfied quantifier instance: b1 covers b2 (at pixel x when restricted)."""
    b2: Point
    b1: Point
    x: Optional[Point] = None
    sign: Optional[Sign] = None


@dataclass_json
@dataclass(frozen=True)
class Counterexample:
    """Where a check failed.

    For ``reason == "not-subset"`` the point ``b2`` is the member of B1 that is
    missing from B2; otherwise it is the b2 for which no b1 works.
    """
    b2: Point
    x: Optional[Point] = None
    reason: str = "no-translate"
    sign: Optional[Sign] = None


@dataclass_json
@dataclass(frozen=True)
class InclusionMode:
    kind: InclusionKind
    sign: Sign
    scope: Scope

    def label(self) -> str:
        where = "M" if self.scope is Scope.WHOLE_SPACE else "P"
        if self.sign is Sign.BOTH:
            return f"{self.kind.value},{where}"
        return f"{self.kind.value},{where},{'+' if self.sign is Sign.POSITIVE else '-'}"


@dataclass_json
@dataclass(frozen=True)
class InclusionReport:
    """Verdict of one inclusion check, with either a witness or a counterexample."""
    verdict: bool
    mode: InclusionMode
    witness: Optional[Tuple[WitnessEntry, ...]] = None
    counterexample: Optional[Counterexample] = None
    translates: Optional[Tuple[Point, ...]] = None
    stats: Dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict and (self.witness is None or self.counterexample is not None):
            raise ValueError("a true report carries a witness and no counterexample")
        if not self.verdict and (self.counterexample is None or self.witness is not None):
            raise ValueError("a false report carries a counterexample and no witness")

    def __bool__(self) -> bool:
        return self.verdict

    def phi(self) -> Dict[Point, Point]:
        """The map b2 -> b1 recorded by a whole-space witness."""
        return {entry.b2: entry.b1 for entry in self.witness or ()}


@dataclass(frozen=True, eq=False)
class PropertyVerdict:
    """Outcome of the exhaustive order-preservation check.

    When a property fails, ``counterexample_image`` is the violating binary
    image with the least enumeration index; if both fail, the opening one
    wins ties.
    """
    holds_opening: bool
    holds_closing: bool
    images_checked: int
    counterexample_image: Optional[Image] = None
    counterexample_pixel: Optional[Point] = None
    counterexample_operator: Optional[MorphMode] = None
    counterexample_index: Optional[int] = None

    def __post_init__(self):
        failed = not (self.holds_opening and self.holds_closing)
        if failed != (self.counterexample_image is not None):
            raise ValueError("counterexample must be present exactly when a property fails")

    def __eq__(self, other) -> bool:
        if not isinstance(other, PropertyVerdict):
            return NotImplemented
        return (
            self.holds_opening == other.holds_opening
            and self.holds_closing == other.holds_closing
            and self.images_checked == other.images_checked
            and self.counterexample_image == other.counterexample_image
            and self.counterexample_pixel == other.counterexample_pixel
            and self.counterexample_operator == other.counterexample_operator
            and self.counterexample_index == other.counterexample_index
        )

    __hash__ = None

    def to_dict(self) -> Dict[str, Any]:
        """Convert to a JSON-ready dictionary."""
        counterexample = None
        if self.counterexample_image is not None:
            counterexample = {
                'operator': self.counterexample_operator.value,
                'pixel': list(self.counterexample_pixel),
                'index': self.counterexample_index,
                'values': [[list(p), v] for p, v in self.counterexample_image.to_mapping().items()],
            }
        return {
            'holds_opening': self.holds_opening,
            'holds_closing': self.holds_closing,
            'images_checked': self.images_checked,
            'counterexample': counterexample,
        }


@dataclass_json
@dataclass(frozen=True)
class SequenceRecipe:
    """How to build a nested structuring-element sequence, and why it is nested."""
    kind: RecipeKind
    params: Dict[str, Any] = field(default_factory=dict)
    provenance: str = ""


@dataclass_json
@dataclass(frozen=True)
class ImplicationClaim:
    """One arrow of the implication diagram between inclusion relations."""
    label: str
    antecedent: Relation
    consequent: Relation
    expected: bool
    observed: bool
    falsifier: Optional[str] = None

    @property
    def agrees(self) -> bool:
        return self.expected == self.observed


@dataclass(frozen=True)
class ImplicationMatrix:
    claims: Tuple[ImplicationClaim, ...]
    instances: int = 0

    @property
    def consistent(self) -> bool:
        return all(claim.agrees for claim in self.claims)

    def to_frame(self) -> pd.DataFrame:
        rows: List[Dict[str, Any]] = []
        for claim in self.claims:
            rows.append({
                'claim': claim.label,
                'antecedent': claim.antecedent.value,
                'consequent': claim.consequent.value,
                'expected': claim.expected,
                'observed': claim.observed,
                'falsifier': claim.falsifier or '',
            })
        return pd.DataFrame(rows)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'consistent': self.consistent,
            'instances': self.instances,
            'claims': [claim.to_dict(encode_json=True) for claim in self.claims],
        }


@dataclass(frozen=True, eq=False)
class ExampleFixture:
    """A worked example embedded in the regression pack.

    ``verdicts`` maps check labels (``"subset"``, ``"S,P,+"``, ``"WS,M"``, ...)
    to the expected outcome, ``counterexamples`` maps labels to the expected
    (x, b2), and ``grids`` maps operator names (``"opening_b1"``, ...) to the
    expected value grid of that operator applied to ``image``.
    """
    name: str
    b1: StructuringElement
    b2: StructuringElement
    domain: PixelSet
    verdicts: Dict[str, bool] = field(default_factory=dict)
    counterexamples: Dict[str, Tuple[Optional[Point], Point]] = field(default_factory=dict)
    image: Optional[Image] = None
    grids: Dict[str, str] = field(default_factory=dict)
    oracle_domain: Optional[PixelSet] = None
    oracle: Dict[str, bool] = field(default_factory=dict)


@dataclass(frozen=True)
class SequenceFixture:
    """A nested sequence expected to verify; ``domain=None`` means the whole lattice."""
    name: str
    sequence: Tuple[StructuringElement, ...]
    domain: Optional[PixelSet] = None
    kind: InclusionKind = InclusionKind.SHIFT
    expected: bool = True


@dataclass_json
@dataclass(frozen=True)
class PackEntry:
    """One replayed expectation of the regression pack."""
    fixture: str
    check: str
    passed: bool
    detail: str = ""
