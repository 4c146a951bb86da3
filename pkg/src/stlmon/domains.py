"""Verdict domains and their algebra.

Four domains are in play: plain Booleans, real-valued robustness over the
extended reals, strong-Kleene three-valued logic, and robustness intervals
(enclosures of all robustness values consistent with the future of a partial
trace).  Everything here is a pure function over immutable values.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Union

NEG_INF = float("-inf")
POS_INF = float("inf")


class Cmp(enum.Enum):
    """Comparison operator of an atomic predicate ``signal cmp threshold``."""

    LT = "<"
    LE = "<="
    GT = ">"
    GE = ">="
    EQ = "=="
    NE = "!="


def atom_robustness(cmp: Cmp, value: float, threshold: float) -> float:
    """Robustness of ``value cmp threshold``.

    Strict and non-strict comparisons share the same margin; they differ only
    in Boolean truth at robustness exactly 0.  ``==`` is -|v-c| (zero exactly
    at equality, negative elsewhere) and ``!=`` its mirror.
    """
    if cmp is Cmp.GT or cmp is Cmp.GE:
        return value - threshold
    if cmp is Cmp.LT or cmp is Cmp.LE:
        return threshold - value
    if cmp is Cmp.EQ:
        return -abs(value - threshold)
    if cmp is Cmp.NE:
        return abs(value - threshold)
    raise TypeError(f"not a comparison: {cmp!r}")


def atom_truth(cmp: Cmp, value: float, threshold: float) -> bool:
    """Boolean truth of ``value cmp threshold`` (exact equality for ==/!=)."""
    if cmp is Cmp.GT:
        return value > threshold
    if cmp is Cmp.GE:
        return value >= threshold
    if cmp is Cmp.LT:
        return value < threshold
    if cmp is Cmp.LE:
        return value <= threshold
    if cmp is Cmp.EQ:
        return value == threshold
    if cmp is Cmp.NE:
        return value != threshold
    raise TypeError(f"not a comparison: {cmp!r}")


class ThreeValued(enum.IntEnum):
    """Strong-Kleene truth values, ordered FALSE < UNKNOWN < TRUE.

    The ordering makes conjunction ``min`` and disjunction ``max``.
    """

    FALSE = -1
    UNKNOWN = 0
    TRUE = 1

    def __str__(self) -> str:  # display words: True/False/Unknown
        return self.name.capitalize()


def kleene_not(a: ThreeValued) -> ThreeValued:
    return ThreeValued(-int(a))


def kleene_and(*args: ThreeValued) -> ThreeValued:
    return min(args)


def kleene_or(*args: ThreeValued) -> ThreeValued:
    return max(args)


def kleene_implies(a: ThreeValued, b: ThreeValued) -> ThreeValued:
    return kleene_or(kleene_not(a), b)


def kleene_op(op: str, *args: ThreeValued) -> ThreeValued:
    """Dispatch by operator name: one of not/and/or/implies."""
    table = {
        "not": kleene_not,
        "and": kleene_and,
        "or": kleene_or,
        "implies": kleene_implies,
    }
    try:
        fn = table[op]
    except KeyError:
        raise ValueError(f"unknown Kleene operator {op!r}") from None
    return fn(*args)


def three_from_bool(b: bool) -> ThreeValued:
    return ThreeValued.TRUE if b else ThreeValued.FALSE


@dataclass(frozen=True)
class RobustnessInterval:
    """Interval [lo, hi] of possible robustness values; endpoints may be +-inf."""

    lo: float
    hi: float

    def __post_init__(self):
        if math.isnan(self.lo) or math.isnan(self.hi):
            raise ValueError("interval endpoints must not be NaN")
        if self.lo > self.hi:
            raise ValueError(f"invalid interval: lo {self.lo} > hi {self.hi}")

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def __str__(self) -> str:
        return f"RobustnessInterval({format_number(self.lo)}, {format_number(self.hi)})"


UNKNOWN_INTERVAL = RobustnessInterval(NEG_INF, POS_INF)


def point_interval(value: float) -> RobustnessInterval:
    return RobustnessInterval(value, value)


def interval_negate(x: RobustnessInterval) -> RobustnessInterval:
    return RobustnessInterval(-x.hi, -x.lo)


def interval_min(xs: Iterable[RobustnessInterval]) -> RobustnessInterval:
    """Componentwise min: the enclosure of min over one value from each input."""
    xs = list(xs)
    if not xs:
        raise ValueError("interval_min of an empty collection")
    return RobustnessInterval(min(x.lo for x in xs), min(x.hi for x in xs))


def interval_max(xs: Iterable[RobustnessInterval]) -> RobustnessInterval:
    xs = list(xs)
    if not xs:
        raise ValueError("interval_max of an empty collection")
    return RobustnessInterval(max(x.lo for x in xs), max(x.hi for x in xs))


def sign_abstraction(x: RobustnessInterval) -> ThreeValued:
    """True once the whole enclosure is positive, False once negative."""
    if x.lo > 0:
        return ThreeValued.TRUE
    if x.hi < 0:
        return ThreeValued.FALSE
    return ThreeValued.UNKNOWN


def format_number(x: float) -> str:
    """Minimal numeric display: 0 not 0.0, -inf/inf for infinities."""
    if x == POS_INF:
        return "inf"
    if x == NEG_INF:
        return "-inf"
    if x == int(x):
        return str(int(x))
    return repr(x)


class VerdictKind(enum.Enum):
    BOOLEAN = "boolean"
    ROBUSTNESS = "robustness"
    THREE_VALUED = "three-valued"
    ROSI = "rosi"


VerdictValue = Union[bool, float, ThreeValued, RobustnessInterval]


@dataclass(frozen=True)
class Verdict:
    """Tagged verdict value; the tag matches the monitor's semantics."""

    kind: VerdictKind
    value: VerdictValue

    @staticmethod
    def boolean(value: bool) -> "Verdict":
        return Verdict(VerdictKind.BOOLEAN, bool(value))

    @staticmethod
    def robustness(value: float) -> "Verdict":
        return Verdict(VerdictKind.ROBUSTNESS, float(value))

    @staticmethod
    def three_valued(value: ThreeValued) -> "Verdict":
        return Verdict(VerdictKind.THREE_VALUED, value)

    @staticmethod
    def rosi(value: RobustnessInterval) -> "Verdict":
        return Verdict(VerdictKind.ROSI, value)

    def __str__(self) -> str:
        if self.kind is VerdictKind.BOOLEAN:
            return f"Boolean({'true' if self.value else 'false'})"
        if self.kind is VerdictKind.ROBUSTNESS:
            return f"Robustness({format_number(self.value)})"
        if self.kind is VerdictKind.THREE_VALUED:
            return f"ThreeValued({self.value})"
        return str(self.value)
