"""The stateful online monitor.

A :class:`Monitor` ingests timestamped samples (:class:`Step`) for the
signals of one formula, synchronizes them under zero-order hold, and emits
verdicts under the configured semantics using either the incremental
algorithm (per-operator caches, streaming extremum filters) or the naive
one (full re-evaluation through :mod:`stlmon.oracle` at every step).

Timing model (shared with the oracle):

* evaluation grid = union of submitted timestamps, restricted to times at
  which every formula signal already has a sample at or before them;
* frontier = min over signals of the latest timestamp (-inf until every
  signal has reported);
* an evaluation time t is final once frontier >= t + H(formula).
"""

from __future__ import annotations

import enum
import math
from bisect import bisect_left, bisect_right, insort
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence, Union

np = None  # populated on first RoSI monitor; only its vector path needs numpy


def _import_numpy():
    global np
    if np is None:
        import numpy

        np = numpy

from .domains import (
    Cmp,
    NEG_INF,
    POS_INF,
    RobustnessInterval,
    ThreeValued,
    Verdict,
    atom_robustness,
    atom_truth,
    format_number,
    three_from_bool,
)
from .errors import (
    BatchUpdateError,
    EmptyWindowError,
    InvalidFormulaError,
    NonMonotonicTimestampError,
    StlError,
    UnboundVariableError,
    UnknownSignalError,
)
from .formula import (
    And,
    Atom,
    Eventually,
    Formula,
    Globally,
    Implies,
    Not,
    Or,
    TrueLiteral,
    Until,
    Var,
    free_variables,
    parse_formula,
    signal_names,
    temporal_depth,
)
from . import oracle as _oracle


class Semantics(enum.Enum):
    DELAYED_QUANTITATIVE = "delayed-quantitative"
    DELAYED_QUALITATIVE = "delayed-qualitative"
    EAGER_QUALITATIVE = "eager-qualitative"
    ROSI = "rosi"

    @classmethod
    def from_tag(cls, tag: Union[str, "Semantics"]) -> "Semantics":
        if isinstance(tag, Semantics):
            return tag
        key = tag.replace("-", "").replace("_", "").lower()
        for member in cls:
            if member.value.replace("-", "") == key:
                return member
        raise ValueError(f"unknown semantics tag {tag!r}")


class Algorithm(enum.Enum):
    INCREMENTAL = "incremental"
    NAIVE = "naive"

    @classmethod
    def from_tag(cls, tag: Union[str, "Algorithm"]) -> "Algorithm":
        if isinstance(tag, Algorithm):
            return tag
        key = tag.replace("-", "").replace("_", "").lower()
        for member in cls:
            if member.value == key:
                return member
        raise ValueError(f"unknown algorithm tag {tag!r}")


class Synchronization(enum.Enum):
    ZERO_ORDER_HOLD = "zero-order-hold"


@dataclass(frozen=True)
class Step:
    """One timestamped sample of one named signal."""

    signal: str
    value: float
    timestamp: float

    def __post_init__(self):
        if not self.signal:
            raise InvalidFormulaError("step signal name must be non-empty")
        if not math.isfinite(self.value):
            raise InvalidFormulaError(f"step value must be finite, got {self.value}")
        if not math.isfinite(self.timestamp) or self.timestamp < 0:
            raise InvalidFormulaError(
                f"step timestamp must be finite and >= 0, got {self.timestamp}"
            )


@dataclass(frozen=True)
class VerdictEvent:
    """One emitted verdict: evaluation time, value, finality."""

    time: float
    verdict: Verdict
    final: bool

    def __str__(self) -> str:
        return f"t={format_number(self.time)}s: {self.verdict}"


@dataclass(frozen=True)
class MonitorOutput:
    """Events produced by one update, ordered by evaluation time."""

    events: tuple[VerdictEvent, ...]

    def __iter__(self):
        return iter(self.events)

    def __len__(self):
        return len(self.events)

    def __bool__(self):
        return bool(self.events)

    def __str__(self) -> str:
        return "\n".join(str(e) for e in self.events)


@dataclass(frozen=True)
class CacheStats:
    """Temporal-operator cache occupancy: current, running average, maximum."""

    current_total: int
    average: float
    maximum: int


@dataclass(frozen=True)
class MonitorConfig:
    formula: Formula
    semantics: Semantics = Semantics.DELAYED_QUANTITATIVE
    algorithm: Algorithm = Algorithm.INCREMENTAL
    variables: Mapping[str, float] = field(default_factory=dict)
    synchronization: Synchronization = Synchronization.ZERO_ORDER_HOLD


class Wedge:
    """Monotonic double-ended queue for streaming sliding-window extrema.

    Timestamps strictly increase front to back; in min mode the values
    strictly increase front to back (max mode: strictly decrease), so the
    front always holds the extremum of the retained window.
    """

    __slots__ = ("mode", "_dq")

    def __init__(self, mode: str = "min"):
        if mode not in ("min", "max"):
            raise ValueError(f"wedge mode must be 'min' or 'max', got {mode!r}")
        self.mode = mode
        self._dq: deque = deque()

    def push(self, t: float, v) -> None:
        dq = self._dq
        if dq and t <= dq[-1][0]:
            raise NonMonotonicTimestampError("<wedge>", dq[-1][0], t)
        if self.mode == "min":
            while dq and dq[-1][1] >= v:
                dq.pop()
        else:
            while dq and dq[-1][1] <= v:
                dq.pop()
        dq.append((t, v))

    def query(self, window_lo: float):
        dq = self._dq
        while dq and dq[0][0] < window_lo:
            dq.popleft()
        if not dq:
            raise EmptyWindowError(f"window starting at {window_lo} holds no samples")
        return dq[0][1]

    def __len__(self) -> int:
        return len(self._dq)

    def __iter__(self):
        return iter(self._dq)


class _History:
    __slots__ = ("times", "values")

    def __init__(self):
        self.times: list[float] = []
        self.values: list[float] = []

    def add(self, t: float, v: float) -> None:
        self.times.append(t)
        self.values.append(v)

    @property
    def latest(self) -> float:
        return self.times[-1] if self.times else NEG_INF

    def zoh(self, t: float) -> float:
        idx = bisect_right(self.times, t) - 1
        return self.values[idx]


def _held_index(grid: Sequence[float], t: float) -> int:
    """Index of the latest grid point at or before t."""
    return bisect_right(grid, t) - 1


# ===========================================================================
# Delayed semantics (qualitative and quantitative): pull-based, final-only
# ===========================================================================


class _DelayedNode:
    __slots__ = ()

    def eval(self, t: float):
        raise NotImplementedError


class _DTrue(_DelayedNode):
    __slots__ = ("top",)

    def __init__(self, top):
        self.top = top

    def eval(self, t):
        return self.top


class _DAtom(_DelayedNode):
    __slots__ = ("m", "signal", "cmp", "rhs", "quant")

    def __init__(self, m, node: Atom, quant: bool):
        self.m = m
        self.signal = node.signal
        self.cmp = node.cmp
        self.rhs = node.rhs
        self.quant = quant

    def eval(self, t):
        value = self.m._signals[self.signal].zoh(t)
        threshold = self.m._resolve(self.rhs)
        if self.quant:
            return atom_robustness(self.cmp, value, threshold)
        return atom_truth(self.cmp, value, threshold)


class _DNot(_DelayedNode):
    __slots__ = ("child", "neg")

    def __init__(self, child, neg):
        self.child = child
        self.neg = neg

    def eval(self, t):
        return self.neg(self.child.eval(t))


class _DBinary(_DelayedNode):
    __slots__ = ("left", "right", "kind", "neg")

    def __init__(self, left, right, kind, neg):
        self.left = left
        self.right = right
        self.kind = kind  # "and" | "or" | "implies"
        self.neg = neg

    def eval(self, t):
        l = self.left.eval(t)
        r = self.right.eval(t)
        if self.kind == "and":
            return min(l, r)
        if self.kind == "or":
            return max(l, r)
        return max(self.neg(l), r)


class _DWindow(_DelayedNode):
    """Globally/Eventually with a Lemire wedge over the child's output stream."""

    __slots__ = ("m", "a", "b", "child", "wedge", "pulled_upto")

    def __init__(self, m, a, b, child, is_min):
        self.m = m
        self.a = a
        self.b = b
        self.child = child
        self.wedge = Wedge("min" if is_min else "max")
        self.pulled_upto = NEG_INF

    def eval(self, t):
        grid = self.m._grid
        hi = t + self.b
        i = bisect_right(grid, self.pulled_upto)
        while i < len(grid) and grid[i] <= hi:
            g = grid[i]
            self.wedge.push(g, self.child.eval(g))
            self.pulled_upto = g
            i += 1
        p = grid[_held_index(grid, t + self.a)]
        return self.wedge.query(p)

    def cache_count(self):
        return len(self.wedge)


class _DUntil(_DelayedNode):
    """Until with full window caches of both children (no wedge)."""

    __slots__ = ("m", "a", "b", "left", "right", "bottom", "top",
                 "lt", "lv", "ls", "rt", "rv", "rs",
                 "pulled_left", "pulled_right")

    def __init__(self, m, a, b, left, right, bottom, top):
        self.m = m
        self.a = a
        self.b = b
        self.left = left
        self.right = right
        self.bottom = bottom
        self.top = top
        self.lt: list[float] = []
        self.lv: list = []
        self.ls = 0  # start offset into lt/lv (lazy eviction)
        self.rt: list[float] = []
        self.rv: list = []
        self.rs = 0
        self.pulled_left = NEG_INF
        self.pulled_right = NEG_INF

    def _pull(self, child, times, vals, pulled, hi):
        grid = self.m._grid
        i = bisect_right(grid, pulled)
        while i < len(grid) and grid[i] <= hi:
            g = grid[i]
            times.append(g)
            vals.append(child.eval(g))
            i += 1
            pulled = g
        return pulled

    def _compact(self):
        if self.ls > 64 and self.ls * 2 > len(self.lt):
            del self.lt[: self.ls]
            del self.lv[: self.ls]
            self.ls = 0
        if self.rs > 64 and self.rs * 2 > len(self.rt):
            del self.rt[: self.rs]
            del self.rv[: self.rs]
            self.rs = 0

    def eval(self, t):
        hi = t + self.b
        self.pulled_left = self._pull(self.left, self.lt, self.lv, self.pulled_left, hi)
        self.pulled_right = self._pull(self.right, self.rt, self.rv, self.pulled_right, hi)
        # evict entries strictly before t; they serve no future window either
        self.ls = max(self.ls, bisect_left(self.lt, t, self.ls))
        self.rs = max(self.rs, bisect_left(self.rt, t, self.rs))
        self._compact()

        grid = self.m._grid
        p0 = grid[_held_index(grid, t + self.a)]
        run = self.top
        best = self.bottom
        li = self.ls
        # candidates: the held reading at t+a, then every grid point in (t+a, t+b]
        ri = bisect_left(self.rt, p0, self.rs)
        while li < len(self.lt) and self.lt[li] <= p0:
            run = min(run, self.lv[li])
            li += 1
        best = max(best, min(self.rv[ri], run))
        ri += 1
        while ri < len(self.rt) and self.rt[ri] <= hi:
            g = self.rt[ri]
            while li < len(self.lt) and self.lt[li] <= g:
                run = min(run, self.lv[li])
                li += 1
            best = max(best, min(self.rv[ri], run))
            ri += 1
        return best

    def cache_count(self):
        return (len(self.lt) - self.ls) + (len(self.rt) - self.rs)


class _DelayedEval:
    def __init__(self, m, quantitative: bool):
        self.m = m
        self.quant = quantitative
        self.temporal: list = []
        if quantitative:
            self.top, self.bottom, self.neg = POS_INF, NEG_INF, lambda x: -x
        else:
            self.top, self.bottom, self.neg = True, False, lambda x: not x
        self.root = self._build(m.formula)

    def _build(self, f: Formula):
        if isinstance(f, TrueLiteral):
            return _DTrue(self.top)
        if isinstance(f, Atom):
            return _DAtom(self.m, f, self.quant)
        if isinstance(f, Not):
            return _DNot(self._build(f.child), self.neg)
        if isinstance(f, And):
            return _DBinary(self._build(f.left), self._build(f.right), "and", self.neg)
        if isinstance(f, Or):
            return _DBinary(self._build(f.left), self._build(f.right), "or", self.neg)
        if isinstance(f, Implies):
            return _DBinary(self._build(f.left), self._build(f.right), "implies", self.neg)
        if isinstance(f, (Globally, Eventually)):
            node = _DWindow(self.m, f.a, f.b, self._build(f.child), isinstance(f, Globally))
            self.temporal.append(node)
            return node
        if isinstance(f, Until):
            node = _DUntil(
                self.m, f.a, f.b, self._build(f.left), self._build(f.right),
                self.bottom, self.top,
            )
            self.temporal.append(node)
            return node
        raise InvalidFormulaError(f"not a formula node: {f!r}")

    def on_sample(self, signal, value, t):
        pass

    def on_update(self, new_points):
        pass

    def delayed_value(self, t):
        return self.root.eval(t)

    def prune(self, needed_from):
        pass

    def cache_count(self):
        return sum(n.cache_count() for n in self.temporal)


# ===========================================================================
# Eager qualitative semantics: event-driven three-valued determination
# ===========================================================================

_T = ThreeValued.TRUE
_F = ThreeValued.FALSE
_U = ThreeValued.UNKNOWN


class _ENode:
    __slots__ = ("events",)

    def __init__(self):
        self.events: list[tuple[float, ThreeValued]] = []

    def step(self, new_points):
        raise NotImplementedError

    def prune(self, needed_from: float):
        pass

    def cache_count(self):
        return 0


class _ETrue(_ENode):
    def step(self, new_points):
        self.events = [(t, _T) for _, t in new_points]


class _EAtom(_ENode):
    __slots__ = ("m", "signal", "cmp", "rhs", "published_upto")

    def __init__(self, m, node: Atom):
        super().__init__()
        self.m = m
        self.signal = node.signal
        self.cmp = node.cmp
        self.rhs = node.rhs
        self.published_upto = NEG_INF

    def _value(self, t):
        value = self.m._signals[self.signal].zoh(t)
        return three_from_bool(atom_truth(self.cmp, value, self.m._resolve(self.rhs)))

    def step(self, new_points):
        self.events = []
        latest = self.m._signals[self.signal].latest
        # grid points inserted below the published marker are published here
        for _, t in new_points:
            if t <= self.published_upto and t <= latest:
                self.events.append((t, self._value(t)))
        grid = self.m._grid
        i = bisect_right(grid, self.published_upto)
        while i < len(grid) and grid[i] <= latest:
            self.events.append((grid[i], self._value(grid[i])))
            i += 1
        self.published_upto = max(self.published_upto, latest)


class _ENot(_ENode):
    __slots__ = ("child",)

    def __init__(self, child):
        super().__init__()
        self.child = child

    def step(self, new_points):
        self.events = [(t, ThreeValued(-int(v))) for t, v in self.child.events]


class _EBinary(_ENode):
    __slots__ = ("left", "right", "kind", "lvals", "rvals", "done")

    def __init__(self, left, right, kind):
        super().__init__()
        self.left = left
        self.right = right
        self.kind = kind
        self.lvals: dict[float, ThreeValued] = {}
        self.rvals: dict[float, ThreeValued] = {}
        self.done: set[float] = set()

    def _combine(self, l, r):
        if self.kind == "and":
            return min(l, r)
        if self.kind == "or":
            return max(l, r)
        return max(ThreeValued(-int(l)), r)

    def _try(self, t):
        if t in self.done:
            return
        out = self._combine(self.lvals.get(t, _U), self.rvals.get(t, _U))
        if out is not _U:
            self.events.append((t, out))
            self.done.add(t)
            self.lvals.pop(t, None)
            self.rvals.pop(t, None)

    def step(self, new_points):
        self.events = []
        for t, v in self.left.events:
            self.lvals[t] = v
            self._try(t)
        for t, v in self.right.events:
            self.rvals[t] = v
            self._try(t)
        self.events.sort()

    def prune(self, needed_from):
        if len(self.done) > 256:
            self.done = {t for t in self.done if t >= needed_from}
        for store in (self.lvals, self.rvals):
            if len(store) > 4096:
                for t in [t for t in store if t < needed_from]:
                    del store[t]


class _EWindow(_ENode):
    """Globally/Eventually: sparse index of dominating child values.

    For Globally the dominating value is False (one False in the window
    settles it); for Eventually it is True.  The index plus a determination
    coverage list is the Boolean-lattice equivalent of the wedge.
    """

    __slots__ = ("m", "a", "b", "child", "is_min", "dom", "dom_set",
                 "det", "det_set", "pending", "prev_frontier")

    def __init__(self, m, a, b, child, is_min):
        super().__init__()
        self.m = m
        self.a = a
        self.b = b
        self.child = child
        self.is_min = is_min  # True for Globally (and-window)
        self.dom: list[float] = []
        self.dom_set: set[float] = set()
        self.det: list[float] = []
        self.det_set: set[float] = set()
        self.pending: list[float] = []
        self.prev_frontier = NEG_INF

    def value(self, t):
        m = self.m
        grid = m._grid
        frontier = m._frontier
        dominating = _F if self.is_min else _T
        lo = t + self.a
        hi = t + self.b
        p = grid[_held_index(grid, lo)]
        # dominating member anywhere in (t+a, t+b]?
        i = bisect_right(self.dom, lo)
        if i < len(self.dom) and self.dom[i] <= hi:
            return dominating
        if lo <= frontier and p in self.dom_set:
            return dominating
        # otherwise only a fully determined, frontier-covered window settles it
        if hi > frontier or lo > frontier:
            return _U
        if p not in self.det_set:
            return _U
        w_lo = bisect_right(grid, lo)
        w_hi = bisect_right(grid, hi)
        n_members = w_hi - w_lo
        n_det = bisect_right(self.det, hi) - bisect_right(self.det, lo)
        if n_det < n_members:
            return _U
        return _T if self.is_min else _F

    def _eval_pendings(self, candidates):
        for t in sorted(candidates):
            idx = bisect_left(self.pending, t)
            if idx >= len(self.pending) or self.pending[idx] != t:
                continue
            v = self.value(t)
            if v is not _U:
                self.events.append((t, v))
                del self.pending[idx]

    def step(self, new_points):
        self.events = []
        m = self.m
        grid = m._grid
        frontier = m._frontier
        candidates: set[float] = set()
        for _, t in new_points:
            insort(self.pending, t)
            candidates.add(t)
        new_dom = []
        for t, v in self.child.events:
            if t not in self.det_set:
                self.det_set.add(t)
                insort(self.det, t)
            if (v is _F) == self.is_min:
                if t not in self.dom_set:
                    self.dom_set.add(t)
                    insort(self.dom, t)
                    new_dom.append(t)
        # pendings whose window may contain a new dominating value
        for g in new_dom:
            gi = bisect_right(grid, g)
            nxt = grid[gi] if gi < len(grid) else POS_INF
            lo_t = g - self.b
            hi_t = nxt - self.a  # p(t) == g while t+a < next grid point
            i = bisect_left(self.pending, lo_t)
            while i < len(self.pending) and self.pending[i] < hi_t:
                candidates.add(self.pending[i])
                i += 1
        # pendings whose held reading crossed the frontier this update
        if frontier > self.prev_frontier:
            i = bisect_right(self.pending, self.prev_frontier - self.a)
            while i < len(self.pending) and self.pending[i] <= frontier - self.a:
                candidates.add(self.pending[i])
                i += 1
        # pendings whose full horizon is now covered
        i = 0
        while i < len(self.pending) and self.pending[i] + self.b <= frontier:
            candidates.add(self.pending[i])
            i += 1
        self.prev_frontier = frontier
        self._eval_pendings(candidates)
        self.events.sort()

    def prune(self, needed_from):
        if not math.isfinite(needed_from):
            return
        bound_t = needed_from + self.a
        grid = self.m._grid
        idx = _held_index(grid, bound_t)
        if idx >= 0:
            bound = grid[idx]
            for lst, st in ((self.dom, self.dom_set), (self.det, self.det_set)):
                cut = bisect_left(lst, bound)
                if cut:
                    for t in lst[:cut]:
                        st.discard(t)
                    del lst[:cut]

    def cache_count(self):
        return len(self.dom)


class _EUntil(_ENode):
    __slots__ = ("m", "a", "b", "left", "right", "lvals", "rvals", "pending")

    def __init__(self, m, a, b, left, right):
        super().__init__()
        self.m = m
        self.a = a
        self.b = b
        self.left = left
        self.right = right
        self.lvals: dict[float, ThreeValued] = {}
        self.rvals: dict[float, ThreeValued] = {}
        self.pending: list[float] = []

    def value(self, t):
        m = self.m
        grid = m._grid
        frontier = m._frontier
        lo = t + self.a
        hi = t + self.b
        p0 = grid[_held_index(grid, lo)]
        run = _T
        best = _F
        li = bisect_left(grid, t)
        end = bisect_right(grid, p0)
        while li < end:
            run = min(run, self.lvals.get(grid[li], _U))
            li += 1
        if lo <= frontier:
            psi = self.rvals.get(p0, _U)
            inner = run
        else:
            psi = _U
            inner = min(run, _U)
        best = max(best, min(psi, inner))
        if best is _T:
            return _T
        if run is _F:
            return best
        i = end
        while i < len(grid) and grid[i] <= hi:
            g = grid[i]
            run = min(run, self.lvals.get(g, _U))
            inner = run if g <= frontier else min(run, _U)
            best = max(best, min(self.rvals.get(g, _U), inner))
            if best is _T:
                return _T
            if run is _F:
                return best
            i += 1
        if self.b > self.a and hi > frontier:
            upto = max(lo, frontier)
            while li < len(grid) and grid[li] <= upto:
                run = min(run, self.lvals.get(grid[li], _U))
                li += 1
            best = max(best, min(_U, run))
        return best

    def step(self, new_points):
        self.events = []
        for t, v in self.left.events:
            self.lvals[t] = v
        for t, v in self.right.events:
            self.rvals[t] = v
        for _, t in new_points:
            insort(self.pending, t)
        keep = []
        for t in self.pending:
            v = self.value(t)
            if v is _U:
                keep.append(t)
            else:
                self.events.append((t, v))
        self.pending = keep

    def prune(self, needed_from):
        if not math.isfinite(needed_from):
            return
        for store in (self.lvals, self.rvals):
            if len(store) > 64:
                stale = [t for t in store if t < needed_from]
                if len(stale) > 32:
                    for t in stale:
                        del store[t]

    def cache_count(self):
        return len(self.lvals) + len(self.rvals)


class _EagerEval:
    def __init__(self, m):
        self.m = m
        self.nodes: list[_ENode] = []  # postorder
        self.temporal: list[_ENode] = []
        self.root = self._build(m.formula)
        self.root_values: dict[float, ThreeValued] = {}

    def _build(self, f: Formula) -> _ENode:
        if isinstance(f, TrueLiteral):
            node = _ETrue()
        elif isinstance(f, Atom):
            node = _EAtom(self.m, f)
        elif isinstance(f, Not):
            node = _ENot(self._build(f.child))
        elif isinstance(f, And):
            node = _EBinary(self._build(f.left), self._build(f.right), "and")
        elif isinstance(f, Or):
            node = _EBinary(self._build(f.left), self._build(f.right), "or")
        elif isinstance(f, Implies):
            node = _EBinary(self._build(f.left), self._build(f.right), "implies")
        elif isinstance(f, (Globally, Eventually)):
            node = _EWindow(self.m, f.a, f.b, self._build(f.child), isinstance(f, Globally))
            self.temporal.append(node)
        elif isinstance(f, Until):
            node = _EUntil(self.m, f.a, f.b, self._build(f.left), self._build(f.right))
            self.temporal.append(node)
        else:
            raise InvalidFormulaError(f"not a formula node: {f!r}")
        self.nodes.append(node)
        return node

    def on_sample(self, signal, value, t):
        pass

    def on_update(self, new_points):
        for node in self.nodes:
            node.step(new_points)
        for t, v in self.root.events:
            self.root_values[t] = v

    def eager_value(self, t):
        return self.root_values.get(t, _U)

    def prune(self, needed_from):
        for node in self.nodes:
            own = needed_from
            pend = getattr(node, "pending", None)
            if pend:
                own = min(own, pend[0])
            node.prune(own)
        if len(self.root_values) > 4096:
            self.root_values = {
                t: v for t, v in self.root_values.items() if t >= needed_from
            }

    def cache_count(self):
        return sum(n.cache_count() for n in self.temporal)


# ===========================================================================
# RoSI semantics: per-node interval tables, refreshed beyond finality
# ===========================================================================


class _RNode:
    """Interval table aligned to the grid: entry k holds grid index off + k."""

    __slots__ = ("m", "off", "lo", "hi", "final_len", "depth", "children")

    def __init__(self, m, depth, children):
        self.m = m
        self.off = 0
        self.lo: list[float] = []
        self.hi: list[float] = []
        self.final_len = 0
        self.depth = depth  # temporal depth of this subtree
        self.children = children

    # -- storage plumbing ---------------------------------------------------

    def sync_insert(self, grid_idx: int) -> None:
        if grid_idx < self.off:
            self.off += 1
            return
        k = grid_idx - self.off
        if k < len(self.lo):
            # insertions happen strictly after the frontier, hence after
            # every final entry; placeholder is refreshed by recompute
            self.lo.insert(k, NEG_INF)
            self.hi.insert(k, POS_INF)

    def at(self, grid_idx: int) -> tuple[float, float]:
        k = grid_idx - self.off
        return self.lo[k], self.hi[k]

    def recompute(self) -> None:
        grid = self.m._grid
        n = len(grid)
        start = self.off + self.final_len
        del self.lo[self.final_len:]
        del self.hi[self.final_len:]
        if not (self.m._fastpath and self._vector_ok()) or start >= n:
            for i in range(start, n):
                lo, hi = self._value(i)
                self.lo.append(lo)
                self.hi.append(hi)
        else:
            self._recompute_vector(start, n)
        new_final = bisect_right(grid, self.m._frontier - self.depth) - self.off
        self.final_len = max(self.final_len, min(new_final, len(self.lo)))

    def prune_to(self, grid_idx: int) -> None:
        cut = min(grid_idx - self.off, self.final_len)
        if cut > 0:
            del self.lo[:cut]
            del self.hi[:cut]
            self.off += cut
            self.final_len -= cut

    def _vector_ok(self) -> bool:
        return False

    def _value(self, grid_idx: int) -> tuple[float, float]:
        raise NotImplementedError

    def _recompute_vector(self, start: int, n: int) -> None:
        raise NotImplementedError

    def child_needed(self, needed_t: float) -> float:
        return needed_t

    def cache_count(self) -> int:
        return len(self.lo)


class _RTrue(_RNode):
    __slots__ = ()

    def _value(self, i):
        return POS_INF, POS_INF

    def _vector_ok(self):
        return True

    def _recompute_vector(self, start, n):
        count = n - start
        self.lo.extend([POS_INF] * count)
        self.hi.extend([POS_INF] * count)


class _RAtom(_RNode):
    __slots__ = ("signal", "cmp", "rhs")

    def __init__(self, m, node: Atom):
        super().__init__(m, 0.0, [])
        self.signal = node.signal
        self.cmp = node.cmp
        self.rhs = node.rhs

    def _value(self, i):
        t = self.m._grid[i]
        hist = self.m._signals[self.signal]
        if hist.latest < t:
            return NEG_INF, POS_INF
        r = atom_robustness(self.cmp, hist.zoh(t), self.m._resolve(self.rhs))
        return r, r

    def _vector_ok(self):
        return True

    def _recompute_vector(self, start, n):
        m = self.m
        grid = m._grid
        hist = m._signals[self.signal]
        times = np.asarray(grid[start:n])
        idx = np.searchsorted(np.asarray(hist.times), times, side="right") - 1
        vals = np.asarray(hist.values)[idx]
        threshold = m._resolve(self.rhs)
        cmp = self.cmp
        if cmp in (Cmp.GT, Cmp.GE):
            r = vals - threshold
        elif cmp in (Cmp.LT, Cmp.LE):
            r = threshold - vals
        elif cmp is Cmp.EQ:
            r = -np.abs(vals - threshold)
        else:
            r = np.abs(vals - threshold)
        resolved = times <= hist.latest
        lo = np.where(resolved, r, NEG_INF)
        hi = np.where(resolved, r, POS_INF)
        self.lo.extend(lo.tolist())
        self.hi.extend(hi.tolist())


class _RNot(_RNode):
    __slots__ = ()

    def _value(self, i):
        lo, hi = self.children[0].at(i)
        return -hi, -lo

    def _vector_ok(self):
        return True

    def _recompute_vector(self, start, n):
        c = self.children[0]
        k = start - c.off
        child_lo = np.asarray(c.lo[k: n - c.off])
        child_hi = np.asarray(c.hi[k: n - c.off])
        self.lo.extend((-child_hi).tolist())
        self.hi.extend((-child_lo).tolist())


class _RBinary(_RNode):
    __slots__ = ("kind",)

    def __init__(self, m, depth, left, right, kind):
        super().__init__(m, depth, [left, right])
        self.kind = kind

    def _value(self, i):
        llo, lhi = self.children[0].at(i)
        rlo, rhi = self.children[1].at(i)
        if self.kind == "and":
            return min(llo, rlo), min(lhi, rhi)
        if self.kind == "or":
            return max(llo, rlo), max(lhi, rhi)
        return max(-lhi, rlo), max(-llo, rhi)

    def _vector_ok(self):
        return True

    def _recompute_vector(self, start, n):
        l, r = self.children
        llo = np.asarray(l.lo[start - l.off: n - l.off])
        lhi = np.asarray(l.hi[start - l.off: n - l.off])
        rlo = np.asarray(r.lo[start - r.off: n - r.off])
        rhi = np.asarray(r.hi[start - r.off: n - r.off])
        if self.kind == "and":
            lo, hi = np.minimum(llo, rlo), np.minimum(lhi, rhi)
        elif self.kind == "or":
            lo, hi = np.maximum(llo, rlo), np.maximum(lhi, rhi)
        else:
            lo, hi = np.maximum(-lhi, rlo), np.maximum(-llo, rhi)
        self.lo.extend(lo.tolist())
        self.hi.extend(hi.tolist())


class _RWindow(_RNode):
    __slots__ = ("a", "b", "is_min")

    def __init__(self, m, node, child):
        depth = node.b + child.depth
        super().__init__(m, depth, [child])
        self.a = node.a
        self.b = node.b
        self.is_min = isinstance(node, Globally)

    def _value(self, i):
        m = self.m
        grid = m._grid
        frontier = m._frontier
        t = grid[i]
        lo_t, hi_t = t + self.a, t + self.b
        child = self.children[0]
        p_idx = _held_index(grid, lo_t)
        w_end = bisect_right(grid, hi_t) - 1
        los: list[float] = []
        his: list[float] = []
        if lo_t <= frontier:
            clo, chi = child.at(p_idx)
            los.append(clo)
            his.append(chi)
        else:
            los.append(NEG_INF)
            his.append(POS_INF)
        for g in range(p_idx + 1, w_end + 1):
            clo, chi = child.at(g)
            los.append(clo)
            his.append(chi)
        if hi_t > frontier:
            los.append(NEG_INF)
            his.append(POS_INF)
        if self.is_min:
            return min(los), min(his)
        return max(los), max(his)

    def _vector_ok(self):
        return self.a == 0.0

    def _recompute_vector(self, start, n):
        m = self.m
        grid = m._grid
        child = self.children[0]
        times = np.asarray(grid[start:n])
        clo = np.asarray(child.lo[start - child.off: n - child.off])
        chi = np.asarray(child.hi[start - child.off: n - child.off])
        count = n - start
        # window member count per row: entries [i, e_i] with e_i from searchsorted
        ends = np.searchsorted(np.asarray(grid), times + self.b, side="right") - 1
        widths = ends - np.arange(start, n)
        w = int(widths.max(initial=0)) + 1
        if self.is_min:
            pad = POS_INF
            reduce_fn = np.minimum
        else:
            pad = NEG_INF
            reduce_fn = np.maximum
        plo = np.concatenate([clo, np.full(w - 1, pad)]) if w > 1 else clo
        phi = np.concatenate([chi, np.full(w - 1, pad)]) if w > 1 else chi
        if w > 1:
            vlo = np.lib.stride_tricks.sliding_window_view(plo, w)[:count]
            vhi = np.lib.stride_tricks.sliding_window_view(phi, w)[:count]
            # mask columns beyond each row's true window end
            cols = np.arange(w)
            mask = cols[None, :] > widths[:, None]
            out_lo = (
                np.where(mask, pad, vlo).min(axis=1)
                if self.is_min
                else np.where(mask, pad, vlo).max(axis=1)
            )
            out_hi = (
                np.where(mask, pad, vhi).min(axis=1)
                if self.is_min
                else np.where(mask, pad, vhi).max(axis=1)
            )
        else:
            out_lo = clo.copy()
            out_hi = chi.copy()
        virtual = times + self.b > m._frontier
        if self.is_min:
            out_lo = np.where(virtual, NEG_INF, out_lo)
        else:
            out_hi = np.where(virtual, POS_INF, out_hi)
        self.lo.extend(out_lo.tolist())
        self.hi.extend(out_hi.tolist())

    def child_needed(self, needed_t):
        grid = self.m._grid
        idx = _held_index(grid, needed_t + self.a)
        return grid[idx] if idx >= 0 else needed_t


class _RUntil(_RNode):
    __slots__ = ("a", "b")

    def __init__(self, m, node, left, right):
        depth = node.b + max(left.depth, right.depth)
        super().__init__(m, depth, [left, right])
        self.a = node.a
        self.b = node.b

    def _value(self, i):
        m = self.m
        grid = m._grid
        frontier = m._frontier
        t = grid[i]
        lo_t, hi_t = t + self.a, t + self.b
        left, right = self.children
        p0_idx = _held_index(grid, lo_t)
        run_lo, run_hi = POS_INF, POS_INF
        li = i
        best_lo, best_hi = NEG_INF, NEG_INF

        def fold_through(idx_incl):
            nonlocal li, run_lo, run_hi
            while li <= idx_incl:
                clo, chi = left.at(li)
                run_lo = min(run_lo, clo)
                run_hi = min(run_hi, chi)
                li += 1

        fold_through(p0_idx)
        if lo_t <= frontier:
            plo, phi = right.at(p0_idx)
            ilo, ihi = run_lo, run_hi
        else:
            plo, phi = NEG_INF, POS_INF
            ilo, ihi = NEG_INF, run_hi
        best_lo = max(best_lo, min(plo, ilo))
        best_hi = max(best_hi, min(phi, ihi))

        w_end = bisect_right(grid, hi_t) - 1
        for g in range(p0_idx + 1, w_end + 1):
            fold_through(g)
            if grid[g] <= frontier:
                ilo, ihi = run_lo, run_hi
            else:
                ilo, ihi = NEG_INF, run_hi
            rlo, rhi = right.at(g)
            best_lo = max(best_lo, min(rlo, ilo))
            best_hi = max(best_hi, min(rhi, ihi))

        if self.b > self.a and hi_t > frontier:
            upto = _held_index(grid, max(lo_t, frontier))
            fold_through(upto)
            best_hi = max(best_hi, run_hi)  # virtual: (-inf, run_hi)
        return best_lo, best_hi

    def _vector_ok(self):
        return self.a == 0.0

    def _recompute_vector(self, start, n):
        m = self.m
        grid = m._grid
        garr = np.asarray(grid)
        left, right = self.children
        times = garr[start:n]
        count = n - start
        llo = np.asarray(left.lo[start - left.off: n - left.off])
        lhi = np.asarray(left.hi[start - left.off: n - left.off])
        rlo = np.asarray(right.lo[start - right.off: n - right.off])
        rhi = np.asarray(right.hi[start - right.off: n - right.off])
        ends = np.searchsorted(garr, times + self.b, side="right") - 1
        widths = ends - np.arange(start, n)
        w = int(widths.max(initial=0)) + 1
        cols = np.arange(w)

        def windows(arr, pad):
            if w == 1:
                return arr[:, None]
            p = np.concatenate([arr, np.full(w - 1, pad)])
            return np.lib.stride_tricks.sliding_window_view(p, w)[:count]

        wllo = windows(llo, POS_INF)
        wlhi = windows(lhi, POS_INF)
        wrlo = windows(rlo, NEG_INF)
        wrhi = windows(rhi, NEG_INF)
        mask = cols[None, :] > widths[:, None]
        run_lo = np.minimum.accumulate(np.where(mask, POS_INF, wllo), axis=1)
        run_hi = np.minimum.accumulate(np.where(mask, POS_INF, wlhi), axis=1)
        cand_lo = np.minimum(np.where(mask, NEG_INF, wrlo), run_lo)
        cand_hi = np.minimum(np.where(mask, NEG_INF, wrhi), run_hi)
        out_lo = cand_lo.max(axis=1)
        out_hi = cand_hi.max(axis=1)
        virtual = times + self.b > m._frontier
        if virtual.any():
            # virtual candidate encloses every future one: (-inf, min left-hi
            # through the frontier); -inf never lifts the outer max's lo
            vh = np.minimum.accumulate(lhi[::-1])[::-1]
            out_hi = np.where(virtual, np.maximum(out_hi, vh), out_hi)
        self.lo.extend(out_lo.tolist())
        self.hi.extend(out_hi.tolist())


class _RosiEval:
    def __init__(self, m):
        _import_numpy()
        self.m = m
        self.nodes: list[_RNode] = []  # postorder
        self.temporal: list[_RNode] = []
        self.root = self._build(m.formula)

    def _build(self, f: Formula) -> _RNode:
        if isinstance(f, TrueLiteral):
            node = _RTrue(self.m, 0.0, [])
        elif isinstance(f, Atom):
            node = _RAtom(self.m, f)
        elif isinstance(f, Not):
            child = self._build(f.child)
            node = _RNot(self.m, child.depth, [child])
        elif isinstance(f, (And, Or, Implies)):
            left = self._build(f.left)
            right = self._build(f.right)
            kind = {And: "and", Or: "or", Implies: "implies"}[type(f)]
            node = _RBinary(self.m, max(left.depth, right.depth), left, right, kind)
        elif isinstance(f, (Globally, Eventually)):
            child = self._build(f.child)
            node = _RWindow(self.m, f, child)
            self.temporal.append(node)
        elif isinstance(f, Until):
            left = self._build(f.left)
            right = self._build(f.right)
            node = _RUntil(self.m, f, left, right)
            self.temporal.append(node)
        else:
            raise InvalidFormulaError(f"not a formula node: {f!r}")
        self.nodes.append(node)
        return node

    def on_sample(self, signal, value, t):
        pass

    def on_update(self, new_points):
        n = len(self.m._grid)
        for idx, _ in new_points:
            if idx != n - 1:  # mid-grid insertion shifts existing entries
                for node in self.nodes:
                    node.sync_insert(idx)
        for node in self.nodes:
            node.recompute()

    def rosi_value(self, t) -> RobustnessInterval:
        grid = self.m._grid
        i = bisect_left(grid, t)
        lo, hi = self.root.at(i)
        return RobustnessInterval(lo, hi)

    def prune(self, needed_from):
        if not math.isfinite(needed_from):
            return
        self._prune_node(self.root, needed_from)

    def _prune_node(self, node: _RNode, needed_t: float):
        grid = self.m._grid
        idx = bisect_left(grid, needed_t)
        node.prune_to(idx)
        # children must also serve this node's own recompute region, which
        # starts at its final boundary, not at the parent's query need
        start_k = node.off + node.final_len
        own_start = grid[start_k] if start_k < len(grid) else POS_INF
        eff = min(needed_t, own_start)
        for child in node.children:
            self._prune_node(child, node.child_needed(eff))

    def cache_count(self):
        return sum(c.cache_count() for n in self.temporal for c in n.children)


# ===========================================================================
# Naive mode: replay the oracle over the full trace at every update
# ===========================================================================


class _NaiveEval:
    def __init__(self, m):
        self.m = m
        self.trace = _oracle.Trace()
        for name in m._signals:
            self.trace.declare_signal(name)

    def on_sample(self, signal, value, t):
        self.trace.add(signal, value, t)

    def on_update(self, new_points):
        pass

    def delayed_value(self, t):
        if self.m.semantics is Semantics.DELAYED_QUANTITATIVE:
            return _oracle.naive_robustness(self.trace, self.m.formula, self.m.variables, t)
        return _oracle.naive_boolean(self.trace, self.m.formula, self.m.variables, t)

    def eager_value(self, t):
        return _oracle.naive_three_valued(self.trace, self.m.formula, self.m.variables, t)

    def rosi_value(self, t):
        return _oracle.naive_rosi(self.trace, self.m.formula, self.m.variables, t)

    def prune(self, needed_from):
        pass

    def cache_count(self):
        return 0


# ===========================================================================
# Monitor
# ===========================================================================


class Monitor:
    """Online STL monitor; one instance monitors one formula over one stream."""

    def __init__(
        self,
        formula: Union[Formula, str],
        semantics: Union[Semantics, str] = Semantics.DELAYED_QUANTITATIVE,
        algorithm: Union[Algorithm, str] = Algorithm.INCREMENTAL,
        variables: Optional[Mapping[str, float]] = None,
        synchronization: Synchronization = Synchronization.ZERO_ORDER_HOLD,
    ):
        if isinstance(formula, str):
            formula = parse_formula(formula)
        if not isinstance(formula, Formula):
            raise InvalidFormulaError(f"not a formula: {formula!r}")
        self.formula = formula
        self.semantics = Semantics.from_tag(semantics)
        self.algorithm = Algorithm.from_tag(algorithm)
        if synchronization is not Synchronization.ZERO_ORDER_HOLD:
            raise InvalidFormulaError("only zero-order-hold synchronization is supported")
        self.synchronization = synchronization
        self.variables: dict[str, float] = dict(variables or {})
        for name in sorted(free_variables(formula)):
            if name not in self.variables:
                raise UnboundVariableError(name)
        self.horizon = temporal_depth(formula)

        self._signals = {name: _History() for name in signal_names(formula)}
        self._grid: list[float] = []
        self._grid_set: set[float] = set()
        self._reported = 0
        self._max_first = NEG_INF
        self._frontier = NEG_INF
        self._fastpath = True  # single signal, exactly uniform grid, appends only
        self._dt: Optional[float] = None
        if len(self._signals) != 1:
            self._fastpath = False

        self._emit_idx = 0  # delayed/eager: next grid index to emit
        self._rosi_pending: list[float] = []
        self._rosi_last: dict[float, tuple[float, float]] = {}

        self._k_sum = 0
        self._k_updates = 0
        self._k_max = 0
        self._k_current = 0

        if self.algorithm is Algorithm.NAIVE:
            self._impl = _NaiveEval(self)
        elif self.semantics is Semantics.DELAYED_QUANTITATIVE:
            self._impl = _DelayedEval(self, quantitative=True)
        elif self.semantics is Semantics.DELAYED_QUALITATIVE:
            self._impl = _DelayedEval(self, quantitative=False)
        elif self.semantics is Semantics.EAGER_QUALITATIVE:
            self._impl = _EagerEval(self)
        else:
            self._impl = _RosiEval(self)

    # -- input handling ------------------------------------------------------

    def _resolve(self, threshold) -> float:
        if isinstance(threshold, Var):
            return self.variables[threshold.name]
        return threshold

    def set_variable(self, name: str, value: float) -> None:
        """Rebind a $-variable; takes effect for evaluations after the call."""
        if name not in self.variables:
            raise UnboundVariableError(name)
        self.variables[name] = float(value)

    def update(self, *args) -> MonitorOutput:
        """Feed one sample: ``update(step)`` or ``update(signal, value, timestamp)``."""
        if len(args) == 1:
            step = args[0]
            if not isinstance(step, Step):
                raise TypeError(f"expected a Step, got {step!r}")
        elif len(args) == 3:
            step = Step(args[0], float(args[1]), float(args[2]))
        else:
            raise TypeError("update() takes a Step or (signal, value, timestamp)")
        return self._update(step)

    def update_batch(self, steps: Iterable) -> MonitorOutput:
        """Fold update over the steps; events are concatenated in order.

        On failure raises :class:`BatchUpdateError` carrying the events
        emitted by the preceding steps.
        """
        events: list[VerdictEvent] = []
        for index, item in enumerate(steps):
            step = item if isinstance(item, Step) else Step(item[0], float(item[1]), float(item[2]))
            try:
                out = self._update(step)
            except StlError as exc:
                raise BatchUpdateError(tuple(events), index, exc) from exc
            events.extend(out.events)
        return MonitorOutput(tuple(events))

    def _update(self, step: Step) -> MonitorOutput:
        hist = self._signals.get(step.signal)
        if hist is None:
            raise UnknownSignalError(step.signal)
        if hist.times and step.timestamp <= hist.times[-1]:
            raise NonMonotonicTimestampError(step.signal, hist.times[-1], step.timestamp)

        first_for_signal = not hist.times
        hist.add(step.timestamp, step.value)
        self._impl.on_sample(step.signal, step.value, step.timestamp)

        new_points: list[tuple[int, float]] = []
        if first_for_signal:
            self._reported += 1
            if self._reported == len(self._signals):
                self._max_first = max(h.times[0] for h in self._signals.values())
                admitted = sorted(
                    {t for h in self._signals.values() for t in h.times if t >= self._max_first}
                )
                self._grid = admitted
                self._grid_set = set(admitted)
                new_points = list(enumerate(admitted))
        elif self._reported == len(self._signals):
            t = step.timestamp
            if t >= self._max_first and t not in self._grid_set:
                if self._grid and t > self._grid[-1]:
                    idx = len(self._grid)
                    self._grid.append(t)
                else:
                    idx = bisect_left(self._grid, t)
                    self._grid.insert(idx, t)
                self._grid_set.add(t)
                new_points = [(idx, t)]

        if self._reported == len(self._signals):
            self._frontier = min(h.latest for h in self._signals.values())

        if self._fastpath and new_points:
            # the vectorized path needs appends only and an exactly uniform grid
            if any(idx + 1 != len(self._grid) for idx, _ in new_points[-1:]):
                self._fastpath = False
            elif len(self._grid) >= 2:
                gap = self._grid[-1] - self._grid[-2]
                if self._dt is None:
                    self._dt = gap
                elif gap != self._dt:
                    self._fastpath = False

        self._impl.on_update(new_points)

        if self.semantics in (Semantics.DELAYED_QUANTITATIVE, Semantics.DELAYED_QUALITATIVE):
            events = self._emit_delayed()
        elif self.semantics is Semantics.EAGER_QUALITATIVE:
            events = self._emit_eager()
        else:
            events = self._emit_rosi(new_points)

        self._impl.prune(self._needed_from())
        k = self._impl.cache_count()
        self._k_current = k
        self._k_sum += k
        self._k_updates += 1
        if k > self._k_max:
            self._k_max = k
        return MonitorOutput(tuple(events))

    # -- emission policies ---------------------------------------------------

    def _emit_delayed(self) -> list[VerdictEvent]:
        events = []
        quant = self.semantics is Semantics.DELAYED_QUANTITATIVE
        while self._emit_idx < len(self._grid):
            t = self._grid[self._emit_idx]
            if self._frontier < t + self.horizon:
                break
            value = self._impl.delayed_value(t)
            verdict = Verdict.robustness(value) if quant else Verdict.boolean(value)
            events.append(VerdictEvent(t, verdict, True))
            self._emit_idx += 1
        return events

    def _emit_eager(self) -> list[VerdictEvent]:
        events = []
        while self._emit_idx < len(self._grid):
            t = self._grid[self._emit_idx]
            if t > self._frontier:
                break
            value = self._impl.eager_value(t)
            if value is _U:
                break
            events.append(VerdictEvent(t, Verdict.three_valued(value), True))
            self._emit_idx += 1
        return events

    def _emit_rosi(self, new_points) -> list[VerdictEvent]:
        for _, t in new_points:
            insort(self._rosi_pending, t)
        events = []
        retired = []
        for t in self._rosi_pending:
            interval = self._impl.rosi_value(t)
            endpoints = (interval.lo, interval.hi)
            final = interval.is_point or self._frontier >= t + self.horizon
            if final:
                events.append(VerdictEvent(t, Verdict.rosi(interval), True))
                retired.append(t)
                self._rosi_last.pop(t, None)
            elif self._rosi_last.get(t) != endpoints:
                events.append(VerdictEvent(t, Verdict.rosi(interval), False))
                self._rosi_last[t] = endpoints
        for t in retired:
            self._rosi_pending.remove(t)
        return events

    def _needed_from(self) -> float:
        if self.semantics is Semantics.ROSI:
            return self._rosi_pending[0] if self._rosi_pending else POS_INF
        if self._emit_idx < len(self._grid):
            return self._grid[self._emit_idx]
        return POS_INF

    # -- introspection ---------------------------------------------------------

    @property
    def frontier(self) -> float:
        return self._frontier

    def cache_stats(self) -> CacheStats:
        avg = self._k_sum / self._k_updates if self._k_updates else 0.0
        return CacheStats(self._k_current, avg, self._k_max)


def build_monitor(config: MonitorConfig) -> Monitor:
    """Construct a monitor from a config record; validates formula and variables."""
    return Monitor(
        config.formula,
        semantics=config.semantics,
        algorithm=config.algorithm,
        variables=config.variables,
        synchronization=config.synchronization,
    )
