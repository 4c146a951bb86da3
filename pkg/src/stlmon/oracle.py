"""Reference evaluator: direct recursive semantics over a synchronized trace.

Deliberately unoptimized (full window scans, fresh recursion everywhere) so
it cannot share bugs with the incremental engine.  The engine's Naive mode
and the equivalence tests both lean on this module.

Timing model shared with the engine:

* The evaluation grid is the deduplicated union of sample timestamps,
  restricted to times t at which every signal already has a sample <= t
  (so the zero-order-hold value exists everywhere on the grid).
* The frontier is the minimum over signals of the latest timestamp;
  everything at or before it is settled, everything after it may still
  change as samples arrive.
* A window [t+a, t+b] samples the child at the grid points in (t+a, t+b]
  plus the held value at t+a itself (the child's value at the latest grid
  point p <= t+a).
* On partial traces, any reading at a non-grid time beyond the frontier is
  unknown, and any window or until-candidate range reaching beyond the
  frontier folds in one virtual unknown sample placed just after it.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from typing import Iterable, Mapping, Sequence

from .domains import (
    NEG_INF,
    POS_INF,
    RobustnessInterval,
    ThreeValued,
    UNKNOWN_INTERVAL,
    atom_robustness,
    atom_truth,
    interval_max,
    interval_min,
    interval_negate,
    point_interval,
    three_from_bool,
)
from .errors import InsufficientTraceError, NonMonotonicTimestampError
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
    temporal_depth,
)


class Trace:
    """Per-signal sample lists with the derived evaluation grid."""

    def __init__(self):
        self._times: dict[str, list[float]] = {}
        self._values: dict[str, list[float]] = {}

    @classmethod
    def from_samples(cls, samples: Iterable[tuple[str, float, float]]) -> "Trace":
        """Build from (signal, value, timestamp) triples in feed order."""
        trace = cls()
        for signal, value, timestamp in samples:
            trace.add(signal, value, timestamp)
        return trace

    def declare_signal(self, name: str) -> None:
        self._times.setdefault(name, [])
        self._values.setdefault(name, [])

    def add(self, signal: str, value: float, timestamp: float) -> None:
        times = self._times.setdefault(signal, [])
        values = self._values.setdefault(signal, [])
        if times and timestamp <= times[-1]:
            raise NonMonotonicTimestampError(signal, times[-1], timestamp)
        times.append(timestamp)
        values.append(value)

    @property
    def signals(self) -> set[str]:
        return set(self._times)

    @property
    def frontier(self) -> float:
        if not self._times or any(not ts for ts in self._times.values()):
            return NEG_INF
        return min(ts[-1] for ts in self._times.values())

    @property
    def grid(self) -> list[float]:
        """Admitted evaluation times, ascending."""
        if not self._times or any(not ts for ts in self._times.values()):
            return []
        start = max(ts[0] for ts in self._times.values())
        admitted = {t for ts in self._times.values() for t in ts if t >= start}
        return sorted(admitted)

    def latest(self, signal: str) -> float:
        ts = self._times.get(signal)
        return ts[-1] if ts else NEG_INF

    def zoh(self, signal: str, t: float) -> float:
        """Value of the signal's latest sample at or before t."""
        ts = self._times.get(signal)
        if not ts:
            raise InsufficientTraceError(f"no samples for signal {signal!r}")
        idx = bisect_right(ts, t) - 1
        if idx < 0:
            raise InsufficientTraceError(f"no sample for {signal!r} at or before t={t}")
        return self._values[signal][idx]


def _resolve(threshold, variables: Mapping[str, float]) -> float:
    if isinstance(threshold, Var):
        try:
            return float(variables[threshold.name])
        except KeyError:
            from .errors import UnboundVariableError

            raise UnboundVariableError(threshold.name) from None
    return threshold


def _held_time(grid: Sequence[float], t: float) -> float:
    """Latest grid point at or before t (the ZOH reading point)."""
    idx = bisect_right(grid, t) - 1
    if idx < 0:
        raise InsufficientTraceError(f"no grid point at or before t={t}")
    return grid[idx]


def _window_grid(grid: Sequence[float], lo: float, hi: float) -> list[float]:
    """Grid points in (lo, hi]."""
    return grid[bisect_right(grid, lo): bisect_right(grid, hi)]


# --------------------------------------------------------------------------
# Delayed semantics: the trace must cover t + H(formula)
# --------------------------------------------------------------------------


def _require_horizon(trace: Trace, formula: Formula, t: float) -> list[float]:
    horizon = t + temporal_depth(formula)
    if trace.frontier < horizon:
        raise InsufficientTraceError(
            f"trace frontier {trace.frontier} does not cover t + H = {horizon}"
        )
    return trace.grid


def naive_robustness(trace, formula, variables, t):
    """Robustness at grid time t; the trace must extend to t + H(formula)."""
    grid = _require_horizon(trace, formula, t)
    return _rob(trace, grid, formula, variables, t)


def _rob(trace, grid, f, var, t):
    if isinstance(f, TrueLiteral):
        return POS_INF
    if isinstance(f, Atom):
        return atom_robustness(f.cmp, trace.zoh(f.signal, t), _resolve(f.rhs, var))
    if isinstance(f, Not):
        return -_rob(trace, grid, f.child, var, t)
    if isinstance(f, And):
        return min(_rob(trace, grid, f.left, var, t), _rob(trace, grid, f.right, var, t))
    if isinstance(f, Or):
        return max(_rob(trace, grid, f.left, var, t), _rob(trace, grid, f.right, var, t))
    if isinstance(f, Implies):
        return max(-_rob(trace, grid, f.left, var, t), _rob(trace, grid, f.right, var, t))
    if isinstance(f, (Globally, Eventually)):
        times = [_held_time(grid, t + f.a)] + _window_grid(grid, t + f.a, t + f.b)
        vals = [_rob(trace, grid, f.child, var, g) for g in times]
        return min(vals) if isinstance(f, Globally) else max(vals)
    if isinstance(f, Until):
        cands = [_held_time(grid, t + f.a)] + _window_grid(grid, t + f.a, t + f.b)
        best = NEG_INF
        run_min = POS_INF
        consumed = bisect_left(grid, t)
        for c in cands:
            upto = bisect_right(grid, c)
            for g in grid[consumed:upto]:
                run_min = min(run_min, _rob(trace, grid, f.left, var, g))
            consumed = upto
            best = max(best, min(_rob(trace, grid, f.right, var, c), run_min))
        return best
    raise TypeError(f"not a formula node: {f!r}")


def naive_boolean(trace, formula, variables, t):
    """Boolean satisfaction at grid time t; needs the full horizon."""
    grid = _require_horizon(trace, formula, t)
    return _boolean(trace, grid, formula, variables, t)


def _boolean(trace, grid, f, var, t):
    if isinstance(f, TrueLiteral):
        return True
    if isinstance(f, Atom):
        return atom_truth(f.cmp, trace.zoh(f.signal, t), _resolve(f.rhs, var))
    if isinstance(f, Not):
        return not _boolean(trace, grid, f.child, var, t)
    if isinstance(f, And):
        return _boolean(trace, grid, f.left, var, t) and _boolean(trace, grid, f.right, var, t)
    if isinstance(f, Or):
        return _boolean(trace, grid, f.left, var, t) or _boolean(trace, grid, f.right, var, t)
    if isinstance(f, Implies):
        return (not _boolean(trace, grid, f.left, var, t)) or _boolean(
            trace, grid, f.right, var, t
        )
    if isinstance(f, (Globally, Eventually)):
        times = [_held_time(grid, t + f.a)] + _window_grid(grid, t + f.a, t + f.b)
        vals = (_boolean(trace, grid, f.child, var, g) for g in times)
        return all(vals) if isinstance(f, Globally) else any(vals)
    if isinstance(f, Until):
        cands = [_held_time(grid, t + f.a)] + _window_grid(grid, t + f.a, t + f.b)
        run_ok = True
        consumed = bisect_left(grid, t)
        for c in cands:
            upto = bisect_right(grid, c)
            for g in grid[consumed:upto]:
                run_ok = run_ok and _boolean(trace, grid, f.left, var, g)
            consumed = upto
            if run_ok and _boolean(trace, grid, f.right, var, c):
                return True
        return False
    raise TypeError(f"not a formula node: {f!r}")


# --------------------------------------------------------------------------
# Partial-trace semantics: RoSI enclosures and three-valued verdicts
# --------------------------------------------------------------------------


def naive_rosi(trace, formula, variables, t) -> RobustnessInterval:
    """Enclosure of all robustness values consistent with extensions of the prefix."""
    grid = trace.grid
    if not grid:
        raise InsufficientTraceError("no admitted evaluation times yet")
    return _rosi(trace, grid, trace.frontier, formula, variables, t)


def _rosi(trace, grid, frontier, f, var, t) -> RobustnessInterval:
    if isinstance(f, TrueLiteral):
        return point_interval(POS_INF)
    if isinstance(f, Atom):
        if trace.latest(f.signal) < t:
            return UNKNOWN_INTERVAL
        return point_interval(
            atom_robustness(f.cmp, trace.zoh(f.signal, t), _resolve(f.rhs, var))
        )
    if isinstance(f, Not):
        return interval_negate(_rosi(trace, grid, frontier, f.child, var, t))
    if isinstance(f, And):
        return interval_min(
            [
                _rosi(trace, grid, frontier, f.left, var, t),
                _rosi(trace, grid, frontier, f.right, var, t),
            ]
        )
    if isinstance(f, Or):
        return interval_max(
            [
                _rosi(trace, grid, frontier, f.left, var, t),
                _rosi(trace, grid, frontier, f.right, var, t),
            ]
        )
    if isinstance(f, Implies):
        return interval_max(
            [
                interval_negate(_rosi(trace, grid, frontier, f.left, var, t)),
                _rosi(trace, grid, frontier, f.right, var, t),
            ]
        )
    if isinstance(f, (Globally, Eventually)):
        members = []
        if t + f.a <= frontier:
            members.append(_rosi(trace, grid, frontier, f.child, var, _held_time(grid, t + f.a)))
        else:
            members.append(UNKNOWN_INTERVAL)
        for g in _window_grid(grid, t + f.a, t + f.b):
            members.append(_rosi(trace, grid, frontier, f.child, var, g))
        if t + f.b > frontier:
            members.append(UNKNOWN_INTERVAL)
        return interval_min(members) if isinstance(f, Globally) else interval_max(members)
    if isinstance(f, Until):
        return _rosi_until(trace, grid, frontier, f, var, t)
    raise TypeError(f"not a formula node: {f!r}")


def _rosi_until(trace, grid, frontier, f, var, t) -> RobustnessInterval:
    def left_at(g):
        return _rosi(trace, grid, frontier, f.left, var, g)

    def right_at(g):
        return _rosi(trace, grid, frontier, f.right, var, g)

    p0 = _held_time(grid, t + f.a)
    run = point_interval(POS_INF)
    consumed = bisect_left(grid, t)
    candidates: list[RobustnessInterval] = []

    def fold_left_through(time_inclusive):
        nonlocal consumed, run
        upto = bisect_right(grid, time_inclusive)
        for g in grid[consumed:upto]:
            run = interval_min([run, left_at(g)])
        consumed = upto

    # Boundary candidate at real time t+a, read at the held grid point p0.
    fold_left_through(p0)
    if t + f.a <= frontier:
        psi = right_at(p0)
        inner = run
    else:
        psi = UNKNOWN_INTERVAL
        inner = interval_min([run, UNKNOWN_INTERVAL])
    candidates.append(interval_min([psi, inner]))

    for g in _window_grid(grid, t + f.a, t + f.b):
        fold_left_through(g)
        inner = run if g <= frontier else interval_min([run, UNKNOWN_INTERVAL])
        candidates.append(interval_min([right_at(g), inner]))

    if f.b > f.a and t + f.b > frontier:
        # One virtual candidate just after the frontier encloses every
        # future candidate the window may still acquire.
        fold_left_through(max(t + f.a, frontier))
        candidates.append(interval_min([UNKNOWN_INTERVAL, run]))

    return interval_max(candidates)


def naive_three_valued(trace, formula, variables, t) -> ThreeValued:
    """Three-valued verdict over the prefix; UNKNOWN when not yet determined."""
    grid = trace.grid
    if not grid:
        raise InsufficientTraceError("no admitted evaluation times yet")
    return _three(trace, grid, trace.frontier, formula, variables, t)


def _three(trace, grid, frontier, f, var, t) -> ThreeValued:
    if isinstance(f, TrueLiteral):
        return ThreeValued.TRUE
    if isinstance(f, Atom):
        if trace.latest(f.signal) < t:
            return ThreeValued.UNKNOWN
        return three_from_bool(
            atom_truth(f.cmp, trace.zoh(f.signal, t), _resolve(f.rhs, var))
        )
    if isinstance(f, Not):
        return ThreeValued(-int(_three(trace, grid, frontier, f.child, var, t)))
    if isinstance(f, And):
        return min(
            _three(trace, grid, frontier, f.left, var, t),
            _three(trace, grid, frontier, f.right, var, t),
        )
    if isinstance(f, Or):
        return max(
            _three(trace, grid, frontier, f.left, var, t),
            _three(trace, grid, frontier, f.right, var, t),
        )
    if isinstance(f, Implies):
        return max(
            ThreeValued(-int(_three(trace, grid, frontier, f.left, var, t))),
            _three(trace, grid, frontier, f.right, var, t),
        )
    if isinstance(f, (Globally, Eventually)):
        members = []
        if t + f.a <= frontier:
            members.append(
                _three(trace, grid, frontier, f.child, var, _held_time(grid, t + f.a))
            )
        else:
            members.append(ThreeValued.UNKNOWN)
        for g in _window_grid(grid, t + f.a, t + f.b):
            members.append(_three(trace, grid, frontier, f.child, var, g))
        if t + f.b > frontier:
            members.append(ThreeValued.UNKNOWN)
        return min(members) if isinstance(f, Globally) else max(members)
    if isinstance(f, Until):
        return _three_until(trace, grid, frontier, f, var, t)
    raise TypeError(f"not a formula node: {f!r}")


def _three_until(trace, grid, frontier, f, var, t) -> ThreeValued:
    p0 = _held_time(grid, t + f.a)
    run = ThreeValued.TRUE
    consumed = bisect_left(grid, t)
    best = ThreeValued.FALSE

    def fold_left_through(time_inclusive):
        nonlocal consumed, run
        upto = bisect_right(grid, time_inclusive)
        for g in grid[consumed:upto]:
            run = min(run, _three(trace, grid, frontier, f.left, var, g))
        consumed = upto

    fold_left_through(p0)
    if t + f.a <= frontier:
        psi = _three(trace, grid, frontier, f.right, var, p0)
        inner = run
    else:
        psi = ThreeValued.UNKNOWN
        inner = min(run, ThreeValued.UNKNOWN)
    best = max(best, min(psi, inner))

    for g in _window_grid(grid, t + f.a, t + f.b):
        fold_left_through(g)
        inner = run if g <= frontier else min(run, ThreeValued.UNKNOWN)
        best = max(best, min(_three(trace, grid, frontier, f.right, var, g), inner))

    if f.b > f.a and t + f.b > frontier:
        fold_left_through(max(t + f.a, frontier))
        best = max(best, min(ThreeValued.UNKNOWN, run))

    return best
