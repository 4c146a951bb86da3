"""Randomized trace/formula corpus shared by equivalence and acceptance tests.

Timestamps are dyadic rationals (multiples of 1/8) so that window-boundary
arithmetic is bit-exact across the engine routes; values and thresholds are
ordinary random floats.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from stlmon import (
    And,
    Atom,
    Cmp,
    Eventually,
    Formula,
    Globally,
    Implies,
    Monitor,
    Not,
    Or,
    Step,
    TrueLiteral,
    Until,
    Var,
    signal_names,
)

_CMPS = [Cmp.LT, Cmp.LE, Cmp.GT, Cmp.GE, Cmp.EQ, Cmp.NE]


@dataclass
class Case:
    formula: Formula
    steps: list[Step]
    variables: dict[str, float] = field(default_factory=dict)


def random_formula(rng: random.Random, signals: list[str], depth: int) -> Formula:
    if depth <= 0:
        roll = rng.random()
        if roll < 0.05:
            return TrueLiteral()
        signal = rng.choice(signals)
        cmp = rng.choice(_CMPS)
        if roll < 0.15:
            return Atom(signal, cmp, Var("K"))
        return Atom(signal, cmp, round(rng.uniform(-2.0, 2.0), 3))

    def bound():
        return rng.randrange(0, 81) / 8.0  # dyadic, <= 10

    kind = rng.randrange(8)
    if kind == 0:
        return Not(random_formula(rng, signals, depth - 1))
    if kind == 1:
        return And(random_formula(rng, signals, depth - 1), random_formula(rng, signals, depth - 1))
    if kind == 2:
        return Or(random_formula(rng, signals, depth - 1), random_formula(rng, signals, depth - 1))
    if kind == 3:
        return Implies(
            random_formula(rng, signals, depth - 1), random_formula(rng, signals, depth - 1)
        )
    if kind in (4, 5):
        a = bound()
        b = min(10.0, a + bound())
        node = Globally if kind == 4 else Eventually
        return node(a, b, random_formula(rng, signals, depth - 1))
    if kind == 6:
        a = bound()
        b = min(10.0, a + bound())
        return Until(
            a, b,
            random_formula(rng, signals, depth - 1),
            random_formula(rng, signals, depth - 1),
        )
    return random_formula(rng, signals, depth - 1)


def random_case(rng: random.Random, max_samples: int = 50, max_depth: int = 4) -> Case:
    n_signals = rng.randrange(1, 4)
    signals = [f"s{i}" for i in range(n_signals)]
    formula = random_formula(rng, signals, rng.randrange(1, max_depth + 1))
    used = sorted(signal_names(formula))
    if not used:  # signal-free formulas accept no steps; retry
        return random_case(rng, max_samples, max_depth)

    total = rng.randrange(max(4, len(used) * 2), max_samples + 1)
    # non-uniform dyadic timestamps per signal, strictly increasing
    steps: list[Step] = []
    per_signal: dict[str, float] = {}
    span = rng.choice([8.0, 16.0, 24.0])
    for _ in range(total):
        signal = rng.choice(used)
        last = per_signal.get(signal, -0.125)
        t = last + rng.randrange(1, 17) / 8.0
        if t > span:
            continue
        per_signal[signal] = t
        steps.append(Step(signal, round(rng.uniform(-2.0, 2.0), 3), t))
    if not steps or set(s.signal for s in steps) != set(used):
        return random_case(rng, max_samples, max_depth)
    steps.sort(key=lambda s: (s.timestamp, s.signal))
    return Case(formula, steps, {"K": round(rng.uniform(-1.0, 1.0), 3)})


def run_monitor(case: Case, semantics, algorithm) -> list[tuple[int, object]]:
    """Feed the case; returns (update_index, event) pairs in emission order."""
    monitor = Monitor(
        case.formula, semantics=semantics, algorithm=algorithm, variables=case.variables
    )
    out = []
    for idx, step in enumerate(case.steps):
        for event in monitor.update(step):
            out.append((idx, event))
    return out
