"""stlmon: online monitoring of Signal Temporal Logic.

Evaluate streaming, asynchronously sampled real-valued signals against STL
formulas under four selectable semantics (delayed qualitative, delayed
quantitative, eager qualitative, robust satisfaction intervals), using an
incremental per-operator-cached algorithm with streaming sliding-window
extremum filters, or a naive reference mode.

Quick start::

    import stlmon

    formula = stlmon.parse_formula("G[0, 10](x > 5)")
    monitor = stlmon.Monitor(formula, semantics="Rosi")
    output = monitor.update("x", 6.0, 0.5)
    print(output)           # t=0.5s: RobustnessInterval(-inf, 1)
"""

from .domains import (
    Cmp,
    RobustnessInterval,
    ThreeValued,
    Verdict,
    VerdictKind,
    atom_robustness,
    atom_truth,
    interval_max,
    interval_min,
    interval_negate,
    kleene_and,
    kleene_implies,
    kleene_not,
    kleene_op,
    kleene_or,
    point_interval,
    sign_abstraction,
)
from .engine import (
    Algorithm,
    CacheStats,
    Monitor,
    MonitorConfig,
    MonitorOutput,
    Semantics,
    Step,
    Synchronization,
    VerdictEvent,
    Wedge,
    build_monitor,
)
from .errors import (
    BatchUpdateError,
    EmptyWindowError,
    FormulaSyntaxError,
    InsufficientTraceError,
    IntervalError,
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
    FormulaEnvironment,
    Globally,
    Implies,
    Not,
    Or,
    TrueLiteral,
    Until,
    Var,
    format_formula,
    free_variables,
    parse_formula,
    signal_names,
    temporal_depth,
)
from .oracle import (
    Trace,
    naive_boolean,
    naive_robustness,
    naive_rosi,
    naive_three_valued,
)

__version__ = "0.1.0"

__all__ = [
    "Algorithm",
    "And",
    "Atom",
    "BatchUpdateError",
    "CacheStats",
    "Cmp",
    "EmptyWindowError",
    "Eventually",
    "Formula",
    "FormulaEnvironment",
    "FormulaSyntaxError",
    "Globally",
    "Implies",
    "InsufficientTraceError",
    "IntervalError",
    "InvalidFormulaError",
    "Monitor",
    "MonitorConfig",
    "MonitorOutput",
    "NonMonotonicTimestampError",
    "Not",
    "Or",
    "RobustnessInterval",
    "Semantics",
    "Step",
    "StlError",
    "Synchronization",
    "ThreeValued",
    "Trace",
    "TrueLiteral",
    "UnboundVariableError",
    "UnknownSignalError",
    "Until",
    "Var",
    "Verdict",
    "VerdictEvent",
    "VerdictKind",
    "Wedge",
    "atom_robustness",
    "atom_truth",
    "build_monitor",
    "format_formula",
    "free_variables",
    "interval_max",
    "interval_min",
    "interval_negate",
    "kleene_and",
    "kleene_implies",
    "kleene_not",
    "kleene_op",
    "kleene_or",
    "naive_boolean",
    "naive_robustness",
    "naive_rosi",
    "naive_three_valued",
    "parse_formula",
    "point_interval",
    "sign_abstraction",
    "signal_names",
    "temporal_depth",
]
