"""STL formula trees, the textual DSL, and structural analyses.

Grammar, loosest to tightest binding:

    implication   ``->`` / ``implies``        (right-associative)
    disjunction   ``||`` / ``or``
    conjunction   ``&&`` / ``and``
    unary         ``!`` / ``not``, ``G[a,b]`` / ``globally``,
                  ``F[a,b]`` / ``eventually``
    until         ``U[a,b]`` / ``until``      (left-associative, operands
                                               are primaries)
    primary       ``true``, atoms ``signal cmp number-or-$VAR``,
                  named subformulas, parenthesised expressions

So ``a -> b and c`` is ``a -> (b and c)``, ``not a and b`` is
``(not a) and b``, and ``G[0,5] p U[0,2] q`` is ``G[0,5] (p U[0,2] q)``.
Intervals are written ``[a, b]`` with non-negative finite bounds, a <= b.

Bare identifiers are looked up in the parse environment (named
subformulas); identifiers on the left of a comparison are signal names.
Using the same name both ways in one formula is rejected.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Mapping, Optional

from .domains import Cmp, format_number
from .errors import FormulaSyntaxError, IntervalError, InvalidFormulaError

#: Named subformulas available while parsing.
FormulaEnvironment = Mapping[str, "Formula"]

RESERVED = frozenset(
    ["true", "not", "and", "or", "implies", "until", "globally", "eventually", "G", "F", "U"]
)


@dataclass(frozen=True)
class Var:
    """Symbolic threshold ``$name``, resolved via the monitor's variables."""

    name: str

    def __post_init__(self):
        if not self.name:
            raise InvalidFormulaError("variable name must be non-empty")

    def __str__(self) -> str:
        return f"${self.name}"


#: Right-hand side of an atom: a finite constant or a symbolic variable.
Threshold = float | Var


class Formula:
    """Base class of all formula nodes; immutable and freely shareable."""

    __slots__ = ()

    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True)
class TrueLiteral(Formula):
    __slots__ = ()


@dataclass(frozen=True)
class Atom(Formula):
    signal: str
    cmp: Cmp
    rhs: Threshold

    def __post_init__(self):
        if not self.signal:
            raise InvalidFormulaError("signal name must be non-empty")
        if isinstance(self.rhs, (int, float)):
            value = float(self.rhs)
            if math.isnan(value) or math.isinf(value):
                raise InvalidFormulaError(f"atom threshold must be finite, got {self.rhs}")
            object.__setattr__(self, "rhs", value)
        elif not isinstance(self.rhs, Var):
            raise InvalidFormulaError(f"threshold must be a number or Var, got {self.rhs!r}")


@dataclass(frozen=True)
class Not(Formula):
    child: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


def _check_interval(a: float, b: float) -> tuple[float, float]:
    a, b = float(a), float(b)
    if math.isnan(a) or math.isnan(b) or math.isinf(b):
        raise IntervalError(f"temporal bounds must be finite, got [{a}, {b}]")
    if a < 0:
        raise IntervalError(f"lower bound must be non-negative, got {a}")
    if a > b:
        raise IntervalError(f"empty interval: [{a}, {b}] has a > b")
    return a, b


@dataclass(frozen=True)
class Eventually(Formula):
    a: float
    b: float
    child: Formula

    def __post_init__(self):
        a, b = _check_interval(self.a, self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)


@dataclass(frozen=True)
class Globally(Formula):
    a: float
    b: float
    child: Formula

    def __post_init__(self):
        a, b = _check_interval(self.a, self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)


@dataclass(frozen=True)
class Until(Formula):
    a: float
    b: float
    left: Formula
    right: Formula

    def __post_init__(self):
        a, b = _check_interval(self.a, self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)


def temporal_depth(formula: Formula) -> float:
    """Maximum future horizon H needed to evaluate the formula at a time point."""
    if isinstance(formula, (TrueLiteral, Atom)):
        return 0.0
    if isinstance(formula, Not):
        return temporal_depth(formula.child)
    if isinstance(formula, (And, Or, Implies)):
        return max(temporal_depth(formula.left), temporal_depth(formula.right))
    if isinstance(formula, (Eventually, Globally)):
        return formula.b + temporal_depth(formula.child)
    if isinstance(formula, Until):
        return formula.b + max(temporal_depth(formula.left), temporal_depth(formula.right))
    raise InvalidFormulaError(f"not a formula node: {formula!r}")


def free_variables(formula: Formula) -> set[str]:
    """Names of all $-variables reachable in the tree."""
    out: set[str] = set()
    _walk_vars(formula, out)
    return out


def _walk_vars(formula: Formula, out: set[str]) -> None:
    if isinstance(formula, Atom):
        if isinstance(formula.rhs, Var):
            out.add(formula.rhs.name)
    elif isinstance(formula, Not):
        _walk_vars(formula.child, out)
    elif isinstance(formula, (And, Or, Implies)):
        _walk_vars(formula.left, out)
        _walk_vars(formula.right, out)
    elif isinstance(formula, (Eventually, Globally)):
        _walk_vars(formula.child, out)
    elif isinstance(formula, Until):
        _walk_vars(formula.left, out)
        _walk_vars(formula.right, out)


def signal_names(formula: Formula) -> set[str]:
    """Names of all signals referenced by atoms in the tree."""
    out: set[str] = set()
    stack = [formula]
    while stack:
        node = stack.pop()
        if isinstance(node, Atom):
            out.add(node.signal)
        elif isinstance(node, Not):
            stack.append(node.child)
        elif isinstance(node, (And, Or, Implies)):
            stack.append(node.left)
            stack.append(node.right)
        elif isinstance(node, (Eventually, Globally)):
            stack.append(node.child)
        elif isinstance(node, Until):
            stack.append(node.left)
            stack.append(node.right)
    return out


def format_formula(formula: Formula) -> str:
    """Canonical DSL text; ``parse_formula(format_formula(f))`` rebuilds f."""
    if isinstance(formula, TrueLiteral):
        return "true"
    if isinstance(formula, Atom):
        rhs = str(formula.rhs) if isinstance(formula.rhs, Var) else format_number(formula.rhs)
        return f"{formula.signal} {formula.cmp.value} {rhs}"
    if isinstance(formula, Not):
        return f"!({format_formula(formula.child)})"
    if isinstance(formula, And):
        return f"({format_formula(formula.left)}) && ({format_formula(formula.right)})"
    if isinstance(formula, Or):
        return f"({format_formula(formula.left)}) || ({format_formula(formula.right)})"
    if isinstance(formula, Implies):
        return f"({format_formula(formula.left)}) -> ({format_formula(formula.right)})"
    if isinstance(formula, Globally):
        return f"G[{format_number(formula.a)}, {format_number(formula.b)}] ({format_formula(formula.child)})"
    if isinstance(formula, Eventually):
        return f"F[{format_number(formula.a)}, {format_number(formula.b)}] ({format_formula(formula.child)})"
    if isinstance(formula, Until):
        return (
            f"({format_formula(formula.left)}) "
            f"U[{format_number(formula.a)}, {format_number(formula.b)}] "
            f"({format_formula(formula.right)})"
        )
    raise InvalidFormulaError(f"not a formula node: {formula!r}")


# --------------------------------------------------------------------------
# Tokenizer
# --------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>\d+(\.\d*)?([eE][+-]?\d+)?|\.\d+([eE][+-]?\d+)?)
  | (?P<var>\$[A-Za-z_][A-Za-z_0-9]*)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>->|<=|>=|==|!=|&&|\|\||[!<>()\[\],\-])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Token:
    kind: str  # number | var | ident | op | eof
    text: str
    line: int
    column: int

    def describe(self) -> str:
        return "end of input" if self.kind == "eof" else repr(self.text)


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", line, col)
        lexeme = m.group(0)
        if m.lastgroup != "ws":
            tokens.append(_Token(m.lastgroup, lexeme, line, col))
        newlines = lexeme.count("\n")
        if newlines:
            line += newlines
            col = len(lexeme) - lexeme.rfind("\n")
        else:
            col += len(lexeme)
        pos = m.end()
    tokens.append(_Token("eof", "", line, col))
    return tokens


# --------------------------------------------------------------------------
# Recursive-descent parser
# --------------------------------------------------------------------------

_CMP_TOKENS = {
    "<": Cmp.LT,
    "<=": Cmp.LE,
    ">": Cmp.GT,
    ">=": Cmp.GE,
    "==": Cmp.EQ,
    "!=": Cmp.NE,
}


class _Parser:
    def __init__(self, text: str, env: Optional[FormulaEnvironment]):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.env = dict(env) if env else {}
        for name in self.env:
            if name in RESERVED:
                raise InvalidFormulaError(
                    f"environment name {name!r} collides with a reserved keyword"
                )
        self.env_uses: dict[str, _Token] = {}
        self.signal_uses: dict[str, _Token] = {}

    # -- token plumbing ----------------------------------------------------

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def error(self, expected: str, tok: Optional[_Token] = None):
        tok = tok or self.peek()
        raise FormulaSyntaxError(
            f"unexpected {tok.describe()}", tok.line, tok.column, expected=expected
        )

    def expect(self, text: str, expected: Optional[str] = None) -> _Token:
        tok = self.peek()
        if tok.kind == "op" and tok.text == text or tok.kind == "ident" and tok.text == text:
            return self.advance()
        self.error(expected or repr(text))

    def match_op(self, *texts: str) -> Optional[_Token]:
        tok = self.peek()
        if tok.kind == "op" and tok.text in texts:
            return self.advance()
        return None

    def match_keyword(self, *names: str) -> Optional[_Token]:
        tok = self.peek()
        if tok.kind == "ident" and tok.text in names:
            return self.advance()
        return None

    # -- grammar -----------------------------------------------------------

    def parse(self) -> Formula:
        node = self.implication()
        tok = self.peek()
        if tok.kind != "eof":
            self.error("an operator or end of input", tok)
        collisions = set(self.env_uses) & set(self.signal_uses)
        if collisions:
            name = sorted(collisions)[0]
            tok = self.signal_uses[name]
            raise FormulaSyntaxError(
                f"name {name!r} is used both as a named subformula and as a signal",
                tok.line,
                tok.column,
            )
        return node

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.match_op("->") or self.match_keyword("implies"):
            right = self.implication()  # right-associative
            return Implies(left, right)
        return left

    def disjunction(self) -> Formula:
        node = self.conjunction()
        while self.match_op("||") or self.match_keyword("or"):
            node = Or(node, self.conjunction())
        return node

    def conjunction(self) -> Formula:
        node = self.unary()
        while self.match_op("&&") or self.match_keyword("and"):
            node = And(node, self.unary())
        return node

    def unary(self) -> Formula:
        if self.match_op("!") or self.match_keyword("not"):
            return Not(self.unary())
        tok = self.match_keyword("G", "globally")
        if tok:
            a, b = self.interval(tok)
            return Globally(a, b, self.unary())
        tok = self.match_keyword("F", "eventually")
        if tok:
            a, b = self.interval(tok)
            return Eventually(a, b, self.unary())
        return self.until_chain()

    def until_chain(self) -> Formula:
        node = self.primary()
        while True:
            tok = self.match_keyword("U", "until")
            if not tok:
                return node
            a, b = self.interval(tok)
            node = Until(a, b, node, self.primary())

    def interval(self, op_tok: _Token) -> tuple[float, float]:
        self.expect("[", f"'[a, b]' after {op_tok.text!r}")
        a = self.number("a non-negative interval bound")
        self.expect(",", "',' between interval bounds")
        b = self.number("a non-negative interval bound")
        self.expect("]", "']' closing the interval")
        try:
            return _check_interval(a, b)
        except IntervalError as exc:
            raise IntervalError(f"{exc} (at line {op_tok.line}, column {op_tok.column})") from None

    def number(self, expected: str) -> float:
        tok = self.peek()
        if tok.kind == "number":
            self.advance()
            return float(tok.text)
        self.error(expected, tok)

    def signed_number(self) -> Optional[float]:
        tok = self.peek()
        if tok.kind == "op" and tok.text == "-":
            nxt = self.tokens[self.pos + 1]
            if nxt.kind == "number":
                self.advance()
                self.advance()
                return -float(nxt.text)
            return None
        if tok.kind == "number":
            self.advance()
            return float(tok.text)
        return None

    def primary(self) -> Formula:
        tok = self.peek()
        if self.match_op("("):
            node = self.implication()
            self.expect(")", "')' closing the group")
            return node
        if tok.kind == "ident" and tok.text == "true":
            self.advance()
            return TrueLiteral()
        if tok.kind == "ident":
            if tok.text in RESERVED:
                self.error("a signal, named subformula, 'true' or '('", tok)
            self.advance()
            cmp_tok = self.peek()
            if cmp_tok.kind == "op" and cmp_tok.text in _CMP_TOKENS:
                self.advance()
                return self.atom(tok, _CMP_TOKENS[cmp_tok.text], cmp_tok)
            # Bare identifier: a named subformula from the environment.
            if tok.text in self.env:
                self.env_uses[tok.text] = tok
                return self.env[tok.text]
            raise FormulaSyntaxError(
                f"unknown name {tok.text!r}: not in the formula environment and not "
                "followed by a comparison",
                tok.line,
                tok.column,
                expected="a comparison operator or a known subformula name",
            )
        self.error("a signal, named subformula, 'true' or '('", tok)

    def atom(self, sig_tok: _Token, cmp: Cmp, cmp_tok: _Token) -> Formula:
        if sig_tok.text in self.env:
            # Name is a known subformula: using it as a signal is a collision.
            self.signal_uses[sig_tok.text] = sig_tok
        else:
            self.signal_uses.setdefault(sig_tok.text, sig_tok)
        var_tok = self.peek()
        if var_tok.kind == "var":
            self.advance()
            return Atom(sig_tok.text, cmp, Var(var_tok.text[1:]))
        value = self.signed_number()
        if value is None:
            self.error("a numeric literal or $VAR", self.peek())
        return Atom(sig_tok.text, cmp, value)


def parse_formula(text: str, env: Optional[FormulaEnvironment] = None) -> Formula:
    """Parse DSL text into a formula tree.

    Identifiers found in ``env`` are substituted by their subformula; all
    other identifiers (in comparison position) are signal names.  Raises
    :class:`FormulaSyntaxError` with position information on bad syntax and
    :class:`IntervalError` on malformed temporal intervals.
    """
    return _Parser(text, env).parse()
