"""Symbolic expression trees for the functions this package transforms.

The expression language is deliberately small: finite sums and products of
real constants, the variables ``t`` and ``x``, integer powers, and
``exp``/``sin``/``cos`` applied to a constant multiple of one variable.
Everything the closed-form transform table and the bundled solvers consume
lives in this space.

Text form::

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' uint)?
    base   := number | 'pi' | 't' | 'x' | '(' expr ')'
            | ('exp' | 'sin' | 'cos') '(' expr ')'

The leading minus is accepted so that printed canonical forms (which may
carry negative rates, e.g. ``exp(-0.5*t)``) parse back to themselves.

All constructors canonicalize: nested sums and products are flattened,
constants are folded into a single leading coefficient, like terms are
collected, repeated factors become integer powers, and commutative children
are kept in one deterministic order.  Structural equality of canonical trees
is therefore meaningful and is used as a test oracle throughout the package.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from .errors import DomainError, ExpressionParseError, UnboundVariableError

VARIABLES = ("t", "x")

_FUNCTIONS = ("exp", "sin", "cos")


class Expression:
    """Base class for canonical expression nodes."""

    __slots__ = ()

    def __add__(self, other):
        return add(self, as_expression(other))

    def __radd__(self, other):
        return add(as_expression(other), self)

    def __sub__(self, other):
        return add(self, mul(const(-1.0), as_expression(other)))

    def __rsub__(self, other):
        return add(as_expression(other), mul(const(-1.0), self))

    def __mul__(self, other):
        return mul(self, as_expression(other))

    def __rmul__(self, other):
        return mul(as_expression(other), self)

    def __neg__(self):
        return mul(const(-1.0), self)

    def __pow__(self, n):
        return power(self, n)

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True, slots=True)
class Const(Expression):
    value: float


@dataclass(frozen=True, slots=True)
class Var(Expression):
    name: str


@dataclass(frozen=True, slots=True)
class Sum(Expression):
    terms: tuple[Expression, ...]


@dataclass(frozen=True, slots=True)
class Product(Expression):
    coeff: float
    factors: tuple[Expression, ...]


@dataclass(frozen=True, slots=True)
class Power(Expression):
    base: Expression
    exponent: int


@dataclass(frozen=True, slots=True)
class Exp(Expression):
    rate: float
    var: str


@dataclass(frozen=True, slots=True)
class Sin(Expression):
    freq: float
    var: str


@dataclass(frozen=True, slots=True)
class Cos(Expression):
    freq: float
    var: str


T = Var("t")
X = Var("x")

ZERO = Const(0.0)
ONE = Const(1.0)


def _clean(value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"expression coefficients must be finite, got {value!r}")
    # normalize -0.0 so printing and equality stay predictable
    return value + 0.0 if value != 0.0 else 0.0


def as_expression(obj) -> Expression:
    if isinstance(obj, Expression):
        return obj
    if isinstance(obj, (int, float)):
        return const(obj)
    raise TypeError(f"cannot interpret {obj!r} as an expression")


def const(value: float) -> Const:
    return Const(_clean(value))


def variable(name: str) -> Var:
    if name not in VARIABLES:
        raise ValueError(f"unknown variable {name!r}; expected one of {VARIABLES}")
    return T if name == "t" else X


def exp_of(rate: float, var: str = "t") -> Expression:
    variable(var)
    rate = _clean(rate)
    if rate == 0.0:
        return ONE
    return Exp(rate, var)


def sin_of(freq: float, var: str = "t") -> Expression:
    variable(var)
    freq = _clean(freq)
    if freq == 0.0:
        return ZERO
    if freq < 0.0:
        return mul(const(-1.0), Sin(-freq, var))
    return Sin(freq, var)


def cos_of(freq: float, var: str = "t") -> Expression:
    variable(var)
    freq = _clean(freq)
    if freq == 0.0:
        return ONE
    return Cos(abs(freq), var)


def power(base: Expression, exponent: int) -> Expression:
    if not isinstance(exponent, int) or isinstance(exponent, bool):
        raise TypeError("exponent must be an integer")
    if exponent < 0:
        raise ValueError("negative exponents are outside the grammar")
    if exponent == 0:
        return ONE
    if exponent == 1:
        return base
    if isinstance(base, Const):
        return const(base.value**exponent)
    if isinstance(base, Power):
        return power(base.base, base.exponent * exponent)
    if isinstance(base, Product):
        return mul(const(base.coeff**exponent), *(power(f, exponent) for f in base.factors))
    if isinstance(base, Exp):
        return exp_of(base.rate * exponent, base.var)
    return Power(base, exponent)


def mul(*factors) -> Expression:
    """Canonical product of the given factors."""
    coeff = 1.0
    flat: list[Expression] = []
    stack = [as_expression(f) for f in factors]
    for item in stack:
        if isinstance(item, Const):
            coeff *= item.value
        elif isinstance(item, Product):
            coeff *= item.coeff
            flat.extend(item.factors)
        else:
            flat.append(item)
    if coeff == 0.0:
        return ZERO

    exp_rates: dict[str, float] = {}
    base_powers: dict[Expression, int] = {}
    order: list[tuple[str, object]] = []
    for f in flat:
        if isinstance(f, Exp):
            if f.var not in exp_rates:
                order.append(("exp", f.var))
                exp_rates[f.var] = 0.0
            exp_rates[f.var] += f.rate
        else:
            base, n = (f.base, f.exponent) if isinstance(f, Power) else (f, 1)
            if base not in base_powers:
                order.append(("pow", base))
                base_powers[base] = 0
            base_powers[base] += n

    merged: list[Expression] = []
    for kind, key in order:
        if kind == "exp":
            e = exp_of(exp_rates[key], key)  # type: ignore[arg-type]
        else:
            e = power(key, base_powers[key])  # type: ignore[index,arg-type]
        if isinstance(e, Const):
            coeff *= e.value
        elif isinstance(e, Product):  # sign pulled out of sin with negative freq
            coeff *= e.coeff
            merged.extend(e.factors)
        else:
            merged.append(e)

    if coeff == 0.0:
        return ZERO
    if not merged:
        return const(coeff)
    merged.sort(key=_order_key)
    if coeff == 1.0 and len(merged) == 1:
        return merged[0]
    return Product(_clean(coeff), tuple(merged))


def _split_term(e: Expression) -> tuple[float, tuple[Expression, ...]]:
    if isinstance(e, Const):
        return e.value, ()
    if isinstance(e, Product):
        return e.coeff, e.factors
    return 1.0, (e,)


def add(*terms) -> Expression:
    """Canonical sum of the given terms, collecting like terms."""
    flat: list[Expression] = []
    for item in (as_expression(t) for t in terms):
        if isinstance(item, Sum):
            flat.extend(item.terms)
        else:
            flat.append(item)

    groups: dict[tuple[Expression, ...], float] = {}
    order: list[tuple[Expression, ...]] = []
    for term in flat:
        coeff, base = _split_term(term)
        if base not in groups:
            groups[base] = 0.0
            order.append(base)
        groups[base] += coeff

    rebuilt: list[Expression] = []
    for base in order:
        coeff = groups[base]
        if coeff == 0.0:
            continue
        rebuilt.append(mul(const(coeff), *base) if base else const(coeff))
    if not rebuilt:
        return ZERO
    if len(rebuilt) == 1:
        return rebuilt[0]
    rebuilt.sort(key=_order_key)
    return Sum(tuple(rebuilt))


def _order_key(e: Expression):
    if isinstance(e, Const):
        return (0, (e.value,))
    if isinstance(e, Var):
        return (1, (e.name,))
    if isinstance(e, Power):
        return (2, (_order_key(e.base), e.exponent))
    if isinstance(e, Exp):
        return (3, (e.var, e.rate))
    if isinstance(e, Sin):
        return (4, (e.var, e.freq))
    if isinstance(e, Cos):
        return (5, (e.var, e.freq))
    if isinstance(e, Sum):
        return (6, tuple(_order_key(t) for t in e.terms))
    if isinstance(e, Product):
        return (7, (tuple(_order_key(f) for f in e.factors), e.coeff))
    raise TypeError(f"unknown expression node {e!r}")


# ---------------------------------------------------------------------------
# parsing


_TOKEN_NUMBER = re.compile(r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")
_TOKEN_IDENT = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-*^()":
            tokens.append((ch, ch, i))
            i += 1
            continue
        m = _TOKEN_NUMBER.match(text, i)
        if m:
            tokens.append(("number", m.group(), i))
            i = m.end()
            continue
        m = _TOKEN_IDENT.match(text, i)
        if m:
            tokens.append(("ident", m.group(), i))
            i = m.end()
            continue
        raise ExpressionParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str):
        tok = self.advance()
        if tok[0] != kind:
            raise ExpressionParseError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        return tok

    def parse(self) -> Expression:
        e = self.expression()
        tok = self.peek()
        if tok[0] != "end":
            raise ExpressionParseError(f"unexpected trailing input {tok[1]!r}", tok[2])
        return e

    def expression(self) -> Expression:
        terms: list[Expression] = []
        negate = False
        if self.peek()[0] == "-":
            self.advance()
            negate = True
        first = self.term()
        terms.append(mul(const(-1.0), first) if negate else first)
        while self.peek()[0] in ("+", "-"):
            op = self.advance()[0]
            nxt = self.term()
            terms.append(nxt if op == "+" else mul(const(-1.0), nxt))
        return add(*terms)

    def term(self) -> Expression:
        factors = [self.factor()]
        while self.peek()[0] == "*":
            self.advance()
            factors.append(self.factor())
        return mul(*factors)

    def factor(self) -> Expression:
        if self.peek()[0] == "-":
            self.advance()
            return mul(const(-1.0), self.factor())
        base = self.base()
        if self.peek()[0] == "^":
            self.advance()
            tok = self.expect("number")
            if not tok[1].isdigit():
                raise ExpressionParseError("exponent must be an unsigned integer", tok[2])
            return power(base, int(tok[1]))
        return base

    def base(self) -> Expression:
        tok = self.advance()
        kind, text, offset = tok
        if kind == "number":
            return const(float(text))
        if kind == "(":
            inner = self.expression()
            self.expect(")")
            return inner
        if kind == "ident":
            if text == "pi":
                return const(math.pi)
            if text in VARIABLES:
                return variable(text)
            if text in _FUNCTIONS:
                self.expect("(")
                arg = self.expression()
                self.expect(")")
                return _apply_function(text, arg, offset)
            raise ExpressionParseError(f"unknown identifier {text!r}", offset)
        raise ExpressionParseError(f"unexpected token {text!r}", offset)


def _apply_function(name: str, arg: Expression, offset: int) -> Expression:
    if isinstance(arg, Const):
        folded = {"exp": math.exp, "sin": math.sin, "cos": math.cos}[name](arg.value)
        return const(folded)
    scale = None
    if isinstance(arg, Var):
        scale, var = 1.0, arg.name
    elif (
        isinstance(arg, Product)
        and len(arg.factors) == 1
        and isinstance(arg.factors[0], Var)
    ):
        scale, var = arg.coeff, arg.factors[0].name
    if scale is None:
        raise ExpressionParseError(
            f"{name} argument must be a constant multiple of t or x", offset
        )
    builder = {"exp": exp_of, "sin": sin_of, "cos": cos_of}[name]
    return builder(scale, var)


def parse(text: str) -> Expression:
    """Parse expression text into its canonical tree."""
    if not isinstance(text, str):
        raise ExpressionParseError("expression must be a string", 0)
    if not text.strip():
        raise ExpressionParseError("empty expression", 0)
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# printing


def format_number(value: float) -> str:
    if value == int(value) and abs(value) < 1e16:
        return str(int(value))
    return repr(value)


def _linear_arg(scale: float, var: str) -> str:
    if scale == 1.0:
        return var
    if scale == -1.0:
        return f"-{var}"
    return f"{format_number(scale)}*{var}"


def _factor_text(e: Expression) -> str:
    if isinstance(e, (Sum, Product)):
        return f"({to_text(e)})"
    return to_text(e)


def to_text(e: Expression) -> str:
    """Render a canonical expression; ``parse(to_text(e)) == e``."""
    if isinstance(e, Const):
        return format_number(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Exp):
        return f"exp({_linear_arg(e.rate, e.var)})"
    if isinstance(e, Sin):
        return f"sin({_linear_arg(e.freq, e.var)})"
    if isinstance(e, Cos):
        return f"cos({_linear_arg(e.freq, e.var)})"
    if isinstance(e, Power):
        return f"{_factor_text(e.base)}^{e.exponent}"
    if isinstance(e, Product):
        body = "*".join(_factor_text(f) for f in e.factors)
        if e.coeff == 1.0:
            return body
        if e.coeff == -1.0:
            return f"-{body}"
        return f"{format_number(e.coeff)}*{body}"
    if isinstance(e, Sum):
        parts = [to_text(e.terms[0])]
        for term in e.terms[1:]:
            coeff, base = _split_term(term)
            if coeff < 0:
                flipped = mul(const(-coeff), *base) if base else const(-coeff)
                parts.append(f" - {to_text(flipped)}")
            else:
                parts.append(f" + {to_text(term)}")
        return "".join(parts)
    raise TypeError(f"unknown expression node {e!r}")


# ---------------------------------------------------------------------------
# calculus and analysis


def evaluate(e: Expression, **bindings: float) -> float:
    """Evaluate at the given variable bindings, e.g. ``evaluate(e, t=0.5)``."""
    for name in bindings:
        if name not in VARIABLES:
            raise TypeError(f"unknown variable binding {name!r}")

    def walk(node: Expression) -> float:
        if isinstance(node, Const):
            return node.value
        if isinstance(node, Var):
            try:
                return float(bindings[node.name])
            except KeyError:
                raise UnboundVariableError(
                    f"no value bound for variable {node.name!r}"
                ) from None
        if isinstance(node, Sum):
            return sum(walk(t) for t in node.terms)
        if isinstance(node, Product):
            out = node.coeff
            for f in node.factors:
                out *= walk(f)
            return out
        if isinstance(node, Power):
            return walk(node.base) ** node.exponent
        if isinstance(node, Exp):
            return math.exp(node.rate * walk(Var(node.var)))
        if isinstance(node, Sin):
            return math.sin(node.freq * walk(Var(node.var)))
        if isinstance(node, Cos):
            return math.cos(node.freq * walk(Var(node.var)))
        raise TypeError(f"unknown expression node {node!r}")

    return walk(e)


def differentiate(e: Expression, var: str = "t") -> Expression:
    """Exact derivative with respect to ``var``, returned in canonical form."""
    variable(var)

    def d(node: Expression) -> Expression:
        if isinstance(node, (Const,)):
            return ZERO
        if isinstance(node, Var):
            return ONE if node.name == var else ZERO
        if isinstance(node, Sum):
            return add(*(d(t) for t in node.terms))
        if isinstance(node, Product):
            terms = []
            for i, f in enumerate(node.factors):
                rest = node.factors[:i] + node.factors[i + 1 :]
                terms.append(mul(const(node.coeff), d(f), *rest))
            return add(*terms)
        if isinstance(node, Power):
            return mul(
                const(node.exponent), power(node.base, node.exponent - 1), d(node.base)
            )
        if isinstance(node, Exp):
            return mul(const(node.rate), node) if node.var == var else ZERO
        if isinstance(node, Sin):
            if node.var != var:
                return ZERO
            return mul(const(node.freq), cos_of(node.freq, node.var))
        if isinstance(node, Cos):
            if node.var != var:
                return ZERO
            return mul(const(-node.freq), sin_of(node.freq, node.var))
        raise TypeError(f"unknown expression node {node!r}")

    return d(e)


def free_variables(e: Expression) -> set[str]:
    out: set[str] = set()

    def walk(node: Expression):
        if isinstance(node, Var):
            out.add(node.name)
        elif isinstance(node, Sum):
            for t in node.terms:
                walk(t)
        elif isinstance(node, Product):
            for f in node.factors:
                walk(f)
        elif isinstance(node, Power):
            walk(node.base)
        elif isinstance(node, (Exp, Sin, Cos)):
            out.add(node.var)

    walk(e)
    return out


def depends_on(e: Expression, var: str) -> bool:
    return var in free_variables(e)


def exponential_rate(e: Expression) -> float:
    """Largest exponential growth rate in t, ignoring polynomial factors.

    This is the infimum of admissible exponential bounds: the transform
    integral converges exactly when s/u exceeds it strictly.
    """
    if isinstance(e, (Const, Sin, Cos)):
        return 0.0
    if isinstance(e, Var):
        return 0.0
    if isinstance(e, Exp):
        return e.rate if e.var == "t" else 0.0
    if isinstance(e, Sum):
        return max(exponential_rate(t) for t in e.terms)
    if isinstance(e, Product):
        return sum(exponential_rate(f) for f in e.factors)
    if isinstance(e, Power):
        return e.exponent * exponential_rate(e.base)
    raise TypeError(f"unknown expression node {e!r}")


def polynomial_degree(e: Expression) -> int:
    """Degree of the polynomial envelope in t (0 for purely bounded factors)."""
    if isinstance(e, (Const, Sin, Cos, Exp)):
        return 0
    if isinstance(e, Var):
        return 1 if e.name == "t" else 0
    if isinstance(e, Sum):
        return max(polynomial_degree(t) for t in e.terms)
    if isinstance(e, Product):
        return sum(polynomial_degree(f) for f in e.factors)
    if isinstance(e, Power):
        return e.exponent * polynomial_degree(e.base)
    raise TypeError(f"unknown expression node {e!r}")


@dataclass(frozen=True, slots=True)
class GrowthBound:
    """Certificate |v(t)| <= C * exp(beta * t) for all t >= 0."""

    C: float
    beta: float

    def __post_init__(self):
        if not (math.isfinite(self.C) and self.C > 0.0):
            raise DomainError("growth constant C must be positive and finite")
        if not math.isfinite(self.beta):
            raise DomainError("growth rate beta must be finite")


def growth_bound(e: Expression, eps: float = 0.1) -> GrowthBound:
    """Structural exponential bound on a function of t.

    Polynomial factors are absorbed into the exponent: t <= e^(eps*t)/(eps*e)
    for t >= 0, so each power of t costs ``eps`` of extra rate.  Smaller
    ``eps`` tightens the rate at the price of a larger constant.
    """
    if eps <= 0.0 or not math.isfinite(eps):
        raise DomainError("eps must be positive and finite")
    if depends_on(e, "x"):
        raise DomainError("growth bounds are defined for functions of t only")

    def walk(node: Expression) -> tuple[float, float]:
        if isinstance(node, Const):
            return (abs(node.value) if node.value != 0.0 else 1.0, 0.0)
        if isinstance(node, Var):
            return (1.0 / (eps * math.e), eps)
        if isinstance(node, (Sin, Cos)):
            return (1.0, 0.0)
        if isinstance(node, Exp):
            return (1.0, node.rate)
        if isinstance(node, Sum):
            parts = [walk(t) for t in node.terms]
            return (sum(c for c, _ in parts), max(b for _, b in parts))
        if isinstance(node, Product):
            c_total, b_total = abs(node.coeff) if node.coeff != 0.0 else 1.0, 0.0
            for f in node.factors:
                c, b = walk(f)
                c_total *= c
                b_total += b
            return (c_total, b_total)
        if isinstance(node, Power):
            c, b = walk(node.base)
            return (c**node.exponent, b * node.exponent)
        raise TypeError(f"unknown expression node {node!r}")

    c, beta = walk(e)
    return GrowthBound(c, beta)
