"""Operational calculus on transform images.

Images are stored as rational functions of the reduced variable p = s/u.
The two-variable form is recovered on demand by homogenization: multiplying
numerator and denominator by u^D turns N(s/u)/D(s/u) into a ratio of
homogeneous bivariate polynomials, which is how images are printed and
parsed at the boundary.

Rules implemented, with V the image of v and p the reduced variable:

    derivative   v^(n)        ->  p^n V - sum_k p^(n-1-k) v^(k)(0)
    integral     int_0^t v    ->  V / p
    damping      exp(a t) v   ->  V(p - a)
    multiplier   t^n v        ->  (-1)^n d^n V / dp^n
    convolution  (v * w)(t)   ->  V W
    Caputo       D^alpha v    ->  p^alpha V - sum_k p^(alpha-1-k) v^(k)(0)
    R-L          D^alpha v    ->  p^alpha V - sum_k p^(n-1-k) (I^(n-k-alpha) v)(0+)

Fractional rules leave the rational space; their results are carried by
``PowerImage``, a finite sum of rational images scaled by real powers of p.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import expr as ex
from .errors import (
    ConfigError,
    ImageParseError,
    OutsideGrammarError,
)
from .numerics import Polynomial, gamma

_MERGE_DECIMALS = 12


def _div(poly: Polynomial, divisor: float) -> Polynomial:
    return Polynomial([c / divisor for c in poly.coeffs])


def _leading_zeros(poly: Polynomial) -> int:
    count = 0
    while count < poly.degree and poly.coeffs[count] == 0.0:
        count += 1
    return count


class RationalTransform:
    """Image N(p)/D(p) with monic denominator; equality is exact.

    Common monomial factors p^k are cancelled on construction (this is exact
    in floating point), but no other reduction is attempted, so two images
    can be mathematically equal yet structurally different.  ``isclose``
    compares by evaluation for such cases.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=(1.0,)):
        num = num if isinstance(num, Polynomial) else Polynomial(num)
        den = den if isinstance(den, Polynomial) else Polynomial(den)
        if den.is_zero:
            raise ValueError("denominator must be nonzero")
        if num.is_zero:
            num, den = Polynomial([0.0]), Polynomial([1.0])
        else:
            drop = min(_leading_zeros(num), _leading_zeros(den))
            if drop:
                num = Polynomial(num.coeffs[drop:])
                den = Polynomial(den.coeffs[drop:])
            lead = den.coeffs[-1]
            if lead != 1.0:
                num = _div(num, lead)
                den = _div(den, lead)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalTransform is immutable")

    @classmethod
    def constant(cls, value: float) -> "RationalTransform":
        return cls([float(value)])

    @classmethod
    def zero(cls) -> "RationalTransform":
        return cls([0.0])

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_proper(self) -> bool:
        return self.num.degree < self.den.degree or self.is_zero

    def evaluate(self, p):
        return self.num(p) / self.den(p)

    def abscissa(self) -> float:
        """Largest real part among the poles; -inf for entire images."""
        if self.den.degree == 0:
            return -math.inf
        roots = np.roots(list(reversed(self.den.coeffs)))
        return float(max(r.real for r in roots))

    def __add__(self, other):
        if not isinstance(other, RationalTransform):
            return NotImplemented
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.den == other.den:
            return RationalTransform(self.num + other.num, self.den)
        return RationalTransform(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __neg__(self):
        return RationalTransform(self.num.scale(-1.0), self.den)

    def __sub__(self, other):
        if not isinstance(other, RationalTransform):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return RationalTransform(self.num.scale(float(other)), self.den)
        if isinstance(other, RationalTransform):
            return RationalTransform(self.num * other.num, self.den * other.den)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, PowerImage):
            return other == self
        if not isinstance(other, RationalTransform):
            return NotImplemented
        return (self.num * other.den).coeffs == (other.num * self.den).coeffs

    def __hash__(self):
        return hash((self.num, self.den))

    def isclose(self, other: "RationalTransform", rel: float = 1e-9) -> bool:
        """Pointwise comparison away from poles; tolerant of missed cancellations."""
        compared = 0
        for p in (0.73, 1.31, 2.17, 3.89, 5.51, 7.93, 11.27, 13.61, 17.49):
            d1, d2 = self.den(p), other.den(p)
            if abs(d1) < 1e-6 or abs(d2) < 1e-6:
                continue
            v1, v2 = self.num(p) / d1, other.num(p) / d2
            if abs(v1 - v2) > rel * max(1.0, abs(v1), abs(v2)):
                return False
            compared += 1
        return compared >= 4

    def __repr__(self):
        return f"RationalTransform(num={list(self.num.coeffs)}, den={list(self.den.coeffs)})"


# ---------------------------------------------------------------------------
# closed-form table


def _expand(e: ex.Expression) -> ex.Expression:
    """Distribute products over sums and expand powers of sums."""
    if isinstance(e, ex.Sum):
        return ex.add(*(_expand(t) for t in e.terms))
    if isinstance(e, ex.Power):
        base = _expand(e.base)
        if isinstance(base, ex.Sum):
            out: ex.Expression = ex.ONE
            for _ in range(e.exponent):
                out = _distribute(out, base)
            return out
        return ex.power(base, e.exponent)
    if isinstance(e, ex.Product):
        out = ex.const(e.coeff)
        for f in e.factors:
            out = _distribute(out, _expand(f))
        return out
    return e


def _distribute(a: ex.Expression, b: ex.Expression) -> ex.Expression:
    at = a.terms if isinstance(a, ex.Sum) else (a,)
    bt = b.terms if isinstance(b, ex.Sum) else (b,)
    return ex.add(*(ex.mul(x, y) for x in at for y in bt))


def _term_profile(term: ex.Expression):
    """Decompose one expanded term as coeff * t^n * exp(a t) * [trig](b t)."""
    coeff, n, a = 1.0, 0, 0.0
    trig: tuple[str, float] | None = None

    def absorb(f: ex.Expression):
        nonlocal coeff, n, a, trig
        if isinstance(f, ex.Const):
            coeff *= f.value
        elif isinstance(f, ex.Var):
            if f.name != "t":
                raise OutsideGrammarError(
                    "closed-form images exist for functions of t only"
                )
            n += 1
        elif isinstance(f, ex.Power):
            if isinstance(f.base, ex.Var) and f.base.name == "t":
                n += f.exponent
            else:
                raise OutsideGrammarError(
                    f"no closed-form image for the factor {ex.to_text(f)}"
                )
        elif isinstance(f, ex.Exp):
            if f.var != "t":
                raise OutsideGrammarError(
                    "closed-form images exist for functions of t only"
                )
            a += f.rate
        elif isinstance(f, (ex.Sin, ex.Cos)):
            if f.var != "t":
                raise OutsideGrammarError(
                    "closed-form images exist for functions of t only"
                )
            if trig is not None:
                raise OutsideGrammarError(
                    "products of two oscillatory factors have no table image"
                )
            trig = ("sin" if isinstance(f, ex.Sin) else "cos", f.freq)
        else:
            raise OutsideGrammarError(
                f"no closed-form image for the factor {ex.to_text(f)}"
            )

    if isinstance(term, ex.Product):
        coeff = term.coeff
        for f in term.factors:
            absorb(f)
    else:
        absorb(term)
    return coeff, n, a, trig


def table_transform(v: ex.Expression) -> RationalTransform:
    """Closed-form image of sums of c * t^n * exp(a t) * {1, sin(b t), cos(b t)}.

    Anything outside that family raises OutsideGrammarError.
    """
    expanded = _expand(v)
    terms = expanded.terms if isinstance(expanded, ex.Sum) else (expanded,)
    total = RationalTransform.zero()
    for term in terms:
        coeff, n, a, trig = _term_profile(term)
        if trig is None:
            den = Polynomial([1.0])
            linear = Polynomial([-a, 1.0])
            for _ in range(n + 1):
                den = den * linear
            image = RationalTransform([coeff * math.factorial(n)], den)
        else:
            kind, b = trig
            den = Polynomial([b * b, 0.0, 1.0]).shift(-a)
            num = Polynomial([b]) if kind == "sin" else Polynomial([-a, 1.0])
            image = RationalTransform(num, den)
            if n:
                image = multiple_shift(image, n)
            image = image * coeff
        total = total + image
    return total


# ---------------------------------------------------------------------------
# operational rules


def exp_shift(image: RationalTransform, a: float) -> RationalTransform:
    """Image of exp(a t) v(t): substitute p -> p - a."""
    return RationalTransform(image.num.shift(-a), image.den.shift(-a))


def derivative_rule(
    image: RationalTransform, ics: Sequence[float], order: int = 1
) -> RationalTransform:
    """Image of v^(order) given v(0), v'(0), ..., v^(order-1)(0)."""
    if order < 1:
        raise ValueError("derivative order must be at least 1")
    if len(ics) != order:
        raise ConfigError(
            f"derivative of order {order} needs exactly {order} initial values, "
            f"got {len(ics)}"
        )
    ic_coeffs = [0.0] * order
    for k, v0 in enumerate(ics):
        ic_coeffs[order - 1 - k] = float(v0)
    num = Polynomial.monomial(order) * image.num - Polynomial(ic_coeffs) * image.den
    return RationalTransform(num, image.den)


def integral_rule(image: RationalTransform, order: int = 1) -> RationalTransform:
    """Image of the order-fold running integral of v from 0."""
    if order < 1:
        raise ValueError("integral order must be at least 1")
    return RationalTransform(image.num, image.den * Polynomial.monomial(order))


def multiple_shift(image: RationalTransform, n: int = 1) -> RationalTransform:
    """Image of t^n v(t): (-1)^n times the n-th derivative in p.

    The derivative of N/D^m has the exact shape (N' D - m N D')/D^(m+1), so
    the denominator grows by one factor of D per step instead of doubling.
    """
    if n < 0:
        raise ValueError("power must be nonnegative")
    if n == 0:
        return image
    num, base = image.num, image.den
    dbase = base.derivative()
    for k in range(n):
        num = num.derivative() * base - num * dbase.scale(float(k + 1))
    den = Polynomial([1.0])
    for _ in range(n + 1):
        den = den * base
    if n % 2:
        num = num.scale(-1.0)
    return RationalTransform(num, den)


def convolution_transform(
    left: RationalTransform, right: RationalTransform
) -> RationalTransform:
    """Image of the convolution integral of v and w on [0, t]."""
    return left * right


# ---------------------------------------------------------------------------
# fractional calculus


@dataclass(frozen=True, slots=True)
class FractionalOrder:
    """Differentiation order alpha with n - 1 < alpha <= n."""

    alpha: float

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and self.alpha > 0.0):
            raise ConfigError(f"fractional order must be positive, got {self.alpha}")

    @property
    def n(self) -> int:
        return int(math.ceil(self.alpha))


class PowerImage:
    """Finite sum of p^e * R(p) terms, e real, R rational.

    Closed under the fractional rules; collapses back to RationalTransform
    when every exponent is an integer.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[tuple[float, RationalTransform]]):
        merged: dict[float, tuple[float, RationalTransform]] = {}
        order: list[float] = []
        for exponent, image in terms:
            exponent = float(exponent)
            if image.is_zero:
                continue
            # pull monomial factors of the rational part into the exponent
            zn = _leading_zeros(image.num)
            zd = _leading_zeros(image.den)
            if zn or zd:
                exponent += zn - zd
                image = RationalTransform(
                    image.num.coeffs[zn:], image.den.coeffs[zd:]
                )
            key = round(exponent, _MERGE_DECIMALS)
            if key in merged:
                prev_e, prev_img = merged[key]
                merged[key] = (prev_e, prev_img + image)
            else:
                merged[key] = (exponent, image)
                order.append(key)
        cleaned = [
            merged[key] for key in sorted(order, reverse=True)
            if not merged[key][1].is_zero
        ]
        object.__setattr__(self, "terms", tuple(cleaned))

    def __setattr__(self, name, value):
        raise AttributeError("PowerImage is immutable")

    @classmethod
    def from_rational(cls, image: RationalTransform) -> "PowerImage":
        return cls([(0.0, image)])

    @classmethod
    def constant(cls, value: float) -> "PowerImage":
        return cls([(0.0, RationalTransform.constant(value))])

    @property
    def is_rational(self) -> bool:
        return all(abs(e - round(e)) <= 1e-12 for e, _ in self.terms)

    def as_rational(self) -> RationalTransform:
        """Collapse to a single rational image; integer exponents only."""
        if not self.is_rational:
            raise ValueError("image has genuinely fractional powers of p")
        total = RationalTransform.zero()
        for exponent, image in self.terms:
            k = int(round(exponent))
            if k >= 0:
                shifted = RationalTransform(
                    image.num * Polynomial.monomial(k), image.den
                )
            else:
                shifted = RationalTransform(
                    image.num, image.den * Polynomial.monomial(-k)
                )
            total = total + shifted
        return total

    def shift_exponent(self, delta: float) -> "PowerImage":
        return PowerImage([(e + delta, r) for e, r in self.terms])

    def scale(self, factor: float) -> "PowerImage":
        return PowerImage([(e, r * factor) for e, r in self.terms])

    def __add__(self, other):
        if isinstance(other, RationalTransform):
            other = PowerImage.from_rational(other)
        if not isinstance(other, PowerImage):
            return NotImplemented
        return PowerImage(list(self.terms) + list(other.terms))

    def __sub__(self, other):
        if isinstance(other, RationalTransform):
            other = PowerImage.from_rational(other)
        if not isinstance(other, PowerImage):
            return NotImplemented
        return self + other.scale(-1.0)

    def evaluate(self, p):
        """Principal-branch evaluation; intended for Re p > 0."""
        total = 0.0 + 0.0j if isinstance(p, complex) else 0.0
        for exponent, image in self.terms:
            if isinstance(p, complex):
                factor = cmath.exp(exponent * cmath.log(p))
            else:
                factor = p**exponent
            total += factor * image.evaluate(p)
        return total

    def __eq__(self, other):
        if isinstance(other, RationalTransform):
            if not self.is_rational:
                return False
            return self.as_rational() == other
        if not isinstance(other, PowerImage):
            return NotImplemented
        if len(self.terms) != len(other.terms):
            return False
        for (e1, r1), (e2, r2) in zip(self.terms, other.terms):
            if abs(e1 - e2) > 1e-12 or r1 != r2:
                return False
        return True

    def __repr__(self):
        body = ", ".join(f"p^{e:g} * {r!r}" for e, r in self.terms)
        return f"PowerImage({body or '0'})"


def fractional_monomial_image(exponent: float) -> PowerImage:
    """Image of t^exponent for exponent > -1: Gamma(exponent+1) / p^(exponent+1)."""
    g = gamma(exponent + 1.0)
    return PowerImage([(-(exponent + 1.0), RationalTransform.constant(g))])


def _as_power_image(image) -> PowerImage:
    if isinstance(image, RationalTransform):
        return PowerImage.from_rational(image)
    if isinstance(image, PowerImage):
        return image
    raise TypeError(f"expected an image, got {type(image).__name__}")


def caputo_rule(image, order, ics: Sequence[float]) -> PowerImage:
    """Image of the Caputo derivative of order alpha given v(0), ..., v^(n-1)(0)."""
    order = order if isinstance(order, FractionalOrder) else FractionalOrder(float(order))
    n = order.n
    if len(ics) != n:
        raise ConfigError(
            f"Caputo derivative of order {order.alpha} needs {n} initial values, "
            f"got {len(ics)}"
        )
    base = _as_power_image(image).shift_exponent(order.alpha)
    terms = list(base.terms)
    for k, v0 in enumerate(ics):
        terms.append(
            (order.alpha - k - 1.0, RationalTransform.constant(-float(v0)))
        )
    return PowerImage(terms)


def rl_rule(image, order, frac_ics: Sequence[float]) -> PowerImage:
    """Image of the Riemann-Liouville derivative of order alpha.

    ``frac_ics[k]`` is the value of the (n - k - alpha)-fold fractional
    integral of v at 0+, for k = 0 .. n-1.
    """
    order = order if isinstance(order, FractionalOrder) else FractionalOrder(float(order))
    n = order.n
    if len(frac_ics) != n:
        raise ConfigError(
            f"Riemann-Liouville derivative of order {order.alpha} needs {n} "
            f"fractional initial values, got {len(frac_ics)}"
        )
    base = _as_power_image(image).shift_exponent(order.alpha)
    terms = list(base.terms)
    for k, w0 in enumerate(frac_ics):
        terms.append((float(n - k - 1), RationalTransform.constant(-float(w0))))
    return PowerImage(terms)


# ---------------------------------------------------------------------------
# two-variable boundary form


def _monomial_text(coeff: float, s_pow: int, u_pow: int) -> str:
    parts = []
    mag = abs(coeff)
    if mag != 1.0 or (s_pow == 0 and u_pow == 0):
        parts.append(ex.format_number(mag))
    if u_pow:
        parts.append("u" if u_pow == 1 else f"u^{u_pow}")
    if s_pow:
        parts.append("s" if s_pow == 1 else f"s^{s_pow}")
    return "".join(parts)


def _render_homogeneous(coeffs: Sequence[float], total_degree: int) -> tuple[str, int]:
    # ascending powers of u, i.e. descending powers of p
    pieces = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0.0:
            continue
        text = _monomial_text(c, i, total_degree - i)
        if not pieces:
            pieces.append(f"-{text}" if c < 0 else text)
        else:
            pieces.append(f"-{text}" if c < 0 else f"+{text}")
    if not pieces:
        return "0", 1
    return "".join(pieces), len(pieces)


def render_su(image: RationalTransform) -> str:
    """Print an image over (s, u) by homogenizing the reduced form."""
    if image.is_zero:
        return "0"
    total = max(image.num.degree, image.den.degree)
    num_text, num_terms = _render_homogeneous(image.num.coeffs, total)
    den_text, den_terms = _render_homogeneous(image.den.coeffs, total)
    if den_text == "1":
        return num_text
    if num_terms > 1:
        num_text = f"({num_text})"
    if den_terms > 1:
        den_text = f"({den_text})"
    return f"{num_text}/{den_text}"


# -- parsing ----------------------------------------------------------------

_BP_ONE = {(0, 0): 1.0}


def _bp_clean(poly: dict) -> dict:
    return {k: v for k, v in poly.items() if v != 0.0}


def _bp_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0.0) + v
    return _bp_clean(out)


def _bp_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for (i1, j1), v1 in a.items():
        for (i2, j2), v2 in b.items():
            key = (i1 + i2, j1 + j2)
            out[key] = out.get(key, 0.0) + v1 * v2
    return _bp_clean(out)


def _bp_scale(a: dict, factor: float) -> dict:
    return _bp_clean({k: factor * v for k, v in a.items()})


class _Frac:
    """Rational bivariate value used while parsing; p is carried as s/u."""

    __slots__ = ("num", "den")

    def __init__(self, num: dict, den: dict):
        self.num = _bp_clean(num)
        self.den = _bp_clean(den)

    @classmethod
    def const(cls, value: float) -> "_Frac":
        return cls({(0, 0): value}, dict(_BP_ONE))

    def add(self, other: "_Frac") -> "_Frac":
        return _Frac(
            _bp_add(_bp_mul(self.num, other.den), _bp_mul(other.num, self.den)),
            _bp_mul(self.den, other.den),
        )

    def mul(self, other: "_Frac") -> "_Frac":
        return _Frac(_bp_mul(self.num, other.num), _bp_mul(self.den, other.den))

    def div(self, other: "_Frac", offset: int) -> "_Frac":
        if not other.num:
            raise ImageParseError("division by zero in image", offset)
        return _Frac(_bp_mul(self.num, other.den), _bp_mul(self.den, other.num))

    def neg(self) -> "_Frac":
        return _Frac(_bp_scale(self.num, -1.0), self.den)

    def pow(self, k: int) -> "_Frac":
        num, den = dict(_BP_ONE), dict(_BP_ONE)
        for _ in range(k):
            num = _bp_mul(num, self.num)
            den = _bp_mul(den, self.den)
        return _Frac(num, den)


_SU_NUMBER = re.compile(r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")


def _su_tokenize(text: str):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-*/^()":
            tokens.append((ch, ch, i))
            i += 1
            continue
        m = _SU_NUMBER.match(text, i)
        if m:
            tokens.append(("number", m.group(), i))
            i = m.end()
            continue
        if ch.isalpha():
            if ch not in "sup":
                raise ImageParseError(
                    f"unknown symbol {ch!r}; images are written in s, u (or p)", i
                )
            tokens.append(("var", ch, i))
            i += 1
            continue
        raise ImageParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", "", n))
    return tokens


class _SuParser:
    def __init__(self, text: str):
        self.tokens = _su_tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse(self) -> _Frac:
        value = self.sum()
        tok = self.peek()
        if tok[0] != "end":
            raise ImageParseError(f"unexpected trailing input {tok[1]!r}", tok[2])
        return value

    def sum(self) -> _Frac:
        negate = False
        if self.peek()[0] == "-":
            self.advance()
            negate = True
        value = self.product()
        if negate:
            value = value.neg()
        while self.peek()[0] in ("+", "-"):
            op = self.advance()[0]
            rhs = self.product()
            value = value.add(rhs.neg() if op == "-" else rhs)
        return value

    def product(self) -> _Frac:
        value = self.factor()
        while True:
            kind, _, offset = self.peek()
            if kind in ("*", "/"):
                self.advance()
                rhs = self.factor()
                value = value.mul(rhs) if kind == "*" else value.div(rhs, offset)
            elif kind in ("number", "var", "("):
                value = value.mul(self.factor())
            else:
                return value

    def factor(self) -> _Frac:
        value = self.atom()
        if self.peek()[0] == "^":
            self.advance()
            tok = self.advance()
            if tok[0] != "number" or not tok[1].isdigit():
                raise ImageParseError("exponent must be an unsigned integer", tok[2])
            value = value.pow(int(tok[1]))
        return value

    def atom(self) -> _Frac:
        kind, text, offset = self.advance()
        if kind == "number":
            return _Frac.const(float(text))
        if kind == "var":
            if text == "s":
                return _Frac({(1, 0): 1.0}, dict(_BP_ONE))
            if text == "u":
                return _Frac({(0, 1): 1.0}, dict(_BP_ONE))
            return _Frac({(1, 0): 1.0}, {(0, 1): 1.0})
        if kind == "(":
            inner = self.sum()
            tok = self.advance()
            if tok[0] != ")":
                raise ImageParseError("expected ')'", tok[2])
            return inner
        raise ImageParseError(f"unexpected token {text!r}", offset)


def _homogeneous_degree(poly: dict, role: str) -> int:
    degrees = {i + j for (i, j) in poly}
    if len(degrees) != 1:
        raise ImageParseError(
            f"image {role} must be homogeneous in s and u "
            "(every monomial of the same total degree)",
            0,
        )
    return degrees.pop()


def parse_su_image(text: str) -> RationalTransform:
    """Parse an image written over (s, u), or over p = s/u, to reduced form."""
    if not isinstance(text, str) or not text.strip():
        raise ImageParseError("empty image", 0)
    frac = _SuParser(text).parse()
    if not frac.den:
        raise ImageParseError("image denominator is identically zero", 0)
    if not frac.num:
        return RationalTransform.zero()
    num_deg = _homogeneous_degree(frac.num, "numerator")
    den_deg = _homogeneous_degree(frac.den, "denominator")
    if num_deg != den_deg:
        raise ImageParseError(
            "image must have equal homogeneous degrees above and below the "
            "fraction bar (multiply by a power of u to balance)",
            0,
        )
    num_coeffs = [0.0] * (num_deg + 1)
    for (i, j), v in frac.num.items():
        num_coeffs[i] = v
    den_coeffs = [0.0] * (den_deg + 1)
    for (i, j), v in frac.den.items():
        den_coeffs[i] = v
    return RationalTransform(num_coeffs, den_coeffs)
