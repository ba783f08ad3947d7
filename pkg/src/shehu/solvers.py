"""Worked solvers built on the operational calculus.

Three problems are solved end to end through the image domain:

* Newton cooling: rho*Lambda*c_p * v' = -h*M * v, v(0) = beta0.  The
  derivative rule turns this into beta0 / (p + hM/(rho Lambda c_p)) and the
  symbolic inverse returns the decaying exponential.
* 1-D heat equation v_t = k v_xx on [0, L] with zero boundary values and a
  finite sine-series initial condition.  Each mode's time factor has the
  rational image A/(p + k w^2); the homogeneous part of the image BVP
  vanishes under the zero boundary data, so the particular solution is the
  whole solution.
* Caputo-fractional porous medium equation D_t^alpha v = D_x(v v_x) with
  v(x,0) given, solved by a homotopy perturbation series whose nonlinearity
  is expanded in He polynomials H_n = sum_k v_k * D_x v_(n-k).  Each step
  applies the image-domain factor p^(-alpha) (that is, (u/s)^alpha) and
  inverts termwise through the exact pair p^(-g) <-> t^(g-1)/Gamma(g).

The homotopy recursion runs in a monomial algebra coeff * x^a * t^g (g real,
a integer) because fractional powers of t leave the expression grammar.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from . import expr as ex
from .errors import ConfigError, DomainError, SolverError
from .inverse import invert_symbolic
from .numerics import gamma
from .opcalc import (
    FractionalOrder,
    PowerImage,
    RationalTransform,
    fractional_monomial_image,
)

_KEY_DECIMALS = 12
_BOUNDARY_TOL = 1e-9


# ---------------------------------------------------------------------------
# Newton cooling


@dataclass(frozen=True, slots=True)
class NewtonCoolingParams:
    """Convective cooling of a body: h M v = -rho Lambda c_p v'."""

    h: float
    M: float
    rho: float
    Lambda: float
    c_p: float
    beta0: float

    def __post_init__(self):
        for name in ("h", "M", "rho", "Lambda", "c_p", "beta0"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise ConfigError(f"cooling parameter {name} must be positive, got {value}")

    @property
    def decay_rate(self) -> float:
        return self.h * self.M / (self.rho * self.Lambda * self.c_p)


def solve_newton_cooling(params: NewtonCoolingParams) -> ex.Expression:
    """Closed-form temperature history beta0 * exp(-decay_rate * t).

    Derivation in the image domain: the derivative rule gives
    p V - beta0 = -decay_rate V, hence V = beta0 / (p + decay_rate).
    """
    image = RationalTransform([params.beta0], [params.decay_rate, 1.0])
    return invert_symbolic(image)


# ---------------------------------------------------------------------------
# 1-D heat equation


@dataclass(frozen=True, slots=True)
class HeatMode:
    amplitude: float
    frequency: float

    def __post_init__(self):
        if not (math.isfinite(self.amplitude) and self.amplitude != 0.0):
            raise ConfigError(f"mode amplitude must be finite and nonzero, got {self.amplitude}")
        if not (math.isfinite(self.frequency) and self.frequency > 0.0):
            raise ConfigError(f"mode frequency must be positive, got {self.frequency}")


@dataclass(frozen=True)
class HeatProblem:
    """v_t = k v_xx on [0, L], v(0,t) = v(L,t) = 0, v(x,0) a finite sine sum."""

    k: float
    L: float
    modes: tuple[HeatMode, ...]

    def __post_init__(self):
        if not (math.isfinite(self.k) and self.k > 0.0):
            raise ConfigError(f"diffusivity must be positive, got {self.k}")
        if not (math.isfinite(self.L) and self.L > 0.0):
            raise ConfigError(f"domain length must be positive, got {self.L}")
        modes = tuple(
            m if isinstance(m, HeatMode) else HeatMode(*m) for m in self.modes
        )
        object.__setattr__(self, "modes", modes)
        if not modes:
            raise ConfigError("at least one initial-condition mode is required")
        for m in modes:
            # sin(w L) must vanish or the mode breaks the boundary data
            if abs(math.sin(m.frequency * self.L)) > _BOUNDARY_TOL * (1.0 + m.frequency * self.L):
                raise ConfigError(
                    f"mode frequency {m.frequency:g} violates the zero boundary "
                    f"values: sin(w*L) = {math.sin(m.frequency * self.L):.3g}"
                )


def solve_heat_1d(prob: HeatProblem) -> ex.Expression:
    """Separated solution: sum of A * exp(-k w^2 t) * sin(w x) over the modes.

    Each mode's time image is A/(p + k w^2); the homogeneous image solution
    vanishes under the zero boundary values, so inverting the particular
    part per mode gives the full solution.
    """
    parts = []
    for mode in prob.modes:
        decay = prob.k * mode.frequency * mode.frequency
        time_factor = invert_symbolic(RationalTransform([1.0], [decay, 1.0]))
        parts.append(
            ex.mul(ex.const(mode.amplitude), time_factor, ex.sin_of(mode.frequency, "x"))
        )
    return ex.add(*parts)


# ---------------------------------------------------------------------------
# monomial algebra for the homotopy series


class XTPoly:
    """Finite sum of coeff * x^a * t^g monomials (a integer >= 0, g real >= 0).

    This is the space the homotopy recursion lives in: it is closed under
    x-differentiation, products, and the fractional integration step, while
    fractional powers of t keep it outside the expression grammar.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, float], float] | None = None):
        cleaned: dict[tuple[int, float], float] = {}
        for (a, g), c in (terms or {}).items():
            if c == 0.0:
                continue
            if a < 0:
                raise ValueError("negative x powers are outside the algebra")
            if g < 0:
                raise ValueError("negative t powers are outside the algebra")
            key = (int(a), round(float(g), _KEY_DECIMALS))
            cleaned[key] = cleaned.get(key, 0.0) + float(c)
        object.__setattr__(
            self, "terms", {k: v for k, v in cleaned.items() if v != 0.0}
        )

    def __setattr__(self, name, value):
        raise AttributeError("XTPoly is immutable")

    @classmethod
    def zero(cls) -> "XTPoly":
        return cls({})

    @classmethod
    def from_expression(cls, e: ex.Expression) -> "XTPoly":
        def walk(node: ex.Expression) -> dict:
            if isinstance(node, ex.Const):
                return {(0, 0.0): node.value} if node.value != 0.0 else {}
            if isinstance(node, ex.Var):
                return {(1, 0.0): 1.0} if node.name == "x" else {(0, 1.0): 1.0}
            if isinstance(node, ex.Sum):
                total: dict = {}
                for term in node.terms:
                    for key, c in walk(term).items():
                        total[key] = total.get(key, 0.0) + c
                return total
            if isinstance(node, ex.Product):
                out = {(0, 0.0): node.coeff}
                for f in node.factors:
                    out = _dict_mul(out, walk(f))
                return out
            if isinstance(node, ex.Power):
                base = walk(node.base)
                out = {(0, 0.0): 1.0}
                for _ in range(node.exponent):
                    out = _dict_mul(out, base)
                return out
            raise SolverError(
                f"{ex.to_text(node)} is outside the monomial algebra "
                "(polynomials in x and t only)"
            )

        return cls(walk(e))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def add(self, other: "XTPoly") -> "XTPoly":
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, 0.0) + c
        return XTPoly(out)

    def scale(self, factor: float) -> "XTPoly":
        return XTPoly({k: factor * c for k, c in self.terms.items()})

    def mul(self, other: "XTPoly") -> "XTPoly":
        return XTPoly(_dict_mul(self.terms, other.terms))

    def diff_x(self) -> "XTPoly":
        return XTPoly(
            {(a - 1, g): a * c for (a, g), c in self.terms.items() if a >= 1}
        )

    def frac_step(self, alpha: float) -> "XTPoly":
        """Fractional integration of order alpha, realized through the images.

        Termwise: c t^g -> image c Gamma(g+1) p^-(g+1) -> multiply by
        p^-alpha -> invert via p^-(g+1+alpha) <-> t^(g+alpha)/Gamma(g+1+alpha).
        """
        out = {}
        for (a, g), c in self.terms.items():
            factor = gamma(g + 1.0) / gamma(g + 1.0 + alpha)
            out[(a, g + alpha)] = c * factor
        return XTPoly(out)

    def caputo_t(self, alpha: float) -> "XTPoly":
        """Caputo time derivative of order alpha, termwise on monomials."""
        out: dict = {}
        for (a, g), c in self.terms.items():
            if g == 0.0:
                continue  # constants in t have zero Caputo derivative
            if g + 1.0 - alpha <= 0.0:
                raise SolverError(
                    f"Caputo derivative of order {alpha} undefined on t^{g:g}"
                )
            key = (a, round(g - alpha, _KEY_DECIMALS))
            out[key] = out.get(key, 0.0) + c * gamma(g + 1.0) / gamma(g + 1.0 - alpha)
        return XTPoly(out)

    def theta_image(self) -> dict[int, PowerImage]:
        """Transform in t, treating x as a parameter: {x power: image}."""
        grouped: dict[int, list[tuple[float, RationalTransform]]] = {}
        for (a, g), c in self.terms.items():
            image = fractional_monomial_image(g).scale(c)
            grouped.setdefault(a, []).extend(image.terms)
        return {a: PowerImage(terms) for a, terms in grouped.items()}

    def evaluate(self, x: float, t: float) -> float:
        if t < 0.0:
            raise DomainError(f"time must be nonnegative, got {t}")
        total = 0.0
        for (a, g), c in self.terms.items():
            tg = 1.0 if g == 0.0 else t**g
            total += c * x**a * tg
        return total

    def to_expression(self) -> ex.Expression:
        """Exact Expression form; only possible when all t powers are integers."""
        pieces = []
        for (a, g), c in self.terms.items():
            if abs(g - round(g)) > 1e-12:
                raise SolverError(
                    f"t^{g:g} has no counterpart in the expression grammar"
                )
            pieces.append(
                ex.mul(ex.const(c), ex.power(ex.X, a), ex.power(ex.T, int(round(g))))
            )
        return ex.add(*pieces) if pieces else ex.ZERO

    def render(self) -> str:
        """Reader-facing text, earliest time powers first."""
        if not self.terms:
            return "0"
        ordered = sorted(self.terms.items(), key=lambda kv: (kv[0][1], -kv[0][0]))
        out = []
        for (a, g), c in ordered:
            body = []
            if a:
                body.append("x" if a == 1 else f"x^{a}")
            if g:
                body.append("t" if g == 1.0 else f"t^{ex.format_number(g)}")
            mag = abs(c)
            if mag != 1.0 or not body:
                body.insert(0, ex.format_number(mag))
            piece = "*".join(body)
            if not out:
                out.append(f"-{piece}" if c < 0 else piece)
            else:
                out.append(f" - {piece}" if c < 0 else f" + {piece}")
        return "".join(out)

    def __eq__(self, other):
        if not isinstance(other, XTPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"XTPoly({self.render()})"


def _dict_mul(a: Mapping, b: Mapping) -> dict:
    out: dict = {}
    for (a1, g1), c1 in a.items():
        for (a2, g2), c2 in b.items():
            key = (a1 + a2, round(g1 + g2, _KEY_DECIMALS))
            out[key] = out.get(key, 0.0) + c1 * c2
    return out


def he_polynomial(n: int, components: Sequence[XTPoly]) -> XTPoly:
    """He polynomial H_n = sum_{k=0..n} v_k * D_x v_(n-k) for the v v_x term."""
    if n < 0:
        raise ValueError("He polynomial index must be nonnegative")
    if len(components) < n + 1:
        raise SolverError(
            f"He polynomial {n} needs {n + 1} series terms, have {len(components)}"
        )
    total = XTPoly.zero()
    for k in range(n + 1):
        total = total.add(components[k].mul(components[n - k].diff_x()))
    return total


@dataclass(frozen=True, slots=True)
class SeriesSolution:
    """Homotopy series v = sum_n v_n with fractional time order alpha."""

    alpha: FractionalOrder
    components: tuple[XTPoly, ...]

    def total(self) -> XTPoly:
        out = XTPoly.zero()
        for v in self.components:
            out = out.add(v)
        return out

    def render(self) -> str:
        return self.total().render()

    def evaluate(self, x: float, t: float) -> float:
        return self.total().evaluate(x, t)


def solve_pme_hpm(alpha, initial: ex.Expression, n_terms: int) -> SeriesSolution:
    """Homotopy series for D_t^alpha v = D_x(v v_x), v(x,0) = initial.

    Each order matches powers of the embedding parameter:
    v_(n+1) = fractional integral (order alpha) of D_x H_n.
    """
    order = alpha if isinstance(alpha, FractionalOrder) else FractionalOrder(float(alpha))
    if not (0.0 < order.alpha <= 1.0):
        raise ConfigError(
            f"the porous-medium solver requires order in (0, 1], got {order.alpha}"
        )
    if n_terms < 1:
        raise ConfigError(f"series needs at least one correction term, got {n_terms}")
    if isinstance(initial, str):
        initial = ex.parse(initial)
    if ex.depends_on(initial, "t"):
        raise ConfigError("the initial condition must be a function of x alone")

    components = [XTPoly.from_expression(initial)]
    for n in range(n_terms):
        forcing = he_polynomial(n, components).diff_x()
        components.append(forcing.frac_step(order.alpha))
    return SeriesSolution(order, tuple(components))


def evaluate_series(sol: SeriesSolution, x: float, t: float) -> float:
    """Value of the truncated series at (x, t), t >= 0."""
    return sol.evaluate(x, t)


def pme_residual(sol: SeriesSolution) -> XTPoly:
    """D_t^alpha v - D_x(v v_x) for the summed series, as a monomial object."""
    v = sol.total()
    nonlinear = v.mul(v.diff_x()).diff_x()
    return v.caputo_t(sol.alpha.alpha).add(nonlinear.scale(-1.0))
