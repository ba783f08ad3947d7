"""Forward transform: direct numeric evaluation on the (s, u) half-plane.

The transform of v is the integral of exp(-s*t/u) * v(t) over t in [0, inf),
taken here after the substitution t -> u*t so the quadrature kernel always
sees a unit-rate exponential:

    u * integral of exp(-s*t) * v(u*t) dt.

Existence is gated a priori through an exponential growth bound on v rather
than by waiting for the quadrature to blow up.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import expr as ex
from .errors import DivergenceError, DomainError
from .numerics import QuadratureConfig, integrate_halfline

_GROWTH_SLACK = 0.1


@dataclass(frozen=True, slots=True)
class TransformVars:
    """A point (s, u) of the transform domain; both coordinates positive."""

    s: float
    u: float

    def __post_init__(self):
        if not (math.isfinite(self.s) and self.s > 0.0):
            raise DomainError(f"s must be positive and finite, got {self.s}")
        if not (math.isfinite(self.u) and self.u > 0.0):
            raise DomainError(f"u must be positive and finite, got {self.u}")

    @property
    def ratio(self) -> float:
        """The collapsed single variable s/u."""
        return self.s / self.u


def existence_check(bound: ex.GrowthBound, vars: TransformVars) -> bool:
    """True when the transform certified by ``bound`` converges at (s, u).

    Convergence requires s/u > beta strictly; equality is treated as
    divergent since only the strict inequality is guaranteed.
    """
    return vars.ratio > bound.beta


def _slack(v: ex.Expression, p: float) -> float:
    """Per-power-of-t rate slack small enough not to misclassify v at p."""
    base_rate = ex.exponential_rate(v)
    degree = ex.polynomial_degree(v)
    return min(_GROWTH_SLACK, (p - base_rate) / (2.0 * max(degree, 1)))


def _certificate(v: ex.Expression, p: float) -> ex.GrowthBound:
    """Growth bound with rate strictly below p, or DivergenceError.

    Polynomial factors are absorbed into the exponential rate; the slack
    per power of t is chosen small enough that a convergent integrand is
    never misclassified (beta lands at most halfway between the true
    exponential rate and p).
    """
    if ex.depends_on(v, "x"):
        raise DomainError("the transform acts on functions of t only")
    base_rate = ex.exponential_rate(v)
    if p <= base_rate:
        raise DivergenceError(
            f"transform diverges at s/u = {p:.6g}: integrand grows like "
            f"exp({base_rate:.6g} * t)"
        )
    bound = ex.growth_bound(v, eps=_slack(v, p))
    if not existence_check(bound, TransformVars(p, 1.0)):
        raise DivergenceError(
            f"transform diverges at s/u = {p:.6g}: growth certificate has "
            f"rate {bound.beta:.6g}"
        )
    return bound


def _strip_rate(v: ex.Expression) -> tuple[ex.Expression, float]:
    """Factor v = exp(rate*t) * g with g of subexponential growth.

    Folding the dominant rate into the quadrature kernel keeps the two
    integrand factors individually bounded; otherwise exp(2t) overflows at
    large t even where the full integrand is negligible.
    """
    rate = ex.exponential_rate(v)
    if rate == 0.0:
        return v, 0.0
    return ex.mul(v, ex.exp_of(-rate)), rate


def _addends(v: ex.Expression) -> tuple[ex.Expression, ...]:
    # integrate sums term by term so each term's own rate can be stripped
    return v.terms if isinstance(v, ex.Sum) else (v,)


def forward_numeric(
    v: ex.Expression,
    vars: TransformVars,
    cfg: QuadratureConfig | None = None,
) -> float:
    """Evaluate the transform of v at (s, u) by adaptive quadrature."""
    p = vars.ratio
    _certificate(v, p)
    eps = _slack(v, p)
    s, u = vars.s, vars.u
    total = 0.0
    for w in _addends(v):
        g, base_rate = _strip_rate(w)
        bound = ex.growth_bound(w, eps=eps)
        s_eff = s - base_rate * u
        rate = s - bound.beta * u

        def integrand(t: float, g=g, s_eff=s_eff) -> float:
            return math.exp(-s_eff * t) * ex.evaluate(g, t=u * t)

        total += u * integrate_halfline(
            integrand, tail_rate=rate, amplitude=bound.C, cfg=cfg
        )
    return total


def laplace_oracle(
    v: ex.Expression,
    p: float,
    cfg: QuadratureConfig | None = None,
) -> float:
    """One-variable reference transform: integral of exp(-p*t) * v(t) dt.

    Computed without the t -> u*t substitution that forward_numeric applies,
    so agreement between the two is an informative duality check rather
    than a tautology.
    """
    if not (math.isfinite(p) and p > 0.0):
        raise DomainError(f"p must be positive and finite, got {p}")
    _certificate(v, p)
    eps = _slack(v, p)
    total = 0.0
    for w in _addends(v):
        g, base_rate = _strip_rate(w)
        bound = ex.growth_bound(w, eps=eps)
        p_eff = p - base_rate

        def integrand(t: float, g=g, p_eff=p_eff) -> float:
            return math.exp(-p_eff * t) * ex.evaluate(g, t=t)

        total += integrate_halfline(
            integrand, tail_rate=p - bound.beta, amplitude=bound.C, cfg=cfg
        )
    return total
