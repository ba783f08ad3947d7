"""Inverse transform: residue reconstruction and contour quadrature.

Symbolic inversion expands a strictly proper rational image into pole terms
and maps each back through the closed-form table:

    residue / (p - a)^k            ->  residue * t^(k-1) exp(a t) / (k-1)!
    conjugate pair a +- i b, k, r  ->  t^(k-1) exp(a t) *
                                       (2 Re r * cos(b t) - 2 Im r * sin(b t)) / (k-1)!

Numeric inversion reuses the residue route when the image is rational (it
is exact there) and otherwise evaluates the Bromwich integral on a fixed
cotangent contour (one function call per node, no arbitrary-precision
arithmetic).
The contour's vertex scales like 1/t, so images with singularities at or
right of the imaginary axis are inverted after a shift p -> p + sigma and
the result is multiplied by exp(sigma t); the shift keeps every singularity
strictly left of the contour at all t while preserving relative accuracy.

A Gaver-style summation on the real axis is included as an independent
cross-check; it needs only real image values but loses badly on oscillatory
inverses, so it is never the default.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

from . import expr as ex
from .errors import (
    ConfigError,
    DomainError,
    ImproperImageError,
    OutsideGrammarError,
    RootFindingError,
)
from .numerics import partial_fractions
from .opcalc import PowerImage, RationalTransform, table_transform

_METHODS = ("talbot", "stehfest", "partial_fractions")

#: margin added to the rightmost singularity when shifting the contour
_SHIFT_MARGIN = 0.2


@dataclass(frozen=True, slots=True)
class InversionConfig:
    method: str = "talbot"
    node_count: int = 32
    contour_scale: float = 1.0

    def __post_init__(self):
        if self.method not in _METHODS:
            raise ConfigError(
                f"unknown inversion method {self.method!r}; expected one of {_METHODS}"
            )
        if self.method == "talbot" and self.node_count < 8:
            raise ConfigError("contour inversion needs at least 8 nodes")
        if self.method == "stehfest":
            if self.node_count % 2 or not (2 <= self.node_count <= 18):
                raise ConfigError(
                    "summation inversion needs an even node count between 2 and 18"
                )
        if not (math.isfinite(self.contour_scale) and self.contour_scale > 0.0):
            raise ConfigError("contour_scale must be positive")


def _snap_coefficient(c: float) -> float:
    nearest = round(c)
    if nearest != 0 and abs(c - nearest) <= 1e-9 * abs(c):
        return float(nearest)
    return c


def invert_symbolic(image) -> ex.Expression:
    """Closed-form inverse of a strictly proper rational image."""
    if isinstance(image, PowerImage):
        try:
            image = image.as_rational()
        except ValueError:
            raise OutsideGrammarError(
                "image has fractional powers of p; its inverse lies outside "
                "the expression grammar"
            ) from None
    if not isinstance(image, RationalTransform):
        raise TypeError(f"expected an image, got {type(image).__name__}")
    if image.is_zero:
        return ex.ZERO
    if not image.is_proper:
        raise ImproperImageError(
            f"cannot invert an improper image (numerator degree "
            f"{image.num.degree} >= denominator degree {image.den.degree})"
        )

    raw: list[tuple[float, int, float, tuple[str, float] | None]] = []
    for term in partial_fractions(image.num, image.den):
        a, b = term.pole.real, term.pole.imag
        k, r = term.order, term.residue
        fact = float(math.factorial(k - 1))
        if b == 0.0:
            if abs(r.imag) > 1e-9 * max(1.0, abs(r)):
                raise RootFindingError(
                    f"residue {r} at the real pole {a:g} has a large imaginary part"
                )
            raw.append((r.real / fact, k - 1, a, None))
        elif b > 0.0:
            raw.append((2.0 * r.real / fact, k - 1, a, ("cos", b)))
            raw.append((-2.0 * r.imag / fact, k - 1, a, ("sin", b)))
        # b < 0 is the conjugate partner of a pair already handled

    if not raw:
        return ex.ZERO
    peak = max(abs(c) for c, _, _, _ in raw)
    pieces: list[ex.Expression] = []
    for c, n, a, trig in raw:
        if abs(c) <= 1e-10 * peak:
            continue
        factors: list[ex.Expression] = [ex.power(ex.T, n), ex.exp_of(a)]
        if trig is not None:
            kind, b = trig
            factors.append(ex.sin_of(b) if kind == "sin" else ex.cos_of(b))
        pieces.append(ex.mul(ex.const(_snap_coefficient(c)), *factors))
    return ex.add(*pieces) if pieces else ex.ZERO


# ---------------------------------------------------------------------------
# numeric inversion


def _talbot(F: Callable, t: float, nodes: int, scale: float) -> float:
    r = 0.4 * nodes * scale
    vertex = r / t
    total = 0.5 * math.exp(r) * complex(F(vertex))
    for k in range(1, nodes):
        theta = k * math.pi / nodes
        cot = math.cos(theta) / math.sin(theta)
        pk = vertex * theta * (cot + 1j)
        weight = cmath.exp(t * pk) * (1.0 + 1j * theta * (1.0 + cot * cot) - 1j * cot)
        total += weight * F(pk)
    return (vertex / nodes) * total.real


@lru_cache(maxsize=None)
def _gaver_weights(nodes: int) -> tuple[float, ...]:
    half = nodes // 2
    weights = []
    for k in range(1, nodes + 1):
        acc = Fraction(0)
        for j in range((k + 1) // 2, min(k, half) + 1):
            acc += Fraction(
                j**half * math.factorial(2 * j),
                math.factorial(half - j)
                * math.factorial(j)
                * math.factorial(j - 1)
                * math.factorial(k - j)
                * math.factorial(2 * j - k),
            )
        sign = -1 if (k + half) % 2 else 1
        weights.append(float(sign * acc))
    return tuple(weights)


def _gaver(F: Callable, t: float, nodes: int) -> float:
    step = math.log(2.0) / t
    weights = _gaver_weights(nodes)
    return step * sum(w * F((k + 1) * step) for k, w in enumerate(weights))


def _image_abscissa(image) -> float:
    if isinstance(image, RationalTransform):
        return image.abscissa()
    if isinstance(image, PowerImage):
        if not image.terms:
            return -math.inf
        return max(r.abscissa() for _, r in image.terms)
    return -math.inf


def _has_rational_inverse(image) -> bool:
    if isinstance(image, RationalTransform):
        return True
    if isinstance(image, PowerImage):
        try:
            image.as_rational()
        except ValueError:
            return False
        return True
    return False


def invert_numeric(image, t: float, config: InversionConfig | None = None) -> float:
    """Evaluate the inverse of an image at time t > 0.

    ``image`` may be rational, a power image, or any callable F(p) analytic
    right of its singularities.  Without an explicit config the Bromwich
    integral is realized by exact residue expansion whenever the image is
    rational, and by the cotangent contour otherwise; pass a config to force
    a particular method.
    """
    if config is None:
        method = "partial_fractions" if _has_rational_inverse(image) else "talbot"
        config = InversionConfig(method=method)
    if not (math.isfinite(t) and t > 0.0):
        raise DomainError(f"inversion time must be positive, got {t}")

    if config.method == "partial_fractions":
        closed = invert_symbolic(image)
        return ex.evaluate(closed, t=t)

    if isinstance(image, (RationalTransform, PowerImage)):
        F: Callable = image.evaluate
    elif callable(image):
        F = image
    else:
        raise TypeError(f"cannot invert {type(image).__name__}")

    if config.method == "stehfest":
        return _gaver(F, t, config.node_count)

    sigma = 0.0
    abscissa = _image_abscissa(image)
    if math.isfinite(abscissa) and abscissa >= 0.0:
        sigma = abscissa + _SHIFT_MARGIN
    if sigma:
        inner = F
        F = lambda q: inner(q + sigma)  # noqa: E731
    value = _talbot(F, t, config.node_count, config.contour_scale)
    return value * math.exp(sigma * t) if sigma else value


def roundtrip_check(
    v: ex.Expression,
    times: Sequence[float] = (0.1, 0.5, 1.0, 2.0),
    config: InversionConfig | None = None,
) -> float:
    """Max over ``times`` of |invert(transform(v))(t) - v(t)| / (1 + |v(t)|)."""
    image = table_transform(v)
    worst = 0.0
    for t in times:
        got = invert_numeric(image, t, config)
        want = ex.evaluate(v, t=t)
        err = abs(got - want) / (1.0 + abs(want))
        worst = max(worst, err)
    return worst
