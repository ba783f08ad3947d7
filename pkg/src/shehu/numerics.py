"""Numerical kernels: half-line quadrature, gamma, polynomials, residues.

Quadrature delegates to QUADPACK's adaptive Gauss-Kronrod integrator after an
analytic tail truncation; the gamma function wraps the platform's real-axis
implementation behind this package's domain contract.  The dense real
polynomial type and the residue expansion below carry the operational
calculus and the symbolic inverse.
"""

from __future__ import annotations

import cmath
import math
import os
import warnings
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy import integrate as _scipy_integrate

from .errors import (
    ConfigError,
    DivergenceError,
    DomainError,
    ImproperImageError,
    PoleSeparationError,
    QuadratureError,
    RootFindingError,
)

#: Environment variable overriding the default relative quadrature tolerance.
QUAD_TOL_ENV = "SHEHU_QUAD_TOL"

_DEFAULT_REL_TOL = 1e-10


def _default_rel_tol() -> float:
    raw = os.environ.get(QUAD_TOL_ENV)
    if raw is None:
        return _DEFAULT_REL_TOL
    try:
        value = float(raw)
    except ValueError:
        raise ConfigError(f"{QUAD_TOL_ENV} must be a float, got {raw!r}") from None
    if not (0.0 < value < 1.0):
        raise ConfigError(f"{QUAD_TOL_ENV} must be in (0, 1), got {value}")
    return value


@dataclass(frozen=True, slots=True)
class QuadratureConfig:
    """Tolerances and budget for the adaptive half-line integrator."""

    abs_tol: float = 1e-12
    rel_tol: float = field(default_factory=_default_rel_tol)
    max_subdivisions: int = 500
    truncation_policy: str = "tail-bound"

    def __post_init__(self):
        if self.abs_tol <= 0.0 or self.rel_tol <= 0.0:
            raise ConfigError("tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ConfigError("max_subdivisions must be at least 1")
        if self.truncation_policy != "tail-bound":
            raise ConfigError("the only supported truncation policy is 'tail-bound'")


def integrate_halfline(
    f: Callable[[float], float],
    tail_rate: float,
    amplitude: float = 1.0,
    cfg: QuadratureConfig | None = None,
) -> float:
    """Integrate f over [0, inf) given the decay bound |f(t)| <= A*exp(-r*t).

    The improper integral is truncated at T with A*exp(-r*T)/r below half the
    absolute tolerance, and the remaining finite interval is handled by
    adaptive Gauss-Kronrod panels.
    """
    cfg = cfg or QuadratureConfig()
    if not math.isfinite(tail_rate) or tail_rate <= 0.0:
        raise DivergenceError(
            f"integrand does not decay (tail rate {tail_rate}); integral diverges"
        )
    if amplitude <= 0.0:
        raise ValueError("amplitude must be positive")

    ratio = 2.0 * amplitude / (tail_rate * cfg.abs_tol)
    cutoff = math.log(ratio) / tail_rate if ratio > 1.0 else 0.0
    cutoff = max(cutoff, 1.0 / tail_rate)

    with warnings.catch_warnings():
        warnings.simplefilter("error", _scipy_integrate.IntegrationWarning)
        try:
            value, estimate = _scipy_integrate.quad(
                f,
                0.0,
                cutoff,
                epsabs=cfg.abs_tol / 2.0,
                epsrel=cfg.rel_tol,
                limit=cfg.max_subdivisions,
            )
        except _scipy_integrate.IntegrationWarning as exc:
            raise QuadratureError(
                f"quadrature on [0, {cutoff:.6g}] did not converge: {exc}"
            ) from None

    budget = max(cfg.abs_tol, cfg.rel_tol * abs(value))
    if estimate > budget + cfg.abs_tol:
        raise QuadratureError(
            f"quadrature error estimate {estimate:.3g} exceeds tolerance {budget:.3g}"
        )
    return value


def gamma(x: float) -> float:
    """Real gamma function for x > 0; overflow past x = 170."""
    if not isinstance(x, (int, float)) or isinstance(x, bool):
        raise TypeError("gamma expects a real number")
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"gamma requires x > 0, got {x}")
    if x > 170.0:
        raise OverflowError(f"gamma overflows double precision for x = {x}")
    return math.gamma(x)


# ---------------------------------------------------------------------------
# dense real polynomials


class Polynomial:
    """Dense real polynomial, coefficients stored in ascending degree order."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[float]):
        cleaned = [float(c) for c in coeffs]
        for c in cleaned:
            if not math.isfinite(c):
                raise ValueError("polynomial coefficients must be finite")
        while len(cleaned) > 1 and cleaned[-1] == 0.0:
            cleaned.pop()
        if not cleaned:
            cleaned = [0.0]
        object.__setattr__(self, "coeffs", tuple(cleaned))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def monomial(cls, degree: int, coeff: float = 1.0) -> "Polynomial":
        return cls([0.0] * degree + [coeff])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return self.coeffs == (0.0,)

    def __call__(self, z):
        out = 0.0 if not isinstance(z, complex) else 0.0 + 0.0j
        for c in reversed(self.coeffs):
            out = out * z + c
        return out

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial(out)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + other.scale(-1.0)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if self.is_zero or other.is_zero:
            return Polynomial([0.0])
        out = [0.0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0.0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    def scale(self, factor: float) -> "Polynomial":
        return Polynomial([factor * c for c in self.coeffs])

    def derivative(self) -> "Polynomial":
        if self.degree == 0:
            return Polynomial([0.0])
        return Polynomial([k * c for k, c in enumerate(self.coeffs)][1:])

    def shift(self, c: float) -> "Polynomial":
        """Coefficients of p(z + c)."""
        out = _taylor_shift([complex(v) for v in self.coeffs], complex(c))
        return Polynomial([v.real for v in out])

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Polynomial({list(self.coeffs)!r})"


def _taylor_shift(coeffs: list[complex], a: complex) -> list[complex]:
    # Horner-style shift: output b with sum b_k z^k = p(z + a), i.e. the
    # Taylor coefficients of p about a.
    b = list(coeffs)
    n = len(b)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            b[j] += a * b[j + 1]
    return b


def _deflate(coeffs: list[complex], root: complex) -> tuple[list[complex], complex]:
    """Divide by (z - root); returns (quotient ascending, remainder)."""
    desc = list(reversed(coeffs))
    out = [desc[0]]
    for c in desc[1:]:
        out.append(c + root * out[-1])
    remainder = out[-1]
    quotient = list(reversed(out[:-1]))
    return quotient, remainder


@dataclass(frozen=True, slots=True)
class PoleTerm:
    """One summand residue / (p - pole)^order of a partial fraction expansion."""

    pole: complex
    order: int
    residue: complex


_CLUSTER_RADIUS = 1e-3
_MULTIPLE_ROOT_RESIDUAL = 1e-9
_SNAP_INT_REL = 1e-9
_SNAP_ZERO_REL = 1e-10


def _snap_scalar(value: float, scale: float) -> float:
    if abs(value) <= _SNAP_ZERO_REL * scale:
        return 0.0
    nearest = round(value)
    if abs(value - nearest) <= _SNAP_INT_REL * max(1.0, abs(value)):
        return float(nearest)
    return value


def snap_complex(z: complex, scale: float | None = None) -> complex:
    """Snap near-integer and near-zero parts; cleans eigenvalue noise."""
    scale = scale if scale is not None else max(1.0, abs(z))
    return complex(_snap_scalar(z.real, scale), _snap_scalar(z.imag, scale))


def _polish(poly: Polynomial, z: complex, multiplicity: int) -> complex:
    target = poly
    for _ in range(multiplicity - 1):
        target = target.derivative()
    deriv = target.derivative()
    for _ in range(30):
        fz = target(z)
        dz = deriv(z)
        if dz == 0:
            break
        step = fz / dz
        z = z - step
        if abs(step) <= 1e-16 * max(1.0, abs(z)):
            break
    return z


def _raw_roots(den: Polynomial) -> list[complex]:
    if den.degree == 0:
        return []
    if den.degree == 1:
        c0, c1 = den.coeffs
        return [complex(-c0 / c1)]
    return [complex(r) for r in np.roots(list(reversed(den.coeffs)))]


def _cluster_roots(roots: list[complex], scale: float) -> list[list[complex]]:
    clusters: list[list[complex]] = []
    for r in sorted(roots, key=lambda z: (z.real, z.imag)):
        for members in clusters:
            center = sum(members) / len(members)
            if abs(r - center) <= _CLUSTER_RADIUS * max(1.0, abs(center)):
                members.append(r)
                break
        else:
            clusters.append([r])
    return clusters


def _resolve_poles(den: Polynomial, separation_tol: float) -> list[tuple[complex, int]]:
    """Find (pole, multiplicity) pairs with polished, conjugate-paired poles."""
    roots = _raw_roots(den)
    scale = max([1.0] + [abs(r) for r in roots])
    den_norm = max(abs(c) for c in den.coeffs)
    poles: list[tuple[complex, int]] = []

    for members in _cluster_roots(roots, scale):
        m = len(members)
        center = sum(members) / m
        if m == 1:
            poles.append((snap_complex(_polish(den, center, 1), scale), 1))
            continue
        candidate = snap_complex(_polish(den, center, m), scale)
        # validate the multiplicity hypothesis by synthetic deflation
        coeffs = [complex(c) for c in den.coeffs]
        ok = True
        for _ in range(m):
            coeffs, remainder = _deflate(coeffs, candidate)
            if abs(remainder) > _MULTIPLE_ROOT_RESIDUAL * den_norm * max(1.0, abs(candidate)) ** m:
                ok = False
                break
        if ok:
            poles.append((candidate, m))
        else:
            # the cluster is a group of distinct nearby roots after all
            for r in members:
                poles.append((snap_complex(_polish(den, r, 1), scale), 1))

    poles = _pair_conjugates(poles, scale)

    for i, (zi, _) in enumerate(poles):
        for zj, _ in poles[i + 1 :]:
            if abs(zi - zj) < separation_tol * max(1.0, abs(zi), abs(zj)):
                raise PoleSeparationError(
                    f"poles {zi} and {zj} are closer than the separation "
                    f"tolerance {separation_tol}; cannot expand reliably"
                )
    poles.sort(key=lambda item: (item[0].real, item[0].imag))
    return poles


def _pair_conjugates(
    poles: list[tuple[complex, int]], scale: float
) -> list[tuple[complex, int]]:
    out: list[tuple[complex, int]] = []
    pending = list(poles)
    while pending:
        z, m = pending.pop(0)
        if z.imag == 0.0:
            out.append((z, m))
            continue
        match = None
        for idx, (w, mw) in enumerate(pending):
            if mw == m and abs(w - z.conjugate()) <= 1e-6 * max(1.0, abs(z)):
                match = idx
                break
        if match is None:
            raise RootFindingError(
                f"complex pole {z} has no conjugate partner; the denominator "
                "appears ill-conditioned"
            )
        w, _ = pending.pop(match)
        mean = (z + w.conjugate()) / 2.0
        mean = snap_complex(mean, scale)
        out.append((mean, m))
        out.append((mean.conjugate(), m))
    return out


def partial_fractions(
    num: Polynomial, den: Polynomial, separation_tol: float = 1e-10
) -> list[PoleTerm]:
    """Expand num/den into residue / (p - pole)^order summands.

    Requires a strictly proper ratio.  Complex poles are returned in
    conjugate pairs; vanishing coefficients are dropped.
    """
    if den.is_zero:
        raise ValueError("denominator must be nonzero")
    if num.is_zero:
        return []
    if num.degree >= den.degree:
        raise ImproperImageError(
            f"numerator degree {num.degree} is not below denominator degree {den.degree}"
        )

    lead = den.coeffs[-1]
    num = num.scale(1.0 / lead)
    den = den.scale(1.0 / lead)

    terms: list[PoleTerm] = []
    poles = _resolve_poles(den, separation_tol)
    for pole, m in poles:
        reduced = [complex(c) for c in den.coeffs]
        for _ in range(m):
            reduced, _rem = _deflate(reduced, pole)
        num_taylor = _taylor_shift([complex(c) for c in num.coeffs], pole)[:m]
        num_taylor += [0.0 + 0.0j] * (m - len(num_taylor))
        den_taylor = _taylor_shift(reduced, pole)[:m]
        den_taylor += [0.0 + 0.0j] * (m - len(den_taylor))
        if den_taylor[0] == 0:
            raise RootFindingError(
                f"deflated denominator vanishes at pole {pole}; roots are unresolved"
            )
        series: list[complex] = []
        for k in range(m):
            acc = num_taylor[k]
            for i in range(1, k + 1):
                if i < len(den_taylor):
                    acc -= den_taylor[i] * series[k - i]
            series.append(acc / den_taylor[0])
        for j, coeff in enumerate(series):
            terms.append(PoleTerm(pole, m - j, coeff))

    peak = max(abs(t.residue) for t in terms)
    kept = [t for t in terms if abs(t.residue) > 1e-12 * peak]
    kept.sort(key=lambda t: (t.pole.real, t.pole.imag, t.order))
    return kept
