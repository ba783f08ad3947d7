"""Built-in golden-value checks, runnable via the CLI or the service.

Each case exercises one end-to-end path (table, quadrature, inversion, or a
solver) against a value that is known in closed form.
"""

from __future__ import annotations

import math

from . import expr as ex
from .inverse import invert_symbolic
from .opcalc import exp_shift, multiple_shift, parse_su_image, render_su, table_transform
from .schemas import SelftestCase, SelftestResponse
from .solvers import (
    HeatMode,
    HeatProblem,
    NewtonCoolingParams,
    solve_heat_1d,
    solve_newton_cooling,
    solve_pme_hpm,
)
from .transform import TransformVars, forward_numeric


def _check_close(got: float, want: float, tol: float) -> str:
    err = abs(got - want) / max(1.0, abs(want))
    if err > tol:
        raise AssertionError(f"got {got!r}, want {want!r} (relative error {err:.3g})")
    return f"{got:.6g} matches {want:.6g}"


def _check_text(got: str, want: str) -> str:
    if got != want:
        raise AssertionError(f"got {got!r}, want {want!r}")
    return got


def _case_sine_image() -> str:
    return _check_text(render_su(table_transform(ex.parse("sin(3*t)"))), "3u^2/(s^2+9u^2)")


def _case_damped_sine_image() -> str:
    image = table_transform(ex.parse("sin(3*t)*exp(-4*t)"))
    return _check_text(render_su(image), "3u^2/(s^2+8us+25u^2)")


def _case_ramp_image() -> str:
    # t*e^{2t} through the rules: shift the ramp image, or differentiate the
    # exponential image; both must agree with the direct table.
    direct = table_transform(ex.parse("t*exp(2*t)"))
    shifted = exp_shift(table_transform(ex.parse("t")), 2.0)
    bumped = multiple_shift(table_transform(ex.parse("exp(2*t)")), 1)
    if not (direct == shifted == bumped):
        raise AssertionError("rule paths disagree for t*exp(2*t)")
    return _check_close(direct.evaluate(3.0), 1.0, 1e-12)


def _case_forward_sine() -> str:
    value = forward_numeric(ex.parse("sin(3*t)"), TransformVars(2.0, 1.0))
    return _check_close(value, 3.0 / 13.0, 1e-8)


def _case_forward_const() -> str:
    value = forward_numeric(ex.parse("1"), TransformVars(4.0, 2.0))
    return _check_close(value, 0.5, 1e-10)


def _case_invert_sine() -> str:
    recovered = invert_symbolic(parse_su_image("3u^2/(s^2+9u^2)"))
    return _check_text(ex.to_text(recovered), "sin(3*t)")


def _case_newton_cooling() -> str:
    params = NewtonCoolingParams(h=1.0, M=1.0, rho=2.0, Lambda=1.0, c_p=1.0, beta0=100.0)
    solution = solve_newton_cooling(params)
    return _check_close(ex.evaluate(solution, t=1.0), 100.0 * math.exp(-0.5), 1e-10)


def _case_heat_modes() -> str:
    prob = HeatProblem(
        k=2.0,
        L=5.0,
        modes=(HeatMode(10.0, 4.0 * math.pi), HeatMode(-5.0, 6.0 * math.pi)),
    )
    solution = solve_heat_1d(prob)
    got = ex.evaluate(solution, x=0.125, t=0.01)
    want = 10.0 * math.exp(-0.32 * math.pi**2) - 5.0 * math.exp(
        -0.72 * math.pi**2
    ) * math.sin(0.75 * math.pi)
    return _check_close(got, want, 1e-12)


def _case_pme_closed_form() -> str:
    series = solve_pme_hpm(1.0, ex.parse("x"), 3)
    return _check_text(series.render(), "x + t")


_CASES = (
    ("table image of sin(3t)", _case_sine_image),
    ("table image of damped sine", _case_damped_sine_image),
    ("rule agreement for t*exp(2t)", _case_ramp_image),
    ("quadrature of sin(3t) at (2,1)", _case_forward_sine),
    ("quadrature of 1 at (4,2)", _case_forward_const),
    ("symbolic inverse of sine image", _case_invert_sine),
    ("cooling solution value at t=1", _case_newton_cooling),
    ("heat solution value at (0.125, 0.01)", _case_heat_modes),
    ("porous-medium closed form at order 1", _case_pme_closed_form),
)


def run() -> SelftestResponse:
    cases = []
    for name, fn in _CASES:
        try:
            detail = fn()
            cases.append(SelftestCase(name=name, passed=True, detail=detail))
        except Exception as exc:  # deliberate: a failing case must not stop the rest
            cases.append(SelftestCase(name=name, passed=False, detail=str(exc)))
    return SelftestResponse(passed=all(c.passed for c in cases), cases=cases)
