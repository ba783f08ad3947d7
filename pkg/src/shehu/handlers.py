"""Request handlers shared by the HTTP service and the local CLI path.

Each handler takes a validated request model and returns a response model, so
the CLI running locally and the service running remotely produce identical
payloads for the same input.
"""

from __future__ import annotations

from . import __version__
from . import expr as ex
from . import selftest
from .errors import ConfigError, OutsideGrammarError
from .inverse import InversionConfig, invert_numeric, invert_symbolic
from .opcalc import parse_su_image, render_su, table_transform
from .schemas import (
    GridModel,
    InvertRequest,
    InvertResponse,
    ProblemConfig,
    SelftestResponse,
    SolveResponse,
    TableModel,
    TransformRequest,
    TransformResponse,
)
from .solvers import (
    HeatMode,
    HeatProblem,
    NewtonCoolingParams,
    evaluate_series,
    solve_heat_1d,
    solve_newton_cooling,
    solve_pme_hpm,
)
from .tables import ResultTable
from .transform import TransformVars, forward_numeric


def _linspace(lo: float, hi: float, steps: int) -> list[float]:
    # endpoints exact; interior points deterministic
    if steps == 1:
        return [lo]
    h = (hi - lo) / (steps - 1)
    pts = [lo + i * h for i in range(steps)]
    pts[-1] = hi
    return pts


def handle_transform(req: TransformRequest) -> TransformResponse:
    v = ex.parse(req.expression)
    vars = TransformVars(req.s, req.u)
    if req.mode == "symbolic":
        return TransformResponse(image=render_su(table_transform(v)))

    numeric = forward_numeric(v, vars)
    image_text = None
    table_value = None
    difference = None
    try:
        image = table_transform(v)
    except OutsideGrammarError:
        pass  # numeric mode tolerates inputs outside the closed-form table
    else:
        image_text = render_su(image)
        table_value = image.evaluate(vars.ratio)
        difference = numeric - table_value
    return TransformResponse(
        image=image_text,
        numeric_value=numeric,
        table_value=table_value,
        difference=difference,
    )


def handle_invert(req: InvertRequest) -> InvertResponse:
    image = parse_su_image(req.image)
    expression = invert_symbolic(image)
    if req.method == "symbolic":
        values = [ex.evaluate(expression, t=t) for t in req.times]
    else:
        cfg = InversionConfig(
            method=req.method,
            node_count=req.node_count,
            contour_scale=req.contour_scale,
        )
        values = [invert_numeric(image, t, cfg) for t in req.times]
    return InvertResponse(
        expression=ex.to_text(expression),
        times=list(req.times),
        values=values,
    )


def _newton_rows(config: ProblemConfig) -> tuple[str, tuple[str, ...], list[tuple]]:
    p = config.params
    params = NewtonCoolingParams(
        h=p.h, M=p.M, rho=p.rho, Lambda=p.Lambda, c_p=p.c_p, beta0=p.beta0
    )
    solution = solve_newton_cooling(params)
    ts = _linspace(config.grid.t_min, config.grid.t_max, config.grid.t_steps)
    rows = [(t, ex.evaluate(solution, t=t)) for t in ts]
    return ex.to_text(solution), ("t", "v"), rows


def _space_time(grid: GridModel) -> tuple[list[float], list[float]]:
    ts = _linspace(grid.t_min, grid.t_max, grid.t_steps)
    xs = _linspace(grid.x_min, grid.x_max, grid.x_steps)
    return ts, xs


def _heat_rows(config: ProblemConfig) -> tuple[str, tuple[str, ...], list[tuple]]:
    p = config.params
    prob = HeatProblem(
        k=p.k,
        L=p.L,
        modes=tuple(HeatMode(m.amplitude, m.frequency) for m in p.modes),
    )
    solution = solve_heat_1d(prob)
    ts, xs = _space_time(config.grid)
    rows = [(t, x, ex.evaluate(solution, x=x, t=t)) for t in ts for x in xs]
    return ex.to_text(solution), ("t", "x", "v"), rows


def _pme_rows(config: ProblemConfig) -> tuple[str, tuple[str, ...], list[tuple]]:
    p = config.params
    if config.grid.t_min < 0:
        raise ConfigError("fractional series require t >= 0 on the grid")
    series = solve_pme_hpm(p.alpha, ex.parse(p.initial), p.n_terms)
    ts, xs = _space_time(config.grid)
    rows = [(t, x, evaluate_series(series, x, t)) for t in ts for x in xs]
    return series.render(), ("t", "x", "v"), rows


_SOLVE_DISPATCH = {
    "newton_cooling": _newton_rows,
    "heat_1d": _heat_rows,
    "pme_hpm": _pme_rows,
}


def table_to_model(table: ResultTable) -> TableModel:
    return TableModel(
        columns=list(table.columns),
        rows=[list(r) for r in table.rows],
        metadata=dict(table.metadata),
    )


def model_to_table(model: TableModel) -> ResultTable:
    return ResultTable(
        columns=tuple(model.columns),
        rows=tuple(tuple(r) for r in model.rows),
        metadata=dict(model.metadata),
    )


def handle_solve(config: ProblemConfig) -> SolveResponse:
    solution, columns, rows = _SOLVE_DISPATCH[config.kind](config)
    # metadata must be a pure function of the config so repeated runs write
    # byte-identical files
    metadata = {"config": config.model_dump(mode="json"), "version": __version__}
    table = ResultTable(columns=columns, rows=tuple(rows), metadata=metadata)
    return SolveResponse(solution=solution, table=table_to_model(table))


def handle_selftest() -> SelftestResponse:
    return selftest.run()
