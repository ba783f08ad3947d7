"""Request, response, and configuration models shared by the service and CLI.

The solve configuration mirrors the JSON files users write:

    {
      "kind": "newton_cooling" | "heat_1d" | "pme_hpm",
      "params": { ... kind-specific block ... },
      "grid": {"t_min": .., "t_max": .., "t_steps": ..,
               "x_min": .., "x_max": .., "x_steps": ..},   # x_* for PDE kinds
      "output": {"path": "out.csv", "format": "csv" | "json"}
    }

Unknown keys are rejected everywhere so typos fail loudly.
"""

from __future__ import annotations

from typing import Any, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


# ---------------------------------------------------------------------------
# solve configuration


class NewtonParamsModel(StrictModel):
    h: float = Field(gt=0, description="convection coefficient")
    M: float = Field(gt=0, description="surface area")
    rho: float = Field(gt=0, description="density")
    Lambda: float = Field(gt=0, description="volume")
    c_p: float = Field(gt=0, description="specific heat")
    beta0: float = Field(gt=0, description="initial temperature")


class HeatModeModel(StrictModel):
    amplitude: float
    frequency: float = Field(gt=0)


class HeatParamsModel(StrictModel):
    k: float = Field(gt=0, description="diffusivity")
    L: float = Field(gt=0, description="domain length")
    modes: list[HeatModeModel] = Field(min_length=1)


class PmeParamsModel(StrictModel):
    alpha: float = Field(gt=0, le=1)
    initial: str
    n_terms: int = Field(ge=1)


class GridModel(StrictModel):
    t_min: float
    t_max: float
    t_steps: int = Field(ge=2)
    x_min: Optional[float] = None
    x_max: Optional[float] = None
    x_steps: Optional[int] = Field(default=None, ge=2)

    @model_validator(mode="after")
    def _ordered(self) -> "GridModel":
        if not self.t_max > self.t_min:
            raise ValueError("t_max must exceed t_min")
        spatial = (self.x_min, self.x_max, self.x_steps)
        if any(v is not None for v in spatial):
            if any(v is None for v in spatial):
                raise ValueError("x_min, x_max, x_steps must be given together")
            if not self.x_max > self.x_min:
                raise ValueError("x_max must exceed x_min")
        return self

    @property
    def has_space(self) -> bool:
        return self.x_steps is not None


class OutputModel(StrictModel):
    path: str = Field(min_length=1)
    format: Literal["csv", "json"]


_PARAM_MODELS = {
    "newton_cooling": NewtonParamsModel,
    "heat_1d": HeatParamsModel,
    "pme_hpm": PmeParamsModel,
}


class ProblemConfig(StrictModel):
    kind: Literal["newton_cooling", "heat_1d", "pme_hpm"]
    params: Union[NewtonParamsModel, HeatParamsModel, PmeParamsModel]
    grid: GridModel
    output: OutputModel

    @model_validator(mode="after")
    def _consistent(self) -> "ProblemConfig":
        expected = _PARAM_MODELS[self.kind]
        if not isinstance(self.params, expected):
            raise ValueError(
                f"params block does not match kind {self.kind!r} "
                f"(expected fields of {expected.__name__})"
            )
        if self.kind in ("heat_1d", "pme_hpm") and not self.grid.has_space:
            raise ValueError(f"kind {self.kind!r} needs a spatial grid (x_min/x_max/x_steps)")
        return self


# ---------------------------------------------------------------------------
# request / response bodies


class TransformRequest(StrictModel):
    expression: str = Field(min_length=1)
    s: float = Field(gt=0)
    u: float = Field(gt=0)
    mode: Literal["symbolic", "numeric"] = "symbolic"


class TransformResponse(StrictModel):
    image: Optional[str] = None
    numeric_value: Optional[float] = None
    table_value: Optional[float] = None
    difference: Optional[float] = None


class InvertRequest(StrictModel):
    image: str = Field(min_length=1)
    times: list[float] = Field(default=[0.1, 0.5, 1.0, 2.0, 5.0], min_length=1)
    method: Literal["symbolic", "talbot", "stehfest"] = "symbolic"
    node_count: int = 32
    contour_scale: float = 1.0


class InvertResponse(StrictModel):
    expression: str
    times: list[float]
    values: list[float]


class SolveRequest(StrictModel):
    config: ProblemConfig


class TableModel(StrictModel):
    columns: list[str]
    rows: list[list[float]]
    metadata: dict[str, Any]


class SolveResponse(StrictModel):
    solution: str
    table: TableModel


class SelftestCase(StrictModel):
    name: str
    passed: bool
    detail: str


class SelftestResponse(StrictModel):
    passed: bool
    cases: list[SelftestCase]


class ErrorBody(StrictModel):
    kind: str
    message: str
    offset: Optional[int] = None
