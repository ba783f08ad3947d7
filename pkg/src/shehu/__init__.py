"""Two-parameter integral transform engine.

Forward transform by adaptive quadrature, an operational calculus over
rational images in the two transform variables, symbolic and numeric
inversion, and three worked solvers (exponential cooling, 1-D diffusion,
a fractional porous-medium series).
"""

__version__ = "0.1.0"

from .errors import (
    ConfigError,
    DivergenceError,
    DomainError,
    ExpressionParseError,
    ImageParseError,
    ImproperImageError,
    OutsideGrammarError,
    QuadratureError,
    RootFindingError,
    ShehuError,
    SolverError,
)
from .expr import GrowthBound, growth_bound
from .inverse import InversionConfig, invert_numeric, invert_symbolic, roundtrip_check
from .numerics import QuadratureConfig, partial_fractions
from .opcalc import (
    FractionalOrder,
    PowerImage,
    RationalTransform,
    caputo_rule,
    convolution_transform,
    derivative_rule,
    exp_shift,
    integral_rule,
    multiple_shift,
    parse_su_image,
    render_su,
    rl_rule,
    table_transform,
)
from .solvers import (
    HeatMode,
    HeatProblem,
    NewtonCoolingParams,
    SeriesSolution,
    XTPoly,
    evaluate_series,
    he_polynomial,
    pme_residual,
    solve_heat_1d,
    solve_newton_cooling,
    solve_pme_hpm,
)
from .tables import ResultTable, write_output
from .transform import TransformVars, existence_check, forward_numeric, laplace_oracle

__all__ = [
    "__version__",
    "ShehuError",
    "ExpressionParseError",
    "ImageParseError",
    "ConfigError",
    "DivergenceError",
    "OutsideGrammarError",
    "ImproperImageError",
    "SolverError",
    "DomainError",
    "QuadratureError",
    "RootFindingError",
    "GrowthBound",
    "growth_bound",
    "QuadratureConfig",
    "partial_fractions",
    "TransformVars",
    "existence_check",
    "forward_numeric",
    "laplace_oracle",
    "RationalTransform",
    "PowerImage",
    "FractionalOrder",
    "table_transform",
    "exp_shift",
    "derivative_rule",
    "integral_rule",
    "multiple_shift",
    "convolution_transform",
    "caputo_rule",
    "rl_rule",
    "render_su",
    "parse_su_image",
    "InversionConfig",
    "invert_symbolic",
    "invert_numeric",
    "roundtrip_check",
    "NewtonCoolingParams",
    "HeatMode",
    "HeatProblem",
    "XTPoly",
    "SeriesSolution",
    "he_polynomial",
    "solve_newton_cooling",
    "solve_heat_1d",
    "solve_pme_hpm",
    "evaluate_series",
    "pme_residual",
    "ResultTable",
    "write_output",
]
