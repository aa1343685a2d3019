"""Local fractional calculus: fractal-number arithmetic, generalized Taylor
series, and fixed-point / Newton iteration in the snowflake metric."""

from .errors import *  # noqa: F401,F403
from .fractal_number import (
    FractalNumber,
    FractalPoint,
    fn_add,
    fn_metric,
    fn_metric_n,
    fn_mul,
    fn_sub,
    fn_value,
    spow,
)
from .fractal_series import (
    FractalPowerSeries,
    RemainderBound,
    mittag_leffler,
    monomial_series,
    series_add,
    series_eval,
    series_integral,
    series_lfd,
    series_mul,
    series_scale,
    taylor_remainder,
)
from .numerics import (
    HolderFit,
    QuadratureSpec,
    StepSchedule,
    gamma,
    holder_fit,
    lf_integral,
    lfd_limit_estimate,
    lfd_quotient,
)
from .solver import (
    ContractionEstimate,
    ConvergenceReport,
    IterationSettings,
    IterationTrace,
    aposteriori_bound,
    apriori_bound,
    contraction_certificate,
    estimate_contraction,
    fixed_point_solve,
    newton_solve,
)

__version__ = "0.1.0"
