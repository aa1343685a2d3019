"""Black-box numerical operators on real functions.

* :func:`gamma` / :func:`log_gamma` -- Euler gamma, backed by :mod:`math`.
* :func:`lfd_quotient` / :func:`lfd_limit_estimate` -- the local fractional
  difference quotient ``Gamma(1+a) (f(x0+h) - f(x0)) / h^a`` and its limit
  along a geometric step schedule.
* :func:`holder_fit` -- log-log regression of increments against step.
* :func:`lf_integral` -- local fractional integral with three backends.

For smooth ``f`` and ``alpha < 1`` the literal quotient tends to zero; the
coefficient-shift calculus on series (:mod:`fractal_calc.fractal_series`)
is the operator that realizes the Taylor identities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import (
    DegenerateFitError,
    DomainError,
    EvaluationError,
    UnsupportedBackendError,
)
from .fractal_number import check_order, spow

__all__ = [
    "gamma",
    "log_gamma",
    "StepSchedule",
    "LimitEstimate",
    "HolderFit",
    "QuadratureSpec",
    "lfd_quotient",
    "lfd_limit_estimate",
    "holder_fit",
    "lf_integral",
    "series_form",
]

RealFunction = Callable[[float], float]

BACKENDS = ("literal_eq3", "measure", "series")


def _is_pole(x: float) -> bool:
    return x <= 0 and float(x).is_integer()


def gamma(x: float) -> float:
    """Euler gamma function.

    Raises :class:`DomainError` at the poles 0, -1, -2, ...
    """
    x = float(x)
    if _is_pole(x) or math.isnan(x):
        raise DomainError(f"gamma has a pole at {x}")
    return math.gamma(x)


def log_gamma(x: float) -> float:
    """log|Gamma(x)|, finite well past the overflow point of :func:`gamma`."""
    x = float(x)
    if _is_pole(x) or math.isnan(x):
        raise DomainError(f"gamma has a pole at {x}")
    return math.lgamma(x)


@dataclass(frozen=True)
class StepSchedule:
    h0: float = 1e-1
    ratio: float = 0.5
    count: int = 20

    def __post_init__(self):
        if not self.h0 > 0:
            raise ValueError("h0 must be positive")
        if not 0 < self.ratio < 1:
            raise ValueError("ratio must lie in (0, 1)")
        if self.count < 3:
            raise ValueError("a schedule needs at least 3 steps")

    def steps(self) -> np.ndarray:
        return self.h0 * self.ratio ** np.arange(self.count)

    @classmethod
    def parse(cls, text: str) -> "StepSchedule":
        """Parse ``"h0:ratio:count"``."""
        h0, ratio, count = text.split(":")
        return cls(float(h0), float(ratio), int(count))


@dataclass(frozen=True)
class LimitEstimate:
    estimate: float
    converged: bool
    trail: tuple
    steps: tuple


@dataclass(frozen=True)
class HolderFit:
    exponent: float
    log_coefficient: float
    r_squared: float
    samples: int


@dataclass(frozen=True)
class QuadratureSpec:
    backend: str = "literal_eq3"
    partitions: int = 1000

    def __post_init__(self):
        if self.backend not in BACKENDS:
            raise UnsupportedBackendError(
                f"unknown backend {self.backend!r}; choose from {BACKENDS}"
            )
        if self.partitions < 1:
            raise ValueError("partitions must be >= 1")


def _checked(f: RealFunction, x: float, step=None) -> float:
    y = f(x)
    if not math.isfinite(y):
        raise EvaluationError(f"f({x!r}) is not finite", at=step if step is not None else x)
    return y


def lfd_quotient(f: RealFunction, x0: float, h: float, alpha: float) -> float:
    """One finite-``h`` sample of Gamma(1+a) (f(x0+h) - f(x0)) / spow(h, a)."""
    alpha = check_order(alpha)
    if h == 0:
        raise ValueError("step h must be non-zero")
    df = _checked(f, x0 + h, step=h) - _checked(f, x0, step=h)
    return gamma(1.0 + alpha) * df / spow(h, alpha)


def lfd_limit_estimate(
    f: RealFunction,
    x0: float,
    alpha: float,
    sched: Optional[StepSchedule] = None,
    rtol: float = 1e-6,
    atol: float = 1e-3,
) -> LimitEstimate:
    """Follow the two-sided averaged quotient down a geometric schedule.

    The last three samples must agree within ``rtol`` relative to their
    magnitude, or within ``atol`` absolutely (a trail collapsing onto zero,
    which is what smooth functions do for alpha < 1).  The final sample is
    returned as the estimate whether or not that happens.
    """
    sched = sched or StepSchedule()
    hs = sched.steps()
    trail = []
    for h in hs:
        h = float(h)
        q = 0.5 * (lfd_quotient(f, x0, h, alpha) + lfd_quotient(f, x0, -h, alpha))
        if not math.isfinite(q):
            raise EvaluationError(f"non-finite quotient at step {h}", at=h)
        trail.append(q)
    tail = trail[-3:]
    spread = max(tail) - min(tail)
    scale = max(abs(v) for v in tail)
    converged = spread <= rtol * scale or spread <= atol
    return LimitEstimate(trail[-1], bool(converged), tuple(trail), tuple(float(h) for h in hs))


def holder_fit(f: RealFunction, x0: float, sched: Optional[StepSchedule] = None) -> HolderFit:
    """Fit log|f(x0+h) - f(x0)| = log C + a log h over the schedule."""
    sched = sched or StepSchedule()
    hs = sched.steps()
    f0 = _checked(f, x0)
    inc = np.array([abs(_checked(f, x0 + float(h), step=float(h)) - f0) for h in hs])
    keep = inc > 0
    if keep.sum() < 3:
        raise DegenerateFitError("fewer than 3 non-zero increments; f looks locally constant")
    lx, ly = np.log(hs[keep]), np.log(inc[keep])
    slope, intercept = np.polyfit(lx, ly, 1)
    resid = ly - (slope * lx + intercept)
    ss_tot = float(np.sum((ly - ly.mean()) ** 2))
    if ss_tot == 0.0:
        r2 = 1.0
    else:
        r2 = min(1.0, max(0.0, 1.0 - float(np.sum(resid**2)) / ss_tot))
    return HolderFit(float(slope), float(intercept), r2, int(keep.sum()))


def series_form(f):
    """Return the :class:`FractalPowerSeries` attached to ``f``, or None."""
    from .fractal_series import FractalPowerSeries

    if isinstance(f, FractalPowerSeries):
        return f
    return getattr(f, "series", None)


def lf_integral(
    f: RealFunction,
    a: float,
    b: float,
    alpha: float,
    spec: Optional[QuadratureSpec] = None,
) -> float:
    """Local fractional integral of ``f`` over [a, b].

    ``literal_eq3`` is the finite partition sum with no refinement limit;
    for alpha < 1 it grows like N**(1-alpha) as N increases.  ``measure``
    integrates against d(t^alpha).  ``series`` is exact on the attached
    series form.  Swapping the limits negates the result; a == b gives 0.
    """
    alpha = check_order(alpha)
    spec = spec or QuadratureSpec()
    if spec.backend == "series" and series_form(f) is None:
        raise UnsupportedBackendError("series backend needs a function with a series form")
    if a == b:
        return 0.0
    if a > b:
        return -lf_integral(f, b, a, alpha, spec)
    g = gamma(1.0 + alpha)
    if spec.backend == "series":
        from .fractal_series import series_eval, series_integral

        s = series_form(f)
        if s.center > a:
            raise UnsupportedBackendError(
                f"series centered at {s.center} cannot integrate from {a}"
            )
        F = series_integral(s)
        return series_eval(F, b) - series_eval(F, a)
    n = spec.partitions
    dt = (b - a) / n
    if spec.backend == "literal_eq3":
        w = dt**alpha
        total = math.fsum(_checked(f, a + j * dt) * w for j in range(n))
        return total / g
    # measure backend: d(t^alpha) = alpha |t|^(alpha-1) dt at panel midpoints
    terms = []
    for j in range(n):
        t = a + (j + 0.5) * dt
        weight = abs(t) ** (alpha - 1.0) if alpha != 1.0 else 1.0
        terms.append(_checked(f, t) * weight * dt)
    return alpha * math.fsum(terms) / g
