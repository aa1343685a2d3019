"""Fixed-point and Newton-type iteration measured in the snowflake metric.

Iterates live in ordinary base coordinates and the map is evaluated as a
plain real function.  The fractal order enters through the distance
``rho(x, y) = |x - y| ** alpha``: the stopping rule, the step ratios, the
contraction estimate and both error bounds are all expressed in it.

Failure to converge is reported through ``ConvergenceReport.status``
rather than raised.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import (
    BoundUnavailableError,
    ConfigurationError,
    DerivativeVanishesError,
    InsufficientDataError,
)
from .fractal_number import check_order, snowflake_distance, spow
from .fractal_series import FractalPowerSeries, series_eval, series_lfd
from .numerics import gamma, series_form

__all__ = [
    "IterationSettings",
    "IterationTrace",
    "ContractionEstimate",
    "ConvergenceReport",
    "fixed_point_solve",
    "newton_solve",
    "estimate_contraction",
    "apriori_bound",
    "aposteriori_bound",
    "contraction_certificate",
]

CONVERGED = "converged"
MAX_ITER = "max_iter_exceeded"
DIVERGED = "diverged"
NON_CONTRACTIVE = "non_contractive"


@dataclass(frozen=True)
class IterationSettings:
    """Solver knobs.

    ``tol`` is a threshold on the fractal step rho(x_{k+1}, x_k); when left
    as None it defaults to (1e-10)**alpha, i.e. a base-coordinate step of
    about 1e-10.
    """

    max_iter: int = 200
    tol: Optional[float] = None
    alpha: float = 1.0
    contraction_window: int = 5

    def __post_init__(self):
        try:
            check_order(self.alpha)
        except ValueError as exc:
            raise ConfigurationError(str(exc)) from None
        if self.max_iter < 1:
            raise ConfigurationError("max_iter must be >= 1")
        if self.tol is not None and not self.tol > 0:
            raise ConfigurationError("tol must be positive")
        if self.contraction_window < 2:
            raise ConfigurationError("contraction_window must be >= 2")
        if self.contraction_window > self.max_iter:
            raise ConfigurationError("contraction_window cannot exceed max_iter")

    @property
    def effective_tol(self) -> float:
        return self.tol if self.tol is not None else 1e-10**self.alpha


@dataclass(frozen=True)
class IterationTrace:
    iterates: tuple
    fractal_steps: tuple
    alpha: float = 1.0

    @property
    def ratio_sequence(self) -> tuple:
        return _ratios(self.fractal_steps)

    def __len__(self):
        return len(self.fractal_steps)


@dataclass(frozen=True)
class ContractionEstimate:
    L_hat: float
    window: int
    uniform: bool


@dataclass(frozen=True)
class ConvergenceReport:
    status: str
    root: float
    trace: IterationTrace
    contraction: ContractionEstimate
    a_posteriori: float
    residual: float

    @property
    def iterations(self) -> int:
        return len(self.trace.fractal_steps)

    @property
    def converged(self) -> bool:
        return self.status == CONVERGED

    def to_dict(self) -> dict:
        """Fixed-schema JSON form used by the CLI."""
        steps = self.trace.fractal_steps
        rows = []
        for k, x in enumerate(self.trace.iterates):
            rows.append({"k": k, "x": x, "step": steps[k - 1] if k > 0 else None})
        return {
            "status": self.status,
            "root": self.root,
            "residual": self.residual,
            "iterations": self.iterations,
            "L_hat": self.contraction.L_hat,
            "a_posteriori": self.a_posteriori,
            "trace": rows,
        }


def _ratios(steps) -> tuple:
    out = []
    for prev, nxt in zip(steps[:-1], steps[1:]):
        out.append(nxt / prev if prev > 0 else 0.0)
    return tuple(out)


def estimate_contraction(trace: IterationTrace, window: int) -> ContractionEstimate:
    """Largest step ratio over the last ``window`` ratios of the trace."""
    steps = trace.fractal_steps
    if window < 1 or len(steps) < window + 1:
        raise InsufficientDataError(
            f"need at least {window + 1} steps for a window of {window}, have {len(steps)}"
        )
    tail = steps[-(window + 1):]
    if any(s == 0 for s in tail):
        return ContractionEstimate(0.0, window, True)
    L = max(_ratios(tail))
    return ContractionEstimate(L, window, L < 1)


def _tail_estimate(steps, window) -> ContractionEstimate:
    # estimate_contraction, shortened to whatever the trace holds
    w = min(window, len(steps) - 1)
    if w >= 1:
        return estimate_contraction(IterationTrace((), tuple(steps)), w)
    if steps and steps[-1] == 0:
        return ContractionEstimate(0.0, 0, True)
    return ContractionEstimate(math.inf, 0, False)


def apriori_bound(L: float, dist0: float, k: int, alpha: float = 1.0) -> float:
    """L**k * rho(x*, x_0): distance bound before running any iteration."""
    if not 0 <= L < 1:
        raise BoundUnavailableError(f"a priori bound needs 0 <= L < 1, got {L}")
    if dist0 < 0 or k < 0:
        raise ValueError("dist0 and k must be non-negative")
    if k == 0:
        return dist0
    return L**k * dist0


def aposteriori_bound(L_hat: float, last_step: float) -> float:
    """Geometric tail sum last_step / (1 - L_hat); +inf when L_hat >= 1."""
    if last_step < 0:
        raise ValueError("last_step must be non-negative")
    if not L_hat < 1:
        return math.inf
    return last_step / (1.0 - L_hat)


def _persistently_expanding(steps, window) -> bool:
    n = 3 * window
    if len(steps) < n + 1:
        return False
    return all(r >= 1 for r in _ratios(steps[-(n + 1):]))


def _iterate(update, x0, settings, residual):
    alpha = settings.alpha
    tol = settings.effective_tol
    iterates = [float(x0)]
    steps = []
    status = MAX_ITER
    x = float(x0)
    for _ in range(settings.max_iter):
        try:
            x_new = float(update(x))
        except DerivativeVanishesError:
            raise
        except (ArithmeticError, ValueError):
            status = DIVERGED
            break
        if not math.isfinite(x_new):
            status = DIVERGED
            break
        step = snowflake_distance(x_new, x, alpha)
        iterates.append(x_new)
        steps.append(step)
        x = x_new
        if not math.isfinite(step):
            status = DIVERGED
            break
        if step <= tol:
            status = CONVERGED
            break
        if _persistently_expanding(steps, settings.contraction_window):
            status = NON_CONTRACTIVE
            break
    contraction = _tail_estimate(steps, settings.contraction_window)
    last = steps[-1] if steps else 0.0
    post = aposteriori_bound(contraction.L_hat, last)
    try:
        res = float(residual(x))
    except (ArithmeticError, ValueError):
        res = math.inf
    return ConvergenceReport(
        status=status,
        root=x,
        trace=IterationTrace(tuple(iterates), tuple(steps), alpha),
        contraction=contraction,
        a_posteriori=post,
        residual=res if math.isfinite(res) else math.inf,
    )


def fixed_point_solve(
    phi: Callable[[float], float], x0: float, settings: Optional[IterationSettings] = None
) -> ConvergenceReport:
    """Iterate x_{k+1} = phi(x_k) until the fractal step drops below tol."""
    settings = settings or IterationSettings()
    alpha = settings.alpha
    return _iterate(phi, x0, settings, lambda r: snowflake_distance(phi(r), r, alpha))


def _derivative_of(f, derivative):
    if derivative is not None:
        return derivative
    s = series_form(f)
    if s is not None:
        return series_lfd(s)
    d = getattr(f, "derivative", None)
    if d is not None:
        return d
    raise ConfigurationError(
        "newton_solve needs a series form or an explicit local fractional derivative"
    )


def newton_solve(
    f: Callable[[float], float],
    x0: float,
    settings: Optional[IterationSettings] = None,
    variant: str = "base_coordinate",
    derivative: Optional[Callable[[float], float]] = None,
) -> ConvergenceReport:
    """Newton-type root finder from the first-order fractional Taylor truncation.

    Solving 0 = f(x_k) + f^(a)(x_k) / Gamma(1+a) * (x - x_k)^a for x gives the
    fractal step s_k = -Gamma(1+a) f(x_k) / f^(a)(x_k), applied either to the
    base coordinate (x += spow(s, 1/a)) or to u = spow(x, a) (u += s).  Both
    are classical Newton at a = 1.
    """
    settings = settings or IterationSettings()
    if variant in ("base", "base_coordinate"):
        fractal = False
    elif variant in ("fractal", "fractal_coordinate"):
        fractal = True
    else:
        raise ConfigurationError(f"unknown Newton variant {variant!r}")
    df = _derivative_of(f, derivative)
    alpha = settings.alpha
    g = gamma(1.0 + alpha)
    inv = 1.0 / alpha

    def update(x):
        d = df(x)
        if d == 0:
            raise DerivativeVanishesError(f"derivative vanishes at x = {x!r}", iterate=x)
        s = -g * f(x) / d
        if fractal:
            return spow(spow(x, alpha) + s, inv)
        return x + spow(s, inv)

    return _iterate(update, x0, settings, lambda r: abs(f(r)))


def contraction_certificate(phi: FractalPowerSeries, a: float, b: float, grid: int = 101):
    """Sample |D^a phi| / Gamma(1+a) on a uniform grid over [a, b].

    Returns ``(L, certified)`` with ``certified`` meaning L < 1 on the
    sampled points only; this is evidence, not a proof.
    """
    if not a < b:
        raise ValueError("need a < b")
    if grid < 2:
        raise ValueError("grid must have at least 2 points")
    d = series_lfd(phi)
    g = gamma(1.0 + phi.alpha)
    L = max(abs(series_eval(d, float(x))) for x in np.linspace(a, b, grid)) / g
    return L, L < 1
