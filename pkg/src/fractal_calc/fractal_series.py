"""Truncated generalized Taylor series in the basis (x - x0)^(k a) / Gamma(1 + k a).

Coefficients store the local fractional derivatives f^(k a)(x0) themselves,
so the derivative is a left shift and the integral (lower limit x0) is a
right shift with a zero constant.  Gamma factors are applied only at
evaluation time, through log-gamma once Gamma(1 + k a) leaves float range.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence

from .errors import OrderMismatchError, SeriesRangeError
from .fractal_number import check_order
from .numerics import gamma, log_gamma

__all__ = [
    "FractalPowerSeries",
    "RemainderBound",
    "SeriesEvaluation",
    "series_eval",
    "series_eval_detailed",
    "series_lfd",
    "series_integral",
    "series_add",
    "series_scale",
    "series_mul",
    "taylor_remainder",
    "mittag_leffler",
    "monomial_series",
]

# Gamma(171.6) overflows a double
_GAMMA_DIRECT_MAX = 170.0


@dataclass(frozen=True)
class FractalPowerSeries:
    alpha: float
    center: float
    coeffs: tuple

    def __post_init__(self):
        check_order(self.alpha)
        coeffs = tuple(float(c) for c in self.coeffs)
        if not coeffs:
            raise ValueError("a series needs at least one coefficient")
        if not all(math.isfinite(c) for c in coeffs):
            raise ValueError("series coefficients must be finite")
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "center", float(self.center))

    @property
    def truncation(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: float) -> float:
        return series_eval(self, x)

    @property
    def series(self) -> "FractalPowerSeries":
        return self

    def to_dict(self) -> dict:
        return {"alpha": self.alpha, "center": self.center, "coeffs": list(self.coeffs)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "FractalPowerSeries":
        return cls(d["alpha"], d["center"], tuple(d["coeffs"]))

    @classmethod
    def from_json(cls, text: str) -> "FractalPowerSeries":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class RemainderBound:
    derivative_bound: float
    order_index: int
    radius: float
    alpha: float

    def __post_init__(self):
        if self.derivative_bound < 0 or self.radius < 0:
            raise ValueError("derivative_bound and radius must be non-negative")
        if self.order_index < 0:
            raise ValueError("order_index must be non-negative")


@dataclass(frozen=True)
class SeriesEvaluation:
    value: float
    terms: tuple
    underflowed: tuple  # indices whose Gamma overflowed and whose term flushed to zero


def basis_gamma(k: int, alpha: float) -> float:
    """Gamma(1 + k alpha), or inf when it overflows."""
    z = 1.0 + k * alpha
    if z > _GAMMA_DIRECT_MAX:
        return math.inf
    return gamma(z)


def _term(c: float, d: float, k: int, alpha: float):
    """c * spow(d, k alpha) / Gamma(1 + k alpha); second item flags a flush to zero."""
    if k == 0:
        return c, False
    if c == 0.0 or d == 0.0:
        return 0.0, False
    ka = k * alpha
    g = basis_gamma(k, alpha)
    if math.isfinite(g):
        try:
            p = abs(d) ** ka
        except OverflowError:
            p = math.inf
        if math.isfinite(p):
            return math.copysign(c * p / g, c * d), False
    # log space
    logmag = math.log(abs(c)) + ka * math.log(abs(d)) - log_gamma(1.0 + ka)
    if logmag > 709.0:
        raise SeriesRangeError(f"series term {k} overflows", index=k)
    t = math.exp(logmag)
    return math.copysign(t, c * d), t == 0.0


def series_eval_detailed(s: FractalPowerSeries, x: float) -> SeriesEvaluation:
    d = float(x) - s.center
    terms, flushed = [], []
    for k, c in enumerate(s.coeffs):
        t, flag = _term(c, d, k, s.alpha)
        if not math.isfinite(t):
            raise SeriesRangeError(f"series term {k} is not finite", index=k)
        terms.append(t)
        if flag:
            flushed.append(k)
    # smallest magnitude first; fsum is exactly rounded regardless
    ordered = sorted(terms, key=abs)
    return SeriesEvaluation(math.fsum(ordered), tuple(terms), tuple(flushed))


def series_eval(s: FractalPowerSeries, x: float) -> float:
    """Sum c_k spow(x - x0, k a) / Gamma(1 + k a) over the retained terms."""
    return series_eval_detailed(s, x).value


def series_lfd(s: FractalPowerSeries) -> FractalPowerSeries:
    """Local fractional derivative: drop c_0 and shift left."""
    coeffs = s.coeffs[1:] or (0.0,)
    return FractalPowerSeries(s.alpha, s.center, coeffs)


def series_integral(s: FractalPowerSeries) -> FractalPowerSeries:
    """Local fractional integral from the center: prepend a zero."""
    return FractalPowerSeries(s.alpha, s.center, (0.0,) + s.coeffs)


def _compatible(s: FractalPowerSeries, t: FractalPowerSeries):
    if s.alpha != t.alpha:
        raise OrderMismatchError(f"order mismatch: {s.alpha} vs {t.alpha}")
    if s.center != t.center:
        raise OrderMismatchError(f"center mismatch: {s.center} vs {t.center}")


def series_add(s: FractalPowerSeries, t: FractalPowerSeries) -> FractalPowerSeries:
    """Coefficient-wise sum, truncated to the shorter operand."""
    _compatible(s, t)
    n = min(len(s.coeffs), len(t.coeffs))
    return FractalPowerSeries(s.alpha, s.center, tuple(a + b for a, b in zip(s.coeffs[:n], t.coeffs[:n])))


def series_scale(s: FractalPowerSeries, lam: float) -> FractalPowerSeries:
    return FractalPowerSeries(s.alpha, s.center, tuple(lam * c for c in s.coeffs))


def _log_gamma_basis(k: int, alpha: float) -> float:
    return log_gamma(1.0 + k * alpha)


def series_mul(s: FractalPowerSeries, t: FractalPowerSeries) -> FractalPowerSeries:
    """Cauchy product in the monomial basis (x - x0)^(k a).

    With a_k = c_k / Gamma(1 + k a) the product has normalized coefficients
    p_m = sum_{i+j=m} a_i b_j, returned as p_m Gamma(1 + m a).
    """
    _compatible(s, t)
    alpha = s.alpha
    m_max = s.truncation + t.truncation
    direct = 1.0 + m_max * alpha <= _GAMMA_DIRECT_MAX
    out = []
    for m in range(m_max + 1):
        acc = []
        for i in range(max(0, m - t.truncation), min(m, s.truncation) + 1):
            j = m - i
            ci, cj = s.coeffs[i], t.coeffs[j]
            if ci == 0.0 or cj == 0.0:
                continue
            if direct:
                w = basis_gamma(m, alpha) / (basis_gamma(i, alpha) * basis_gamma(j, alpha))
            else:
                w = math.exp(
                    _log_gamma_basis(m, alpha) - _log_gamma_basis(i, alpha) - _log_gamma_basis(j, alpha)
                )
            acc.append(ci * cj * w)
        out.append(math.fsum(acc))
    return FractalPowerSeries(alpha, s.center, tuple(out))


def taylor_remainder(b: RemainderBound) -> float:
    """M * radius^((n+1) a) / Gamma(1 + (n+1) a)."""
    if b.derivative_bound == 0 or b.radius == 0:
        return 0.0
    ka = b.order_index * b.alpha
    logv = math.log(b.derivative_bound) + ka * math.log(b.radius) - log_gamma(1.0 + ka)
    if logv > 709.0:
        return math.inf
    g = basis_gamma(b.order_index, b.alpha)
    if math.isfinite(g):
        try:
            return b.derivative_bound * b.radius**ka / g
        except OverflowError:
            pass
    return math.exp(logv)


def mittag_leffler(alpha: float, K: int) -> FractalPowerSeries:
    """E_alpha(x^alpha) truncated at index K: all coefficients equal to one."""
    if K < 0:
        raise ValueError("K must be >= 0")
    return FractalPowerSeries(alpha, 0.0, (1.0,) * (K + 1))


def monomial_series(k: int, alpha: float, center: float = 0.0) -> FractalPowerSeries:
    """Basis element e_k = (x - center)^(k a) / Gamma(1 + k a)."""
    coeffs = [0.0] * (k + 1)
    coeffs[k] = 1.0
    return FractalPowerSeries(alpha, center, tuple(coeffs))


def series_from_coeffs(coeffs: Sequence[float], alpha: float, center: float = 0.0) -> FractalPowerSeries:
    return FractalPowerSeries(alpha, center, tuple(coeffs))
