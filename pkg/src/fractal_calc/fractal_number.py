"""Fractal numbers x^alpha on the real line and the alpha-snowflake metrics.

A fractal number is stored by its base ``x``; the order ``alpha`` only
matters when projecting to a real value or measuring distances.  Because
the arithmetic acts on bases, the operator laws

    a^a + b^a = (a + b)^a,   a^a b^a = (ab)^a,   ...

hold exactly whenever the underlying base arithmetic is exact (integers,
dyadic floats, :class:`fractions.Fraction`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import OrderMismatchError

__all__ = [
    "check_order",
    "spow",
    "FractalNumber",
    "FractalPoint",
    "fn_add",
    "fn_sub",
    "fn_mul",
    "fn_value",
    "fn_metric",
    "fn_metric_n",
]


def check_order(alpha: float) -> float:
    """Validate a fractal order, returning it as a float."""
    alpha = float(alpha)
    if not (0.0 < alpha <= 1.0):
        raise ValueError(f"fractal order must lie in (0, 1], got {alpha}")
    return alpha


def spow(x, alpha):
    """Signed power sign(x)*|x|**alpha.

    Exact identity at ``alpha == 1``; odd in ``x``.
    """
    if alpha == 1:
        return x
    return math.copysign(abs(x) ** alpha, x)


@dataclass(frozen=True)
class FractalNumber:
    base: float
    alpha: float = 1.0

    def __post_init__(self):
        check_order(self.alpha)

    @property
    def value(self) -> float:
        return fn_value(self)

    def __add__(self, other):
        return fn_add(self, other)

    def __sub__(self, other):
        return fn_sub(self, other)

    def __mul__(self, other):
        return fn_mul(self, other)

    def __neg__(self):
        return FractalNumber(-self.base, self.alpha)


@dataclass(frozen=True)
class FractalPoint:
    bases: tuple
    alpha: float = 1.0

    def __post_init__(self):
        check_order(self.alpha)
        object.__setattr__(self, "bases", tuple(self.bases))
        if len(self.bases) < 1:
            raise ValueError("a fractal point needs at least one coordinate")

    @property
    def dim(self) -> int:
        return len(self.bases)


def _same_order(a, b):
    # exact comparison: the order is configuration, not a measurement
    if a.alpha != b.alpha:
        raise OrderMismatchError(f"order mismatch: {a.alpha} vs {b.alpha}")


def fn_add(a: FractalNumber, b: FractalNumber) -> FractalNumber:
    _same_order(a, b)
    return FractalNumber(a.base + b.base, a.alpha)


def fn_sub(a: FractalNumber, b: FractalNumber) -> FractalNumber:
    _same_order(a, b)
    return FractalNumber(a.base - b.base, a.alpha)


def fn_mul(a: FractalNumber, b: FractalNumber) -> FractalNumber:
    _same_order(a, b)
    return FractalNumber(a.base * b.base, a.alpha)


def fn_value(a: FractalNumber) -> float:
    """Real magnitude of ``a``: sign(base)*|base|**alpha."""
    return float(spow(a.base, a.alpha))


def fn_metric(a: FractalNumber, b: FractalNumber) -> float:
    """Snowflake distance |a.base - b.base|**alpha."""
    _same_order(a, b)
    return float(abs(a.base - b.base) ** a.alpha)


def fn_metric_n(p: FractalPoint, q: FractalPoint) -> float:
    """(sum_i |p_i - q_i|**(2 alpha))**(1/2) on R_n^alpha."""
    _same_order(p, q)
    if p.dim != q.dim:
        raise OrderMismatchError(f"dimension mismatch: {p.dim} vs {q.dim}")
    two_alpha = 2.0 * p.alpha
    return math.sqrt(math.fsum(abs(x - y) ** two_alpha for x, y in zip(p.bases, q.bases)))


def snowflake_distance(x: float, y: float, alpha: float) -> float:
    """Plain-float shortcut for ``fn_metric`` used by the solver."""
    return abs(x - y) ** alpha


def metric_points(rows: Sequence[Sequence[float]], alpha: float) -> list:
    """Wrap raw coordinate rows as :class:`FractalPoint` objects."""
    return [FractalPoint(tuple(float(v) for v in row), alpha) for row in rows]
