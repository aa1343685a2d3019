"""Test functions with closed-form metadata, plus brute-force oracles.

Every metadatum a :class:`TestFunction` carries (root, fixed point, Hölder
exponent) is re-checked against an independent oracle when the catalog is
built, so downstream tests never lean on hand-typed constants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

from scipy import optimize

from .errors import BracketingError, CatalogError, DomainError
from .fractal_number import check_order, spow
from .fractal_series import FractalPowerSeries, mittag_leffler, monomial_series
from .numerics import StepSchedule, gamma, holder_fit

__all__ = [
    "TestFunction",
    "catalog",
    "catalog_json",
    "weierstrass_eval",
    "brute_force_root",
    "monomial",
    "monomial_minus_one",
    "mittag_leffler_function",
    "affine_fractal",
    "affine_fixed_point",
    "weierstrass",
    "classical",
    "identity",
]

# Mittag-Leffler catalog entries keep this many terms; far past double
# precision for |x| <= 2.
ML_TERMS = 96


@dataclass(frozen=True)
class TestFunction:
    __test__ = False  # keep pytest from collecting this class

    name: str
    callable: Callable[[float], float]
    series_form: Optional[FractalPowerSeries] = None
    derivative: Optional[Callable[[float], float]] = None
    known_root: Optional[float] = None
    known_fixed_point: Optional[float] = None
    known_holder_exponent: Optional[float] = None
    holder_point: float = 0.0
    valid_alpha: frozenset = field(default_factory=frozenset)

    def __call__(self, x: float) -> float:
        return self.callable(x)

    @property
    def series(self):
        return self.series_form

    def to_dict(self) -> dict:
        d = {
            "name": self.name,
            "valid_alpha": sorted(self.valid_alpha),
            "known_root": self.known_root,
            "known_fixed_point": self.known_fixed_point,
            "known_holder_exponent": self.known_holder_exponent,
        }
        if self.known_holder_exponent is not None:
            d["holder_point"] = self.holder_point
        if self.series_form is not None:
            d["series"] = self.series_form.to_dict()
        return d


def weierstrass_eval(a: float, b: float, K: int, x: float) -> float:
    """sum_{k=0}^{K} a^k cos(b^k pi x), summed in increasing k.

    Hölder exponent -ln(a)/ln(b) when 0 < a < 1 < b and ab > 1.
    """
    if not (0 < a < 1 and b > 1 and a * b > 1):
        raise DomainError(f"need 0 < a < 1 < b with ab > 1, got a={a}, b={b}")
    if K < 0:
        raise DomainError("K must be >= 0")
    total = 0.0
    for k in range(K + 1):
        total += a**k * math.cos(b**k * math.pi * x)
    return total


def brute_force_root(f: Callable[[float], float], a: float, b: float, tol: float = 1e-12) -> float:
    """Bisection to an interval width <= tol."""
    if not tol > 0:
        raise ValueError("tol must be positive")
    fa, fb = f(a), f(b)
    if fa == 0:
        return a
    if fb == 0:
        return b
    if fa * fb > 0:
        raise BracketingError(f"no sign change on [{a}, {b}]")
    return optimize.bisect(f, a, b, xtol=tol, rtol=4 * math.ulp(1.0), maxiter=2000)


def monomial(k: int, alpha: float) -> TestFunction:
    """spow(x, k a) / Gamma(1 + k a), the k-th basis element."""
    alpha = check_order(alpha)
    g = gamma(1.0 + k * alpha)
    s = monomial_series(k, alpha)
    if k == 0:
        fn = lambda x: 1.0  # noqa: E731
    else:
        fn = lambda x: spow(x, k * alpha) / g  # noqa: E731
    return TestFunction(
        name=f"monomial:{k}",
        callable=fn,
        series_form=s,
        known_root=0.0 if k > 0 else None,
        known_holder_exponent=k * alpha if 0 < k * alpha <= 1 else None,
        holder_point=0.0,
        valid_alpha=frozenset({alpha}),
    )


def monomial_minus_one(k: int, alpha: float) -> TestFunction:
    """monomial(k, a) - 1, positive root Gamma(1 + k a)^(1/(k a))."""
    alpha = check_order(alpha)
    if k < 1:
        raise DomainError("k must be >= 1")
    ka = k * alpha
    g = gamma(1.0 + ka)
    coeffs = [0.0] * (k + 1)
    coeffs[0], coeffs[k] = -1.0, 1.0
    return TestFunction(
        name=f"monomial-minus-one:{k}",
        callable=lambda x: spow(x, ka) / g - 1.0,
        series_form=FractalPowerSeries(alpha, 0.0, tuple(coeffs)),
        known_root=g ** (1.0 / ka),
        valid_alpha=frozenset({alpha}),
    )


def mittag_leffler_function(alpha: float) -> TestFunction:
    s = mittag_leffler(alpha, ML_TERMS)
    return TestFunction(
        name="mittag-leffler",
        callable=s,
        series_form=s,
        valid_alpha=frozenset({check_order(alpha)}),
    )


def affine_fixed_point(c: float, b: float, alpha: float) -> float:
    """Closed-form fixed point of x -> c + b spow(x, a) for a in {1/2, 1}."""
    if alpha == 1.0:
        if b == 1.0:
            raise DomainError("b = 1 at alpha = 1 has no unique fixed point")
        return c / (1.0 - b)
    if alpha == 0.5:
        # s = sqrt(x) solves s^2 - b s - c = 0
        disc = b * b + 4.0 * c
        if disc < 0:
            raise DomainError("no real fixed point")
        s = (b + math.sqrt(disc)) / 2.0
        return s * s
    raise DomainError("closed form only for alpha in {0.5, 1}")


def affine_fractal(c: float, b: float, alpha: float) -> TestFunction:
    """x -> c + b spow(x, a), as a series centered at 0."""
    alpha = check_order(alpha)
    try:
        fp = affine_fixed_point(c, b, alpha)
    except DomainError:
        fp = None
    return TestFunction(
        name=f"affine:{c:g}:{b:g}",
        callable=lambda x: c + b * spow(x, alpha),
        series_form=FractalPowerSeries(alpha, 0.0, (c, b * gamma(1.0 + alpha))),
        known_fixed_point=fp,
        valid_alpha=frozenset({alpha}),
    )


def weierstrass(a: float = 0.5, b: float = 3.0, K: int = 30) -> TestFunction:
    weierstrass_eval(a, b, K, 0.0)  # parameter check
    return TestFunction(
        name=f"weierstrass:{a:g}:{b:g}",
        callable=lambda x: weierstrass_eval(a, b, K, x),
        known_holder_exponent=-math.log(a) / math.log(b),
        holder_point=0.37,
    )


def identity() -> TestFunction:
    return TestFunction(
        name="identity",
        callable=lambda x: x,
        series_form=None,
        derivative=lambda x: 1.0,
        valid_alpha=frozenset({1.0}),
    )


def classical() -> list:
    """exp, cos, x^2 - 2: ordinary functions, metadata valid at alpha = 1."""
    one = frozenset({1.0})
    return [
        TestFunction("exp", math.exp, derivative=math.exp, valid_alpha=one),
        TestFunction(
            "cos",
            math.cos,
            derivative=lambda x: -math.sin(x),
            known_fixed_point=brute_force_root(lambda x: math.cos(x) - x, 0.0, 1.0, 1e-15),
            valid_alpha=one,
        ),
        TestFunction(
            "sq-minus-2",
            lambda x: x * x - 2.0,
            derivative=lambda x: 2.0 * x,
            known_root=math.sqrt(2.0),
            valid_alpha=one,
        ),
    ]


def verify(tf: TestFunction) -> None:
    """Check every metadatum on ``tf`` against its oracle."""
    if tf.known_root is not None:
        r = abs(tf(tf.known_root))
        if not r < 1e-10:
            raise CatalogError(f"{tf.name}: |f(root)| = {r:g}")
    if tf.known_fixed_point is not None:
        p = tf.known_fixed_point
        r = abs(tf(p) - p)
        if not r < 1e-10:
            raise CatalogError(f"{tf.name}: |phi(p) - p| = {r:g}")
    if tf.known_holder_exponent is not None:
        fit = holder_fit(tf.callable, tf.holder_point, StepSchedule())
        if abs(fit.exponent - tf.known_holder_exponent) > 0.1:
            raise CatalogError(
                f"{tf.name}: fitted exponent {fit.exponent:.4f} vs {tf.known_holder_exponent:.4f}"
            )


def catalog(alpha: float = 0.5) -> list:
    """Every catalog function at fractal order ``alpha``, self-verified."""
    alpha = check_order(alpha)
    entries = [monomial(k, alpha) for k in range(9)]
    entries += [monomial_minus_one(k, alpha) for k in range(1, 9)]
    entries.append(mittag_leffler_function(alpha))
    entries.append(affine_fractal(1.0, 0.5, alpha))
    entries.append(weierstrass(0.5, 3.0, 30))
    entries.append(identity())
    entries += classical()
    for tf in entries:
        verify(tf)
    return entries


def catalog_json(alpha: float = 0.5) -> list:
    return [tf.to_dict() for tf in catalog(alpha)]
