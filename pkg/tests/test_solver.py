import math

import pytest

from fractal_calc import (
    ContractionEstimate,
    FractalPowerSeries,
    IterationSettings,
    IterationTrace,
    aposteriori_bound,
    apriori_bound,
    contraction_certificate,
    estimate_contraction,
    fixed_point_solve,
    newton_solve,
    spow,
)
from fractal_calc.errors import (
    BoundUnavailableError,
    ConfigurationError,
    DerivativeVanishesError,
    InsufficientDataError,
)
from fractal_calc.testlib import brute_force_root, monomial_minus_one

PI_4 = math.pi / 4  # Gamma(3/2)^2


def affine(x):
    return 1 + 0.5 * spow(x, 0.5)


# fixed point of the affine map from the quadratic s^2 - s/2 - 1 = 0, s = sqrt(x)
S_STAR = (0.5 + math.sqrt(4.25)) / 2
X_STAR = S_STAR**2


def test_oracles_agree():
    assert X_STAR == pytest.approx(1.6403882, abs=1e-7)
    assert brute_force_root(lambda x: affine(x) - x, 1.0, 2.0, 1e-14) == pytest.approx(X_STAR, abs=1e-13)


def test_fixed_point_affine():
    r = fixed_point_solve(affine, 2.0, IterationSettings(alpha=0.5, tol=1e-10))
    assert r.status == "converged"
    assert r.root == pytest.approx(X_STAR, abs=1e-8)
    assert r.iterations <= 60


def test_fixed_point_cos():
    oracle = brute_force_root(lambda x: math.cos(x) - x, 0.0, 1.0, 1e-14)
    r = fixed_point_solve(math.cos, 1.0, IterationSettings(alpha=1.0))
    assert r.converged
    assert r.root == pytest.approx(oracle, abs=1e-7)
    assert r.root == pytest.approx(0.7390851, abs=1e-7)


@pytest.mark.parametrize("alpha", [0.3, 0.5, 1.0])
def test_fixed_point_identity(alpha):
    r = fixed_point_solve(lambda x: x, 3.25, IterationSettings(alpha=alpha))
    assert r.converged and r.iterations == 1
    assert r.root == 3.25
    assert r.trace.fractal_steps == (0.0,)
    assert r.a_posteriori == 0.0


def test_fixed_point_alpha_one_is_classical():
    r = fixed_point_solve(math.cos, 1.0, IterationSettings(alpha=1.0, max_iter=500))
    x, seq = 1.0, [1.0]
    for _ in range(r.iterations):
        x = math.cos(x)
        seq.append(x)
    assert list(r.trace.iterates) == seq


def test_statuses():
    assert fixed_point_solve(lambda x: x * x, 10.0, IterationSettings(max_iter=100)).status == "diverged"
    nc = fixed_point_solve(lambda x: 2 * x + 1, 0.0, IterationSettings(max_iter=100))
    assert nc.status == "non_contractive"
    assert nc.iterations == 16  # 3 * window ratios all >= 1
    assert math.isinf(nc.a_posteriori)
    mx = fixed_point_solve(math.cos, 1.0, IterationSettings(max_iter=5, contraction_window=2))
    assert mx.status == "max_iter_exceeded"
    assert fixed_point_solve(lambda x: math.nan, 1.0).status == "diverged"


def test_settings_validation():
    for kw in ({"max_iter": 0}, {"tol": 0.0}, {"contraction_window": 1},
               {"max_iter": 3, "contraction_window": 4}, {"alpha": 1.2}):
        with pytest.raises(ConfigurationError):
            IterationSettings(**kw)
    assert IterationSettings(alpha=0.5).effective_tol == pytest.approx(1e-5)


# -- contraction estimates and bounds --------------------------------------

def test_estimate_contraction_examples():
    geo = IterationTrace((), (1.0, 0.25, 0.0625))
    assert estimate_contraction(geo, 2) == ContractionEstimate(0.25, 2, True)
    flat = estimate_contraction(IterationTrace((), (0.5,) * 6), 5)
    assert flat.L_hat == 1.0 and not flat.uniform
    zero = estimate_contraction(IterationTrace((), (1.0, 0.1, 0.0)), 2)
    assert zero.L_hat == 0.0
    with pytest.raises(InsufficientDataError):
        estimate_contraction(IterationTrace((), (1.0, 0.5)), 2)


def test_estimate_contraction_affine_tail():
    expected = (0.25 / S_STAR) ** 0.5  # (phi'(x*))^alpha
    r = fixed_point_solve(affine, 2.0, IterationSettings(alpha=0.5, tol=1e-6))
    est = estimate_contraction(r.trace, 5)
    assert est.L_hat == pytest.approx(0.4417, abs=0.02)
    assert est.L_hat == pytest.approx(expected, abs=0.02)
    assert est.uniform


def test_apriori_examples():
    assert apriori_bound(0.5, 1.3, 0) == 1.3
    dist0 = X_STAR**0.5
    assert apriori_bound(0.5, dist0, 3, 0.5) == pytest.approx(0.1600971, abs=1e-7)
    assert apriori_bound(0.0, 2.0, 4) == 0.0
    with pytest.raises(BoundUnavailableError):
        apriori_bound(1.0, 1.0, 2)


def test_aposteriori_examples():
    assert aposteriori_bound(0.0, 0.37) == 0.37
    assert aposteriori_bound(0.5, 0.01) == 0.02
    assert math.isinf(aposteriori_bound(1.0, 0.01))


@pytest.mark.parametrize("alpha,phi,x_star", [
    (0.5, affine, X_STAR),
    (1.0, lambda x: 1 + 0.5 * x, 2.0),
    (1.0, math.cos, None),
])
def test_aposteriori_dominates_oracle(alpha, phi, x_star):
    if x_star is None:
        x_star = brute_force_root(lambda x: phi(x) - x, 0.0, 1.0, 1e-15)
    settings = IterationSettings(alpha=alpha)
    r = fixed_point_solve(phi, 2.0 if alpha == 0.5 else 0.0, settings)
    assert r.converged and r.contraction.uniform
    steps, xs = r.trace.fractal_steps, r.trace.iterates
    for k in range(settings.contraction_window, len(steps)):
        true = abs(x_star - xs[k]) ** alpha
        assert aposteriori_bound(r.contraction.L_hat, steps[k]) >= true


def test_apriori_dominates_with_certificate():
    phi_series = FractalPowerSeries(0.5, 0.0, (1.0, 0.5 * math.gamma(1.5)))
    L, ok = contraction_certificate(phi_series, 1.5, 2.0, 51)
    assert ok and L == pytest.approx(0.5, abs=1e-15)
    r = fixed_point_solve(affine, 2.0, IterationSettings(alpha=0.5, tol=1e-10))
    assert all(1.5 <= x <= 2.0 for x in r.trace.iterates)
    dist0 = abs(X_STAR - 2.0) ** 0.5
    for k, x in enumerate(r.trace.iterates):
        assert apriori_bound(L, dist0, k, 0.5) >= abs(X_STAR - x) ** 0.5


def test_uniform_contraction_residual():
    for tol in (1e-3, 1e-5, 1e-8):
        r = fixed_point_solve(affine, 2.0, IterationSettings(alpha=0.5, tol=tol))
        assert r.converged and r.contraction.uniform
        assert r.residual <= 2 * tol


def test_certificate_examples():
    L, ok = contraction_certificate(FractalPowerSeries(0.5, 0, (1.0, 0.5 * math.gamma(1.5))), 0.0, 10.0, 11)
    assert (L, ok) == (pytest.approx(0.5, abs=1e-15), True)
    L, ok = contraction_certificate(FractalPowerSeries(1.0, 3.0, (3.0, 1.0)), 2.0, 4.0, 5)
    assert L == 1.0 and not ok
    L, ok = contraction_certificate(FractalPowerSeries(0.7, 0, (0.0,)), -1.0, 1.0, 5)
    assert L == 0.0 and ok
    with pytest.raises(ValueError):
        contraction_certificate(FractalPowerSeries(0.7, 0, (0.0,)), 1.0, 1.0, 5)


# -- Newton ----------------------------------------------------------------

NEWTON_SERIES = FractalPowerSeries(0.5, 0.0, (-1.0, 0.0, 1.0))  # x - 1 at alpha = 1/2


def test_newton_first_step_by_hand():
    s0 = -PI_4 * 3 / 2
    assert s0 == pytest.approx(-1.1780972, abs=1e-7)
    x1 = 4 - s0**2
    r = newton_solve(NEWTON_SERIES, 4.0, IterationSettings(alpha=0.5, max_iter=2, contraction_window=2), "base_coordinate")
    assert r.trace.iterates[1] == pytest.approx(x1, abs=1e-14)
    assert r.trace.iterates[1] == pytest.approx(2.6120870, abs=1e-6)


def test_newton_base_converges_slowly_to_one():
    r = newton_solve(NEWTON_SERIES, 4.0, IterationSettings(alpha=0.5, max_iter=200_000), "base")
    assert r.converged
    assert r.root == pytest.approx(1.0, abs=1e-4)


def test_newton_fractal_matches_scalar_recurrence():
    u, us = 2.0, [2.0]
    for _ in range(200):
        u = u - PI_4 * (u * u - 1) / u
        us.append(u)
    assert us[-1] == pytest.approx(1.0, abs=1e-12)
    r = newton_solve(NEWTON_SERIES, 4.0, IterationSettings(alpha=0.5), "fractal_coordinate")
    assert r.converged
    assert r.root == pytest.approx(1.0, abs=1e-9)
    for x, u in zip(r.trace.iterates, us):
        assert math.sqrt(x) == pytest.approx(u, rel=1e-12)


def test_newton_classical_reduction():
    f, df = (lambda x: x * x - 2), (lambda x: 2 * x)
    seq, x = [1.0], 1.0
    for _ in range(8):
        x = x - f(x) / df(x)
        seq.append(x)
    runs = [newton_solve(f, 1.0, IterationSettings(alpha=1.0), v, derivative=df) for v in ("base", "fractal")]
    for r in runs:
        assert r.converged and r.iterations <= 8
        assert r.root == pytest.approx(math.sqrt(2), abs=1e-10)
        for a, b in zip(r.trace.iterates, seq):
            assert a == pytest.approx(b, abs=1e-14)
    assert runs[0].trace.iterates == runs[1].trace.iterates


@pytest.mark.parametrize("k", [1, 2])
def test_variant_agreement_on_monomials(k):
    f = monomial_minus_one(k, 0.5)
    settings = IterationSettings(alpha=0.5, max_iter=250_000)
    tol = settings.effective_tol
    rb = newton_solve(f.series_form, 2.0, settings, "base")
    rf = newton_solve(f.series_form, 2.0, settings, "fractal")
    assert rb.converged and rf.converged
    assert abs(rb.root - rf.root) <= 10 * tol
    assert rf.root == pytest.approx(f.known_root, abs=1e-9)


def test_newton_errors():
    with pytest.raises(DerivativeVanishesError) as info:
        newton_solve(lambda x: x * x - 2, 0.0, IterationSettings(), derivative=lambda x: 2 * x)
    assert info.value.iterate == 0.0
    with pytest.raises(ConfigurationError):
        newton_solve(lambda x: x, 1.0)
    with pytest.raises(ConfigurationError):
        newton_solve(NEWTON_SERIES, 1.0, variant="sideways")


def test_determinism():
    a = fixed_point_solve(affine, 2.0, IterationSettings(alpha=0.5))
    b = fixed_point_solve(affine, 2.0, IterationSettings(alpha=0.5))
    assert a == b
    assert a.to_dict() == b.to_dict()


def test_report_dict_schema():
    d = fixed_point_solve(affine, 2.0, IterationSettings(alpha=0.5)).to_dict()
    assert list(d) == ["status", "root", "residual", "iterations", "L_hat", "a_posteriori", "trace"]
    assert d["trace"][0] == {"k": 0, "x": 2.0, "step": None}
    assert len(d["trace"]) == d["iterations"] + 1
