import math

import pytest

from fractal_calc import gamma, holder_fit, series_eval
from fractal_calc.errors import BracketingError, CatalogError, DomainError
from fractal_calc.testlib import (
    TestFunction,
    affine_fractal,
    brute_force_root,
    catalog,
    catalog_json,
    monomial,
    monomial_minus_one,
    verify,
    weierstrass,
    weierstrass_eval,
)


@pytest.mark.parametrize("alpha", [0.3, 0.5, 0.9, 1.0])
def test_catalog_contents(alpha):
    names = {tf.name for tf in catalog(alpha)}
    for k in range(9):
        assert f"monomial:{k}" in names
    for n in ("mittag-leffler", "affine:1:0.5", "weierstrass:0.5:3", "exp", "cos", "sq-minus-2", "identity"):
        assert n in names


def test_catalog_examples():
    assert affine_fractal(1, 0.5, 0.5).known_fixed_point == pytest.approx(1.6403882, abs=1e-7)
    f = monomial_minus_one(2, 0.5)
    assert f.known_root == pytest.approx(1.0, abs=1e-15)
    assert brute_force_root(f.callable, 0.5, 2.0, 1e-13) == pytest.approx(1.0, abs=1e-12)
    sq = {tf.name: tf for tf in catalog(1.0)}["sq-minus-2"]
    assert sq.known_root == pytest.approx(1.4142136, abs=1e-7)


def test_known_roots_match_bisection():
    for tf in catalog(0.5):
        if tf.known_root and tf.name.startswith("monomial-minus-one"):
            oracle = brute_force_root(tf.callable, 0.1, 10.0, 1e-13)
            assert tf.known_root == pytest.approx(oracle, abs=1e-11)


def test_series_forms_agree_with_callables():
    for alpha in (0.3, 0.5, 1.0):
        for tf in catalog(alpha):
            if tf.series_form is None or tf.name == "mittag-leffler":
                continue
            for x in (-1.3, 0.0, 0.4, 1.7):
                assert series_eval(tf.series_form, x) == pytest.approx(tf.callable(x), rel=1e-13, abs=1e-15)


def test_monomial_holder_metadata():
    tf = monomial(3, 0.3)
    assert tf.known_holder_exponent == pytest.approx(0.9)
    assert holder_fit(tf.callable, 0.0).exponent == pytest.approx(0.9, abs=1e-6)
    assert monomial(4, 0.5).known_holder_exponent is None


def test_weierstrass_examples():
    for a, b, K in [(0.5, 3, 5), (0.7, 2, 12)]:
        assert weierstrass_eval(a, b, K, 0.0) == pytest.approx((1 - a ** (K + 1)) / (1 - a), rel=1e-15)
    direct = 0.0
    for k in range(31):
        direct += 0.5**k * math.cos(3**k * math.pi * 0.37)
    assert weierstrass_eval(0.5, 3, 30, 0.37) == direct
    assert weierstrass_eval(0.5, 3, 0, 0.21) == math.cos(math.pi * 0.21)


@pytest.mark.parametrize("x", [-0.9, 0.0, 0.123, 0.37, 1.5])
def test_weierstrass_two_periodic(x):
    assert weierstrass_eval(0.5, 3, 30, x + 2) == pytest.approx(weierstrass_eval(0.5, 3, 30, x), abs=1e-9)


@pytest.mark.parametrize("bad", [(1.0, 3.0), (0.5, 1.0), (0.2, 3.0)])
def test_weierstrass_domain(bad):
    with pytest.raises(DomainError):
        weierstrass_eval(*bad, 10, 0.0)


def test_brute_force_root_examples():
    assert brute_force_root(lambda x: x - 1, 0, 2, 1e-12) == pytest.approx(1.0, abs=1e-12)
    assert brute_force_root(lambda x: math.cos(x) - x, 0, 1, 1e-10) == pytest.approx(0.739085133, abs=1e-8)
    assert brute_force_root(lambda x: x * x - 2, 1, 2, 1e-10) == pytest.approx(1.41421356, abs=1e-8)
    with pytest.raises(BracketingError):
        brute_force_root(lambda x: x * x + 1, -1, 1, 1e-8)


def test_verify_rejects_bad_metadata():
    with pytest.raises(CatalogError):
        verify(TestFunction("bad-root", lambda x: x - 1, known_root=1.1))
    with pytest.raises(CatalogError):
        verify(TestFunction("bad-fp", math.cos, known_fixed_point=0.7))
    with pytest.raises(CatalogError):
        verify(TestFunction("bad-h", lambda x: x, known_holder_exponent=0.5, holder_point=0.3))


def test_catalog_json():
    entries = catalog_json(0.5)
    ml = next(e for e in entries if e["name"] == "mittag-leffler")
    assert ml["series"]["coeffs"][:3] == [1.0, 1.0, 1.0]
    w = next(e for e in entries if e["name"] == "weierstrass:0.5:3")
    assert w["known_holder_exponent"] == pytest.approx(math.log(2) / math.log(3))
