"""Expression parsing, evaluation, differentiation and integration."""

import math

import numpy as np
import pytest

from varlagr import expr as ex
from varlagr.errors import DomainError, ExprSyntaxError, UnboundNameError


def test_parse_and_eval_basic():
    e = ex.parse_expr("1/2*x^2")
    assert ex.eval_expr(e, 3.0) == pytest.approx(4.5)
    e = ex.parse_expr("-x")
    assert ex.eval_expr(e, 2.0) == -2.0


def test_parse_with_parameters():
    e = ex.parse_expr("b*(1+g*mu^2/x^2)", {"b": 1.0, "g": -1.0, "mu": 2.0})
    assert ex.eval_expr(e, 2.0) == pytest.approx(0.0, abs=1e-15)


def test_power_binds_tighter_than_unary_minus():
    e = ex.parse_expr("-x^2")
    assert ex.eval_expr(e, 3.0) == -9.0


def test_unbound_name_reports_offset():
    with pytest.raises(UnboundNameError) as err:
        ex.parse_expr("x + qq", {})
    assert err.value.offset == 4


def test_syntax_error_reports_offset():
    with pytest.raises(ExprSyntaxError):
        ex.parse_expr("1/(")
    with pytest.raises(ExprSyntaxError):
        ex.parse_expr("x +")


def test_eval_is_total_on_division_by_zero():
    e = ex.parse_expr("1/x")
    with pytest.raises(DomainError):
        ex.eval_expr(e, 0.0)


def test_log_and_sqrt_domains():
    with pytest.raises(DomainError):
        ex.eval_expr(ex.parse_expr("ln(x)"), -1.0)
    with pytest.raises(DomainError):
        ex.eval_expr(ex.parse_expr("sqrt(x)"), -4.0)


def test_diff_matches_finite_differences():
    rng = np.random.default_rng(7)
    sources = ["x^3 - 2*x", "1/(1+x^2)", "exp(-x^2/2)", "sin(x)*cos(x)",
               "ln(1+x^2)", "sqrt(1+x^2)"]
    for src in sources:
        e = ex.parse_expr(src)
        de = ex.diff(e)
        for x in rng.uniform(-2.0, 2.0, 5):
            h = 1e-6
            fd = (ex.eval_expr(e, x + h) - ex.eval_expr(e, x - h)) / (2 * h)
            assert ex.eval_expr(de, x) == pytest.approx(fd, rel=1e-7, abs=1e-8)


def test_text_round_trip():
    for src in ["-2*x/(1-x^2)", "1/(8*x)", "exp(-x^2/2)", "x^2 + sin(x)"]:
        e = ex.parse_expr(src)
        again = ex.parse_expr(ex.to_text(e))
        for x in (0.3, 0.7):
            assert ex.eval_expr(e, x) == pytest.approx(
                ex.eval_expr(again, x), rel=1e-14)


def test_integral_fast_paths():
    assert ex.integral_of_B(ex.parse_expr("0"), 0.0, 5.0) == 0.0
    assert ex.integral_of_B(ex.parse_expr("2"), 1.0, 3.0) == pytest.approx(4.0)
    assert ex.integral_of_B(ex.parse_expr("1/x"), 1.0, math.e) == \
        pytest.approx(1.0, rel=1e-12)
    assert ex.integral_of_B(ex.parse_expr("-x"), 0.0, 2.0) == \
        pytest.approx(-2.0, rel=1e-12)


def test_integral_legendre_weight():
    e = ex.parse_expr("-2*x/(1-x^2)")
    got = ex.integral_of_B(e, 0.0, 0.5)
    assert got == pytest.approx(math.log(0.75), rel=1e-12)


def test_integral_generic_quadrature():
    e = ex.parse_expr("sin(x)")
    got = ex.integral_of_B(e, 0.0, 1.5)
    assert got == pytest.approx(1.0 - math.cos(1.5), rel=1e-10)


def test_integral_additivity():
    e = ex.parse_expr("1/(8*x)")
    ab = ex.integral_of_B(e, 0.5, 2.0)
    bc = ex.integral_of_B(e, 2.0, 3.5)
    ac = ex.integral_of_B(e, 0.5, 3.5)
    assert ab + bc == pytest.approx(ac, rel=1e-12)


def test_integral_refuses_interior_singularity():
    e = ex.parse_expr("1/x")
    with pytest.raises(DomainError):
        ex.integral_of_B(e, -1.0, 1.0)
