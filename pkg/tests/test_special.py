"""Special-function evaluators against the independent ODE oracle."""

import math

import numpy as np
import pytest

import varlagr as vl
from varlagr import special as sp
from varlagr.errors import AccuracyError, DomainError
from varlagr.paths import TrialPath


def _ode_residual_scale(ode, path, x):
    r = vl.dhat_apply(ode, path, x)
    scale = 1.0 + abs(path.y(x)) + abs(path.dy(x)) + abs(path.d2y(x))
    return abs(r) / scale


# ---------------------------------------------------------------------------
# Airy

def test_airy_normalization_ratio():
    assert vl.airy_ai(0.0) / vl.airy_bi(0.0) == \
        pytest.approx(1.0 / math.sqrt(3.0), rel=1e-12)


def test_airy_ode_residual():
    ode = vl.make_airy()
    path = sp.airy_ai_path()
    assert _ode_residual_scale(ode, path, 1.0) < 1e-9


def test_airy_wronskian_times_pi():
    # B = 0, so the Wronskian y1'y2 - y1 y2' is constant; for (Ai, Bi) the
    # conventional W(Ai, Bi) = Ai Bi' - Ai' Bi = 1/pi, our operand order
    # flips the sign.
    basis = sp.basis_for(vl.make_airy())
    vals = [vl.wronskian(basis, x) * math.pi for x in np.linspace(0.3, 3.5, 9)]
    for v in vals:
        assert v == pytest.approx(-1.0, abs=1e-8)


def test_airy_accuracy_bound():
    with pytest.raises(AccuracyError):
        vl.airy_ai(13.0)


# ---------------------------------------------------------------------------
# Cylindrical Bessel

def test_bessel_j_leading_term():
    assert vl.bessel_j(0.0, 1e-8) == pytest.approx(1.0, abs=1e-15)


def test_bessel_domain_and_accuracy_errors():
    with pytest.raises(DomainError):
        vl.bessel_j(0.0, -1.0)
    with pytest.raises(AccuracyError):
        vl.bessel_j(0.0, 31.0)


def test_wronskian_j0_y0():
    # operand order y1'y2 - y1y2' gives -2/(pi x)
    for x in np.linspace(0.5, 12.0, 25):
        w = vl.bessel_j(0.0, x, 1) * vl.bessel_y(0.0, x) \
            - vl.bessel_j(0.0, x) * vl.bessel_y(0.0, x, 1)
        assert x * w == pytest.approx(-2.0 / math.pi, abs=1e-8)


def test_bessel_against_rk_oracle():
    ode = vl.make_bessel("regular", 1.0)
    x0 = 2.0
    grid = np.linspace(0.5, 12.0, 17)
    for fn, mu in ((vl.bessel_j, 1.0), (vl.bessel_y, 1.0)):
        oracle = sp.rk_integrate(ode, fn(mu, x0), fn(mu, x0, 1), x0, grid)
        for x in grid:
            assert fn(mu, x) == pytest.approx(oracle.y(x), rel=1e-7, abs=1e-9)


def test_modified_bessel_against_rk_oracle():
    ode = vl.make_bessel("modified", 1.0)
    x0 = 2.0
    grid = np.linspace(0.5, 10.0, 15)
    for fn in (vl.bessel_i, vl.bessel_k):
        oracle = sp.rk_integrate(ode, fn(1.0, x0), fn(1.0, x0, 1), x0, grid)
        for x in grid:
            assert fn(1.0, x) == pytest.approx(
                oracle.y(x), rel=1e-7, abs=1e-9 * (1 + abs(oracle.y(x))))


def test_noninteger_order_cross_solutions():
    ode = vl.make_bessel("regular", 0.5)
    basis = sp.basis_for(ode)
    for x in (0.7, 2.0, 5.0):
        assert _ode_residual_scale(ode, basis.y1, x) < 1e-9
        assert _ode_residual_scale(ode, basis.y2, x) < 1e-9
    # half-integer J relates to elementary functions
    x = 1.3
    assert vl.bessel_j(0.5, x) == pytest.approx(
        math.sqrt(2.0 / (math.pi * x)) * math.sin(x), rel=1e-12)


# ---------------------------------------------------------------------------
# Spherical Bessel

def test_spherical_j0_closed_form():
    x = math.pi / 2.0
    assert vl.spherical_j(0, x) == pytest.approx(2.0 / math.pi, rel=1e-13)


def test_spherical_solutions_satisfy_their_equations():
    for kind, fns in (("spherical", (vl.spherical_j, vl.spherical_y)),
                      ("modified_spherical", (vl.spherical_i, vl.spherical_k))):
        for l in (0, 1, 2):
            ode = vl.make_bessel(kind, l)
            for fn in fns:
                path = TrialPath(lambda x, f=fn: f(l, x),
                                 lambda x, f=fn: f(l, x, 1),
                                 lambda x, f=fn: f(l, x, 2),
                                 (0.0, 30.0), "sph")
                for x in (0.8, 2.2, 7.0):
                    assert _ode_residual_scale(ode, path, x) < 1e-9


# ---------------------------------------------------------------------------
# Legendre

def test_legendre_low_orders():
    assert vl.legendre_p(0, 0.77) == 1.0
    assert vl.legendre_p(1, 0.5) == 0.5
    assert vl.legendre_p(2, 0.5) == pytest.approx(-0.125, abs=1e-14)


def test_legendre_q2_ode_residual():
    ode = vl.make_legendre(2)
    path = TrialPath(lambda x: vl.legendre_q(2, x),
                     lambda x: vl.legendre_q(2, x, 1),
                     lambda x: vl.legendre_q(2, x, 2), (-1, 1), "Q2")
    assert abs(vl.dhat_apply(ode, path, 0.3)) < 1e-8


def test_associated_legendre_solutions():
    for (l, m) in ((2, 1), (3, 2), (4, 2)):
        ode = vl.make_legendre(l, m)
        basis = sp.basis_for(ode)
        for x in (-0.6, 0.1, 0.8):
            assert _ode_residual_scale(ode, basis.y1, x) < 1e-9
            assert _ode_residual_scale(ode, basis.y2, x) < 1e-9


def test_legendre_domain_errors():
    with pytest.raises(DomainError):
        vl.legendre_p(2, 1.0)
    with pytest.raises(ValueError):
        vl.assoc_p(2, 5, 0.3)


# ---------------------------------------------------------------------------
# Hermite

def test_hermite_recurrence_values():
    assert vl.hermite_he(2, 2.0) == pytest.approx(3.0)   # x^2 - 1
    assert vl.hermite_he(3, 1.0) == pytest.approx(-2.0)  # x^3 - 3x
    assert vl.hermite_he(0, 0.4) == 1.0


def test_hermite_ode_residuals():
    for n in (0, 1, 2, 5):
        ode = vl.make_hermite(n)
        path = TrialPath(lambda x, n=n: vl.hermite_he(n, x),
                         lambda x, n=n: vl.hermite_he(n, x, 1),
                         lambda x, n=n: vl.hermite_he(n, x, 2),
                         (0.0, math.inf), "He")
        for x in (0.3, 1.1, 2.6):
            assert _ode_residual_scale(ode, path, x) < 1e-12


# ---------------------------------------------------------------------------
# Reduction of order and oracle plumbing

def test_reduction_trivial_double_integral():
    from varlagr import expr as ex
    ode = vl.make_custom(ex.ZERO, ex.ZERO, (0.0, 4.0))
    one = TrialPath(lambda x: 1.0, lambda x: 0.0, lambda x: 0.0,
                    (0.0, 4.0), "1")
    y2 = sp.second_solution_reduction(ode, one, 1.0, window=(0.5, 3.5))
    for x in (0.8, 2.0, 3.0):
        assert y2.y(x) == pytest.approx(x - 1.0, abs=1e-10)
        assert y2.dy(x) == pytest.approx(1.0, abs=1e-10)


def test_reduction_hermite_n0():
    from scipy.integrate import quad
    ode = vl.make_hermite(0)
    one = TrialPath(lambda x: 1.0, lambda x: 0.0, lambda x: 0.0,
                    (0.0, math.inf), "He_0")
    y2 = sp.second_solution_reduction(ode, one, 1.0)
    for x in (0.5, 1.5, 2.5):
        want = quad(lambda t: math.exp(t * t / 2.0), 1.0, x)[0]
        assert y2.y(x) == pytest.approx(want, rel=1e-9, abs=1e-10)
        scale = 1.0 + abs(y2.y(x)) + abs(y2.dy(x)) + abs(y2.d2y(x))
        assert abs(vl.dhat_apply(ode, y2, x)) < 1e-7 * scale


def test_reduction_bessel_abel_identity():
    ode = vl.make_bessel("regular", 0.0)
    basis = sp.basis_for(ode)
    y2 = sp.second_solution_reduction(ode, basis.y1, 1.0, window=(0.6, 2.2))
    for x in (0.8, 1.4, 2.0):
        w = basis.y1.dy(x) * y2.y(x) - basis.y1.y(x) * y2.dy(x)
        assert x * w == pytest.approx(-1.0, abs=1e-6)


def test_rk_integrate_two_sided():
    ode = vl.make_caldirola_kanai(0.0, 1.0)
    path = sp.rk_integrate(ode, 0.0, 1.0, 2.0, [0.5, 5.0])
    for x in (0.7, 2.0, 4.5):
        assert path.y(x) == pytest.approx(math.sin(x - 2.0), abs=1e-9)


def test_wronskian_abel_constancy_all_bases():
    for maker in (vl.make_airy,
                  lambda: vl.make_bessel("regular", 1.0),
                  lambda: vl.make_bessel("modified", 1.0),
                  lambda: vl.make_bessel("spherical", 2),
                  lambda: vl.make_bessel("modified_spherical", 1),
                  lambda: vl.make_legendre(3),
                  lambda: vl.make_legendre(4, 2),
                  lambda: vl.make_hermite(2),
                  lambda: vl.make_caldirola_kanai(0.3, 1.2)):
        ode = maker()
        basis = sp.basis_for(ode)
        grid = ode.guarded_grid(16)
        vals = [vl.wronskian(basis, x) * ode.E_s(x) for x in grid]
        ref = vals[len(vals) // 2]
        assert abs(ref) > 1e-12
        for v in vals:
            assert v == pytest.approx(ref, rel=1e-7)


def test_superposition_requires_nonzero_constants():
    basis = sp.basis_for(vl.make_airy())
    with pytest.raises(ValueError):
        sp.Superposition(0.0, 0.0, basis)


def test_guarded_solution_grid_drops_zeros():
    ode = vl.make_bessel("regular", 0.0)
    basis = sp.basis_for(ode)
    sup = sp.Superposition(1.0, 0.0, basis)  # J0, has zeros in the window
    # a deliberately wide guard must drop the near-zero samples
    pts = sp.guarded_solution_grid(ode, [sup], 64, zero_guard=0.3)
    assert 0 < len(pts) < 64
    amp = sup.amplitude(ode.guarded_grid(64))
    for x in pts:
        assert abs(sup.y(x)) > 0.3 * amp
    # the default guard keeps every point that misses a zero
    pts = sp.guarded_solution_grid(ode, [sup], 64)
    for x in pts:
        assert abs(sup.y(x)) > 1e-6 * amp
