"""Euler-Lagrange residuals, annihilation, recovery, obstruction,
action quadrature and stationarity probes."""

import math

import numpy as np
import pytest

import varlagr as vl
from varlagr.errors import GuardViolation
from varlagr.lagrangians import mixed_lagrangian
from varlagr.paths import bump_path, from_polynomial, random_smooth_paths
from varlagr.special import Superposition, basis_for
from varlagr.variational import action, stationarity_probe


ALL_ODES = [vl.make_airy(), vl.make_bessel("regular", 1.0),
            vl.make_bessel("modified", 1.0), vl.make_bessel("spherical", 2),
            vl.make_bessel("modified_spherical", 1), vl.make_legendre(3),
            vl.make_legendre(4, 2), vl.make_hermite(3),
            vl.make_caldirola_kanai(0.3, 1.2)]


@pytest.mark.parametrize("ode", ALL_ODES, ids=lambda o: o.name)
def test_el_standard_equals_dhat_times_es(ode):
    rng = np.random.default_rng(3)
    lag = vl.standard_lagrangian(ode)
    paths = random_smooth_paths(5, rng, ode.guarded_window())
    for x in ode.guarded_grid(16):
        for p in paths:
            got = vl.el_residual(lag, p, x)
            want = vl.dhat_apply(ode, p, x) * ode.E_s(x)
            assert got == pytest.approx(want, rel=1e-8, abs=1e-10)


def test_el_analytic_matches_finite_difference():
    ode = vl.make_hermite(2)
    lag = vl.combined_lagrangian(ode)
    path = from_polynomial([0.3, -1.0, 0.2, 0.05])
    for x in (0.4, 1.2, 2.4):
        a = vl.el_residual(lag, path, x, method="analytic")
        fd = vl.el_residual(lag, path, x, method="finite_difference")
        assert a == pytest.approx(fd, rel=1e-5, abs=1e-7)


def test_el_standard_vanishes_on_solutions():
    ode = vl.make_legendre(3)
    lag = vl.standard_lagrangian(ode)
    basis = basis_for(ode)
    for x in (-0.7, 0.1, 0.8):
        for sol in (basis.y1, basis.y2):
            scale = 1.0 + abs(sol.y(x)) + abs(sol.dy(x)) + abs(sol.d2y(x))
            assert abs(vl.el_residual(lag, sol, x)) < 1e-9 * scale


@pytest.mark.parametrize("ode", ALL_ODES, ids=lambda o: o.name)
def test_ml_annihilation(ode):
    rng = np.random.default_rng(11)
    trials = random_smooth_paths(20, rng, ode.guarded_window())
    report = vl.verify_ml_annihilation(ode, trials)
    assert report.passed
    assert report.norm <= 1e-9


def test_ml_annihilation_mutation_flips_verdict():
    ode = vl.make_hermite(2)
    rng = np.random.default_rng(11)
    trials = random_smooth_paths(20, rng, ode.guarded_window())
    bad = mixed_lagrangian(ode, _quadratic_coeff=0.2501)
    report = vl.verify_ml_annihilation(ode, trials, mixed=bad)
    assert not report.passed


@pytest.mark.parametrize("ode", ALL_ODES, ids=lambda o: o.name)
def test_el_nonstandard_vanishes_for_solutions(ode):
    basis = basis_for(ode)
    ysup = Superposition(1.0, 0.5, basis)
    vbar = Superposition(0.25, 1.0, basis)
    grid = vl.denominator_guarded_grid(ode, ysup, vbar, 16)
    for x in grid:
        r = vl.el_nonstandard_ratio(ode, ysup, vbar, x)
        assert abs(r) < 1e-6 * (1.0 + abs(ode.B_at(x)))


@pytest.mark.parametrize("ode", ALL_ODES, ids=lambda o: o.name)
def test_recovery_passes_on_matching_equation(ode):
    basis = basis_for(ode)
    ysup = Superposition(1.0, 0.5, basis)
    vbar = Superposition(0.25, 1.0, basis)
    grid = vl.guarded_solution_grid(ode, [ysup, vbar], 32)
    report = vl.recover_original(ode, ysup, vbar, grid)
    assert report.passed


def test_recovery_fails_on_mismatched_vbar():
    ode = vl.make_legendre(3)
    other = vl.make_legendre(2)
    ysup = Superposition(1.0, 0.5, basis_for(ode))
    vbar = Superposition(0.25, 1.0, basis_for(other))
    grid = vl.guarded_solution_grid(ode, [ysup], 32)
    report = vl.recover_original(ode, ysup, vbar, grid)
    assert not report.passed
    assert report.norm > 1e-3


@pytest.mark.parametrize("ode", ALL_ODES, ids=lambda o: o.name)
def test_obstruction_extra_term_generic(ode):
    basis = basis_for(ode)
    ysup = Superposition(1.0, 0.5, basis)
    vbar = Superposition(0.25, 1.0, basis)
    good = total = 0
    for x in vl.guarded_solution_grid(ode, [ysup, vbar], 64):
        try:
            _, extra = vl.el_wrt_vbar_obstruction(ode, ysup, vbar, x)
        except GuardViolation:
            continue
        total += 1
        if abs(extra) > 1e-3:
            good += 1
    assert total > 0 and good / total >= 0.9


def test_obstruction_guard_on_proportional_paths():
    # y proportional to vbar collapses the reciprocal denominator, which
    # the guard must catch instead of dividing by (near) zero
    ode = vl.make_hermite(2)
    basis = basis_for(ode)
    sup = Superposition(1.0, 0.5, basis)
    with pytest.raises(GuardViolation):
        vl.el_wrt_vbar_obstruction(ode, sup, sup, 1.0)


def test_action_quadrature_polynomial_exact():
    # L = (y')^2 with y = x^2 on [0, 1]: integral of 4x^2 = 4/3
    from varlagr.lagrangians import Lagrangian
    lag = Lagrangian(kind="test", L=lambda yp, y, x: yp * yp)
    path = from_polynomial([0.0, 0.0, 1.0])
    assert action(lag, path, 0.0, 1.0) == pytest.approx(4.0 / 3.0, rel=1e-12)


def test_stationarity_probe_on_solutions():
    hits = 0
    for ode in (vl.make_hermite(2), vl.make_legendre(3),
                vl.make_caldirola_kanai(0.3, 1.2)):
        lag = vl.standard_lagrangian(ode)
        basis = basis_for(ode)
        sol = Superposition(1.0, 0.5, basis).path()
        lo, hi = ode.guarded_window()
        bump = bump_path(lo, hi)
        s = action(lag, sol, lo, hi)
        probe = stationarity_probe(lag, sol, bump)
        assert abs(probe) <= 1e-6 * max(1.0, abs(s))
        hits += 1
    assert hits == 3


def test_stationarity_probe_flags_non_solution():
    ode = vl.make_hermite(2)
    lag = vl.standard_lagrangian(ode)
    lo, hi = ode.guarded_window()
    non_solution = from_polynomial([0.5, 1.0, 0.3])
    probe = stationarity_probe(lag, non_solution, bump_path(lo, hi))
    assert abs(probe) > 1e-3


def test_stationarity_probe_null_for_mixed():
    ode = vl.make_hermite(2)
    lag = vl.mixed_lagrangian(ode)
    lo, hi = ode.guarded_window()
    bump = bump_path(lo, hi)
    for path in (from_polynomial([0.5, 1.0, 0.3]),
                 from_polynomial([-0.2, 0.4, -0.6, 0.1])):
        assert abs(stationarity_probe(lag, path, bump)) <= 1e-9


def test_report_serialization(tmp_path):
    ode = vl.make_hermite(2)
    rng = np.random.default_rng(5)
    trials = random_smooth_paths(4, rng, ode.guarded_window())
    report = vl.verify_ml_annihilation(ode, trials)
    blob = report.to_json()
    import json
    data = json.loads(blob)
    assert data["passed"] is True
    assert len(data["grid"]) == len(data["residuals"])
    out = tmp_path / "resid.csv"
    with open(out, "w") as fh:
        report.write_csv(fh)
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "x,residual"
    assert len(lines) == len(data["grid"]) + 1
