"""Solution bases for the catalog equations, with an independent ODE oracle.

Evaluators come from the series/recurrence kernels; Y and K at integer
order use the logarithmic ascending series, associated
Legendre functions use the m-step derivative relation, and the Hermite
second solution is produced by the high-order integrator.  Every
evaluator returns value, first and second derivative analytically, so
residual checks against the equations stay meaningful.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial import Polynomial
from scipy.integrate import quad, solve_ivp
from scipy.interpolate import CubicHermiteSpline

from . import kernels
from .errors import AccuracyError, DomainError, GuardViolation
from .odes import LinearODE2, dhat_apply
from .paths import TrialPath

SERIES_X_MAX = 30.0
AIRY_X_MAX = 12.0


def _as_path(triple_fn, domain, label):
    return TrialPath(
        lambda x: triple_fn(x)[0],
        lambda x: triple_fn(x)[1],
        lambda x: triple_fn(x)[2],
        domain,
        label,
    )


# ---------------------------------------------------------------------------
# Airy

def _airy_check(x):
    if abs(x) > AIRY_X_MAX:
        raise AccuracyError(f"|x|={abs(x):g} beyond the Airy series bound")


def airy_ai(x, deriv=0):
    _airy_check(x)
    return kernels.airy_eval(x)[deriv]


def airy_bi(x, deriv=0):
    _airy_check(x)
    return kernels.airy_eval(x)[3 + deriv]


def airy_ai_path():
    return _as_path(lambda x: kernels.airy_eval(_checked_airy(x))[:3],
                    (-AIRY_X_MAX, AIRY_X_MAX), "Ai")


def airy_bi_path():
    return _as_path(lambda x: kernels.airy_eval(_checked_airy(x))[3:],
                    (-AIRY_X_MAX, AIRY_X_MAX), "Bi")


def _checked_airy(x):
    _airy_check(x)
    return x


# ---------------------------------------------------------------------------
# Cylindrical Bessel

def _series_check(x):
    if x <= 0.0:
        raise DomainError(f"Bessel evaluators require x > 0, got {x}")
    if x > SERIES_X_MAX:
        raise AccuracyError(f"x={x:g} beyond the series truncation bound")


def _is_integer(mu):
    return abs(mu - round(mu)) < 1e-9


def _bessel_j_triple(mu, x):
    _series_check(x)
    return kernels.bessel_series(mu, x, -1.0)


def _bessel_i_triple(mu, x):
    _series_check(x)
    return kernels.bessel_series(mu, x, 1.0)


def _bessel_y_cross(nu, x):
    # Y_nu = (J_nu cos(nu pi) - J_{-nu}) / sin(nu pi), nu not an integer
    c = math.cos(nu * math.pi)
    s = math.sin(nu * math.pi)
    jp = kernels.bessel_series(nu, x, -1.0)
    jm = kernels.bessel_series(-nu, x, -1.0)
    return tuple((jp[i] * c - jm[i]) / s for i in range(3))


def _bessel_k_cross(nu, x):
    # K_nu = pi (I_{-nu} - I_nu) / (2 sin(nu pi)), nu not an integer
    s = math.sin(nu * math.pi)
    ip = kernels.bessel_series(nu, x, 1.0)
    im = kernels.bessel_series(-nu, x, 1.0)
    return tuple(math.pi * (im[i] - ip[i]) / (2.0 * s) for i in range(3))


def _bessel_y_triple(mu, x):
    _series_check(x)
    if _is_integer(mu):
        return kernels.bessel_yk_integer(abs(int(round(mu))), x, -1.0)
    return _bessel_y_cross(mu, x)


_K_ASYMPTOTIC_X = 9.0  # ascending/asymptotic crossover for K


def _bessel_k_triple(mu, x):
    _series_check(x)
    if x >= _K_ASYMPTOTIC_X:
        return kernels.bessel_k_asymptotic(mu, x)
    if _is_integer(mu):
        return kernels.bessel_yk_integer(abs(int(round(mu))), x, 1.0)
    return _bessel_k_cross(mu, x)


def bessel_j(mu, x, deriv=0):
    return _bessel_j_triple(mu, x)[deriv]


def bessel_y(mu, x, deriv=0):
    return _bessel_y_triple(mu, x)[deriv]


def bessel_i(mu, x, deriv=0):
    return _bessel_i_triple(mu, x)[deriv]


def bessel_k(mu, x, deriv=0):
    return _bessel_k_triple(mu, x)[deriv]


_SPH_KIND = {"j": 0, "y": 1, "i": 2, "k": 3}


def _sph_triple(kind, l, x):
    _series_check(x)
    return kernels.sph_bessel(_SPH_KIND[kind], l, x)


def spherical_j(l, x, deriv=0):
    return _sph_triple("j", l, x)[deriv]


def spherical_y(l, x, deriv=0):
    return _sph_triple("y", l, x)[deriv]


def spherical_i(l, x, deriv=0):
    return _sph_triple("i", l, x)[deriv]


def spherical_k(l, x, deriv=0):
    return _sph_triple("k", l, x)[deriv]


# ---------------------------------------------------------------------------
# Legendre, regular and associated

def _legendre_check(l, m, x):
    if l != int(l) or l < 0:
        raise ValueError("l must be a non-negative integer")
    if m != int(m) or abs(m) > l:
        raise ValueError("m must be an integer with -l <= m <= l")
    if not -1.0 < x < 1.0:
        raise DomainError(f"Legendre evaluators require |x| < 1, got {x}")


@lru_cache(maxsize=None)
def _legendre_p_poly(l):
    p0, p1 = Polynomial([1.0]), Polynomial([0.0, 1.0])
    if l == 0:
        return p0
    for k in range(1, l):
        p0, p1 = p1, (Polynomial([0.0, 2 * k + 1.0]) * p1 - k * p0) / (k + 1.0)
    return p1


@lru_cache(maxsize=None)
def _legendre_q_parts(l):
    """Q_l = A_l(x) * Q_0(x) + B_l(x) with polynomial A_l, B_l."""
    a0, b0 = Polynomial([1.0]), Polynomial([0.0])
    a1, b1 = Polynomial([0.0, 1.0]), Polynomial([-1.0])
    if l == 0:
        return a0, b0
    for k in range(1, l):
        xk = Polynomial([0.0, 2 * k + 1.0])
        a0, a1 = a1, (xk * a1 - k * a0) / (k + 1.0)
        b0, b1 = b1, (xk * b1 - k * b0) / (k + 1.0)
    return a1, b1


def _q0_deriv(k, x):
    """k-th derivative of Q0 = 0.5 ln((1+x)/(1-x)), k >= 0."""
    if k == 0:
        return 0.5 * math.log((1.0 + x) / (1.0 - x))
    fact = math.factorial(k - 1)
    return 0.5 * (fact / (1.0 - x) ** k
                  + (-1.0) ** (k - 1) * fact / (1.0 + x) ** k)


def _plain_derivs(kind, l, m, x):
    """(d^m f, d^{m+1} f, d^{m+2} f) for f = P_l or Q_l."""
    if kind == "p":
        p = _legendre_p_poly(l)
        return tuple(p.deriv(m + i)(x) if m + i <= l else 0.0 for i in range(3))
    a, b = _legendre_q_parts(l)
    out = []
    for k in (m, m + 1, m + 2):
        total = b.deriv(k)(x) if k <= b.degree() else 0.0
        for i in range(0, k + 1):
            ai = a.deriv(i)(x) if i <= a.degree() else 0.0
            if ai != 0.0:
                total += math.comb(k, i) * ai * _q0_deriv(k - i, x)
        out.append(total)
    return tuple(out)


def _assoc_triple(kind, l, m, x):
    _legendre_check(l, m, x)
    m = abs(int(m))
    d0, d1, d2 = _plain_derivs(kind, l, m, x)
    if m == 0:
        return d0, d1, d2
    omx2 = 1.0 - x * x
    s = omx2 ** (m / 2.0)
    sp = -m * x * omx2 ** (m / 2.0 - 1.0)
    spp = (-m * omx2 ** (m / 2.0 - 1.0)
           + m * (m - 2.0) * x * x * omx2 ** (m / 2.0 - 2.0))
    return (s * d0,
            sp * d0 + s * d1,
            spp * d0 + 2.0 * sp * d1 + s * d2)


def legendre_p(l, x, deriv=0):
    return _assoc_triple("p", l, 0, x)[deriv]


def legendre_q(l, x, deriv=0):
    return _assoc_triple("q", l, 0, x)[deriv]


def assoc_p(l, m, x, deriv=0):
    return _assoc_triple("p", l, m, x)[deriv]


def assoc_q(l, m, x, deriv=0):
    return _assoc_triple("q", l, m, x)[deriv]


# ---------------------------------------------------------------------------
# Hermite

def hermite_he(n, x, deriv=0):
    """Polynomial solution of y'' - x y' + n y = 0 (He_n convention)."""
    if n != int(n) or n < 0:
        raise ValueError("the polynomial branch requires integer n >= 0")
    return kernels.hermite_he(int(n), x)[deriv]


# ---------------------------------------------------------------------------
# ODE oracle and reduction of order

def rk_integrate(ode, y0, yprime0, x0, xs):
    """Adaptive high-order integration of the equation through (x0, y0, y0').

    Returns a TrialPath valid on [min(xs), max(xs)]; y'' is exposed through
    the equation itself.
    """
    xs = np.asarray(xs, dtype=float)
    lo, hi = float(xs.min()), float(xs.max())
    if not (lo <= x0 <= hi):
        lo, hi = min(lo, x0), max(hi, x0)

    def rhs(x, s):
        return [s[1], -ode.B_at(x) * s[1] - ode.C_at(x) * s[0]]

    sols = []
    for target in (lo, hi):
        if target == x0:
            continue
        sol = solve_ivp(rhs, (x0, target), [y0, yprime0], method="DOP853",
                        rtol=1e-11, atol=1e-13, dense_output=True)
        if not sol.success:
            raise AccuracyError(f"integration failed: {sol.message}")
        sols.append((min(x0, target), max(x0, target), sol.sol))

    def state(x):
        for (a, b, interp) in sols:
            if a <= x <= b:
                return interp(x)
        if abs(x - x0) < 1e-13:
            return np.array([y0, yprime0])
        raise DomainError(f"x={x} outside the integrated range")

    return TrialPath(
        lambda x: state(x)[0],
        lambda x: state(x)[1],
        lambda x: -ode.B_at(x) * state(x)[1] - ode.C_at(x) * state(x)[0],
        (lo, hi),
        f"rk[{ode.name}]",
    )


def second_solution_reduction(ode, y1, x_ref, window=None, n=257):
    """Second solution y2 = y1 * int exp(-int B)/y1^2 from x_ref.

    The inner integral is tabulated on a dense grid and interpolated with a
    cubic Hermite spline (its derivative is known in closed form).  y1 must
    be nonzero throughout the window.
    """
    if window is None:
        window = ode.guarded_window()
    lo, hi = window
    grid = np.linspace(lo, hi, n)
    y1_vals = np.array([y1.y(x) for x in grid])
    scale = np.max(np.abs(y1_vals))
    if np.min(np.abs(y1_vals)) < 1e-8 * scale:
        raise DomainError("y1 vanishes inside the integration range")

    def w(t):
        return math.exp(-ode.int_B(t)) / y1.y(t) ** 2

    # cumulative integral of w from x_ref along the grid
    anchor = int(np.argmin(np.abs(grid - x_ref)))
    integral = np.empty(n)
    integral[anchor] = quad(w, x_ref, grid[anchor], epsabs=1e-13, epsrel=1e-12)[0]
    for i in range(anchor + 1, n):
        integral[i] = integral[i - 1] + quad(w, grid[i - 1], grid[i],
                                             epsabs=1e-13, epsrel=1e-12)[0]
    for i in range(anchor - 1, -1, -1):
        integral[i] = integral[i + 1] - quad(w, grid[i], grid[i + 1],
                                             epsabs=1e-13, epsrel=1e-12)[0]
    spline = CubicHermiteSpline(grid, integral, [w(x) for x in grid])

    def value(x):
        return y1.y(x) * float(spline(x))

    def slope(x):
        return y1.dy(x) * float(spline(x)) + math.exp(-ode.int_B(x)) / y1.y(x)

    def curvature(x):
        # y1 solves the equation, hence so does y2
        return -ode.B_at(x) * slope(x) - ode.C_at(x) * value(x)

    return TrialPath(value, slope, curvature, (lo, hi),
                     f"reduction[{y1.label}]")


# ---------------------------------------------------------------------------
# Bases and superpositions

@dataclass
class SolutionBasis:
    """Two linearly independent solutions of one catalog equation."""

    ode: LinearODE2
    y1: TrialPath
    y2: TrialPath
    labels: tuple

    def wronskian(self, x):
        return wronskian(self, x)


@dataclass
class Superposition:
    """c1*y1 + c2*y2 over a solution basis."""

    c1: float
    c2: float
    basis: SolutionBasis

    def __post_init__(self):
        if self.c1 == 0.0 and self.c2 == 0.0:
            raise ValueError("superposition constants must not both vanish")

    def y(self, x):
        return self.c1 * self.basis.y1.y(x) + self.c2 * self.basis.y2.y(x)

    def dy(self, x):
        return self.c1 * self.basis.y1.dy(x) + self.c2 * self.basis.y2.dy(x)

    def d2y(self, x):
        return self.c1 * self.basis.y1.d2y(x) + self.c2 * self.basis.y2.d2y(x)

    def path(self):
        return TrialPath(self.y, self.dy, self.d2y, self.basis.y1.domain,
                         f"{self.c1}*{self.basis.labels[0]}"
                         f"+{self.c2}*{self.basis.labels[1]}")

    def amplitude(self, grid):
        return max(abs(self.y(x)) for x in grid)


def wronskian(basis, x):
    """y1'(x) y2(x) - y1(x) y2'(x)."""
    return basis.y1.dy(x) * basis.y2.y(x) - basis.y1.y(x) * basis.y2.dy(x)


def _hermite_second_path(ode, n):
    """Second Hermite solution from the integrator, anchored away from
    zeros of He_n."""
    lo, hi = ode.guarded_window()
    grid = np.linspace(lo, hi, 33)
    he = np.array([hermite_he(n, x) for x in grid])
    anchor = float(grid[int(np.argmax(np.abs(he)))])
    return rk_integrate(ode, 0.0, 1.0, anchor, [lo, hi])


def basis_for(ode):
    """The standard solution basis for a catalog equation.

    Custom equations get an integrator-generated basis anchored at the
    midpoint of the guarded window with initial conditions (1, 0), (0, 1).
    """
    name = ode.name
    if name == "airy":
        return SolutionBasis(ode, airy_ai_path(), airy_bi_path(), ("Ai", "Bi"))
    if name in ("bessel-regular", "bessel-modified"):
        mu = ode.params["mu"]
        dom = (0.0, SERIES_X_MAX)
        if name == "bessel-regular":
            y1 = _as_path(lambda x: _bessel_j_triple(mu, x), dom, f"J_{mu:g}")
            if _is_integer(mu):
                y2 = _as_path(lambda x: _bessel_y_triple(mu, x), dom, f"Y_{mu:g}")
            else:
                y2 = _as_path(lambda x: _bessel_j_triple(-mu, x), dom, f"J_-{mu:g}")
        else:
            y1 = _as_path(lambda x: _bessel_i_triple(mu, x), dom, f"I_{mu:g}")
            if _is_integer(mu):
                y2 = _as_path(lambda x: _bessel_k_triple(mu, x), dom, f"K_{mu:g}")
            else:
                y2 = _as_path(lambda x: _bessel_i_triple(-mu, x), dom, f"I_-{mu:g}")
        return SolutionBasis(ode, y1, y2, (y1.label, y2.label))
    if name in ("bessel-spherical", "bessel-modified-spherical"):
        l = ode.params["l"]
        dom = (0.0, SERIES_X_MAX)
        if name == "bessel-spherical":
            kinds, labels = ("j", "y"), (f"j_{l}", f"y_{l}")
        else:
            kinds, labels = ("i", "k"), (f"i_{l}", f"k_{l}")
        y1 = _as_path(lambda x: _sph_triple(kinds[0], l, x), dom, labels[0])
        y2 = _as_path(lambda x: _sph_triple(kinds[1], l, x), dom, labels[1])
        return SolutionBasis(ode, y1, y2, labels)
    if name in ("legendre", "legendre-associated"):
        l, m = ode.params["l"], ode.params["m"]
        dom = (-1.0, 1.0)
        y1 = _as_path(lambda x: _assoc_triple("p", l, m, x), dom, f"P_{l}^{m}")
        y2 = _as_path(lambda x: _assoc_triple("q", l, m, x), dom, f"Q_{l}^{m}")
        return SolutionBasis(ode, y1, y2, (y1.label, y2.label))
    if name == "hermite":
        n = ode.params["n"]
        if n == int(n) and n >= 0:
            n = int(n)
            y1 = _as_path(lambda x: kernels.hermite_he(n, x),
                          (-math.inf, math.inf), f"He_{n}")
            y2 = _hermite_second_path(ode, n)
            return SolutionBasis(ode, y1, y2, (y1.label, f"h_{n}"))
        # non-polynomial branch: both solutions from the integrator
    lo, hi = ode.guarded_window()
    mid = 0.5 * (lo + hi)
    y1 = rk_integrate(ode, 1.0, 0.0, mid, [lo, hi])
    y2 = rk_integrate(ode, 0.0, 1.0, mid, [lo, hi])
    return SolutionBasis(ode, y1, y2, ("u1", "u2"))


def guarded_solution_grid(ode, superpositions, n=64, zero_guard=1e-6):
    """Grid points where no superposition is near one of its zeros.

    The guard threshold is zero_guard times the superposition's amplitude
    over the raw grid.
    """
    raw = ode.guarded_grid(n)
    keep = np.ones(len(raw), dtype=bool)
    for sup in superpositions:
        amp = sup.amplitude(raw)
        vals = np.array([sup.y(x) for x in raw])
        keep &= np.abs(vals) > zero_guard * amp
    pts = raw[keep]
    if len(pts) == 0:
        raise GuardViolation("every grid point fell inside a zero guard")
    return pts


def denominator_guarded_grid(ode, y_sup, vbar_sup, n=32, cancel=1e-5,
                             zero_guard=1e-6, scan=512):
    """n points where the reciprocal-form denominator is well conditioned.

    Scans a dense grid and keeps points where y'vbar - y vbar' is at least
    `cancel` times the magnitude of its two terms (otherwise the difference
    of the exponentially large products loses the digits the comparison
    needs) and neither superposition is near a zero.
    """
    raw = ode.guarded_grid(scan)
    amp_y = y_sup.amplitude(raw)
    amp_v = vbar_sup.amplitude(raw)
    survivors = []
    for x in raw:
        yv, yp = y_sup.y(x), y_sup.dy(x)
        v, vp = vbar_sup.y(x), vbar_sup.dy(x)
        if abs(yv) <= zero_guard * amp_y or abs(v) <= zero_guard * amp_v:
            continue
        a, b = yp * v, yv * vp
        if abs(a - b) > cancel * (abs(a) + abs(b) + 1.0):
            survivors.append(x)
    if len(survivors) < n:
        raise GuardViolation(
            f"only {len(survivors)} well-conditioned points available")
    idx = np.linspace(0, len(survivors) - 1, n).round().astype(int)
    return np.array([survivors[i] for i in idx])
