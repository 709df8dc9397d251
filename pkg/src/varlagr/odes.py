"""Catalog of linear second-order equations y'' + B(x) y' + C(x) y = 0.

Covers the Airy equation, the four Bessel types, regular and associated
Legendre, Hermite, the damped-oscillator constant-B case, and user-defined
coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import expr as ex
from .errors import DomainError

# Table of (alpha, beta, gamma) for the four Bessel equation types.
BESSEL_CONSTANTS = {
    "regular": (1, 1, -1),
    "modified": (1, -1, 1),
    "spherical": (2, 1, -1),
    "modified_spherical": (2, -1, 1),
}

# Guard width factor around singular endpoints.
GUARD_FRACTION = 0.05


@dataclass
class LinearODE2:
    """An equation y'' + B(x) y' + C(x) y = 0 on an open interval.

    x0 anchors the accumulated integral of B (and hence the integrating
    factors); window is the finite sampling interval used by grids, already
    inside the validity domain.
    """

    name: str
    B: ex.Expr
    C: ex.Expr
    domain: tuple
    params: dict = field(default_factory=dict)
    x0: float = 0.0
    window: tuple = None
    singular_endpoints: tuple = ()

    def __post_init__(self):
        if self.window is None:
            a, b = self.domain
            lo = a if math.isfinite(a) else -4.0
            hi = b if math.isfinite(b) else 4.0
            self.window = (lo, hi)
        self._int_B_cache = None
        self._dB = ex.diff(self.B)

    # -- coefficient evaluation ------------------------------------------

    def B_at(self, x):
        return ex.eval_expr(self.B, x)

    def dB_at(self, x):
        return ex.eval_expr(self._dB, x)

    def C_at(self, x):
        return ex.eval_expr(self.C, x)

    def int_B(self, x):
        """Accumulated integral of B from the per-equation anchor x0."""
        return ex.integral_of_B(self.B, self.x0, x)

    def E_s(self, x):
        """Integrating factor exp(int B)."""
        return math.exp(self.int_B(x))

    def E_ns(self, x):
        """Reciprocal-family factor exp(-2 int B)."""
        return math.exp(-2.0 * self.int_B(x))

    # -- sampling ---------------------------------------------------------

    def guarded_window(self):
        """The sampling window shrunk away from singular endpoints."""
        lo, hi = self.window
        width = hi - lo
        delta = GUARD_FRACTION * min(width, 1.0)
        for s in self.singular_endpoints:
            if abs(lo - s) < delta:
                lo = s + delta
            if abs(hi - s) < delta:
                hi = s - delta
        if not lo < hi:
            raise DomainError("guards exhausted the sampling window")
        return lo, hi

    def guarded_grid(self, n=64):
        """n Chebyshev-distributed points in the guarded window."""
        lo, hi = self.guarded_window()
        k = np.arange(n)
        nodes = np.cos((2 * k + 1) * np.pi / (2 * n))
        return 0.5 * (lo + hi) + 0.5 * (hi - lo) * nodes[::-1]


def dhat_apply(ode, path, x):
    """y''(x) + B(x) y'(x) + C(x) y(x) for the given trial path."""
    return path.d2y(x) + ode.B_at(x) * path.dy(x) + ode.C_at(x) * path.y(x)


# ---------------------------------------------------------------------------
# Catalog constructors

def make_airy():
    """y'' - x y = 0 on the whole line."""
    return LinearODE2(
        name="airy",
        B=ex.ZERO,
        C=ex.neg(ex.var_x()),
        domain=(-math.inf, math.inf),
        x0=0.0,
        window=(0.2, 4.0),
    )


def make_bessel(kind, order):
    """One of the four Bessel-type equations of the catalog.

    Args:
        kind: "regular", "modified", "spherical" or "modified_spherical".
        order: mu (real) for the cylindrical kinds, l (non-negative
            integer) for the spherical kinds.
    """
    if kind not in BESSEL_CONSTANTS:
        raise ValueError(f"unknown Bessel kind {kind!r}")
    alpha, beta, gamma = BESSEL_CONSTANTS[kind]
    if kind in ("spherical", "modified_spherical"):
        l = order
        if l != int(l) or l < 0:
            raise ValueError("spherical kinds require a non-negative integer order")
        l = int(l)
        mu_sq = l * (l + 1)
        params = {"l": l, "mu_sq": mu_sq}
    else:
        mu_sq = float(order) ** 2
        params = {"mu": float(order), "mu_sq": mu_sq}
    x = ex.var_x()
    B = ex.div(ex.num(alpha), x)
    # C = beta * (1 + gamma*mu^2/x^2)
    C = ex.mul(
        ex.num(beta),
        ex.add(ex.ONE, ex.div(ex.num(gamma * mu_sq), ex.pow_(x, ex.num(2)))),
    )
    params.update({"alpha": alpha, "beta": beta, "gamma": gamma})
    return LinearODE2(
        name=f"bessel-{kind.replace('_', '-')}",
        B=B,
        C=C,
        domain=(0.0, math.inf),
        params=params,
        x0=1.0,
        window=(0.5, 12.0),
        singular_endpoints=(0.0,),
    )


def make_legendre(l, m=0):
    """Regular (m=0) or associated Legendre equation on (-1, 1)."""
    if l != int(l) or l < 0:
        raise ValueError("l must be a non-negative integer")
    if m != int(m) or abs(m) > l:
        raise ValueError("m must be an integer with -l <= m <= l")
    l, m = int(l), int(m)
    x = ex.var_x()
    one_minus_x2 = ex.sub(ex.ONE, ex.pow_(x, ex.num(2)))
    B = ex.div(ex.mul(ex.num(-2), x), one_minus_x2)
    C = ex.sub(
        ex.div(ex.num(l * (l + 1)), one_minus_x2),
        ex.div(ex.num(m * m), ex.pow_(one_minus_x2, ex.num(2))),
    )
    name = "legendre" if m == 0 else "legendre-associated"
    return LinearODE2(
        name=name,
        B=B,
        C=C,
        domain=(-1.0, 1.0),
        params={"l": l, "m": m},
        x0=0.0,
        window=(-0.95, 0.95),
        singular_endpoints=(-1.0, 1.0),
    )


def make_hermite(n):
    """y'' - x y' + n y = 0; validity interval follows the (0, inf) convention."""
    return LinearODE2(
        name="hermite",
        B=ex.neg(ex.var_x()),
        C=ex.num(n),
        domain=(0.0, math.inf),
        params={"n": int(n) if float(n) == int(n) else float(n)},
        x0=0.0,
        window=(0.1, 3.0),
    )


def make_custom(B, C, domain, params=None, name="custom", window=None):
    """Equation from user-supplied coefficient expressions.

    The anchor for the accumulated integral of B is 0 when 0 lies strictly
    inside the domain and B is evaluable there, otherwise the midpoint of
    the (finite part of the) domain.
    """
    a, b = domain
    x0 = None
    if a < 0.0 < b:
        try:
            ex.eval_expr(B, 0.0)
            x0 = 0.0
        except DomainError:
            x0 = None
    if x0 is None:
        lo = a if math.isfinite(a) else -4.0
        hi = b if math.isfinite(b) else 4.0
        x0 = 0.5 * (lo + hi)
    singular = []
    for endpoint in (a, b):
        if math.isfinite(endpoint):
            try:
                ex.eval_expr(B, endpoint)
                ex.eval_expr(C, endpoint)
            except DomainError:
                singular.append(endpoint)
    return LinearODE2(
        name=name,
        B=B,
        C=C,
        domain=(a, b),
        params=dict(params or {}),
        x0=x0,
        window=window,
        singular_endpoints=tuple(singular),
    )


def make_caldirola_kanai(gamma, omega):
    """Damped oscillator: constant B = gamma, C = omega^2."""
    ode = make_custom(
        B=ex.num(gamma),
        C=ex.num(omega * omega),
        domain=(-math.inf, math.inf),
        params={"gamma": gamma, "omega": omega},
        name="caldirola-kanai",
        window=(0.0, 6.0),
    )
    ode.x0 = 0.0
    return ode
