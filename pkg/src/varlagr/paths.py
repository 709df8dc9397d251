"""Twice-differentiable scalar trial paths x -> (y, y', y'')."""

from __future__ import annotations

import csv

import numpy as np


class TrialPath:
    """A path with evaluators for y, y' and y'' on an open interval."""

    def __init__(self, y, dy, d2y, domain=(-np.inf, np.inf), label=""):
        self._y = y
        self._dy = dy
        self._d2y = d2y
        self.domain = tuple(domain)
        self.label = label

    def y(self, x):
        return float(self._y(x))

    def dy(self, x):
        return float(self._dy(x))

    def d2y(self, x):
        return float(self._d2y(x))

    def scale(self, x):
        """1 + |y| + |y'| + |y''|, the tolerance scale at x."""
        return 1.0 + abs(self.y(x)) + abs(self.dy(x)) + abs(self.d2y(x))

    def __repr__(self):
        return f"TrialPath({self.label or 'anonymous'}, domain={self.domain})"


def from_polynomial(coeffs, domain=(-np.inf, np.inf), label=""):
    """Path from polynomial coefficients in increasing-degree order."""
    p = np.polynomial.Polynomial(coeffs)
    dp = p.deriv()
    d2p = dp.deriv()
    return TrialPath(p, dp, d2p, domain, label or "poly")


def sine_path(omega=1.0, phase=0.0, amplitude=1.0, domain=(-np.inf, np.inf)):
    w, p, a = omega, phase, amplitude
    return TrialPath(
        lambda x: a * np.sin(w * x + p),
        lambda x: a * w * np.cos(w * x + p),
        lambda x: -a * w * w * np.sin(w * x + p),
        domain,
        "sine",
    )


def exp_path(rate=1.0, amplitude=1.0, domain=(-np.inf, np.inf)):
    r, a = rate, amplitude
    return TrialPath(
        lambda x: a * np.exp(r * x),
        lambda x: a * r * np.exp(r * x),
        lambda x: a * r * r * np.exp(r * x),
        domain,
        "exp",
    )


def constant_path(value, domain=(-np.inf, np.inf)):
    return TrialPath(lambda x: value, lambda x: 0.0, lambda x: 0.0, domain, "const")


def combine(paths, weights, label="combo"):
    """Linear combination of trial paths."""
    ws = list(weights)

    def s(getter):
        return lambda x: sum(w * getter(p)(x) for w, p in zip(ws, paths))

    dom = (max(p.domain[0] for p in paths), min(p.domain[1] for p in paths))
    return TrialPath(
        s(lambda p: p.y), s(lambda p: p.dy), s(lambda p: p.d2y), dom, label
    )


def random_smooth_paths(n, rng, domain=(-np.inf, np.inf), degree=4):
    """Deterministic corpus of smooth non-solution paths for property checks.

    Polynomials with a small sinusoidal admixture; coefficients drawn from
    the supplied generator so runs are reproducible.
    """
    out = []
    for _ in range(n):
        coeffs = rng.uniform(-1.0, 1.0, size=degree + 1)
        # keep paths away from the identically-small regime
        coeffs[0] += np.sign(coeffs[0] or 1.0) * 0.5
        base = from_polynomial(coeffs, domain)
        if rng.uniform() < 0.5:
            wave = sine_path(
                omega=rng.uniform(0.5, 2.0),
                phase=rng.uniform(0.0, 6.28),
                amplitude=rng.uniform(0.2, 1.0),
                domain=domain,
            )
            out.append(combine([base, wave], [1.0, 1.0]))
        else:
            out.append(base)
    return out


def bump_path(a, b):
    """sin(pi*(x-a)/(b-a)): vanishes at both endpoints of [a, b]."""
    w = np.pi / (b - a)
    return TrialPath(
        lambda x: np.sin(w * (x - a)),
        lambda x: w * np.cos(w * (x - a)),
        lambda x: -w * w * np.sin(w * (x - a)),
        (a, b),
        "bump",
    )


def write_csv(path, xs, stream):
    """Serialize a tabulated path as CSV columns x, y, y', y''."""
    writer = csv.writer(stream)
    writer.writerow(["x", "y", "yprime", "ysecond"])
    for x in xs:
        writer.writerow([repr(float(x)), repr(path.y(x)),
                         repr(path.dy(x)), repr(path.d2y(x))])
