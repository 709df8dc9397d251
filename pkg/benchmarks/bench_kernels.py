"""Benchmark the compiled kernels against the pure-Python fallback.

Run with:

    python3 benchmarks/bench_kernels.py

Each kernel is timed over a sweep of representative arguments; results
are reported as calls per second together with the speedup of the
compiled extension over the fallback.  If the extension failed to build,
only the pure-Python numbers are shown.
"""

import time

import numpy as np

from varlagr import kernels
from varlagr.kernels import pure_python


def _time(fn, reps=5):
    best = float("inf")
    for _ in range(reps):
        t0 = time.perf_counter()
        n = fn()
        best = min(best, (time.perf_counter() - t0) / n)
    return best


def bench_airy(mod):
    xs = np.linspace(-8.0, 4.0, 400)

    def run():
        for x in xs:
            mod.airy_eval(x)
        return len(xs)

    return run


def bench_bessel_series(mod):
    xs = np.linspace(0.1, 10.0, 200)

    def run():
        for x in xs:
            mod.bessel_series(1.0, x, -1.0)
            mod.bessel_series(0.5, x, 1.0)
        return 2 * len(xs)

    return run


def bench_bessel_yk(mod):
    xs = np.linspace(0.2, 8.0, 150)

    def run():
        for x in xs:
            mod.bessel_yk_integer(1, x, -1.0)
            mod.bessel_yk_integer(2, x, 1.0)
        return 2 * len(xs)

    return run


def bench_k_asymptotic(mod):
    xs = np.linspace(9.0, 40.0, 300)

    def run():
        for x in xs:
            mod.bessel_k_asymptotic(1.5, x)
        return len(xs)

    return run


def bench_legendre(mod):
    xs = np.linspace(-0.9, 0.9, 300)

    def run():
        for x in xs:
            mod.legendre_pq(4, x)
        return len(xs)

    return run


def bench_hermite(mod):
    xs = np.linspace(-3.0, 3.0, 400)

    def run():
        for x in xs:
            mod.hermite_he(5, x)
        return len(xs)

    return run


def bench_sph_bessel(mod):
    xs = np.linspace(0.2, 10.0, 200)

    def run():
        for x in xs:
            mod.sph_bessel(0, 2, x)
            mod.sph_bessel(3, 2, x)
        return 2 * len(xs)

    return run


BENCHES = [
    ("airy_eval", bench_airy),
    ("bessel_series", bench_bessel_series),
    ("bessel_yk_integer", bench_bessel_yk),
    ("bessel_k_asymptotic", bench_k_asymptotic),
    ("legendre_pq", bench_legendre),
    ("hermite_he", bench_hermite),
    ("sph_bessel", bench_sph_bessel),
]


def main():
    compiled = kernels.HAVE_COMPILED
    print(f"compiled extension available: {compiled}")
    header = f"{'kernel':<22}{'pure (calls/s)':>16}"
    if compiled:
        header += f"{'compiled (calls/s)':>20}{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for name, make in BENCHES:
        t_py = _time(make(pure_python))
        row = f"{name:<22}{1.0 / t_py:>16.0f}"
        if compiled:
            t_c = _time(make(kernels))
            row += f"{1.0 / t_c:>20.0f}{t_py / t_c:>10.2f}x"
        print(row)


if __name__ == "__main__":
    main()
