"""Hot evaluation kernels: compiled extension with pure-Python fallback.

The Cython extension `_kernels` is preferred when it was built; otherwise
the pure-Python twin `_kernels_py` is used.  Both expose identical
functions and results agree to the last bit achievable in double
precision (see benchmarks/bench_kernels.py for the comparison).
"""

try:
    from . import _kernels as _impl
    HAVE_COMPILED = True
except ImportError:  # extension not built; fall back to the Python twin
    from . import _kernels_py as _impl
    HAVE_COMPILED = False

from . import _kernels_py as pure_python

airy_eval = _impl.airy_eval
bessel_series = _impl.bessel_series
bessel_yk_integer = _impl.bessel_yk_integer
bessel_k_asymptotic = _impl.bessel_k_asymptotic
legendre_pq = _impl.legendre_pq
hermite_he = _impl.hermite_he
sph_bessel = _impl.sph_bessel

__all__ = [
    "HAVE_COMPILED",
    "airy_eval",
    "bessel_series",
    "bessel_yk_integer",
    "bessel_k_asymptotic",
    "legendre_pq",
    "hermite_he",
    "sph_bessel",
    "pure_python",
]
