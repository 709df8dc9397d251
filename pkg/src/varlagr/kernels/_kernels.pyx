# cython: language_level=3, boundscheck=False, cdivision=True
"""Compiled twin of _kernels_py: series/recurrence evaluation kernels."""

from libc.math cimport cos, cosh, exp, log, sin, sinh, sqrt, fabs, pow, tgamma

cdef int MAX_TERMS = 200
cdef double REL_EPS = 1e-16

cdef double _AI0 = pow(3.0, -2.0 / 3.0) / tgamma(2.0 / 3.0)
cdef double _AIP0 = -pow(3.0, -1.0 / 3.0) / tgamma(1.0 / 3.0)
cdef double _SQRT3 = sqrt(3.0)


def airy_eval(double x):
    """Both Airy solutions: (ai, dai, d2ai, bi, dbi, d2bi)."""
    cdef double f = 0, df = 0, d2f = 0, g = 0, dg = 0, d2g = 0
    cdef double cf = 1.0, cg = 1.0, tf, tg
    cdef int mf = 0, mg = 1, i
    for i in range(MAX_TERMS):
        tf = cf * pow(x, mf)
        tg = cg * pow(x, mg)
        f += tf
        g += tg
        if mf >= 1:
            df += cf * mf * pow(x, mf - 1)
        if mf >= 2:
            d2f += cf * mf * (mf - 1) * pow(x, mf - 2)
        dg += cg * mg * pow(x, mg - 1)
        if mg >= 2:
            d2g += cg * mg * (mg - 1) * pow(x, mg - 2)
        if fabs(tf) < REL_EPS * (fabs(f) + 1e-300) and \
           fabs(tg) < REL_EPS * (fabs(g) + 1e-300):
            break
        cf /= (mf + 2.0) * (mf + 3.0)
        cg /= (mg + 2.0) * (mg + 3.0)
        mf += 3
        mg += 3
    cdef double c1 = _AI0, c2 = -_AIP0
    return (c1 * f - c2 * g, c1 * df - c2 * dg, c1 * d2f - c2 * d2g,
            _SQRT3 * (c1 * f + c2 * g), _SQRT3 * (c1 * df + c2 * dg),
            _SQRT3 * (c1 * d2f + c2 * d2g))


def bessel_series(double mu, double x, double sign):
    """Ascending series: sign=-1 for J_mu, +1 for I_mu.  (y, dy, d2y)."""
    cdef double t = 0.5 * x
    cdef double term = exp(mu * log(t)) / tgamma(mu + 1.0)
    cdef double y = 0, dy = 0, d2y = 0, e = mu, nxt
    cdef int k = 0
    while k < MAX_TERMS:
        y += term
        dy += term * e / x
        d2y += term * e * (e - 1.0) / (x * x)
        nxt = term * sign * t * t / ((k + 1.0) * (mu + k + 1.0))
        if fabs(nxt) < REL_EPS * (fabs(y) + 1e-300) and k > fabs(mu) + 2:
            break
        term = nxt
        e += 2.0
        k += 1
    return y, dy, d2y


cdef double _EULER_GAMMA = 0.5772156649015328606
cdef double _PI = 3.141592653589793238


def bessel_yk_integer(int n, double x, double sign):
    """Y_n (sign=-1) or K_n (sign=+1) via the log series.  (y, dy, d2y)."""
    cdef double t = 0.5 * x
    cdef double lg = log(t)
    cdef double j, dj, d2j, clog, p = 0, dp = 0, d2p = 0
    cdef double c, coef, tm, psi_a, psi_b, denom, alt, pref
    cdef int k, m
    j, dj, d2j = bessel_series(n, x, sign)
    if sign < 0.0:
        clog = 2.0 / _PI
    else:
        clog = 1.0 if n % 2 == 1 else -1.0
    # finite part: coefficients (n-1-k)!/k!, powers t^(2k-n)
    c = tgamma(n) if n > 0 else 0.0
    for k in range(n):
        coef = -c / _PI if sign < 0.0 else 0.5 * c * (1.0 if k % 2 == 0 else -1.0)
        m = 2 * k - n
        tm = coef * pow(t, m)
        p += tm
        dp += tm * m / x
        d2p += tm * m * (m - 1.0) / (x * x)
        if k + 1 < n:
            c /= (k + 1.0) * (n - 1.0 - k)
    # digamma part: powers t^(n+2k), psi(k+1) + psi(n+k+1)
    psi_a = -_EULER_GAMMA
    psi_b = -_EULER_GAMMA
    for k in range(1, n + 1):
        psi_b += 1.0 / k
    denom = 1.0 / tgamma(n + 1.0)
    pref = -1.0 / _PI if sign < 0.0 else \
        0.5 * (1.0 if n % 2 == 0 else -1.0)
    k = 0
    while k < MAX_TERMS:
        alt = (1.0 if k % 2 == 0 else -1.0) if sign < 0.0 else 1.0
        coef = pref * alt * (psi_a + psi_b) * denom
        m = n + 2 * k
        tm = coef * pow(t, m)
        p += tm
        dp += tm * m / x
        d2p += tm * m * (m - 1.0) / (x * x)
        if fabs(tm) < REL_EPS * (fabs(p) + 1e-300) and k > t + 2.0:
            break
        psi_a += 1.0 / (k + 1.0)
        psi_b += 1.0 / (n + k + 1.0)
        denom /= (k + 1.0) * (n + k + 1.0)
        k += 1
    return (clog * lg * j + p,
            clog * (j / x + lg * dj) + dp,
            clog * (-j / (x * x) + 2.0 * dj / x + lg * d2j) + d2p)


def bessel_k_asymptotic(double nu, double x):
    """Large-x expansion of K_nu, truncated at the smallest term."""
    cdef double c = sqrt(_PI / 2.0)
    cdef double y = 0, dy = 0, d2y = 0, a = 1.0, best = 1e300
    cdef double m, t
    cdef int k = 0
    while k < 60:
        m = -0.5 - k
        t = c * a * pow(x, m) * exp(-x)
        if fabs(t) > best:
            break
        best = fabs(t)
        y += t
        dy += t * (m / x - 1.0)
        d2y += t * (1.0 - 2.0 * m / x + m * (m - 1.0) / (x * x))
        if fabs(t) < REL_EPS * fabs(y):
            break
        a *= (4.0 * nu * nu - (2 * k + 1.0) ** 2) / (8.0 * (k + 1.0))
        k += 1
    return y, dy, d2y


def legendre_pq(int l, double x):
    """Legendre P_l and Q_l with derivatives: (p, dp, d2p, q, dq, d2q)."""
    cdef double omx2 = 1.0 - x * x
    cdef double q0 = 0.5 * log((1.0 + x) / (1.0 - x))
    cdef double out[6]
    cdef double f0, f1, vm2, vm1, v, d1, dm1, d2
    cdef int idx, k
    for idx in range(2):
        if idx == 0:
            f0 = 1.0
            f1 = x
        else:
            f0 = q0
            f1 = x * q0 - 1.0
        vm2 = 0.0
        vm1 = f0
        v = f1 if l >= 1 else f0
        for k in range(1, l):
            vm2 = vm1
            vm1 = v
            v = ((2 * k + 1) * x * v - k * vm2) / (k + 1.0)
        if l == 0:
            if idx == 1:
                d1 = 1.0 / omx2
                d2 = 2.0 * x / (omx2 * omx2)
            else:
                d1 = 0.0
                d2 = 0.0
        else:
            d1 = l * (vm1 - x * v) / omx2
            if l == 1:
                dm1 = 1.0 / omx2 if idx == 1 else 0.0
            else:
                dm1 = (l - 1) * (vm2 - x * vm1) / omx2
            d2 = (2.0 * x * d1 + l * (dm1 - v - x * d1)) / omx2
        out[3 * idx] = v
        out[3 * idx + 1] = d1
        out[3 * idx + 2] = d2
    return out[0], out[1], out[2], out[3], out[4], out[5]


def hermite_he(int n, double x):
    """He_n with derivatives: (he, dhe, d2he)."""
    if n == 0:
        return 1.0, 0.0, 0.0
    cdef double hm2 = 0.0, hm1 = 1.0, h = x
    cdef int k
    for k in range(1, n):
        hm2 = hm1
        hm1 = h
        h = x * h - k * hm2
    if n == 1:
        return h, 1.0, 0.0
    return h, n * hm1, n * (n - 1.0) * hm2


def sph_bessel(int kind, int l, double x):
    """Spherical Bessel family: kind 0=j, 1=y, 2=i, 3=k.  (f, df, d2f)."""
    cdef double fm2, fm1, f0, a, b, c, nxt, d1, dm1, d2, ds, emx
    cdef int k
    if kind == 0:
        fm1 = cos(x) / x
        f0 = sin(x) / x
        ds = 1.0
    elif kind == 1:
        fm1 = sin(x) / x
        f0 = -cos(x) / x
        ds = 1.0
    elif kind == 2:
        fm1 = cosh(x) / x
        f0 = sinh(x) / x
        ds = 1.0
    else:
        emx = exp(-x)
        fm1 = emx / x
        f0 = emx / x
        ds = -1.0
    if kind == 0 or kind == 1:
        fm2 = -fm1 / x - f0
    elif kind == 2:
        fm2 = f0 - fm1 / x
    else:
        fm2 = f0 + fm1 / x
    a = fm2
    b = fm1
    c = f0
    for k in range(l):
        if kind == 0 or kind == 1:
            nxt = (2 * k + 1) / x * c - b
        elif kind == 2:
            nxt = b - (2 * k + 1) / x * c
        else:
            nxt = b + (2 * k + 1) / x * c
        a = b
        b = c
        c = nxt
    d1 = ds * b - (l + 1.0) / x * c
    dm1 = ds * a - l / x * b
    d2 = ds * dm1 - (l + 1.0) * (d1 / x - c / (x * x))
    return c, d1, d2
