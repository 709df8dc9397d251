"""Pure-Python reference implementation of the series/recurrence kernels.

Mirrors the compiled extension `_kernels` function for function; the
package falls back to this module when the extension is unavailable.
Every kernel returns value together with first and second derivatives,
all computed termwise (never through the differential equation itself,
so residual checks stay meaningful).
"""

import math

MAX_TERMS = 200
REL_EPS = 1e-16

# Maclaurin normalization constants for the Airy pair.
_AI0 = 3.0 ** (-2.0 / 3.0) / math.gamma(2.0 / 3.0)
_AIP0 = -(3.0 ** (-1.0 / 3.0)) / math.gamma(1.0 / 3.0)
_SQRT3 = math.sqrt(3.0)


def airy_eval(x):
    """Both Airy solutions at x.

    Returns (ai, dai, d2ai, bi, dbi, d2bi) from the Maclaurin series of
    the two basis solutions f (f(0)=1, f'(0)=0) and g (g(0)=0, g'(0)=1).
    """
    # f-series: coefficients at powers 3k; g-series: powers 3k+1
    f = df = d2f = 0.0
    g = dg = d2g = 0.0
    cf = 1.0
    cg = 1.0
    mf = 0
    mg = 1
    for _ in range(MAX_TERMS):
        tf = cf * x ** mf
        tg = cg * x ** mg
        f += tf
        g += tg
        if mf >= 1:
            df += cf * mf * x ** (mf - 1)
        if mf >= 2:
            d2f += cf * mf * (mf - 1) * x ** (mf - 2)
        dg += cg * mg * x ** (mg - 1)
        if mg >= 2:
            d2g += cg * mg * (mg - 1) * x ** (mg - 2)
        if abs(tf) < REL_EPS * (abs(f) + 1e-300) and \
           abs(tg) < REL_EPS * (abs(g) + 1e-300):
            break
        cf /= (mf + 2.0) * (mf + 3.0)
        cg /= (mg + 2.0) * (mg + 3.0)
        mf += 3
        mg += 3
    c1, c2 = _AI0, -_AIP0
    ai = c1 * f - c2 * g
    dai = c1 * df - c2 * dg
    d2ai = c1 * d2f - c2 * d2g
    bi = _SQRT3 * (c1 * f + c2 * g)
    dbi = _SQRT3 * (c1 * df + c2 * dg)
    d2bi = _SQRT3 * (c1 * d2f + c2 * d2g)
    return ai, dai, d2ai, bi, dbi, d2bi


def bessel_series(mu, x, sign):
    """Ascending series for the cylindrical Bessel kinds.

    sign=-1 gives J_mu, sign=+1 gives I_mu.  Returns (y, dy, d2y).
    Requires x > 0; mu may be any real that is not a negative integer.
    """
    t = 0.5 * x
    term = math.exp(mu * math.log(t)) / math.gamma(mu + 1.0) \
        if mu != 0.0 else 1.0 / math.gamma(1.0)
    y = dy = d2y = 0.0
    e = mu
    k = 0
    while k < MAX_TERMS:
        y += term
        dy += term * e / x
        d2y += term * e * (e - 1.0) / (x * x)
        nxt = term * sign * t * t / ((k + 1.0) * (mu + k + 1.0))
        if abs(nxt) < REL_EPS * (abs(y) + 1e-300) and k > abs(mu) + 2:
            break
        term = nxt
        e += 2.0
        k += 1
    return y, dy, d2y


_EULER_GAMMA = 0.5772156649015328606


def bessel_yk_integer(n, x, sign):
    """Second cylindrical solution at integer order via the log series.

    sign=-1 gives Y_n (companion of J_n), sign=+1 gives K_n (companion of
    I_n).  Returns (y, dy, d2y) with everything differentiated termwise.
    """
    t = 0.5 * x
    lg = math.log(t)
    j, dj, d2j = bessel_series(float(n), x, sign)
    # coefficient of the ln(x/2) * J_n (resp. I_n) term
    if sign < 0.0:
        clog = 2.0 / math.pi
    else:
        clog = 1.0 if n % 2 == 1 else -1.0
    p = dp = d2p = 0.0

    def powers(c, m, p, dp, d2p):
        tm = c * t ** m
        return p + tm, dp + tm * m / x, d2p + tm * m * (m - 1.0) / (x * x)

    # finite part: k = 0 .. n-1 with coefficients (n-1-k)!/k!, powers t^(2k-n)
    c = math.factorial(n - 1) if n > 0 else 0.0
    for k in range(n):
        coef = -c / math.pi if sign < 0.0 else 0.5 * (-1.0) ** k * c
        p, dp, d2p = powers(coef, 2 * k - n, p, dp, d2p)
        if k + 1 < n:
            c /= (k + 1.0) * (n - 1.0 - k)
    # digamma part: powers t^(n+2k), psi(k+1) + psi(n+k+1)
    psi_a = -_EULER_GAMMA
    psi_b = -_EULER_GAMMA + sum(1.0 / i for i in range(1, n + 1))
    denom = 1.0 / math.factorial(n)
    k = 0
    while k < MAX_TERMS:
        alt = (-1.0) ** k if sign < 0.0 else 1.0
        pref = -1.0 / math.pi if sign < 0.0 else 0.5 * (-1.0) ** n
        coef = pref * alt * (psi_a + psi_b) * denom
        p, dp, d2p = powers(coef, n + 2 * k, p, dp, d2p)
        if abs(coef) * t ** (n + 2 * k) < REL_EPS * (abs(p) + 1e-300) \
                and k > t + 2.0:
            break
        psi_a += 1.0 / (k + 1.0)
        psi_b += 1.0 / (n + k + 1.0)
        denom /= (k + 1.0) * (n + k + 1.0)
        k += 1
    y = clog * lg * j + p
    dy = clog * (j / x + lg * dj) + dp
    d2y = clog * (-j / (x * x) + 2.0 * dj / x + lg * d2j) + d2p
    return y, dy, d2y


def bessel_k_asymptotic(nu, x):
    """Large-x expansion of K_nu, truncated at the smallest term.

    K_nu ~ sqrt(pi/(2x)) e^{-x} sum_k a_k x^{-k} with
    a_k = prod_{j<=k} [4 nu^2 - (2j-1)^2] / (k! 8^k); terminates exactly
    for half-integer nu.  Returns (y, dy, d2y).
    """
    c = math.sqrt(math.pi / 2.0)
    y = dy = d2y = 0.0
    a = 1.0
    best = math.inf
    k = 0
    while k < 60:
        m = -0.5 - k
        t = c * a * x ** m * math.exp(-x)
        if abs(t) > best:
            break
        best = abs(t)
        y += t
        dy += t * (m / x - 1.0)
        d2y += t * (1.0 - 2.0 * m / x + m * (m - 1.0) / (x * x))
        if abs(t) < REL_EPS * abs(y):
            break
        a *= (4.0 * nu * nu - (2 * k + 1.0) ** 2) / (8.0 * (k + 1.0))
        k += 1
    return y, dy, d2y


def legendre_pq(l, x):
    """Legendre functions of both kinds with derivatives.

    Returns (p, dp, d2p, q, dq, d2q) at x in (-1, 1), built from the
    three-term recurrence seeded by P0=1, P1=x and Q0, Q1=x*Q0-1.
    """
    omx2 = 1.0 - x * x
    q0 = 0.5 * math.log((1.0 + x) / (1.0 - x))
    results = []
    for (f0, f1) in ((1.0, x), (q0, x * q0 - 1.0)):
        if l == 0:
            vm1, v = None, f0
            vm2 = None
        elif l == 1:
            vm2, vm1, v = None, f0, f1
        else:
            vm2, vm1, v = None, f0, f1
            for k in range(1, l):
                vm2, vm1, v = vm1, v, ((2 * k + 1) * x * v - k * vm1) / (k + 1.0)
        results.append((vm2, vm1, v))
    out = []
    for idx, (vm2, vm1, v) in enumerate(results):
        is_q = idx == 1
        if l == 0:
            if is_q:
                d1 = 1.0 / omx2
                d2 = 2.0 * x / (omx2 * omx2)
            else:
                d1 = 0.0
                d2 = 0.0
        else:
            d1 = l * (vm1 - x * v) / omx2
            if l == 1:
                dm1 = 1.0 / omx2 if is_q else 0.0
            else:
                dm1 = (l - 1) * (vm2 - x * vm1) / omx2
            d2 = (2.0 * x * d1 + l * (dm1 - v - x * d1)) / omx2
        out.extend((v, d1, d2))
    p, dp, d2p, q, dq, d2q = out
    return p, dp, d2p, q, dq, d2q


def hermite_he(n, x):
    """Polynomial solution of y'' - x y' + n y = 0 with derivatives.

    He_0=1, He_1=x, He_{k+1} = x He_k - k He_{k-1}.
    Returns (he, dhe, d2he).
    """
    if n == 0:
        return 1.0, 0.0, 0.0
    hm2, hm1, h = None, 1.0, x
    for k in range(1, n):
        hm2, hm1, h = hm1, h, x * h - k * hm1
    if n == 1:
        return h, 1.0, 0.0
    dhe = n * hm1
    d2he = n * (n - 1.0) * hm2
    return h, dhe, d2he


def sph_bessel(kind, l, x):
    """Spherical Bessel family via closed forms and upward recurrence.

    kind: 0 = j (spherical first kind), 1 = y (second kind),
          2 = i (modified first kind), 3 = k (modified second kind,
          normalized so that k_0 = exp(-x)/x).
    Returns (f, df, d2f).
    """
    if kind == 0:
        fm1, f0 = math.cos(x) / x, math.sin(x) / x
        up, ds = 1.0, 1.0
    elif kind == 1:
        fm1, f0 = math.sin(x) / x, -math.cos(x) / x
        up, ds = 1.0, 1.0
    elif kind == 2:
        fm1, f0 = math.cosh(x) / x, math.sinh(x) / x
        up, ds = -1.0, 1.0
    else:
        emx = math.exp(-x)
        fm1, f0 = emx / x, emx / x
        up, ds = 1.0, -1.0
    # recurrence: f_{l+1} = up*(2l+1)/x * f_l * r + f_{l-1}-style; encoded
    # per family: j,y: f_{l+1} = (2l+1)/x f_l - f_{l-1}
    #             i:   f_{l+1} = f_{l-1} - (2l+1)/x f_l
    #             k:   f_{l+1} = f_{l-1} + (2l+1)/x f_l
    # f_{-2} from the same recurrence run downward (needed for d2f).
    if kind in (0, 1):
        fm2 = -fm1 / x - f0
    elif kind == 2:
        fm2 = f0 - fm1 / x
    else:
        fm2 = f0 + fm1 / x
    a, b, c = fm2, fm1, f0
    for k in range(l):
        if kind in (0, 1):
            nxt = (2 * k + 1) / x * c - b
        elif kind == 2:
            nxt = b - (2 * k + 1) / x * c
        else:
            nxt = b + (2 * k + 1) / x * c
        a, b, c = b, c, nxt
    # derivative identities: f_l' = ds*f_{l-1} - (l+1)/x f_l
    d1 = ds * b - (l + 1.0) / x * c
    dm1 = ds * a - l / x * b
    d2 = ds * dm1 - (l + 1.0) * (d1 / x - c / (x * x))
    return c, d1, d2
