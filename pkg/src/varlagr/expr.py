"""Immutable expression trees over the variable x and named constants.

The trees carry the ODE coefficient functions B(x) and C(x).  Supported
node kinds: numbers, the variable x, named parameters, the four arithmetic
operations, power, unary negation, and exp/ln/sin/cos/sqrt.  Simplification
is deliberately limited to constant folding and 0/1 identities; algebraic
equality is always checked numerically, never structurally.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

from scipy.integrate import quad

from .errors import AccuracyError, DomainError, ExprSyntaxError, UnboundNameError

_FUNCTIONS = ("exp", "ln", "sin", "cos", "sqrt")


@dataclass(frozen=True)
class Expr:
    """One node of an expression tree.

    kind is one of "num", "x", "param", "add", "sub", "mul", "div",
    "pow", "neg", or a function name from exp/ln/sin/cos/sqrt.
    """

    kind: str
    args: tuple = ()
    value: float = 0.0
    name: str = ""

    def __call__(self, x):
        return eval_expr(self, x)

    def diff(self):
        return diff(self)

    def __str__(self):
        return to_text(self)


def num(v):
    return Expr("num", value=float(v))


def var_x():
    return Expr("x")


def param(name, value):
    return Expr("param", value=float(value), name=name)


ZERO = num(0.0)
ONE = num(1.0)


def _is_const(e, v=None):
    if e.kind == "num":
        return v is None or e.value == v
    return False


def add(a, b):
    if _is_const(a, 0.0):
        return b
    if _is_const(b, 0.0):
        return a
    if a.kind == "num" and b.kind == "num":
        return num(a.value + b.value)
    return Expr("add", (a, b))


def sub(a, b):
    if _is_const(b, 0.0):
        return a
    if a.kind == "num" and b.kind == "num":
        return num(a.value - b.value)
    if _is_const(a, 0.0):
        return neg(b)
    return Expr("sub", (a, b))


def mul(a, b):
    if _is_const(a, 0.0) or _is_const(b, 0.0):
        return ZERO
    if _is_const(a, 1.0):
        return b
    if _is_const(b, 1.0):
        return a
    if a.kind == "num" and b.kind == "num":
        return num(a.value * b.value)
    return Expr("mul", (a, b))


def div(a, b):
    if _is_const(a, 0.0) and not _is_const(b, 0.0):
        return ZERO
    if _is_const(b, 1.0):
        return a
    if a.kind == "num" and b.kind == "num" and b.value != 0.0:
        return num(a.value / b.value)
    return Expr("div", (a, b))


def pow_(a, b):
    if _is_const(b, 1.0):
        return a
    if _is_const(b, 0.0):
        return ONE
    if a.kind == "num" and b.kind == "num":
        try:
            return num(a.value ** b.value)
        except (OverflowError, ValueError):
            pass
    return Expr("pow", (a, b))


def neg(a):
    if a.kind == "num":
        return num(-a.value)
    if a.kind == "neg":
        return a.args[0]
    return Expr("neg", (a,))


def func(name, a):
    if name not in _FUNCTIONS:
        raise ValueError(f"unknown function {name!r}")
    return Expr(name, (a,))


def _finite(v):
    if not math.isfinite(v):
        raise DomainError(f"non-finite value {v!r} in evaluation")
    return v


def eval_expr(e, x):
    """Evaluate e at the point x.  Raises DomainError instead of ever
    returning a non-finite value."""
    k = e.kind
    if k == "num" or k == "param":
        return e.value
    if k == "x":
        return float(x)
    if k == "add":
        return _finite(eval_expr(e.args[0], x) + eval_expr(e.args[1], x))
    if k == "sub":
        return _finite(eval_expr(e.args[0], x) - eval_expr(e.args[1], x))
    if k == "mul":
        return _finite(eval_expr(e.args[0], x) * eval_expr(e.args[1], x))
    if k == "div":
        d = eval_expr(e.args[1], x)
        if d == 0.0:
            raise DomainError(f"division by zero at x={x}")
        return _finite(eval_expr(e.args[0], x) / d)
    if k == "pow":
        base = eval_expr(e.args[0], x)
        expo = eval_expr(e.args[1], x)
        if base == 0.0 and expo < 0.0:
            raise DomainError(f"zero raised to negative power at x={x}")
        if base < 0.0 and expo != round(expo):
            raise DomainError(f"negative base with non-integer exponent at x={x}")
        try:
            return _finite(base ** expo)
        except OverflowError:
            raise DomainError(f"overflow in power at x={x}") from None
    if k == "neg":
        return -eval_expr(e.args[0], x)
    if k == "exp":
        try:
            return _finite(math.exp(eval_expr(e.args[0], x)))
        except OverflowError:
            raise DomainError(f"overflow in exp at x={x}") from None
    if k == "ln":
        a = eval_expr(e.args[0], x)
        if a <= 0.0:
            raise DomainError(f"ln of non-positive argument {a} at x={x}")
        return math.log(a)
    if k == "sin":
        return math.sin(eval_expr(e.args[0], x))
    if k == "cos":
        return math.cos(eval_expr(e.args[0], x))
    if k == "sqrt":
        a = eval_expr(e.args[0], x)
        if a < 0.0:
            raise DomainError(f"sqrt of negative argument {a} at x={x}")
        return math.sqrt(a)
    raise ValueError(f"unknown node kind {k!r}")


def diff(e):
    """Exact symbolic derivative of e with respect to x."""
    k = e.kind
    if k in ("num", "param"):
        return ZERO
    if k == "x":
        return ONE
    if k == "add":
        return add(diff(e.args[0]), diff(e.args[1]))
    if k == "sub":
        return sub(diff(e.args[0]), diff(e.args[1]))
    if k == "mul":
        a, b = e.args
        return add(mul(diff(a), b), mul(a, diff(b)))
    if k == "div":
        a, b = e.args
        return div(sub(mul(diff(a), b), mul(a, diff(b))), pow_(b, num(2)))
    if k == "pow":
        a, b = e.args
        if b.kind in ("num", "param"):
            # d(u^c) = c*u^(c-1)*u'
            return mul(mul(b, pow_(a, num(b.value - 1.0))), diff(a))
        # general case via u^v = exp(v ln u)
        return mul(e, add(mul(diff(b), func("ln", a)),
                          mul(b, div(diff(a), a))))
    if k == "neg":
        return neg(diff(e.args[0]))
    if k == "exp":
        return mul(e, diff(e.args[0]))
    if k == "ln":
        return div(diff(e.args[0]), e.args[0])
    if k == "sin":
        return mul(func("cos", e.args[0]), diff(e.args[0]))
    if k == "cos":
        return neg(mul(func("sin", e.args[0]), diff(e.args[0])))
    if k == "sqrt":
        return div(diff(e.args[0]), mul(num(2), e))
    raise ValueError(f"unknown node kind {k!r}")


_PRECEDENCE = {"add": 1, "sub": 1, "mul": 2, "div": 2, "neg": 3, "pow": 4}


def to_text(e):
    """Render e in the input grammar; parse(to_text(e)) evaluates identically."""

    def wrap(child, prec, tight=False):
        s = to_text(child)
        cp = _PRECEDENCE.get(child.kind, 5)
        if cp < prec or (tight and cp == prec):
            return f"({s})"
        return s

    k = e.kind
    if k == "num":
        return repr(e.value)
    if k == "x":
        return "x"
    if k == "param":
        return e.name
    if k == "add":
        return f"{wrap(e.args[0], 1)}+{wrap(e.args[1], 1, tight=True)}"
    if k == "sub":
        return f"{wrap(e.args[0], 1)}-{wrap(e.args[1], 1, tight=True)}"
    if k == "mul":
        return f"{wrap(e.args[0], 2)}*{wrap(e.args[1], 2, tight=True)}"
    if k == "div":
        return f"{wrap(e.args[0], 2)}/{wrap(e.args[1], 2, tight=True)}"
    if k == "pow":
        return f"{wrap(e.args[0], 5)}^{wrap(e.args[1], 4)}"
    if k == "neg":
        return f"-{wrap(e.args[0], 3)}"
    return f"{k}({to_text(e.args[0])})"


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<number>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()]))"
)


def _tokenize(src):
    tokens = []
    pos = 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if m is None or m.end() == pos:
            # skip over trailing whitespace before declaring an error
            rest = src[pos:]
            if rest.strip() == "":
                break
            raise ExprSyntaxError(f"unexpected character {rest.strip()[0]!r}", pos)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(src)))
    return tokens


class _Parser:
    """Recursive-descent parser for the coefficient grammar.

    expr   := term (("+"|"-") term)*
    term   := factor (("*"|"/") factor)*
    factor := "-" factor | atom ("^" factor)?
    atom   := number | name | name "(" expr ")" | "(" expr ")"

    The power operator is right-associative and binds tighter than unary
    minus, so "-x^2" is -(x^2).
    """

    def __init__(self, src, params):
        self.tokens = _tokenize(src)
        self.pos = 0
        self.params = params

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op):
        kind, text, off = self.next()
        if kind != "op" or text != op:
            raise ExprSyntaxError(f"expected {op!r}, found {text!r}", off)

    def parse(self):
        e = self.expr()
        kind, text, off = self.peek()
        if kind != "end":
            raise ExprSyntaxError(f"unexpected trailing input {text!r}", off)
        return e

    def expr(self):
        e = self.term()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in "+-":
                self.next()
                rhs = self.term()
                e = add(e, rhs) if text == "+" else sub(e, rhs)
            else:
                return e

    def term(self):
        e = self.factor()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in "*/":
                self.next()
                rhs = self.factor()
                e = mul(e, rhs) if text == "*" else div(e, rhs)
            else:
                return e

    def factor(self):
        kind, text, _ = self.peek()
        if kind == "op" and text == "-":
            self.next()
            return neg(self.factor())
        e = self.atom()
        kind, text, _ = self.peek()
        if kind == "op" and text == "^":
            self.next()
            return pow_(e, self.factor())
        return e

    def atom(self):
        kind, text, off = self.next()
        if kind == "number":
            return num(float(text))
        if kind == "name":
            nk, ntext, _ = self.peek()
            if text in _FUNCTIONS:
                if nk == "op" and ntext == "(":
                    self.next()
                    arg = self.expr()
                    self.expect_op(")")
                    return func(text, arg)
                raise ExprSyntaxError(f"function {text!r} requires parentheses", off)
            if text == "x":
                return var_x()
            if text in self.params:
                return param(text, self.params[text])
            raise UnboundNameError(text, off)
        if kind == "op" and text == "(":
            e = self.expr()
            self.expect_op(")")
            return e
        raise ExprSyntaxError(f"unexpected token {text!r}", off)


def parse_expr(src, params=None):
    """Parse coefficient text into an Expr.

    Args:
        src: expression text in the grammar above.
        params: mapping of parameter names to values; every free name
            other than "x" must appear here.
    """
    return _Parser(src, dict(params or {})).parse()


# ---------------------------------------------------------------------------
# Accumulated-coefficient integral


def _probe_points(lo, hi):
    # strictly interior points, asymmetric so that even/odd families separate
    ts = (0.137, 0.294, 0.441, 0.568, 0.683, 0.779, 0.912)
    return [lo + t * (hi - lo) for t in ts]


def _detect_fast_path(B, lo, hi):
    """Match B against the closed-form families 0, const, a/x, a*x and
    a*x/(1-x^2) by numeric probing.  Returns (family, coefficient) or None.
    """
    pts = _probe_points(lo, hi)
    try:
        vals = [eval_expr(B, t) for t in pts]
    except DomainError:
        return None
    tol = 1e-12

    if all(abs(v) <= tol for v in vals):
        return ("zero", 0.0)
    if max(vals) - min(vals) <= tol * max(1.0, abs(vals[0])):
        return ("const", vals[0])

    def fit(transform):
        try:
            cs = [transform(t, v) for t, v in zip(pts, vals)]
        except ZeroDivisionError:
            return None
        c0 = cs[0]
        if all(abs(c - c0) <= 1e-10 * max(1.0, abs(c0)) for c in cs):
            return c0
        return None

    c = fit(lambda t, v: v * t)
    if c is not None:
        return ("a_over_x", c)
    c = fit(lambda t, v: v / t)
    if c is not None:
        return ("a_x", c)
    c = fit(lambda t, v: v * (1.0 - t * t) / t)
    if c is not None:
        return ("a_x_over_1mx2", c)
    return None


def _closed_form_integral(family, c, x0, x):
    lo, hi = min(x0, x), max(x0, x)
    if family == "zero":
        return 0.0
    if family == "const":
        return c * (x - x0)
    if family == "a_over_x":
        if lo <= 0.0 <= hi:
            raise DomainError("integration interval crosses the singularity at x=0")
        return c * (math.log(abs(x)) - math.log(abs(x0)))
    if family == "a_x":
        return 0.5 * c * (x * x - x0 * x0)
    if family == "a_x_over_1mx2":
        for s in (-1.0, 1.0):
            if lo <= s <= hi:
                raise DomainError(
                    f"integration interval crosses the singularity at x={s}")
        # int c*t/(1-t^2) dt = -(c/2) ln|1-t^2|
        return -0.5 * c * (math.log(abs(1.0 - x * x)) - math.log(abs(1.0 - x0 * x0)))
    raise ValueError(family)


def integral_of_B(B, x0, x):
    """Integral of the coefficient B from x0 to x.

    Closed forms are used for the catalog families (zero, constant, a/x,
    a*x, a*x/(1-x^2)); anything else goes through adaptive quadrature with
    an absolute target of 1e-12.  A coefficient singularity inside the
    interval raises DomainError.
    """
    if x == x0:
        return 0.0
    lo, hi = min(x0, x), max(x0, x)
    fast = _detect_fast_path(B, lo, hi)
    if fast is not None:
        return _closed_form_integral(fast[0], fast[1], x0, x)

    def f(t):
        return eval_expr(B, t)

    # surface singularities as DomainError before quad smears them out
    for t in _probe_points(lo, hi):
        f(t)
    val, err = quad(f, x0, x, epsabs=1e-12, epsrel=1e-12, limit=200)
    if not math.isfinite(val):
        raise DomainError("quadrature of B diverged")
    if err > 1e-8 * max(1.0, abs(val)):
        raise AccuracyError(f"quadrature error estimate {err:g} too large")
    return val
