"""Command-line front end: per-equation verification reports.

Two subcommands: `report` runs the full battery of identity checks on a
catalog equation, `custom` does the same for user-supplied coefficients.
Output is a human summary or a versioned JSON bundle, optionally with
per-check residual grids as CSV files.  Results are deterministic for
fixed inputs and seed.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import expr as ex
from .errors import (DomainError, ExprSyntaxError, GuardViolation,
                     UnboundNameError, VarlagrError)
from .helmholtz import ResidualForm, helmholtz_check, vbar_ansatz_check
from .lagrangians import (combined_lagrangian, fg_paths_from_vbar,
                          gauge_from_null, generic_nsl_el_coefficients,
                          hns_corollary6, hns_direct, mixed_lagrangian,
                          nonstandard_lagrangian, null_lagrangian_b0,
                          riccati_residual, riccati_scale,
                          standard_lagrangian,
                          u_path_from_vbar)
from .odes import (dhat_apply, make_airy, make_bessel, make_caldirola_kanai,
                   make_custom, make_hermite, make_legendre)
from .paths import random_smooth_paths
from .special import (Superposition, basis_for, denominator_guarded_grid,
                      guarded_solution_grid)
from .variational import (el_residual, el_wrt_vbar_obstruction,
                          recover_original, verify_ml_annihilation)

SCHEMA = "varlagr/1"

CATALOG = (
    "airy", "bessel-regular", "bessel-modified", "bessel-spherical",
    "bessel-modified-spherical", "legendre", "legendre-associated",
    "hermite", "caldirola-kanai",
)


def _make_equation(name, args):
    p = dict(args.params)
    if name == "airy":
        return make_airy()
    if name.startswith("bessel-"):
        kind = name[len("bessel-"):].replace("-", "_")
        if kind in ("spherical", "modified_spherical"):
            order = args.l if args.l is not None else int(p.get("l", 2))
        else:
            order = args.mu if args.mu is not None else float(p.get("mu", 1.0))
        return make_bessel(kind, order)
    if name == "legendre":
        l = args.l if args.l is not None else int(p.get("l", 2))
        return make_legendre(l, 0)
    if name == "legendre-associated":
        l = args.l if args.l is not None else int(p.get("l", 2))
        m = args.m if args.m is not None else int(p.get("m", 1))
        return make_legendre(l, m)
    if name == "hermite":
        n = args.n if args.n is not None else int(p.get("n", 2))
        return make_hermite(n)
    if name == "caldirola-kanai":
        return make_caldirola_kanai(float(p.get("gamma", 0.1)),
                                    float(p.get("omega", 1.0)))
    raise ValueError(f"unknown equation {name!r}")


def _render_E_s(ode):
    """Closed-form text of exp(int B) for the catalog equations."""
    name = ode.name
    if name == "airy":
        return "1"
    if name.startswith("bessel-"):
        return f"x^{ode.params['alpha']:g}"
    if name.startswith("legendre"):
        return "(1 - x^2)"
    if name == "hermite":
        return "exp(-x^2/2)"
    if name == "caldirola-kanai":
        return f"exp({ode.params['gamma']:g}*x)"
    return f"exp(int_{{{ode.x0:g}}}^x {ex.to_text(ode.B)} dt)"


def _is_b_zero(ode, grid):
    return max(abs(ode.B_at(x)) for x in grid) <= 1e-14


def _check(label, passed, worst, expected="PASS", note=""):
    return {
        "label": label,
        "verdict": "PASS" if passed else "FAIL",
        "expected": expected,
        "worst_residual": float(worst),
        "note": note,
    }


def _gauge_section(ode, grid, b_zero):
    """Gauge identity for L_m (or the B=0 null Lagrangian) plus the
    factor-of-two comparison against the stated 1/8 coefficient."""
    if b_zero:
        lag = null_lagrangian_b0(1.0)
        gauge = gauge_from_null(lag, grid=grid)
        text = "phi = 1/4*q*y^2 (q = 1)"
    else:
        lag = mixed_lagrangian(ode)
        gauge = gauge_from_null(lag, ode=ode, grid=grid)
        text = "phi = 1/4*B(x)*E_s(x)*y^2"
    # identity dphi/dx = L on sample states
    worst = 0.0
    for x in grid[:: max(1, len(grid) // 8)]:
        for (y, yp) in ((1.0, 0.5), (-0.7, 1.3)):
            l_val = lag.L(yp, y, x)
            r = abs(gauge.total_derivative(x, y, yp) - l_val)
            worst = max(worst, r / (1.0 + abs(l_val)))
    identity = _check("gauge_identity", worst <= 1e-9, worst)
    # the stated 1/8 coefficient is half the derived 1/4: ratio must be 1/2
    worst_ratio = 0.0
    found = False
    for x in grid[:: max(1, len(grid) // 8)]:
        l_val = lag.L(0.5, 1.0, x)
        if abs(l_val) < 1e-12:
            continue
        found = True
        stated = 0.5 * gauge.total_derivative(x, 1.0, 0.5)
        worst_ratio = max(worst_ratio, abs(stated / l_val - 0.5))
    factor = _check(
        "stated_gauge_factor", found and worst_ratio <= 1e-10, worst_ratio,
        expected="PASS",
        note="the stated 1/8 coefficient yields dphi/dx = L/2 exactly; "
             "ratio pinned at 1/2 to 1e-10")
    return {
        "text": text,
        "provenance": gauge.provenance,
        "stated_comparison": "fails the defining identity by a factor 2",
        "checks": [identity, factor],
    }


def _obstruction_check(ode, ysup, vbar, grid):
    good = total = 0
    worst_small = math.inf
    for x in grid:
        try:
            _, extra = el_wrt_vbar_obstruction(ode, ysup, vbar, x)
        except (GuardViolation, VarlagrError):
            continue
        total += 1
        if abs(extra) > 1e-3:
            good += 1
        else:
            worst_small = min(worst_small, abs(extra))
    frac = good / total if total else 0.0
    return _check(
        "obstruction_nonzero", frac >= 0.9, frac,
        note="fraction of guarded points with |vbar'/vbar - 2y'/y| > 1e-3")


def run_report(ode, args):
    """Run every check on one equation; returns (bundle, csv_blobs)."""
    rng = np.random.default_rng(args.seed)
    grid = ode.guarded_grid(args.grid)
    b_zero = _is_b_zero(ode, grid)
    checks = []
    csv_blobs = {}

    lag_s = standard_lagrangian(ode)
    lag_m = mixed_lagrangian(ode)
    lag_sm = combined_lagrangian(ode)

    # standard-Lagrangian identity EL(L_s) = Dhat(y) * E_s
    trials = random_smooth_paths(20, rng, ode.guarded_window())
    worst = 0.0
    rows = []
    for x in grid:
        r = 0.0
        for p in trials:
            got = el_residual(lag_s, p, x)
            want = dhat_apply(ode, p, x) * ode.E_s(x)
            r = max(r, abs(got - want) / (1.0 + abs(want)))
        rows.append((x, r))
        worst = max(worst, r)
    checks.append(_check("standard_el_identity", worst <= 1e-8, worst))
    csv_blobs["standard_el.csv"] = [("x", "residual")] + rows

    # mixed-Lagrangian annihilation
    ml = verify_ml_annihilation(ode, trials, grid=grid, mixed=lag_m)
    checks.append(_check("ml_annihilation", ml.passed, ml.norm))
    csv_blobs["ml_annihilation.csv"] = [("x", "residual")] + \
        list(zip(ml.grid, ml.residuals))

    gauge = _gauge_section(ode, grid, b_zero)
    checks.extend(gauge["checks"])

    # non-standard family
    basis = basis_for(ode)
    ysup = Superposition(args.c1, args.c2, basis)
    vbar = Superposition(args.cbar1, args.cbar2, basis)
    sol_grid = guarded_solution_grid(ode, [ysup, vbar], args.grid)

    u = u_path_from_vbar(ode, vbar)
    f, g = fg_paths_from_vbar(ode, vbar)
    worst_r = worst_c = 0.0
    rows = []
    for x in sol_grid:
        try:
            r = abs(riccati_residual(ode, u, x)) / riccati_scale(ode, u, x)
            p1, p0 = generic_nsl_el_coefficients(f, g, x)
            c = max(abs(p1 - ode.B_at(x)),
                    abs(p0 - ode.C_at(x))) / (1.0 + abs(ode.B_at(x))
                                              + abs(ode.C_at(x)))
        except (GuardViolation, ZeroDivisionError):
            continue
        rows.append((x, r))
        worst_r = max(worst_r, r)
        worst_c = max(worst_c, c)
    checks.append(_check("riccati_residual", worst_r <= 1e-8, worst_r))
    checks.append(_check("fg_el_coefficients", worst_c <= 1e-8, worst_c))
    csv_blobs["riccati.csv"] = [("x", "residual")] + rows

    rec = recover_original(ode, ysup, vbar, sol_grid)
    checks.append(_check("nsl_recovery", rec.passed, rec.norm))
    csv_blobs["recovery.csv"] = [("x", "residual")] + \
        list(zip(rec.grid, rec.residuals))

    try:
        cor_grid = denominator_guarded_grid(ode, ysup, vbar, 32)
        worst = 0.0
        rows = []
        for x in cor_grid:
            d = hns_direct(ysup, vbar, x)
            r = abs(d - hns_corollary6(ysup, vbar, x)) / abs(d)
            rows.append((x, r))
            worst = max(worst, r)
        checks.append(_check("corollary6_agreement", worst <= 1e-10, worst))
        csv_blobs["corollary6.csv"] = [("x", "residual")] + rows
    except GuardViolation as exc:
        checks.append(_check("corollary6_agreement", False, math.inf,
                             note=str(exc)))

    checks.append(_obstruction_check(ode, ysup, vbar, sol_grid))

    # Helmholtz battery
    helm = {}
    for mult in ("one", "E_s", "vbar_E_ns"):
        form = ResidualForm(ode, mult, vbar=vbar if mult == "vbar_E_ns" else None)
        rep = helmholtz_check(form, sol_grid)
        if mult == "one":
            expected = "PASS" if b_zero else "FAIL"
        elif mult == "E_s":
            expected = "PASS"
        else:
            expected = "INFO"
        helm[mult] = {
            "report": json.loads(rep.to_json()),
            "expected_condition3": expected,
        }
        if expected != "INFO":
            checks.append(_check(
                f"helmholtz_{mult}", rep.condition3 == "PASS",
                rep.worst_residual, expected=expected,
                note="condition 3 verdict compared against expectation"))
    ansatz = vbar_ansatz_check(ode, sol_grid)
    checks.append(_check("vbar_ansatz_equivalence", ansatz["equivalent"],
                         max(ansatz["aux_residual"],
                             ansatz["subset_residual"]),
                         note="aux and subset residuals vanish together"))

    nsl = nonstandard_lagrangian(ode, vbar, grid_for_guard=sol_grid)
    bundle = {
        "schema": SCHEMA,
        "equation": {
            "name": ode.name,
            "B": ex.to_text(ode.B),
            "C": ex.to_text(ode.C),
            "domain": [ode.domain[0], ode.domain[1]],
            "window": [ode.window[0], ode.window[1]],
            "x0": ode.x0,
            "params": {k: ode.params[k] for k in sorted(ode.params)},
        },
        "lagrangians": {
            "E_s": _render_E_s(ode),
            "L_s": lag_s.text,
            "L_m": lag_m.text + ("  (identically zero here since B = 0)"
                                 if b_zero else ""),
            "L_sm": lag_sm.text,
            "L_ns": nsl.text,
        },
        "gauge": {k: gauge[k] for k in ("text", "provenance",
                                        "stated_comparison")},
        "helmholtz": helm,
        "superposition": {"c1": args.c1, "c2": args.c2,
                          "cbar1": args.cbar1, "cbar2": args.cbar2,
                          "basis": list(basis.labels)},
        "seed": args.seed,
        "grid_points": args.grid,
        "checks": checks,
    }
    return bundle, csv_blobs


def _write_outputs(bundle, csv_blobs, args):
    if args.csv_dir:
        os.makedirs(args.csv_dir, exist_ok=True)
        with open(os.path.join(args.csv_dir, "report.json"), "w") as fh:
            fh.write(json.dumps(bundle, sort_keys=True, indent=2) + "\n")
        for fname, rows in sorted(csv_blobs.items()):
            with open(os.path.join(args.csv_dir, fname), "w") as fh:
                for row in rows:
                    fh.write(",".join(
                        c if isinstance(c, str) else repr(float(c))
                        for c in row) + "\n")
    if args.json:
        sys.stdout.write(json.dumps(bundle, sort_keys=True, indent=2) + "\n")
    else:
        eq = bundle["equation"]
        print(f"equation: {eq['name']}   B = {eq['B']}   C = {eq['C']}")
        print(f"E_s = {bundle['lagrangians']['E_s']}")
        for key in ("L_s", "L_m", "L_sm", "L_ns"):
            print(f"  {bundle['lagrangians'][key]}")
        print(f"gauge: {bundle['gauge']['text']} "
              f"[{bundle['gauge']['provenance']}]; stated 1/8 coefficient "
              f"{bundle['gauge']['stated_comparison']}")
        for chk in bundle["checks"]:
            tag = "ok " if chk["verdict"] == chk["expected"] else "BAD"
            print(f"  [{tag}] {chk['label']:28s} {chk['verdict']:4s} "
                  f"(expected {chk['expected']}, "
                  f"worst {chk['worst_residual']:.3e})")


def _exit_code(bundle):
    for chk in bundle["checks"]:
        if chk["verdict"] != chk["expected"]:
            return 1
    return 0


def _parse_params(pairs):
    params = {}
    for item in pairs or ():
        if "=" not in item:
            raise ValueError(f"-p expects name=value, got {item!r}")
        key, _, val = item.partition("=")
        params[key.strip()] = float(val)
    return params


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="varlagr",
        description="Lagrangian construction and verification for linear "
                    "second-order equations solved by special functions")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--grid", type=int, default=64,
                        help="number of grid points (default 64)")
        sp.add_argument("--c1", type=float, default=1.0)
        sp.add_argument("--c2", type=float, default=0.5)
        sp.add_argument("--cbar1", type=float, default=0.25)
        sp.add_argument("--cbar2", type=float, default=1.0)
        sp.add_argument("--seed", type=int, default=42)
        sp.add_argument("--json", action="store_true",
                        help="print the JSON report bundle to stdout")
        sp.add_argument("--csv-dir", default=None,
                        help="directory for report.json and residual CSVs")
        sp.add_argument("-p", dest="raw_params", action="append",
                        metavar="NAME=VALUE", help="equation parameter")

    rep = sub.add_parser("report", help="verify a catalog equation")
    rep.add_argument("equation", choices=CATALOG)
    rep.add_argument("--mu", type=float, default=None,
                     help="order for the cylindrical Bessel kinds")
    rep.add_argument("--l", type=int, default=None,
                     help="degree for Legendre / spherical Bessel")
    rep.add_argument("--m", type=int, default=None,
                     help="order for associated Legendre")
    rep.add_argument("--n", type=int, default=None, help="Hermite index")
    common(rep)

    cus = sub.add_parser("custom", help="verify user-supplied coefficients")
    cus.add_argument("--B", required=True, help="coefficient B(x)")
    cus.add_argument("--C", required=True, help="coefficient C(x)")
    cus.add_argument("--domain", nargs=2, type=float, required=True,
                     metavar=("A", "B"))
    cus.add_argument("--window", nargs=2, type=float, default=None,
                     metavar=("LO", "HI"))
    common(cus)
    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        args.params = _parse_params(args.raw_params)
        if args.command == "report":
            args.mu = getattr(args, "mu", None)
            ode = _make_equation(args.equation, args)
        else:
            args.mu = args.l = args.m = args.n = None
            B = ex.parse_expr(args.B, args.params)
            C = ex.parse_expr(args.C, args.params)
            ode = make_custom(B, C, tuple(args.domain), params=args.params,
                              window=tuple(args.window) if args.window
                              else None)
    except (ExprSyntaxError, UnboundNameError) as exc:
        offset = getattr(exc, "offset", None)
        where = f" (offset {offset})" if offset is not None else ""
        print(f"error: {exc}{where}", file=sys.stderr)
        return 2
    except (ValueError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        bundle, csv_blobs = run_report(ode, args)
    except (VarlagrError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _write_outputs(bundle, csv_blobs, args)
    return _exit_code(bundle)


if __name__ == "__main__":
    sys.exit(main())
