"""``fractal-calc`` command-line frontend.

Usage::

    fractal-calc diff monomial:1 0 --alpha 0.5 --method limit
    fractal-calc integrate const:1 0 1 --alpha 0.5 --backend literal --partitions 4
    fractal-calc solve affine:1:0.5 2 --alpha 0.5 --mode fixed
    fractal-calc taylor mittag-leffler 0.25 --alpha 0.5 --terms 40
    fractal-calc holder weierstrass:0.5:3 0.37
    fractal-calc check-metric --alpha 0.5 --dim 1 --points tri.csv
    fractal-calc catalog --alpha 0.5

Function specs: a catalog name (``exp``, ``cos``, ``sq-minus-2``,
``identity``, ``mittag-leffler``, ``monomial:K``, ``monomial-minus-one:K``,
``weierstrass:A:B[:K]``), ``affine:C:B``, ``const:V`` or
``series:[c0,c1,...]@center``.

Exit codes: 0 success, 1 the method ran but the property failed
(non-convergence, metric violation), 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import os
import re
import sys
from typing import Optional

import numpy as np

from . import testlib
from .errors import FractalCalcError
from .fractal_number import FractalNumber, FractalPoint, check_order, fn_metric, fn_metric_n
from .fractal_series import (
    FractalPowerSeries,
    RemainderBound,
    series_eval,
    series_eval_detailed,
    series_lfd,
    taylor_remainder,
)
from .numerics import (
    QuadratureSpec,
    StepSchedule,
    holder_fit,
    lf_integral,
    lfd_limit_estimate,
    series_form,
)
from .solver import IterationSettings, fixed_point_solve, newton_solve

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2

LITERAL_WARNING = (
    "warning: the literal partition-sum backend takes no refinement limit; "
    "for alpha < 1 its value grows like N**(1 - alpha) with the partition count N"
)

_BACKENDS = {"literal": "literal_eq3", "measure": "measure", "series": "series"}


class UsageError(Exception):
    pass


# --------------------------------------------------------------------------
# function specs


_SERIES_RE = re.compile(r"^series:\[(?P<coeffs>[^\]]*)\](?:@(?P<center>.+))?$")


def _num(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise UsageError(f"not a number: {text!r}") from None
    if not math.isfinite(v):
        raise UsageError(f"not a finite number: {text!r}")
    return v


def _series_function(s: FractalPowerSeries, name: str) -> testlib.TestFunction:
    return testlib.TestFunction(name=name, callable=s, series_form=s, valid_alpha=frozenset({s.alpha}))


def resolve_function(text: str, alpha: float) -> testlib.TestFunction:
    """Turn a command-line function spec into a :class:`TestFunction`."""
    m = _SERIES_RE.match(text)
    if m:
        raw = [c for c in m.group("coeffs").split(",") if c.strip()]
        if not raw:
            raise UsageError("series literal needs at least one coefficient")
        center = _num(m.group("center")) if m.group("center") else 0.0
        return _series_function(FractalPowerSeries(alpha, center, tuple(_num(c) for c in raw)), text)
    head, _, rest = text.partition(":")
    args = rest.split(":") if rest else []
    try:
        if head == "const" and len(args) == 1:
            return _series_function(FractalPowerSeries(alpha, 0.0, (_num(args[0]),)), text)
        if head == "affine" and len(args) == 2:
            return testlib.affine_fractal(_num(args[0]), _num(args[1]), alpha)
        if head == "monomial" and len(args) == 1:
            return testlib.monomial(int(args[0]), alpha)
        if head == "monomial-minus-one" and len(args) == 1:
            return testlib.monomial_minus_one(int(args[0]), alpha)
        if head == "weierstrass" and len(args) in (0, 2, 3):
            params = [_num(a) for a in args[:2]] or [0.5, 3.0]
            K = int(args[2]) if len(args) == 3 else 30
            return testlib.weierstrass(params[0], params[1], K)
    except ValueError as exc:
        raise UsageError(f"bad function spec {text!r}: {exc}") from None
    if not args:
        if text == "mittag-leffler":
            return testlib.mittag_leffler_function(alpha)
        if text == "identity":
            return testlib.identity()
        for tf in testlib.classical():
            if tf.name == text:
                return tf
    raise UsageError(f"unknown function {text!r}")


# --------------------------------------------------------------------------
# rendering


def _precision() -> int:
    try:
        return max(1, int(os.environ.get("FRACTAL_CALC_PRECISION", "8")))
    except ValueError:
        return 8


def _fmt(v, digits: int) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, float):
        return f"{v:.{digits}g}"
    return str(v)


def _table(header, rows, digits) -> str:
    cells = [list(header)] + [[_fmt(v, digits) for v in r] for r in rows]
    widths = [max(len(c[i]) for c in cells) for i in range(len(header))]
    lines = ["  ".join(c[i].rjust(widths[i]) for i in range(len(header))) for c in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _summary(pairs, digits) -> str:
    width = max(len(k) for k, _ in pairs)
    return "\n".join(f"{k.ljust(width)}  {_fmt(v, digits)}" for k, v in pairs)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow(["" if v is None else repr(v) if isinstance(v, float) else v for v in r])
    return buf.getvalue().rstrip("\n")


class Rendered:
    """A command result: json payload, summary pairs and an optional table."""

    def __init__(self, payload, summary, header=(), rows=(), exit_code=EXIT_OK):
        self.payload = payload
        self.summary = summary
        self.header = tuple(header)
        self.rows = [tuple(r) for r in rows]
        self.exit_code = exit_code

    def render(self, fmt: str) -> str:
        digits = _precision()
        if fmt == "json":
            return json.dumps(self.payload, indent=2)
        if fmt == "csv":
            if self.header:
                return _csv(self.header, self.rows)
            keys = [k for k, _ in self.summary]
            return _csv(keys, [[v for _, v in self.summary]])
        out = _summary(self.summary, digits)
        if self.header:
            out += "\n\n" + _table(self.header, self.rows, digits)
        return out


# --------------------------------------------------------------------------
# commands


def cmd_diff(args) -> Rendered:
    alpha = args.alpha
    tf = resolve_function(args.function, alpha)
    x0 = _num(args.x0)
    sched = StepSchedule.parse(args.schedule) if args.schedule else StepSchedule()
    base = {"command": "diff", "method": args.method, "function": args.function, "x0": x0, "alpha": alpha}
    if args.method == "limit":
        est = lfd_limit_estimate(tf.callable, x0, alpha, sched)
        payload = dict(base, estimate=est.estimate, converged=est.converged,
                       trail=[{"h": h, "quotient": q} for h, q in zip(est.steps, est.trail)])
        summary = [("method", "limit"), ("x0", x0), ("alpha", alpha),
                   ("estimate", est.estimate), ("converged", est.converged)]
        rows = [(i, h, q) for i, (h, q) in enumerate(zip(est.steps, est.trail))]
        return Rendered(payload, summary, ("i", "h", "quotient"), rows)
    if args.method == "series":
        s = series_form(tf)
        if s is None:
            raise UsageError(f"{args.function!r} has no series form; use --method limit or holder")
        value = series_eval(series_lfd(s), x0)
        payload = dict(base, estimate=value, converged=True)
        summary = [("method", "series"), ("x0", x0), ("alpha", alpha), ("estimate", value)]
        return Rendered(payload, summary)
    fit = holder_fit(tf.callable, x0, sched)
    payload = dict(base, estimate=fit.exponent, converged=True, **_fit_dict(fit))
    return Rendered(payload, [("method", "holder"), ("x0", x0)] + list(_fit_dict(fit).items()))


def _fit_dict(fit) -> dict:
    return {"exponent": fit.exponent, "log_coefficient": fit.log_coefficient,
            "r_squared": fit.r_squared, "samples": fit.samples}


def cmd_integrate(args) -> Rendered:
    alpha = args.alpha
    tf = resolve_function(args.function, alpha)
    a, b = _num(args.a), _num(args.b)
    backend = _BACKENDS[args.backend]
    if backend == "literal_eq3":
        print(LITERAL_WARNING, file=sys.stderr)
    value = lf_integral(tf, a, b, alpha, QuadratureSpec(backend, args.partitions))
    payload = {"command": "integrate", "function": args.function, "a": a, "b": b, "alpha": alpha,
               "backend": args.backend, "partitions": args.partitions, "value": value}
    summary = [("backend", args.backend), ("a", a), ("b", b), ("alpha", alpha),
               ("partitions", args.partitions), ("value", value)]
    return Rendered(payload, summary)


def cmd_solve(args) -> Rendered:
    alpha = args.alpha
    tf = resolve_function(args.function, alpha)
    settings = IterationSettings(max_iter=args.max_iter, tol=args.tol, alpha=alpha,
                                 contraction_window=args.window)
    x0 = _num(args.x0)
    if args.mode == "fixed":
        report = fixed_point_solve(tf.callable, x0, settings)
    else:
        if series_form(tf) is None and tf.derivative is None:
            raise UsageError(f"{args.function!r} has neither a series form nor a derivative")
        report = newton_solve(tf, x0, settings, variant=args.variant)
    steps = report.trace.fractal_steps
    ratios = report.trace.ratio_sequence
    rows = []
    for k, x in enumerate(report.trace.iterates):
        step = steps[k - 1] if k >= 1 else None
        ratio = ratios[k - 2] if k >= 2 else None
        rows.append((k, x, step, ratio))
    summary = [("status", report.status), ("root", report.root), ("residual", report.residual),
               ("iterations", report.iterations), ("L_hat", report.contraction.L_hat),
               ("a_posteriori", report.a_posteriori)]
    code = EXIT_OK if report.converged else EXIT_FAILED
    return Rendered(report.to_dict(), summary, ("k", "x", "step", "ratio"), rows, exit_code=code)


def _sup_abs(s: FractalPowerSeries, lo: float, hi: float, n: int = 17) -> float:
    return max(abs(series_eval(s, float(t))) for t in np.linspace(lo, hi, n))


def cmd_taylor(args) -> Rendered:
    alpha = args.alpha
    tf = resolve_function(args.function, alpha)
    full = series_form(tf)
    if full is None:
        raise UsageError(f"{args.function!r} has no series form")
    x = _num(args.x)
    K = min(args.terms, full.truncation)
    ev = series_eval_detailed(FractalPowerSeries(alpha, full.center, full.coeffs[: K + 1]), x)
    radius = abs(x - full.center)
    lo, hi = sorted((full.center, x))
    rows, partial = [], []
    for k in range(K + 1):
        partial.append(ev.terms[k])
        tail = full.coeffs[k + 1:]
        # M: sup of the (k+1)-th derivative series over the segment, sampled
        M = _sup_abs(FractalPowerSeries(alpha, full.center, tail), lo, hi) if tail else 0.0
        rem = taylor_remainder(RemainderBound(M, k + 1, radius, alpha))
        rows.append((k, full.coeffs[k], ev.terms[k], math.fsum(partial), rem))
    remainder = rows[-1][4]
    payload = {"command": "taylor", "function": args.function, "x": x, "alpha": alpha, "terms": K,
               "value": ev.value, "remainder": remainder, "underflowed": list(ev.underflowed),
               "rows": [dict(zip(("k", "coeff", "term", "partial_sum", "remainder"), r)) for r in rows]}
    summary = [("x", x), ("alpha", alpha), ("terms", K), ("value", ev.value), ("remainder", remainder)]
    return Rendered(payload, summary, ("k", "coeff", "term", "partial_sum", "remainder"), rows)


def cmd_holder(args) -> Rendered:
    tf = resolve_function(args.function, args.alpha)
    x0 = _num(args.x0)
    sched = StepSchedule.parse(args.schedule) if args.schedule else StepSchedule()
    fit = holder_fit(tf.callable, x0, sched)
    payload = {"command": "holder", "function": args.function, "x0": x0, **_fit_dict(fit)}
    return Rendered(payload, [("x0", x0)] + list(_fit_dict(fit).items()))


def read_points(path: str, dim: int) -> list:
    """Rows of base coordinates from a CSV file; an optional header row is skipped."""
    try:
        with open(path, newline="") as fh:
            raw = [r for r in csv.reader(fh) if r and any(c.strip() for c in r)]
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    rows = []
    for i, r in enumerate(raw):
        try:
            vals = [float(c) for c in r]
        except ValueError:
            if i == 0:
                continue
            raise UsageError(f"{path}: row {i + 1} is not numeric") from None
        if len(vals) != dim or not all(math.isfinite(v) for v in vals):
            raise UsageError(f"{path}: row {i + 1} must hold {dim} finite numbers")
        rows.append(vals)
    if not rows:
        raise UsageError(f"{path}: no points")
    return rows


def find_metric_violations(points, metric, rtol: float = 1e-12) -> list:
    """Check non-negativity, symmetry, identity and the triangle inequality.

    Returns a list of ``{"i", "j", "k", "axiom"}`` dicts (empty when the
    metric passes on every triple).
    """
    n = len(points)
    d = [[metric(points[i], points[j]) for j in range(n)] for i in range(n)]
    bad = []
    for i, j in itertools.product(range(n), repeat=2):
        if d[i][j] < 0:
            bad.append({"i": i, "j": j, "k": None, "axiom": "non-negativity"})
        if abs(d[i][j] - d[j][i]) > rtol * max(abs(d[i][j]), abs(d[j][i])):
            bad.append({"i": i, "j": j, "k": None, "axiom": "symmetry"})
        if i == j and d[i][j] != 0:
            bad.append({"i": i, "j": j, "k": None, "axiom": "identity"})
    for i, j, k in itertools.product(range(n), repeat=3):
        rhs = d[i][j] + d[j][k]
        if d[i][k] > rhs * (1 + rtol):
            bad.append({"i": i, "j": j, "k": k, "axiom": "triangle"})
    return bad


def cmd_check_metric(args) -> Rendered:
    alpha = args.alpha
    rows = read_points(args.points, args.dim)
    if args.dim == 1:
        pts = [FractalNumber(r[0], alpha) for r in rows]
        metric = fn_metric
    else:
        pts = [FractalPoint(tuple(r), alpha) for r in rows]
        metric = fn_metric_n
    bad = find_metric_violations(pts, metric)
    n = len(pts)
    payload = {"command": "check-metric", "alpha": alpha, "dim": args.dim, "points": n,
               "triples_checked": n**3, "ok": not bad, "violations": bad}
    summary = [("alpha", alpha), ("dim", args.dim), ("points", n), ("triples_checked", n**3),
               ("violations", len(bad))]
    table = [(v["i"], v["j"], v["k"], v["axiom"]) for v in bad]
    return Rendered(payload, summary, ("i", "j", "k", "axiom") if bad else (), table,
                    exit_code=EXIT_FAILED if bad else EXIT_OK)


def cmd_catalog(args) -> Rendered:
    entries = testlib.catalog_json(args.alpha)
    rows = [(e["name"], e["known_root"], e["known_fixed_point"], e["known_holder_exponent"])
            for e in entries]
    return Rendered(entries, [("alpha", args.alpha), ("functions", len(entries))],
                    ("name", "known_root", "known_fixed_point", "known_holder_exponent"), rows)


# --------------------------------------------------------------------------
# argument parsing


def _alpha(text: str) -> float:
    try:
        return check_order(float(text))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--alpha", type=_alpha, default=1.0, help="fractal order in (0, 1] (default 1)")
    common.add_argument("--format", choices=("table", "json", "csv"), default="table")
    common.add_argument("--output", default=None, help="write to this file instead of stdout")

    p = argparse.ArgumentParser(prog="fractal-calc", description="Local fractional calculus toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("diff", parents=[common], help="local fractional derivative at a point")
    d.add_argument("function")
    d.add_argument("x0")
    d.add_argument("--method", choices=("limit", "series", "holder"), default="limit")
    d.add_argument("--schedule", help="step schedule h0:ratio:count (default 0.1:0.5:20)")
    d.set_defaults(run=cmd_diff)

    i = sub.add_parser("integrate", parents=[common], help="local fractional integral over [a, b]")
    i.add_argument("function")
    i.add_argument("a")
    i.add_argument("b")
    i.add_argument("--backend", choices=tuple(_BACKENDS), default="series")
    i.add_argument("--partitions", type=int, default=1000)
    i.set_defaults(run=cmd_integrate)

    s = sub.add_parser(
        "solve", parents=[common], help="fixed-point or Newton iteration",
        description="Default --tol is (1e-10)**alpha, a threshold on the fractal step |x_{k+1}-x_k|**alpha.",
    )
    s.add_argument("function", help="the map phi (fixed mode) or the function f (newton mode)")
    s.add_argument("x0")
    s.add_argument("--mode", choices=("fixed", "newton"), default="fixed")
    s.add_argument("--variant", choices=("base", "fractal"), default="base")
    s.add_argument("--tol", type=float, default=None)
    s.add_argument("--max-iter", type=int, default=200)
    s.add_argument("--window", type=int, default=5, help="contraction window (default 5)")
    s.set_defaults(run=cmd_solve)

    t = sub.add_parser("taylor", parents=[common], help="truncated series value with remainder bounds")
    t.add_argument("function")
    t.add_argument("x")
    t.add_argument("--terms", type=int, default=20, help="highest retained index K")
    t.set_defaults(run=cmd_taylor)

    h = sub.add_parser("holder", parents=[common], help="log-log Hölder exponent fit")
    h.add_argument("function")
    h.add_argument("x0")
    h.add_argument("--schedule", help="step schedule h0:ratio:count")
    h.set_defaults(run=cmd_holder)

    c = sub.add_parser("check-metric", parents=[common], help="verify metric axioms on a point file")
    c.add_argument("--dim", type=int, default=1)
    c.add_argument("--points", required=True, help="CSV of base coordinates, one point per row")
    c.set_defaults(run=cmd_check_metric)

    g = sub.add_parser("catalog", parents=[common], help="list the test-function catalog")
    g.set_defaults(run=cmd_catalog)
    return p


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.run(args)
    except (UsageError, FractalCalcError, ValueError, OverflowError) as exc:
        print(f"fractal-calc {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = result.render(args.format) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
