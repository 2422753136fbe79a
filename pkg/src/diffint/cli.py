"""Command-line front end: closed-form results and plot-ready CSV/JSON tables.

Subcommands: ``diff`` (closed form), ``eval`` (numeric/symbolic samples),
``zeta-demo``, ``gamma-demo``, ``transform``, ``solve``, ``series``,
``complimentary``.  Exit code is 0 iff no row-level errors were emitted;
with ``--format json`` hard failures print a machine-readable error object.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from .errors import DiffintError, NonConvergenceError
from .expr import evaluate, try_evaluate
from .parsing import format_expr, parse_expr, parse_expr_with_variable, parse_rhs
from .quadrature import (
    MINUS_INF,
    QuadratureSpec,
    differint_numeric,
    differint_numeric_continued,
)
from .rules import complimentary_coefficients, differintegrate
from .special import gamma as gamma_fn
from .special import riemann_zeta
from .transforms import TransformRequest, fourier_differint, laplace_frac
from .volterra import FDEProblem, picard_series, solve_fde


def _parse_complex(text: str) -> complex:
    text = text.strip()
    try:
        return complex(float(text))
    except ValueError:
        pass
    t = text.replace("i", "j").strip("()")
    return complex(t)


def _parse_values(text: str) -> list[float]:
    """Either ``a:b:step`` (inclusive endpoint within half a step) or ``v1,v2,...``."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise argparse.ArgumentTypeError("ranges are start:stop:step")
        start, stop, step = (float(p) for p in parts)
        if step <= 0:
            raise argparse.ArgumentTypeError("range step must be positive")
        n = int(math.floor((stop - start) / step + 1e-9)) + 1
        if n < 1:
            raise argparse.ArgumentTypeError("empty range")
        return [start + i * step for i in range(n)]
    return [float(v) for v in text.split(",") if v.strip()]


def _parse_lower(text: str) -> float:
    if text.strip() in ("-inf", "-INF", "-Inf"):
        return MINUS_INF
    return float(text)


def _add_output_args(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None, help="write output to PATH instead of stdout")


def _add_quad_args(p: argparse.ArgumentParser):
    p.add_argument("--nodes", type=int, default=64)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--window", type=float, default=60.0)
    p.add_argument("--lower", type=_parse_lower, default=0.0, help="lower bound c or -inf")


def _spec_from(args) -> QuadratureSpec:
    return QuadratureSpec(
        node_count=args.nodes,
        tolerance=args.tol,
        lower_bound=args.lower,
        truncation_window=args.window,
    )


def _alphas_from(args) -> list[complex]:
    if getattr(args, "alpha_range", None):
        return [complex(v) for v in _parse_values(args.alpha_range)]
    if args.alpha is None:
        raise argparse.ArgumentTypeError("--alpha or --alpha-range is required")
    return [_parse_complex(args.alpha)]


class _Table:
    """Accumulates rows plus per-row errors; renders csv or json."""

    def __init__(self, columns: list[str]):
        self.columns = columns
        self.rows: list[dict] = []
        self.had_error = False

    def add(self, **cells):
        if "error" in cells and cells["error"]:
            self.had_error = True
        self.rows.append(cells)

    def _cell_csv(self, v) -> str:
        if v is None:
            return ""
        if isinstance(v, complex):
            return repr(v)
        if isinstance(v, float):
            return f"{v:.12g}"
        return str(v)

    def render(self, fmt: str) -> str:
        if fmt == "json":
            body = []
            for row in self.rows:
                out = {}
                for c in self.columns:
                    v = row.get(c)
                    if isinstance(v, complex):
                        out[c] = {"re": v.real, "im": v.imag}
                    else:
                        out[c] = v
                if row.get("error"):
                    out["error"] = row["error"]
                body.append(out)
            return json.dumps({"columns": self.columns, "rows": body}, indent=2)
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        for row in self.rows:
            w.writerow([self._cell_csv(row.get(c)) for c in self.columns])
        return buf.getvalue()


def _emit(args, text: str):
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _fail(args, exc: Exception) -> int:
    if getattr(args, "format", "csv") == "json":
        payload = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        _emit(args, json.dumps(payload, indent=2))
    else:
        print(f"error: {exc}", file=sys.stderr)
    return 2


def _numeric_value(e, alpha: complex, x: float, spec: QuadratureSpec):
    """(value, est_error) through the plain or lifted quadrature as needed."""
    try:
        if alpha.real > 0:
            return differint_numeric(e, alpha, x, spec), spec.tolerance
        return differint_numeric_continued(e, alpha, x, spec), spec.tolerance
    except NonConvergenceError as exc:
        if exc.last_estimates is None:
            raise
        a, b = exc.last_estimates
        return b, abs(b - a)


# ---- subcommands ----------------------------------------------------------


def _cmd_diff(args) -> int:
    expr, var = parse_expr_with_variable(args.expression)
    res = differintegrate(expr, _parse_complex(args.alpha), distributional_phase=args.distributional_phase)
    if args.format == "json":
        payload = {
            "expr": format_expr(res.expr, var),
            "rules": list(res.rules_applied),
            "notes": list(res.branch_notes),
        }
        if args.table:
            tab = _diff_table(res.expr, args)
            payload["table"] = json.loads(tab.render("json"))
            if tab.had_error:
                _emit(args, json.dumps(payload, indent=2))
                return 1
        _emit(args, json.dumps(payload, indent=2))
        return 0
    lines = [format_expr(res.expr, var)]
    for note in res.branch_notes:
        lines.append(f"# note: {note}")
    if args.table:
        tab = _diff_table(res.expr, args)
        lines.append(tab.render("csv").rstrip("\n"))
        _emit(args, "\n".join(lines))
        return 1 if tab.had_error else 0
    _emit(args, "\n".join(lines))
    return 0


def _diff_table(expr, args) -> _Table:
    tab = _Table(["z", "re", "im"])
    for z in _parse_values(args.z or "0.5:2.0:0.5"):
        try:
            v = evaluate(expr, z)
            tab.add(z=z, re=v.real, im=v.imag)
        except DiffintError as exc:
            tab.add(z=z, re=None, im=None, error=str(exc))
    return tab


def _cmd_eval(args) -> int:
    expr = parse_expr(args.expression)
    spec = _spec_from(args)
    alphas = _alphas_from(args)
    both = args.engine == "both"
    # the fixed schema stays a bit-exact prefix; sweep/diff columns append
    cols = ["x", "re", "im", "engine", "est_error"]
    if both:
        cols.append("abs_diff")
    if len(alphas) > 1:
        cols.append("alpha")
    tab = _Table(cols)
    for alpha in alphas:
        for x in _parse_values(args.z):
            row: dict = {"x": x}
            if len(alphas) > 1:
                row["alpha"] = alpha.real if alpha.imag == 0 else alpha
            try:
                sym = num = None
                if args.engine in ("symbolic", "both"):
                    sym = evaluate(differintegrate(expr, alpha).expr, x)
                if args.engine in ("numeric", "both"):
                    num, est = _numeric_value(expr, alpha, x, spec)
                if args.engine == "symbolic":
                    row.update(re=sym.real, im=sym.imag, engine="symbolic", est_error=0.0)
                elif args.engine == "numeric":
                    row.update(re=num.real, im=num.imag, engine="numeric", est_error=est)
                else:
                    row.update(
                        re=num.real,
                        im=num.imag,
                        engine="both",
                        est_error=est,
                        abs_diff=abs(num - sym),
                    )
            except DiffintError as exc:
                row.update(re=None, im=None, engine=args.engine, est_error=None, error=str(exc))
            tab.add(**row)
    _emit(args, tab.render(args.format))
    return 1 if tab.had_error else 0


def _cmd_zeta_demo(args) -> int:
    spec = _spec_from(args)
    if spec.lower_bound != MINUS_INF:
        spec = QuadratureSpec(
            node_count=spec.node_count,
            tolerance=spec.tolerance,
            lower_bound=MINUS_INF,
            truncation_window=spec.truncation_window,
        )
    tab = _Table(["s", "differint_re", "differint_im", "oracle", "abs_diff"])
    bose = parse_expr("bose(z)")
    for s in _parse_values(args.s):
        try:
            if s <= 1.0:
                raise DiffintError(f"zeta identity needs Re s > 1, got {s}")
            val, _ = _numeric_value(bose, complex(s), 0.0, spec)
            oracle = riemann_zeta(s).real
            tab.add(
                s=s,
                differint_re=val.real,
                differint_im=val.imag,
                oracle=oracle,
                abs_diff=abs(val - oracle),
            )
        except DiffintError as exc:
            tab.add(s=s, differint_re=None, differint_im=None, oracle=None, error=str(exc))
    _emit(args, tab.render(args.format))
    return 1 if tab.had_error else 0


def _cmd_gamma_demo(args) -> int:
    spec = _spec_from(args)
    tab = _Table(["s", "differint_re", "differint_im", "oracle", "abs_diff"])
    for a in [v.real for v in _alphas_from(args)]:
        try:
            if a <= 0:
                raise DiffintError(f"gamma identity needs alpha > 0, got {a}")
            # Gamma(a) recovered as Gamma(a) * S^a[e^z] at 0 with lower bound -inf
            win = QuadratureSpec(
                node_count=spec.node_count,
                tolerance=spec.tolerance,
                lower_bound=MINUS_INF,
                truncation_window=spec.truncation_window,
            )
            ident = differint_numeric(parse_expr("exp(z)"), complex(a), 0.0, win)
            val = gamma_fn(a) * ident
            oracle = gamma_fn(a).real
            tab.add(
                s=a,
                differint_re=val.real,
                differint_im=val.imag,
                oracle=oracle,
                abs_diff=abs(val - oracle),
            )
        except DiffintError as exc:
            tab.add(s=a, differint_re=None, differint_im=None, oracle=None, error=str(exc))
    _emit(args, tab.render(args.format))
    return 1 if tab.had_error else 0


def _cmd_transform(args) -> int:
    expr = parse_expr(args.expression)
    spec = QuadratureSpec(
        node_count=args.nodes,
        tolerance=args.tol,
        lower_bound=MINUS_INF,
        truncation_window=args.window,
    )
    if args.s is None and args.omega is None:
        return _fail(args, DiffintError("transform needs sample points: --s (laplace) or --omega (fourier)"))
    points = _parse_values(args.s if args.s is not None else args.omega)
    req = TransformRequest(
        f=expr,
        alpha=float(args.alpha),
        points=tuple(points),
        engine=args.engine,
        spec=spec,
    )
    label = "s" if args.kind == "laplace" else "omega"
    tab = _Table([label, "re", "im", "engine"])
    try:
        pairs = laplace_frac(req) if args.kind == "laplace" else fourier_differint(req)
    except DiffintError as exc:
        return _fail(args, exc)
    for pt, val in pairs:
        tab.add(**{label: pt.real, "re": val.real, "im": val.imag, "engine": args.engine})
    _emit(args, tab.render(args.format))
    return 0


def _cmd_solve(args) -> int:
    g, ycoeff = parse_rhs(args.rhs)

    def rhs(x, y):
        total = ycoeff * y
        if g is not None:
            gv = try_evaluate(g, x)
            total += gv if gv is not None else 0.0
        return total

    init = []
    for chunk in args.init.split(","):
        a_txt, v_txt = chunk.split(":")
        init.append((float(a_txt), _parse_complex(v_txt)))
    lip = args.lipschitz if args.lipschitz is not None else max(abs(ycoeff), 1e-12)
    problem = FDEProblem(
        order=float(args.alpha),
        rhs=rhs,
        initial_data=tuple(init),
        domain=float(args.X),
        step=float(args.step),
        lipschitz=lip,
    )
    try:
        x, y = solve_fde(problem)
    except DiffintError as exc:
        return _fail(args, exc)
    stride = max(1, int(round(args.print_every / problem.step))) if args.print_every else 1
    tab = _Table(["x", "re", "im"])
    for i in range(0, x.size, stride):
        tab.add(x=float(x[i]), re=float(y[i].real), im=float(y[i].imag))
    if (x.size - 1) % stride:
        tab.add(x=float(x[-1]), re=float(y[-1].real), im=float(y[-1].imag))
    _emit(args, tab.render(args.format))
    return 0


def _cmd_series(args) -> int:
    expr = parse_expr(args.expression)
    zs = _parse_values(args.z)
    sol = picard_series(expr, float(args.alpha), int(args.terms), tuple(zs))
    partial = sol.partial_sum()
    tab = _Table(["z", "re", "im", "tail_estimate"])
    for z in zs:
        try:
            v = evaluate(partial, z)
            tab.add(z=z, re=v.real, im=v.imag, tail_estimate=sol.tail_estimate)
        except DiffintError as exc:
            tab.add(z=z, re=None, im=None, tail_estimate=None, error=str(exc))
    _emit(args, tab.render(args.format))
    return 1 if tab.had_error else 0


def _cmd_complimentary(args) -> int:
    expr = parse_expr(args.expression)
    try:
        series = complimentary_coefficients(expr, _parse_complex(args.x0), int(args.count))
    except DiffintError as exc:
        return _fail(args, exc)
    tab = _Table(["k", "c_re", "c_im"])
    for k, c in enumerate(series.coefficients):
        tab.add(k=k, c_re=c.real, c_im=c.imag)
    _emit(args, tab.render(args.format))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="diffint",
        description="Differintegrals of arbitrary order: closed forms, quadrature, transforms, FDE solvers.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("diff", help="closed-form differintegral of an expression")
    p.add_argument("expression")
    p.add_argument("--alpha", required=True)
    p.add_argument("--distributional-phase", action="store_true")
    p.add_argument("--table", action="store_true", help="also print a (z, value) table")
    p.add_argument("--z", default=None, help="sample points a:b:step or v1,v2,...")
    _add_output_args(p)
    p.set_defaults(func=_cmd_diff)

    p = sub.add_parser("eval", help="numeric differintegral samples")
    p.add_argument("expression")
    p.add_argument("--alpha", default=None)
    p.add_argument("--alpha-range", default=None, help="a:b:step")
    p.add_argument("--z", required=True, help="sample points a:b:step or v1,v2,...")
    p.add_argument("--engine", choices=("symbolic", "numeric", "both"), default="numeric")
    _add_quad_args(p)
    _add_output_args(p)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("zeta-demo", help="Bose-kernel differintegral at 0 vs series zeta")
    p.add_argument("--s", required=True, help="s values a:b:step or list")
    _add_quad_args(p)
    _add_output_args(p)
    p.set_defaults(func=_cmd_zeta_demo)

    p = sub.add_parser("gamma-demo", help="exponential differintegral identity vs gamma")
    p.add_argument("--alpha", default=None)
    p.add_argument("--alpha-range", default=None)
    _add_quad_args(p)
    _add_output_args(p)
    p.set_defaults(func=_cmd_gamma_demo)

    p = sub.add_parser("transform", help="fractional Laplace / differintegral Fourier tables")
    p.add_argument("kind", choices=("laplace", "fourier"))
    p.add_argument("expression")
    p.add_argument("--alpha", required=True, type=float)
    p.add_argument("--s", default=None, help="s values (laplace)")
    p.add_argument("--omega", default=None, help="omega values (fourier)")
    p.add_argument("--engine", choices=("symbolic", "numeric"), default="symbolic")
    p.add_argument("--nodes", type=int, default=64)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--window", type=float, default=60.0)
    _add_output_args(p)
    p.set_defaults(func=_cmd_transform)

    p = sub.add_parser("solve", help="march a fractional differintegral equation")
    p.add_argument("--alpha", required=True, type=float)
    p.add_argument("--init", required=True, help="comma list of order:value pairs, e.g. 0:1")
    p.add_argument("--rhs", required=True, help="f(x, y), linear in y, e.g. '-y' or 'x^2 - y'")
    p.add_argument("--X", required=True, type=float)
    p.add_argument("--step", type=float, default=1e-3)
    p.add_argument("--lipschitz", type=float, default=None)
    p.add_argument("--print-every", type=float, default=None, help="thin output to this x spacing")
    _add_output_args(p)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("series", help="contraction series sum_j S^(j alpha) f")
    p.add_argument("expression")
    p.add_argument("--alpha", required=True, type=float)
    p.add_argument("--terms", required=True, type=int)
    p.add_argument("--z", required=True)
    _add_output_args(p)
    p.set_defaults(func=_cmd_series)

    p = sub.add_parser("complimentary", help="lower-bound correction coefficients")
    p.add_argument("expression")
    p.add_argument("--x0", required=True)
    p.add_argument("--count", required=True, type=int)
    _add_output_args(p)
    p.set_defaults(func=_cmd_complimentary)

    return ap


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    argv = list(argv)
    # let values like --rhs "-y" and --lower -inf through argparse
    for flag in ("--rhs", "--alpha", "--x0", "--lower"):
        for i, a in enumerate(argv[:-1]):
            if a == flag and argv[i + 1].startswith("-"):
                argv[i : i + 2] = [f"{flag}={argv[i + 1]}"]
                break
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DiffintError as exc:
        return _fail(args, exc)


if __name__ == "__main__":
    sys.exit(main())
