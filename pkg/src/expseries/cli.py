"""Command line surface: dataset emission, evaluation, verification.

Figure commands emit data, not images; identical flags produce identical
bytes (fixed float formatting, fixed row order).  Files are written to a
temp path and renamed so failures never leave partial output.

Exit codes: 0 ok, 1 I/O failure, 2 domain error or bad usage,
3 convergence failure, 4 verification failures.
"""

import argparse
import json
import math
import os
import sys
import tempfile

from . import evaluate, expansions, polynomials, verify
from .errors import ConvergenceError, DomainError
from .evaluate import EvalReport, SeriesQuery

EXIT_OK = 0
EXIT_IO = 1
EXIT_DOMAIN = 2
EXIT_CONVERGENCE = 3
EXIT_VERIFY = 4

FIGURES = (
    "family",
    "complex-re",
    "complex-im",
    "poly",
    "poly-norm",
    "asymptotics",
    "trig",
    "gaussian",
)


def _fmt(v: float, precision: int) -> str:
    if v != v:
        return "nan"
    if v == 0.0:
        v = 0.0
    return format(v, f".{precision}g")


def _round_floats(obj, precision: int):
    if isinstance(obj, float):
        return float(_fmt(obj, precision)) if obj == obj else None
    if isinstance(obj, list):
        return [_round_floats(v, precision) for v in obj]
    if isinstance(obj, dict):
        return {k: _round_floats(v, precision) for k, v in obj.items()}
    return obj


def _write_output(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".expseries-")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _csv(header: list[str], rows: list[list[str]]) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(row) for row in rows)
    return "\n".join(lines) + "\n"


def _parse_floats(text: str) -> list[float]:
    return [float(part) for part in text.split(",") if part != ""]


def _parse_grid(text: str) -> tuple[float, float, float, float, int]:
    parts = text.split(":")
    if len(parts) != 5:
        raise DomainError("--grid expects re0:re1:im0:im1:steps")
    re0, re1, im0, im1 = (float(p) for p in parts[:4])
    return re0, re1, im0, im1, int(parts[4])


def _frange(start: float, stop: float, step: float) -> list[float]:
    out = []
    i = 0
    while True:
        v = start + i * step
        if v > stop + 1e-12:
            break
        out.append(round(v, 12))
        i += 1
    return out


# -- commands -------------------------------------------------------------------

def cmd_triangle(args) -> int:
    rows = list(polynomials.iter_triangle_rows(args.rows))
    if args.format == "json":
        text = json.dumps({"rows": [[m, p, c] for m, p, c in rows]}) + "\n"
    else:
        text = _csv(["m", "power", "coefficient"], [[str(m), str(p), c] for m, p, c in rows])
    _write_output(text, args.out)
    return EXIT_OK


def _report_json(report: EvalReport, precision: int) -> str:
    return json.dumps(_round_floats(report.to_dict(), precision)) + "\n"


def cmd_eval(args) -> int:
    q = SeriesQuery(complex(args.x), args.alpha, tol=args.tol, k_cap=args.terms)
    if args.method == "direct":
        report = evaluate.eval_direct(q)
    elif args.method == "transformed":
        tri = polynomials.default_triangle(q.m_cap)
        report = evaluate.eval_transformed(q, tri)
    elif args.method == "asymptotic":
        value = evaluate.eval_asymptotic(args.x, args.alpha)
        report = EvalReport(complex(value), 0, 0.0, 1.0, "asymptotic")
    else:
        value = evaluate.closed_form_alpha1(args.x)
        report = EvalReport(complex(value), 0, 0.0, 1.0, "closed_alpha1")
    _write_output(_report_json(report, args.precision), args.out)
    return EXIT_OK


def _figure_family(args, p):
    alphas = _parse_floats(args.alpha or "0.5,1,1.6,2,2.8")
    xs = _frange(args.xstep, args.xmax, args.xstep)
    rows = []
    for alpha in alphas:
        for x in xs:
            f = evaluate.eval_direct(SeriesQuery(x, alpha, tol=args.tol)).value.real
            rows.append([_fmt(x, p), _fmt(alpha, p), _fmt(f, p)])
    return ["x", "alpha", "f"], rows


def _figure_complex(args, p, part):
    if args.grid is None:
        raise DomainError("complex figures need --grid re0:re1:im0:im1:steps")
    re0, re1, im0, im1, steps = _parse_grid(args.grid)
    if re0 <= 0.0:
        raise DomainError("complex figures need Re(z) > 0 over the whole grid")
    alpha = float(args.alpha) if args.alpha else 1.0
    grid = evaluate.complex_grid((re0, re1), (im0, im1), steps, alpha, tol=args.tol)
    rows = []
    for i, re in enumerate(grid.re_values):
        for j, im in enumerate(grid.im_values):
            v = grid.values[i][j]
            val = math.nan if v is None else (v.real if part == "re" else v.imag)
            rows.append([_fmt(re, p), _fmt(im, p), _fmt(val, p)])
    return ["re", "im", "value"], rows


def _figure_poly(args, p, normalized):
    tri = polynomials.default_triangle(args.rows)
    xs = _frange(0.0, args.xmax, args.xstep)
    rows = []
    for m in range(args.rows + 1):
        scale = math.factorial(m)
        for x in xs:
            v = float(tri[m].eval(x))
            if normalized:
                v /= scale
            rows.append([_fmt(x, p), str(m), _fmt(v, p)])
    return ["x", "m", "value"], rows


def _figure_asymptotics(args, p):
    alpha = float(args.alpha) if args.alpha else 1.6
    xs = _frange(args.xmin, args.xmax, args.xstep)
    rows = []
    for r in expansions.asymptotic_comparison(alpha, xs):
        rows.append(
            [_fmt(r.x, p), _fmt(r.series_value, p), _fmt(r.exp_estimate, p), _fmt(r.two_term, p)]
        )
    return ["x", "f", "exp_neg_x", "two_term"], rows


def _figure_trig(args, p):
    tri = polynomials.default_triangle(64)
    xs = [i * (math.pi / 2 - 0.05) / 39 for i in range(40)]
    use_cos = args.func == "cos"
    rows = []
    for x in xs:
        exact = math.cos(x) if use_cos else math.sin(x)
        damp = math.exp(-x)
        if use_cos:
            one = damp * tri[0].eval(x)
            two = one - damp * tri[2].eval(x) * (math.pi / 2) ** 2 / 2.0
        else:
            one = -damp * tri[1].eval(x) * (math.pi / 2)
            two = one + damp * tri[3].eval(x) * (math.pi / 2) ** 3 / 6.0
        rows.append([_fmt(x, p), _fmt(exact, p), _fmt(one, p), _fmt(two, p)])
    return ["x", "exact", "approx1", "approx2"], rows


def _figure_gaussian(args, p):
    counts = [int(v) for v in _parse_floats(args.terms_list or "2,4,8,16")]
    tri = polynomials.default_triangle(max(counts) + 1)
    xs = _frange(0.0, args.xmax, args.xstep)
    header = ["x", "exact"] + [f"series_{c}_terms" for c in counts] + ["taylor2"]
    rows = []
    for x in xs:
        w = math.log1p(x)
        partials = []
        acc, coef = 0.0, 1.0
        for m in range(max(counts) + 1):
            acc += coef * tri[m].eval(x)
            partials.append(acc)
            coef *= w / (m + 1)
        row = [_fmt(x, p), _fmt(math.exp(-x * x), p)]
        row.extend(_fmt(partials[c - 1], p) for c in counts)
        row.append(_fmt(1.0 - x * x, p))
        rows.append(row)
    return header, rows


def cmd_figure(args) -> int:
    p = args.precision
    if args.name == "family":
        header, rows = _figure_family(args, p)
    elif args.name == "complex-re":
        header, rows = _figure_complex(args, p, "re")
    elif args.name == "complex-im":
        header, rows = _figure_complex(args, p, "im")
    elif args.name == "poly":
        header, rows = _figure_poly(args, p, normalized=False)
    elif args.name == "poly-norm":
        header, rows = _figure_poly(args, p, normalized=True)
    elif args.name == "asymptotics":
        header, rows = _figure_asymptotics(args, p)
    elif args.name == "trig":
        header, rows = _figure_trig(args, p)
    else:
        header, rows = _figure_gaussian(args, p)
    if args.format == "json":
        text = json.dumps({"columns": header, "rows": rows}) + "\n"
    else:
        text = _csv(header, rows)
    _write_output(text, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    results = verify.run_suite(args.suite)
    if args.format == "json":
        payload = [
            {
                "suite": r.suite,
                "name": r.name,
                "passed": r.passed,
                "residual": r.residual,
                "detail": r.detail,
            }
            for r in results
        ]
        text = json.dumps(_round_floats(payload, args.precision)) + "\n"
    else:
        lines = []
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            detail = f" ({r.detail})" if r.detail else ""
            lines.append(
                f"{status} {r.suite}/{r.name} residual={_fmt(r.residual, 3)}{detail}"
            )
        text = "\n".join(lines) + "\n"
    _write_output(text, args.out)
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY


# -- argument parsing -------------------------------------------------------------

def _add_common(sub):
    sub.add_argument("--out", default=None, help="output path (default: stdout)")
    sub.add_argument("--format", choices=("csv", "json"), default="csv")
    sub.add_argument("--precision", type=int, default=12, help="float digits, 1..17")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="expseries",
        description="Exponential power sum toolkit: datasets, evaluation, verification",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    tri = subs.add_parser("triangle", help="export the polynomial triangle")
    tri.add_argument("--rows", type=int, default=8, help="deepest row to export")
    _add_common(tri)
    tri.set_defaults(handler=cmd_triangle)

    ev = subs.add_parser("eval", help="evaluate the sum by a chosen route")
    ev.add_argument("--x", type=float, required=True)
    ev.add_argument("--alpha", type=float, default=1.0)
    ev.add_argument(
        "--method",
        choices=("direct", "transformed", "asymptotic", "closed-alpha1"),
        default="direct",
    )
    ev.add_argument("--tol", type=float, default=1e-8)
    ev.add_argument("--terms", type=int, default=500_000, help="outer term cap")
    _add_common(ev)
    ev.set_defaults(handler=cmd_eval)

    fig = subs.add_parser("figure", help="emit a named dataset")
    fig.add_argument("name", choices=FIGURES)
    fig.add_argument("--alpha", default=None, help="value or comma list")
    fig.add_argument("--grid", default=None, help="re0:re1:im0:im1:steps")
    fig.add_argument("--rows", type=int, default=8)
    fig.add_argument("--terms", dest="terms_list", default=None, help="comma list of term counts")
    fig.add_argument("--func", choices=("sin", "cos"), default="sin")
    fig.add_argument("--tol", type=float, default=1e-9)
    fig.add_argument("--xmin", type=float, default=1.0)
    fig.add_argument("--xmax", type=float, default=3.0)
    fig.add_argument("--xstep", type=float, default=0.05)
    _add_common(fig)
    fig.set_defaults(handler=cmd_figure)

    ver = subs.add_parser("verify", help="run named invariant suites")
    ver.add_argument("suite", choices=verify.SUITES + ("all",))
    _add_common(ver)
    ver.set_defaults(handler=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not 1 <= args.precision <= 17:
        print("error: --precision must be in [1, 17]", file=sys.stderr)
        return EXIT_DOMAIN
    try:
        return args.handler(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.report is not None:
            sys.stdout.write(_report_json(exc.report, args.precision))
        return EXIT_CONVERGENCE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
