"""Command-line entry point: ``sparseblock {walks,moments,transform,simulate,check}``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import __version__
from .poly import Poly, format_poly

EXIT_OK, EXIT_USAGE, EXIT_CHECK = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _positive(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _even_order(text):
    v = _positive(text)
    if v % 2:
        raise argparse.ArgumentTypeError(f"order must be even, got {v}")
    return v


def _nonneg_float(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative number, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="text")
    common.add_argument("--out", help="write output to this path instead of stdout")
    common.add_argument("--threads", type=_positive, default=1, help="worker cap (output does not depend on it)")
    common.add_argument("--budget", type=_positive, default=None, help="cap on Wick contraction terms per word")

    parser = _Parser(prog="sparseblock", description="Exact and Monte Carlo spectral moments of sparse random block matrices.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("walks", parents=[common], help="tree-walk orbit expansion of tr A^order")
    p.add_argument("--order", type=_even_order, required=True)
    p.add_argument("--irreducible", action="store_true", help="only irreducible orbits")

    p = sub.add_parser("moments", parents=[common], help="exact moments for one of the models")
    p.add_argument("--model", choices=("goe-finite", "planar", "rank1", "semicircle-nc"), required=True)
    p.add_argument("--order", type=_even_order, required=True)
    p.add_argument("--enumeration-budget", type=_even_order, default=None,
                   help="planar: largest order computed by direct enumeration")

    p = sub.add_parser("transform", parents=[common], help="moment <-> free cumulant conversion")
    p.add_argument("--direction", choices=("m2c", "c2m"), required=True)
    p.add_argument("--input", required=True, help='JSON file {"coeffs": [{"power": n, "poly": [...]}]}')

    p = sub.add_parser("simulate", parents=[common], help="Monte Carlo estimate of the moments")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--d", type=_positive, required=True)
    p.add_argument("--z", type=_nonneg_float, required=True)
    p.add_argument("--sigma2", type=_nonneg_float, default=None, help="block variance (default 1/d)")
    p.add_argument("--order", type=_even_order, required=True)
    p.add_argument("--samples", type=_positive, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--odd", action="store_true", help="also report odd moments")
    p.add_argument("--json", dest="json_out", help="also write the JSON report here")

    sub.add_parser("check", parents=[common], help="run the built-in cross checks")
    return parser


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _json(payload: dict) -> str:
    return json.dumps({"version": __version__, **payload}, indent=2) + "\n"


def _coeff_json(c):
    if isinstance(c, Poly):
        return c.int_list()
    return c if isinstance(c, int) else str(c)


# ---- subcommands: each returns (text, csv, dict)


def cmd_walks(args):
    from .walks import enumerate_tree_walks, irreducible_expansion
    from .words import monomial_form

    exp = (irreducible_expansion if args.irreducible else enumerate_tree_walks)(args.order // 2)
    var = "p" if args.irreducible else "Z"
    lines = [f"(1/N) tr A^{args.order}:"]
    for h, terms in sorted(exp.by_h().items()):
        body = " + ".join(f"{t.multiplicity} tr {monomial_form(t.representative)}" for t in terms)
        lines.append(f"  {var}^{h} [ {body} ]")
    return "\n".join(lines) + "\n", exp.to_csv(), exp.to_dict()


def cmd_moments(args):
    order = args.order
    if args.model == "planar":
        from .planar import DEFAULT_ENUMERATION_BUDGET, moment_large_d

        m = moment_large_d(order // 2, args.enumeration_budget or DEFAULT_ENUMERATION_BUDGET)
        rows = [(order, k, c) for k, c in enumerate(m.z_coeffs, start=1)]
        data = {"model": "planar", **m.to_dict(), "route": m.route}
        return f"mu_{order} = {format_poly(m.poly)}\n", _csv(["order", "z_power", "coeff"], rows), data
    if args.model == "goe-finite":
        from .wick import DEFAULT_BUDGET, moment_finite_d

        m = moment_finite_d(order // 2, args.budget or DEFAULT_BUDGET)
        rows = []
        for k in range(1, m.poly.degree + 1):
            for j, c in enumerate(m.z_coefficient(k).int_list()):
                if c:
                    rows.append((order, k, j, c))
        body = " + ".join(
            ("Z" if k == 1 else f"Z^{k}") + f" ({format_poly(m.z_coefficient(k), descending=True)})"
            for k in range(1, m.poly.degree + 1)
        )
        text = f"mu_{order} = [{body}] sigma^{order}\n"
        return text, _csv(["order", "z_power", "d_power", "coeff"], rows), {"model": "goe-finite", **m.to_dict()}
    if args.model == "rank1":
        from .transform import rank1_moments

        seq = rank1_moments(order // 2)
        items = [(2 * n, mu) for n, mu in enumerate(seq, start=1)]
        name = "mu"
    else:
        from .transform import semicircle_nc_moments

        seq = semicircle_nc_moments(order)
        items = [(k, b) for k, b in enumerate(seq, start=1) if k % 2 == 0]
        name = "beta"
    var = items[0][1].var
    text = "".join(f"{name}_{k} = {format_poly(p)}\n" for k, p in items)
    rows = [(k, j, _coeff_json(c)) for k, p in items for j, c in enumerate(p.coeffs) if c]
    data = {
        "model": args.model,
        "variable": var,
        "moments": [{"order": k, "poly": [_coeff_json(c) for c in p.coeffs]} for k, p in items],
    }
    return text, _csv(["order", f"{var}_power", "coeff"], rows), data


def cmd_transform(args):
    from .transform import cumulants_from_moments, list_to_series, load_series, moments_from_cumulants, series_to_list

    try:
        series = load_series(args.input)
    except OSError as exc:
        raise UsageError(f"cannot read {args.input}: {exc.strerror}")
    except ValueError as exc:
        raise UsageError(f"malformed series file {args.input}: {exc}")
    fn = cumulants_from_moments if args.direction == "m2c" else moments_from_cumulants
    out = list_to_series(fn(series_to_list(series)))
    name = "a" if args.direction == "m2c" else "f"
    text = "".join(f"{name}_{n} = {format_poly(c)}\n" for n, c in enumerate(out.coeffs) if n and c)
    rows = []
    for n, c in enumerate(out.coeffs):
        if n and c:
            cs = c.coeffs if isinstance(c, Poly) else (c,)
            rows.extend((n, j, _coeff_json(v)) for j, v in enumerate(cs) if v)
    data = {"direction": args.direction, **out.to_dict()}
    return text or f"all {name}_n vanish\n", _csv(["power", "p_power", "coeff"], rows), data


def cmd_simulate(args):
    from .montecarlo import AllocationLimitError, EnsembleConfig, run_experiment

    try:
        cfg = EnsembleConfig(N=args.n, d=args.d, Z=args.z, sigma2=args.sigma2, seed=args.seed, samples=args.samples)
        result = run_experiment(cfg, args.order // 2, threads=args.threads, include_odd=args.odd)
    except AllocationLimitError:
        raise
    except ValueError as exc:
        raise UsageError(str(exc))
    data = result.to_dict()
    if args.json_out:
        with open(args.json_out, "w") as fh:
            fh.write(_json(data))
    lines = [f"N={cfg.N} d={cfg.d} Z={cfg.Z} sigma2={float(cfg.variance):g} samples={cfg.samples} seed={cfg.seed}"]
    for e in result.estimates:
        lines.append(
            f"  mu_{e.order}: mean={e.mean:.6g} stderr={e.stderr:.3g} analytic={float(e.analytic):.6g} z={e.z_score:+.2f}"
        )
    rows = [(e.order, e.mean, e.stderr, float(e.analytic), e.z_score) for e in result.estimates]
    return "\n".join(lines) + "\n", _csv(["order", "mean", "stderr", "analytic", "z"], rows), data


def cmd_check(args):
    from .checks import run_all

    results = run_all()
    text = "".join(r.line() + "\n" for r in results)
    rows = [(r.name, "pass" if r.ok else "fail", r.detail) for r in results]
    data = {"checks": [{"name": r.name, "ok": r.ok, "detail": r.detail} for r in results]}
    return text, _csv(["check", "status", "detail"], rows), data, all(r.ok for r in results)


COMMANDS = {
    "walks": cmd_walks,
    "moments": cmd_moments,
    "transform": cmd_transform,
    "simulate": cmd_simulate,
    "check": cmd_check,
}


def run(argv=None) -> int:
    """Parse ``argv`` and execute; returns the process exit code."""
    try:
        args = build_parser().parse_args(argv)
        out = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"sparseblock: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:
        from .montecarlo import AllocationLimitError
        from .wick import WickBudgetError

        if isinstance(exc, (WickBudgetError, AllocationLimitError)):
            print(f"sparseblock: error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        raise
    text, csv_text, data = out[:3]
    passed = out[3] if len(out) > 3 else True
    rendered = {"text": text, "csv": csv_text, "json": None}[args.format] or _json(data)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(rendered)
    else:
        sys.stdout.write(rendered)
    return EXIT_OK if passed else EXIT_CHECK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
