"""Command-line interface.

Exit codes: 0 for success or a verified identity, 1 when a computation
ran but an identity failed (a diff report is printed), 2 for usage
errors.  All reports are deterministic given the arguments and seed.

The optional VIRASORO_OUT_DIR environment variable sets the directory
for --out files given as bare names.  --threads caps worker parallelism;
the current implementation runs the work sequentially (a cap of one is
always honoured) and the flag is accepted for forward compatibility,
with output ordering canonical either way.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import density, jantzen, oscillator, singular, verma
from .acceptance import CRITERIA, run_acceptance
from .fock_checks import SUITES, run_suites
from .scalars import BiPoly, UniPoly, as_fraction, render_scalar


def _parse_scalar(text: str, symbol: str):
    """A rational like '5/2', or the named symbolic coordinate."""
    text = text.strip()
    if text == symbol:
        c, h = BiPoly.gens()
        return c if symbol == "c" else h
    try:
        return Fraction(text)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected a rational or the symbol {symbol!r}, got {text!r}"
        )


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _parse_rs(text: str):
    try:
        r, s = (int(x) for x in text.split(","))
        return r, s
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected r,s integers, got {text!r}")


def _emit(report: dict, args) -> None:
    if getattr(args, "json", False):
        text = json.dumps(report, indent=2, default=str)
    else:
        text = _render_text(report)
    out = getattr(args, "out", None)
    if out:
        directory = os.environ.get("VIRASORO_OUT_DIR", "")
        if directory and not os.path.isabs(out):
            out = os.path.join(directory, out)
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    print(text)


def _render_text(report, indent=0) -> str:
    pad = "  " * indent
    if isinstance(report, dict):
        lines = []
        for key, value in report.items():
            if isinstance(value, (dict, list)):
                lines.append(f"{pad}{key}:")
                lines.append(_render_text(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {value}")
        return "\n".join(lines)
    if isinstance(report, list):
        return "\n".join(_render_text(v, indent) for v in report)
    return f"{pad}{report}"


def cmd_gram(args) -> int:
    params = verma.VermaParams(args.c, args.h)
    g = verma.gram_matrix(args.level, params)
    _emit({"subcommand": "gram", **g.to_json()}, args)
    return 0


def cmd_kacdet(args) -> int:
    params = verma.VermaParams(args.c, args.h)
    report = {"subcommand": "kacdet", "level": args.level, "mode": args.mode}
    if args.mode == "direct":
        report["value"] = render_scalar(verma.kac_det_direct(args.level, params))
    elif args.mode == "product":
        report["value"] = render_scalar(verma.kac_det_product(args.level, params))
    else:
        ratio = verma.kac_det_ratio(args.level)
        report["value"] = render_scalar(ratio)
        report["constant"] = ratio.is_constant()
        if not ratio.is_constant():
            _emit(report, args)
            return 1
    _emit(report, args)
    return 0


def cmd_singvec(args) -> int:
    report = {"subcommand": "singvec", "method": args.method}
    if args.method == "kernel":
        if args.c is None or args.h is None or args.level is None:
            print("singvec --method kernel needs --c, --h and --level", file=sys.stderr)
            return 2
        params = verma.VermaParams.rational(args.c, args.h)
        found = singular.singular_kernel(params, args.level)
        report["count"] = len(found)
        report["vectors"] = [v.to_json() for v in found]
    else:
        if args.method == "bdiz":
            if args.j is None:
                print("singvec --method bdiz needs --j", file=sys.stderr)
                return 2
            vec = singular.bdiz_singular(args.j)
        else:
            if args.rs is None:
                print("singvec --method curve needs --rs", file=sys.stderr)
                return 2
            vec = singular.curve_singular(*args.rs)
        if args.at is not None:
            vec = singular.specialize_curve_vector(vec, args.at)
            if args.j is not None:
                params = singular.curve_params_at(args.at, j=args.j)
            else:
                params = singular.curve_params_at(args.at, rs=args.rs)
            ok, _ = singular.check_singular(vec, params)
            report["singular"] = ok
            report["c"] = render_scalar(params.c)
            report["h"] = render_scalar(params.h)
        report.update(vec.to_json())
    _emit(report, args)
    return 0


def cmd_ffpoly(args) -> int:
    mu = UniPoly.gen("mu") if args.mu is None else args.mu
    routes = {}
    direct = density.ad_direct(args.j, args.lam, mu)
    compare = args.compare.split(",") if args.compare else ["direct"]
    routes["direct"] = direct
    if "product" in compare:
        p = _sqrt_fraction(args.lam)
        if p is not None:
            routes["product"] = density.ff_product("c", args.j, p, mu)
        elif args.mu is not None:
            routes["product^2 (case d)"] = density.ff_product("d", args.j, args.lam, mu)
            routes["direct^2"] = direct * direct
        else:
            print("product form needs lambda = p^2 or an explicit --mu", file=sys.stderr)
            return 2
    if "determinant" in compare:
        p = _sqrt_fraction(args.lam)
        if p is None:
            print("the determinant route needs lambda = p^2", file=sys.stderr)
            return 2
        routes["determinant"] = density.appc_determinant(args.j, p, mu)
    values = {k: render_scalar(v) for k, v in routes.items()}
    keys = [k for k in ("direct", "product", "determinant") if k in routes]
    agree = all(routes[k] == routes[keys[0]] for k in keys)
    if "product^2 (case d)" in routes:
        agree = agree and routes["product^2 (case d)"] == routes["direct^2"]
    report = {
        "subcommand": "ffpoly",
        "j": str(args.j),
        "lambda": str(args.lam),
        "mu": str(args.mu) if args.mu is not None else "mu (symbolic)",
        "values": values,
        "agree": agree,
    }
    _emit(report, args)
    return 0 if agree else 1


def _sqrt_fraction(x: Fraction):
    x = as_fraction(x)
    if x < 0:
        return None
    num = int(x.numerator ** 0.5 + 0.5)
    den = int(x.denominator ** 0.5 + 0.5)
    if num * num == x.numerator and den * den == x.denominator:
        return Fraction(num, den)
    return None


def cmd_jantzen(args) -> int:
    if args.case == "c1":
        if args.j is None:
            print("jantzen --case c1 needs --j", file=sys.stderr)
            return 2
        j = args.j
        if args.path == "c" or (args.path == "auto" and j != 0):
            if j == 0:
                print("the c-path is degenerate at j = 0; use --path h", file=sys.stderr)
                return 2
            x = UniPoly.gen("x")
            path, label = (1 + x, UniPoly.const(j * j, "x")), f"c=1+x, h={j * j}"
        else:
            x = UniPoly.gen("x")
            path, label = (UniPoly.const(1, "x"), j * j + x), f"c=1, h={j * j}+x"
        lead = j * j
        closed = jantzen.c1_character_sum_closed(j, args.n)
        if args.path == "h" and j != 0:
            # the weight path crosses each c = 1 vanishing curve where its
            # quadratic factor is a perfect square, doubling every order
            closed = closed.scale(2)
    else:
        if args.m is None or args.r is None or args.s is None:
            print("jantzen --case discrete needs --m, --r, --s", file=sys.stderr)
            return 2
        path, label = jantzen.discrete_path(args.m, args.r, args.s)
        lead = verma.h_pq(args.r, args.s, args.m)
        closed = jantzen.discrete_character_sum_closed(args.m, args.r, args.s, args.n)
    levels = {}
    depth_sums = [0]
    for level in range(1, args.n + 1):
        family = jantzen.gram_family(path, level, label)
        order, sdim = jantzen.det_order_identity(family)
        filt = jantzen.jantzen_filtration(family)
        levels[level] = {"dims": list(filt.dims), "det_order": order, "identity": order == sdim}
        depth_sums.append(filt.depth_sum())
    from .combinat import QSeries

    computed = QSeries(depth_sums, lead, args.n)
    verdict = computed == closed and all(v["identity"] for v in levels.values())
    report = {
        "subcommand": "jantzen",
        "case": args.case,
        "path": label,
        "levels": levels,
        "character_sum": computed.to_json(),
        "closed_form": closed.to_json(),
        "verdict": verdict,
    }
    _emit(report, args)
    return 0 if verdict else 1


def cmd_character(args) -> int:
    if args.c1:
        series = jantzen.character_formula("c1", args.n, j=args.j)
        oracle_params = verma.VermaParams.rational(1, args.j * args.j)
    else:
        series = jantzen.character_formula("discrete", args.n, m=args.m, r=args.r, s=args.s)
        oracle_params = verma.VermaParams.rational(
            verma.central_charge(args.m), verma.h_pq(args.r, args.s, args.m)
        )
    report = {"subcommand": "character", **series.to_json()}
    if args.check_oracle:
        dims = verma.irreducible_dims(oracle_params, args.n)
        report["rank_oracle"] = dims
        report["verdict"] = [Fraction(d) for d in dims] == list(series.coeffs)
        _emit(report, args)
        return 0 if report["verdict"] else 1
    _emit(report, args)
    return 0


def cmd_goldstone(args) -> int:
    sector = args.sector
    if args.j is not None and (args.k - args.j).denominator > 1:
        print("the charge k must lie in j + Z", file=sys.stderr)
        return 2
    f = oscillator.goldstone_signature(args.k, args.m, sector)
    state = oscillator.goldstone_vector(args.k, args.m, sector)
    report = {
        "subcommand": "goldstone",
        "k": str(args.k),
        "m": args.m,
        "sector": sector,
        "signature": list(f),
        "level": int(state.degree()),
        "energy": str((as_fraction(args.k) + args.m) ** 2),
        "terms": {
            "[" + ",".join(map(str, exps)) + "]": render_scalar(c)
            for exps, c in sorted(state.terms.items())
        },
    }
    if args.check:
        params = oscillator.goldstone_params(args.k, sector)
        ok = (
            oscillator.virasoro_apply(1, state, params).is_zero()
            and oscillator.virasoro_apply(2, state, params).is_zero()
        )
        report["singular"] = ok
        _emit(report, args)
        return 0 if ok else 1
    _emit(report, args)
    return 0


def cmd_binomdet(args) -> int:
    f = tuple(int(x) for x in args.f.split(","))
    values = {"determinant": oscillator.binom_det(f, args.mu)}
    compare = args.compare.split(",") if args.compare else []
    if "product" in compare:
        width, depth = (f[0] if f else 0), len(f)
        if any(row != width for row in f) or width < depth:
            print("the product form needs a rectangle with width >= depth", file=sys.stderr)
            return 2
        values["product"] = oscillator.rect_binom_product(width, depth, args.mu)
    if "pairing" in compare:
        if args.mu.denominator != 1 or args.mu < 0:
            print("the pairing needs mu = 2p with p a non-negative half-integer", file=sys.stderr)
            return 2
        values["pairing"] = oscillator.l1_power_pairing(f, Fraction(args.mu, 2))
    agree = len({render_scalar(v) for v in values.values()}) == 1
    report = {
        "subcommand": "binomdet",
        "f": list(f),
        "mu": str(args.mu),
        "values": {k: render_scalar(v) for k, v in values.items()},
        "agree": agree,
    }
    _emit(report, args)
    return 0 if agree else 1


def cmd_fock_check(args) -> int:
    names = args.suite.split(",") if args.suite and args.suite != "all" else None
    if args.emax < 2 or args.pair_emax < 2:
        print(
            "truncation window too small: the character checks reach order q^2, "
            "so --emax and --pair-emax must be at least 2",
            file=sys.stderr,
        )
        return 2
    try:
        reports = run_suites(args.emax, names=names, pair_emax=args.pair_emax)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    ok = all(r["ok"] for r in reports)
    report = {
        "subcommand": "fock-check",
        "emax": str(args.emax),
        "suites": [
            {
                "name": r["name"],
                "checked": r["checked"],
                "ok": r["ok"],
                "mismatches": [str(m) for m in r["mismatches"][:10]],
            }
            for r in reports
        ],
        "ok": ok,
    }
    _emit(report, args)
    return 0 if ok else 1


def cmd_acceptance(args) -> int:
    names = None if args.suite == "all" else args.suite.split(",")
    known = {key for key, _, _ in CRITERIA}
    if names and not set(names) <= known:
        print(f"unknown criteria: {sorted(set(names) - known)}", file=sys.stderr)
        return 2
    ok, rows = run_acceptance(
        names=names, level_cap=args.level_cap, seed=args.seed, emax=args.emax,
        pair_emax=args.pair_emax,
    )
    for row in rows:
        status = "PASS" if row["ok"] else "FAIL"
        print(f"{status} {row['criterion']:16s} {row['elapsed']:8.2f}s  {row['title']}")
        if not row["ok"]:
            print(f"     {row['details']}")
    if args.json:
        print(json.dumps({"ok": ok, "criteria": rows}, indent=2, default=str))
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="virasoro",
        description="Exact Virasoro representation computations",
    )
    parser.add_argument("--threads", type=int, default=1,
                        help="cap on worker parallelism (work is deterministic)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gram", help="Shapovalov Gram matrix at a level")
    p.add_argument("--c", type=lambda t: _parse_scalar(t, "c"), required=True)
    p.add_argument("--h", type=lambda t: _parse_scalar(t, "h"), required=True)
    p.add_argument("--level", type=int, required=True)
    _common(p)
    p.set_defaults(fn=cmd_gram)

    p = sub.add_parser("kacdet", help="Kac determinant: direct, product or ratio")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--mode", choices=("direct", "product", "ratio"), default="direct")
    p.add_argument("--c", type=lambda t: _parse_scalar(t, "c"), default=BiPoly.gens()[0])
    p.add_argument("--h", type=lambda t: _parse_scalar(t, "h"), default=BiPoly.gens()[1])
    _common(p)
    p.set_defaults(fn=cmd_kacdet)

    p = sub.add_parser("singvec", help="singular vectors by three methods")
    p.add_argument("--method", choices=("kernel", "bdiz", "curve"), required=True)
    p.add_argument("--j", type=_parse_fraction)
    p.add_argument("--rs", type=_parse_rs)
    p.add_argument("--at", type=_parse_fraction, help="specialise the curve parameter t")
    p.add_argument("--c", type=_parse_fraction)
    p.add_argument("--h", type=_parse_fraction)
    p.add_argument("--level", type=int)
    _common(p)
    p.set_defaults(fn=cmd_singvec)

    p = sub.add_parser("ffpoly", help="density-module obstruction polynomial")
    p.add_argument("--j", type=_parse_fraction, required=True)
    p.add_argument("--lambda", dest="lam", type=_parse_fraction, required=True)
    p.add_argument("--mu", type=_parse_fraction)
    p.add_argument("--compare", default="direct,product,determinant")
    _common(p)
    p.set_defaults(fn=cmd_ffpoly)

    p = sub.add_parser("jantzen", help="Jantzen filtration report")
    p.add_argument("--case", choices=("c1", "discrete"), required=True)
    p.add_argument("--j", type=_parse_fraction)
    p.add_argument("--m", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--N", dest="n", type=int, default=6)
    p.add_argument("--path", choices=("auto", "c", "h"), default="auto")
    p.add_argument("--report", choices=("json", "text"), default="text")
    _common(p)
    p.set_defaults(fn=cmd_jantzen)

    p = sub.add_parser("character", help="irreducible character formulas")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--c1", action="store_true")
    group.add_argument("--discrete", action="store_true")
    p.add_argument("--j", type=_parse_fraction)
    p.add_argument("--m", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--N", dest="n", type=int, default=8)
    p.add_argument("--check-oracle", action="store_true",
                   help="compare against Gram-matrix ranks")
    _common(p)
    p.set_defaults(fn=cmd_character)

    p = sub.add_parser("goldstone", help="determinantal oscillator singular vectors")
    p.add_argument("--j", type=_parse_fraction, help="sector spin (validates k in j+Z)")
    p.add_argument("--k", type=_parse_fraction, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--sector", choices=("minus", "plus"), default="minus")
    p.add_argument("--check", action="store_true")
    _common(p)
    p.set_defaults(fn=cmd_goldstone)

    p = sub.add_parser("binomdet", help="binomial determinants and pairings")
    p.add_argument("--f", required=True, help="signature, e.g. 3,3,3")
    p.add_argument("--mu", type=_parse_fraction, required=True)
    p.add_argument("--compare", default="")
    _common(p)
    p.set_defaults(fn=cmd_binomdet)

    p = sub.add_parser("fock-check", help="Fock-space identity suites")
    p.add_argument("--emax", type=_parse_fraction, default=Fraction(6))
    p.add_argument("--pair-emax", type=_parse_fraction, default=Fraction(4))
    p.add_argument("--suite", default="all",
                   help="comma list of: " + ",".join(SUITES))
    _common(p)
    p.set_defaults(fn=cmd_fock_check)

    p = sub.add_parser("acceptance", help="run the acceptance criteria")
    p.add_argument("--suite", default="all",
                   help="comma list of criterion names, or 'all'")
    p.add_argument("--level-cap", type=int, default=6)
    p.add_argument("--seed", type=int, default=20260809)
    p.add_argument("--emax", type=_parse_fraction, default=Fraction(6))
    p.add_argument("--pair-emax", type=_parse_fraction, default=Fraction(4))
    _common(p)
    p.set_defaults(fn=cmd_acceptance)

    return parser


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="emit a JSON report")
    p.add_argument("--out", help="also write the report to this file")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be at least 1")
    try:
        return args.fn(args)
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
