"""Command-line front end with machine-readable reports.

Subcommands: classify, search, bounds, sieve, sweep, certify,
verify-chars.  Exit code 0 means the verdict is true / a witness was
found / all checks passed, 1 means false / no witness, 2 means a usage
or cap error.  JSON goes to stdout; diagnostics go to stderr.

A config file of key = value lines may preset any long flag (dashes or
underscores); command-line values win.  FFPROG_WORKERS, FFPROG_COUNT_CAP
and FFPROG_WITNESS_CAP override caps from the environment.
"""

from __future__ import annotations

import argparse
import csv as _csv
import io
import json
import os
import sys

from . import bounds, chars, classify, fqpoly, search
from .errors import CapExceeded, FfprogError, TooLarge
from .ffcore import make_field
from .fqpoly import poly_str

EXIT_TRUE = 0
EXIT_FALSE = 1
EXIT_USAGE = 2

SWEEP_CSV_COLUMNS = [
    "q", "n", "beta", "m", "r", "k", "admissible", "main_criterion",
    "special_sieve", "count", "witness_found", "elapsed_ms", "status",
]


def _parse_codes(text: str, n: int) -> tuple[int, ...]:
    """Comma-separated F_q codes, or the literal 1, padded to length n."""
    if text.strip() == "1":
        return (1,) + (0,) * (n - 1)
    codes = tuple(int(x) for x in text.split(","))
    if len(codes) > n:
        raise ValueError(f"element needs at most {n} coefficients")
    return codes + (0,) * (n - len(codes))


def _emit(report: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        for k, v in report.items():
            print(f"{k}: {v}")


def _field_args(sub, with_element=False):
    sub.add_argument("--p", type=int, required=True, help="characteristic")
    sub.add_argument("--s", type=int, default=1, help="base degree, q = p^s")
    sub.add_argument("--n", type=int, required=True, help="extension degree")
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--field-cap", type=int, default=None,
                     help="override the q^n construction cap")
    if with_element:
        sub.add_argument("--element", required=True,
                         help="comma-separated F_q codes, constant first")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ffprog",
        description="classification, search and certification for "
                    "progressions of high-order finite-field elements",
    )
    ap.add_argument("--config", help="key = value preset file")
    ap.add_argument("--format", choices=("json", "csv", "text"),
                    default="json")
    ap.add_argument("--workers", type=int,
                    default=int(os.environ.get("FFPROG_WORKERS", "1")))
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="profile one element")
    _field_args(c, with_element=True)

    s = sub.add_parser("search", help="find or count progressions")
    _field_args(s)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--r", required=True, help="comma-separated r_i")
    s.add_argument("--k", type=int, default=0)
    s.add_argument("--f", default="auto-k",
                   help="'auto-k' or comma-separated F_q codes")
    s.add_argument("--beta", default="1")
    s.add_argument("--no-normality", action="store_true")
    s.add_argument("--at-position", type=int, default=None)
    s.add_argument("--count", action="store_true",
                   help="exhaustive pair count instead of first witness")

    b = sub.add_parser("bounds", help="main / asymptotic / W-bound criteria")
    b.add_argument("--criterion", choices=("main", "asymptotic", "w-bound"),
                   required=True)
    b.add_argument("--q", type=int, required=True)
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--m", type=int, default=1)
    b.add_argument("--k", type=int, default=0)
    b.add_argument("--r", default="1", help="comma-separated r_i")
    b.add_argument("--N", type=int, default=3)
    b.add_argument("--e", type=int, default=265)
    b.add_argument("--u", type=int, default=None, help="w-bound argument")
    b.add_argument("--seed", type=int, default=0)

    v = sub.add_parser("sieve", help="sieve criterion and the special sieve")
    v.add_argument("--q", type=int, required=True)
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--p0", type=int, default=None)
    v.add_argument("--p0-scan", action="store_true",
                   help="scan primes p0 < 1000, report first success")
    v.add_argument("--plan-check", action="store_true",
                   help="also evaluate the induced exact sieve plan")

    w = sub.add_parser("sweep", help="grids of (q, n) instances")
    w.add_argument("--pairs", help="comma-separated q:n pairs")
    w.add_argument("--q-range", help="lo:hi, prime powers, with --n")
    w.add_argument("--n", type=int, default=1)
    w.add_argument("--odd-only", action="store_true")
    w.add_argument("--m", type=int, default=2)
    w.add_argument("--r", default="1")
    w.add_argument("--k", type=int, default=0)
    w.add_argument("--mode", default="no_normality",
                   choices=search.MODES)
    w.add_argument("--beta-policy", default="one",
                   help="'one', 'all', or 'fixed:<codes>'")
    w.add_argument("--criteria", action="store_true")
    w.add_argument("--count", action="store_true")
    w.add_argument("--seed", type=int, default=0)
    w.add_argument("--out", help="write the report here instead of stdout")

    sub.add_parser("certify", help="recompute the numeric bound pipeline")

    vc = sub.add_parser("verify-chars",
                        help="character sums against the direct tests")
    _field_args(vc)
    vc.add_argument("--r", type=int, default=1)
    vc.add_argument("--cap", type=int, default=chars.DEFAULT_CHAR_CAP)

    return ap


def _apply_config(ap: argparse.ArgumentParser, argv):
    """Pre-scan for --config and fold its keys in as parser defaults."""
    if "--config" not in argv:
        return argv
    idx = argv.index("--config")
    path = argv[idx + 1]
    presets = {}
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, _, val = line.partition("=")
            presets[key.strip().replace("-", "_")] = val.strip()
    ap.set_defaults(**presets)
    return argv


def run(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    ap = build_parser()
    try:
        argv = _apply_config(ap, argv)
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_TRUE
    try:
        return _dispatch(args)
    except (CapExceeded, TooLarge) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FfprogError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def _dispatch(args) -> int:
    cmd = args.command
    if cmd == "classify":
        return _cmd_classify(args)
    if cmd == "search":
        return _cmd_search(args)
    if cmd == "bounds":
        return _cmd_bounds(args)
    if cmd == "sieve":
        return _cmd_sieve(args)
    if cmd == "sweep":
        return _cmd_sweep(args)
    if cmd == "certify":
        return _cmd_certify(args)
    if cmd == "verify-chars":
        return _cmd_verify_chars(args)
    raise ValueError(f"unknown command {cmd}")


def _make_ctx(args):
    cap = args.field_cap if getattr(args, "field_cap", None) else None
    kwargs = {"seed": args.seed}
    if cap is not None:
        kwargs["cap"] = cap
    return make_field(args.p, args.s, args.n, **kwargs)


def _cmd_classify(args) -> int:
    ctx = _make_ctx(args)
    elem = _parse_codes(args.element, ctx.n)
    prof = classify.profile(ctx, elem)
    report = {
        "command": "classify",
        "q": ctx.q, "n": ctx.n,
        "element": list(elem),
        "order": prof.order,
        "r_value": prof.r_value,
        "fq_order": poly_str(prof.fq_order),
        "fq_order_coeffs": list(prof.fq_order),
        "k_value": prof.k_value,
    }
    _emit(report, args.format)
    return EXIT_TRUE


def _cmd_search(args) -> int:
    ctx = _make_ctx(args)
    r = tuple(int(x) for x in args.r.split(","))
    if len(r) == 1:
        r = r * args.m
    beta = _parse_codes(args.beta, ctx.n)
    mode = "no_normality" if args.no_normality else (
        "at_position" if args.at_position else "any_position"
    )
    f = None
    if args.f != "auto-k" and mode != "no_normality":
        f = tuple(int(x) for x in args.f.split(","))
    spec = search.make_spec(ctx, args.m, r, args.k, f=f, beta=beta,
                            mode=mode, v=args.at_position)
    report = {
        "command": "search", "q": ctx.q, "n": ctx.n, "m": args.m,
        "r": list(spec.r), "k": args.k, "mode": mode,
        "beta": list(beta),
    }
    if args.count and mode != "no_normality":
        N1 = ctx.order - 1
        R = tuple(N1 // ri for ri in spec.r)
        rep = search.count_N(spec, R, fqpoly.xn_minus_one(ctx.fq, ctx.n))
        report["count"] = rep.count
        report["witnesses"] = [_witness_dict(w) for w in rep.witnesses]
        _emit(report, args.format)
        return EXIT_TRUE if rep.count > 0 else EXIT_FALSE
    w = search.find_progression(spec)
    report["witness_found"] = w is not None
    report["witness"] = _witness_dict(w) if w else None
    if w is not None:
        report["revalidated"] = search.revalidate_witness(spec, w)
    _emit(report, args.format)
    return EXIT_TRUE if w is not None else EXIT_FALSE


def _witness_dict(w: search.Witness) -> dict:
    return {
        "alpha": list(w.alpha),
        "gamma": list(w.gamma) if w.gamma is not None else None,
        "v": w.v,
    }


def _cmd_bounds(args) -> int:
    r = tuple(int(x) for x in args.r.split(","))
    if len(r) == 1:
        r = r * args.m
    if args.criterion == "main":
        fac = bounds.intnt.factorize(args.q)
        p = fac.primes[0]
        s = fac.factors[p]
        ctx = make_field(p, s, args.n, seed=args.seed, cap=None)
        xnf = fqpoly.ctx_xn_factorization(ctx)
        f = search.auto_k_divisor(ctx, args.k)
        quot = xnf.quotient_exponents(xnf.exponents_of(f))
        w_quot = 1 << sum(1 for e in quot if e > 0)
        rep = bounds.main_criterion(args.q, args.n, args.m, args.k, r, w_quot)
    elif args.criterion == "asymptotic":
        rep = bounds.asymptotic_criterion(args.q, args.n, args.m, args.k, r,
                                          args.N, args.e)
    else:
        u = args.u if args.u is not None else bounds.intnt.primorial(args.e)
        rep = bounds.w_upper_bound(u, args.N, args.e)
    out = rep.to_json_dict()
    out["command"] = "bounds"
    _emit(out, args.format)
    return EXIT_TRUE if rep.verdict else EXIT_FALSE


def _cmd_sieve(args) -> int:
    if not args.p0 and not args.p0_scan:
        print("error: need --p0 or --p0-scan", file=sys.stderr)
        return EXIT_USAGE
    if args.p0_scan:
        p0 = bounds.scan_special_sieve(args.q, args.n)
        if p0 is None:
            report = {"command": "sieve", "q": args.q, "n": args.n,
                      "p0": None, "verdict": False,
                      "notes": {"reason": "no prime p0 < 1000 certifies"}}
            _emit(report, args.format)
            return EXIT_FALSE
    else:
        p0 = args.p0
    rep = bounds.special_sieve_report(args.q, args.n, p0)
    out = rep.to_json_dict()
    out["command"] = "sieve"
    if args.plan_check and rep.verdict:
        plan = bounds.sieve_plan_from_special(args.q, args.n, p0)
        w1 = bounds.number_pol_factors(args.q, args.n)
        plan_rep = bounds.sieve_criterion(args.q, args.n, 3, 2, plan, 2**w1)
        out["induced_plan"] = plan_rep.to_json_dict()
    _emit(out, args.format)
    return EXIT_TRUE if rep.verdict else EXIT_FALSE


def _parse_pairs(args):
    pairs = []
    if args.pairs:
        for chunk in args.pairs.split(","):
            qs, ns = chunk.split(":")
            pairs.append((int(qs), int(ns)))
    elif args.q_range:
        lo, hi = (int(x) for x in args.q_range.split(":"))
        for q in range(lo, hi + 1):
            if args.odd_only and q % 2 == 0:
                continue
            if bounds._char_of_prime_power(q) is None:
                continue
            pairs.append((q, args.n))
    else:
        raise ValueError("need --pairs or --q-range")
    return pairs


def _cmd_sweep(args) -> int:
    pairs = _parse_pairs(args)
    r = tuple(int(x) for x in args.r.split(","))
    template = search.SweepTemplate(
        m=args.m, r=r if len(r) > 1 else r[0], k=args.k, mode=args.mode,
        evaluate_criteria=args.criteria, count_pairs=args.count,
    )
    rows = search.sweep(pairs, template, beta_policy=args.beta_policy,
                        seed=args.seed, workers=args.workers)
    text = render_sweep(rows, args.format, seed=args.seed)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        print(text, end="")
    any_witness = any(row.get("witness_found") for row in rows)
    return EXIT_TRUE if any_witness else EXIT_FALSE


def render_sweep(rows, fmt: str, seed: int = 0) -> str:
    """Serialize sweep rows; JSON output carries no timing fields."""
    if fmt == "csv":
        buf = io.StringIO()
        writer = _csv.DictWriter(buf, fieldnames=SWEEP_CSV_COLUMNS,
                                 extrasaction="ignore")
        writer.writeheader()
        for row in rows:
            flat = dict(row)
            flat["beta"] = ":".join(str(c) for c in row["beta"])
            flat["r"] = ":".join(str(x) for x in row["r"])
            writer.writerow(flat)
        return buf.getvalue()
    stripped = []
    for row in rows:
        r2 = {k: v for k, v in row.items() if k != "elapsed_ms"}
        stripped.append(r2)
    doc = {"command": "sweep", "seed": seed, "rows": stripped}
    if fmt == "json":
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    lines = []
    for row in stripped:
        lines.append(" ".join(f"{k}={row[k]}" for k in sorted(row)))
    return "\n".join(lines) + "\n"


def _cmd_certify(args) -> int:
    rep = bounds.certify_pipeline()
    out = rep.to_json_dict()
    out["command"] = "certify"
    _emit(out, args.format)
    return EXIT_TRUE if rep.ok else EXIT_FALSE


def _cmd_verify_chars(args) -> int:
    ctx = _make_ctx(args)
    if ctx.order > args.cap:
        raise CapExceeded(f"q^n = {ctx.order} above --cap {args.cap}")
    mismatches = 0
    xnf = fqpoly.ctx_xn_factorization(ctx)
    for a in ctx.elements():
        for g, _ in xnf.divisors_with_exponents():
            want = 1.0 if classify.is_g_free(ctx, a, g) else 0.0
            if abs(chars.omega_g(ctx, a, g) - want) > 1e-6:
                mismatches += 1
    N1 = ctx.order - 1
    for a in ctx.elem_of_dlog:
        for rr in bounds.intnt.factorize(N1).divisors():
            M = N1 // rr
            for R in bounds.intnt.factorize(M).divisors():
                want = 1.0 if classify.is_Rr_free(ctx, a, R, rr) else 0.0
                if abs(chars.indicator_Rr(ctx, a, R, rr) - want) > 1e-6:
                    mismatches += 1
    weil = chars.check_weil_bounds(ctx, args.r, cap=args.cap)
    report = {
        "command": "verify-chars", "q": ctx.q, "n": ctx.n, "r": args.r,
        "indicator_mismatches": mismatches,
        "case_a_max": weil.case_a_max, "case_a_bound": weil.case_a_bound,
        "case_a_ok": weil.case_a_ok, "case_b_ok": weil.case_b_ok,
        "mixed_ok": weil.mixed_ok,
    }
    _emit(report, args.format)
    return EXIT_TRUE if mismatches == 0 and weil.ok else EXIT_FALSE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
