"""Command-line entry point.

Exit codes: 0 all checks passed, 1 a check failed, 2 usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import logging
import sys

from . import charsums
from .calibration import constant_for, write_frozen
from .checks import GROUPS, validate_prime
from .config import load_config
from .moments import K_MAX, moment
from .report import fmt, to_csv, to_json
from .sweep import conjecture_sweep, sweep, verify

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3
WHICH = ("N", "T", "S", "phi", "psi")


class UsageError(Exception):
    pass


def _common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", metavar="PATH", help="flat key = value TOML config file")
    sub.add_argument("--threads", type=int, help="worker processes (default: GML_THREADS or all cores)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gaussmoments", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sp = ap.add_subparsers(dest="command", required=True)

    v = sp.add_parser("verify", help="run every check for one prime")
    v.add_argument("--prime", type=int, required=True)
    v.add_argument("--n", type=int, default=1)
    _common(v)

    s = sp.add_parser("sweep", help="run check groups over a range of primes")
    s.add_argument("--what", choices=GROUPS + ("all", "conjecture"), default="all")
    s.add_argument("--min", type=int, default=3, dest="p_min")
    s.add_argument("--max", type=int, required=True, dest="p_max")
    s.add_argument("--n", type=int, default=1)
    s.add_argument("--k", type=int, default=K_MAX, help="moment index for --what conjecture")
    s.add_argument("--weighted", action="store_true", help="include L-weighted families (conjecture)")
    s.add_argument("--out", metavar="PATH", help="output file (default: stdout)")
    s.add_argument("--format", choices=("csv", "json"), default="csv")
    _common(s)

    m = sp.add_parser("moment", help="one power moment with its closed form")
    m.add_argument("--prime", type=int, required=True)
    m.add_argument("--n", type=int, default=1)
    m.add_argument("--k", type=int, required=True)
    _common(m)

    c = sp.add_parser("charsum", help="exact character sums N, T, S or the phi / psi profiles")
    c.add_argument("--prime", type=int, required=True)
    # validated by hand so a bad value maps to the usage exit code with a clear message
    c.add_argument("--which", required=True, help="one of " + ", ".join(WHICH))
    _common(c)

    k = sp.add_parser("constant-c", help="the Euler-product constant C with its tail bound")
    k.add_argument("--prime-limit", type=int)
    k.add_argument("--series-terms", type=int)
    k.add_argument("--no-tail-correction", action="store_true",
                   help="plain truncated product, without the prime-zeta tail correction")
    _common(k)

    cal = sp.add_parser("calibrate", help="recompute envelope constants and write a config file")
    cal.add_argument("--out", metavar="PATH", required=True)
    cal.add_argument("--min", type=int, dest="p_min")
    cal.add_argument("--max", type=int, dest="p_max")
    cal.add_argument("--safety", type=float)
    _common(cal)
    return ap


def _config(args):
    cfg = load_config(args.config)
    over = {"threads": args.threads}
    if getattr(args, "prime_limit", None) is not None:
        over["c_prime_limit"] = args.prime_limit
    if getattr(args, "series_terms", None) is not None:
        over["c_series_terms"] = args.series_terms
    if getattr(args, "no_tail_correction", False):
        over["c_tail_correction"] = False
    if args.command == "calibrate":
        lo, hi = cfg.calibration_range
        if args.p_min is not None or args.p_max is not None:
            over["calibration_range"] = (args.p_min or lo, args.p_max or hi)
        over["safety_factor"] = args.safety
    return cfg.with_overrides(**over)


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", newline="\n") as fh:
        fh.write(text)


def _print_table(rows) -> None:
    w = max((len(r.check_name) for r in rows), default=10)
    print(f"{'check':<{w}}  {'status':<11}  {'value':<26}  prediction")
    for r in rows:
        print(f"{r.check_name:<{w}}  {r.satisfied:<11}  {r.value:<26}  {r.prediction}")


def cmd_verify(args, cfg) -> int:
    rows = verify(args.prime, args.n, cfg)
    _print_table(rows)
    failed = [r for r in rows if r.failed]
    print(f"p={args.prime} n={args.n}: {len(rows) - len(failed)}/{len(rows)} rows not failed")
    return EXIT_FAIL if failed else EXIT_OK


def cmd_sweep(args, cfg) -> int:
    if args.what == "conjecture":
        rows = conjecture_sweep(args.k, args.p_min, args.p_max, args.weighted, cfg)
    else:
        rows = sweep(args.what, args.p_min, args.p_max, args.n, cfg)
    text = to_csv(rows) if args.format == "csv" else to_json(rows)
    _emit(text, args.out)
    return EXIT_FAIL if any(r.failed for r in rows) else EXIT_OK


def cmd_moment(args, cfg) -> int:
    validate_prime(args.prime, args.n)
    if args.k < 1:
        raise UsageError("k must be >= 1")
    rep = moment(args.prime, args.n, args.k, exact=args.k <= K_MAX and args.prime <= 5000)
    print(f"p = {rep.p}  n = {rep.n}  k = {rep.k}")
    print(f"moment      = {fmt(rep.value)}")
    if rep.exact is not None:
        print(f"exact       = {fmt(rep.exact)}")
    print(f"closed form = {fmt(rep.closed_form)}")
    print(f"ratio       = {fmt(rep.ratio)}  (limit {fmt(rep.predicted_ratio)})")
    ok = rep.closed_form_matches
    if rep.direct is not None:
        print(f"direct      = {fmt(rep.direct)}")
        ok = (ok is not False) and abs(rep.direct - rep.value) <= cfg.tolerance_rel * abs(rep.value)
    return EXIT_FAIL if ok is False else EXIT_OK


def cmd_charsum(args, cfg) -> int:
    if args.which not in WHICH:
        raise UsageError(f"--which must be one of {', '.join(WHICH)}")
    p = args.prime
    validate_prime(p)
    if p < 5:
        raise UsageError("character sums need p >= 5")
    if args.which in ("N", "T", "S"):
        print(getattr(charsums, f"sum_{args.which}")(p))
    else:
        tab = charsums.phi_table(p) if args.which == "phi" else charsums.psi_table(p)
        # profile over the units t = 1..p-1
        print(" ".join(str(int(v)) for v in tab[1:]))
    return EXIT_OK


def cmd_constant_c(args, cfg) -> int:
    c = constant_for(cfg)
    print(f"C = {c.value:.12f}")
    print(f"tail_bound = {c.tail_bound:.3e}")
    print(f"series_tail = {c.series_tail:.3e}")
    print(f"product_tail = {c.product_tail:.3e}")
    print(f"prime_limit = {c.prime_limit}")
    print(f"series_terms = {c.series_terms}")
    print(f"tail_correction = {str(c.tail_corrected).lower()}")
    return EXIT_OK


def cmd_calibrate(args, cfg) -> int:
    constants = write_frozen(cfg, args.out)
    for name, val in sorted(constants.items()):
        print(f"{name} = {val!r}")
    return EXIT_OK


COMMANDS = {
    "verify": cmd_verify,
    "sweep": cmd_sweep,
    "moment": cmd_moment,
    "charsum": cmd_charsum,
    "constant-c": cmd_constant_c,
    "calibrate": cmd_calibrate,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = _config(args)
        return COMMANDS[args.command](args, cfg)
    except (UsageError, ValueError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
