"""``permulex analyze|generate|verify|sturmian``.

Exit codes: 0 success, 2 invalid input, 3 morphism rejected (not primitive,
monotone or separable), 4 verification failed, 5 arithmetic exhausted.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import __version__
from .ergodicity import Ergodicity, ergodic_word_verdict
from .errors import (AnalysisRejection, ComparisonExhausted, EndpointHit, PermulexError,
                     UnresolvableComparison, ValidationError)
from .interval import Orientation, canonical_prefix, canonicality_report, verify_against_shifts
from .order import DEFAULT_DEPTH, DEFAULT_PAIRS, DEFAULT_PREFIX
from .permutation import permutation_from_values, valid_permutation_prefix
from .pipeline import analyze_morphism, default_precision, with_precision
from .scalars import decimal_string, format_scalar, parse_scalar
from .specio import analysis_report, dumps, parse_spec, rejection_report
from .sturmian import SturmianParams, rotation_sequence, sturmian_cross_check

EXIT_OK, EXIT_INVALID, EXIT_REJECTED, EXIT_VERIFY, EXIT_ARITHMETIC = 0, 2, 3, 4, 5

_CLOSED = {Orientation.HALF_OPEN_LEFT: "right", Orientation.HALF_OPEN_RIGHT: "left", Orientation.INTERIOR: "open"}


def _analyze(spec, args, precision):
    return analyze_morphism(spec.morphism, seed=spec.seed, k=spec.power, auto_power=args.auto_power,
                            prefix=args.prefix, depth=args.depth, pairs_per_type=args.pairs,
                            precision=precision, order=spec.type_order)


def _emit(text: str, out) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _rows_text(rows, header: str, fmt: str) -> str:
    if fmt == "json":
        return json.dumps({"header": header, "rows": rows}, indent=1) + "\n"
    buf = io.StringIO()
    buf.write(f"# {header}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["index", "value", "decimal", "rank"])
    for r in rows:
        w.writerow([r["index"], r["value"], r["decimal"], r["rank"]])
    return buf.getvalue()


def _rows(values):
    ranks = permutation_from_values(values).ranks
    return [{"index": i, "value": format_scalar(v), "decimal": decimal_string(v), "rank": r}
            for i, (v, r) in enumerate(zip(values, ranks))]


def cmd_analyze(args) -> int:
    spec = parse_spec(args.spec)
    try:
        analysis = _analyze(spec, args, args.precision)
    except AnalysisRejection as exc:
        _emit(dumps(rejection_report(exc, spec.name)), args.out)
        print(f"rejected: {exc.reason}: {exc}", file=sys.stderr)
        return EXIT_REJECTED
    _emit(dumps(analysis_report(analysis, spec)), args.out)
    return EXIT_OK


def cmd_generate(args) -> int:
    spec = parse_spec(args.spec)

    def run(bits):
        analysis = _analyze(spec, args, bits)
        values = canonical_prefix(analysis.interval_morphism, args.n).values
        return analysis, _rows(values)

    analysis, rows = with_precision(run, args.precision)
    header = (f"permulex {__version__} spec={spec.name} power={analysis.power} n={args.n} "
              f"orientation={analysis.interval_morphism.layout.orientation.value}")
    _emit(_rows_text(rows, header, args.format), args.out)
    return EXIT_OK


def _dyadic(levels: int):
    return [(Fraction(d, 2 ** k), Fraction(d + 1, 2 ** k)) for k in range(levels + 1) for d in range(2 ** k)]


def cmd_verify(args) -> int:
    spec = parse_spec(args.spec)
    if args.sturmian:
        return _verify_sturmian(spec, args)

    def run(bits):
        analysis = _analyze(spec, args, bits)
        report = verify_against_shifts(analysis.interval_morphism, analysis.stream, args.n, args.depth)
        seq = canonical_prefix(analysis.interval_morphism, args.n)
        closed = _CLOSED[analysis.interval_morphism.layout.orientation]
        freqs = canonicality_report(seq, args.n, _dyadic(args.levels), closed)
        return analysis, report, freqs

    try:
        analysis, report, freqs = with_precision(run, args.precision)
    except AnalysisRejection as exc:
        print(json.dumps(rejection_report(exc, spec.name)))
        return EXIT_REJECTED
    worst = max(f.deviation for f in freqs)
    erg = ergodic_word_verdict(analysis.stream, 3, args.window, max(args.window * 16, args.n), args.tol)
    ok = report.agree and worst <= args.tol and erg.status is Ergodicity.LIKELY_ERGODIC
    summary = {
        "spec": spec.name, "n": args.n, "depth": args.depth, "pass": ok,
        "oracle": {"agree": report.agree, "first_mismatch": report.first_mismatch},
        "canonicality": {"levels": args.levels, "closed": _CLOSED[analysis.interval_morphism.layout.orientation],
                         "max_deviation": round(worst, 12), "tol": args.tol},
        "frequencies": {"verdict": erg.status.value, "witness": erg.witness, "window": erg.window,
                        "prefix": erg.prefix, "tol": erg.tol},
    }
    _emit(json.dumps(summary, indent=2) + "\n", args.out)
    return EXIT_OK if ok else EXIT_VERIFY


def _param(text: str, key: str, prec):
    text = text.strip()
    if text.startswith(key + "="):
        text = text[len(key) + 1:]
    return parse_scalar(text, prec)


def _verify_sturmian(spec, args) -> int:
    sigma_s, rho_s = args.sturmian
    params = SturmianParams(_param(sigma_s, "sigma", args.precision), _param(rho_s, "rho", args.precision))
    m = spec.morphism
    analysis = analyze_morphism(m, seed=spec.seed, k=spec.power, auto_power=args.auto_power,
                                prefix=args.prefix, depth=args.depth, precision=args.precision)
    rot = permutation_from_values(rotation_sequence(params, args.n))
    by_shift = valid_permutation_prefix(analysis.stream, args.n, args.depth)
    mismatch = next((i for i, (a, b) in enumerate(zip(rot.ranks, by_shift.ranks)) if a != b), None)
    ok = mismatch is None
    summary = {"spec": spec.name, "n": args.n, "sigma": format_scalar(params.sigma),
               "rho": format_scalar(params.rho), "pass": ok, "first_mismatch": mismatch}
    _emit(json.dumps(summary, indent=2) + "\n", args.out)
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_sturmian(args) -> int:
    params = SturmianParams(_param(args.sigma, "sigma", args.precision), _param(args.rho, "rho", args.precision))
    if args.cross_check:
        res = sturmian_cross_check(args.n, params, args.depth)
        _emit(json.dumps(res._asdict(), indent=2) + "\n", args.out)
        return EXIT_OK if res.agree else EXIT_VERIFY
    rows = _rows(rotation_sequence(params, args.n))
    header = f"permulex {__version__} sturmian sigma={format_scalar(params.sigma)} rho={format_scalar(params.rho)} n={args.n}"
    _emit(_rows_text(rows, header, args.format), args.out)
    return EXIT_OK


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="permulex", description="Canonical representatives of morphic permutations.")
    p.add_argument("--version", action="version", version=f"permulex {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, with_n=True):
        sp.add_argument("spec", help="spec file path or bundled name (thue-morse, fibonacci, ...)")
        sp.add_argument("--prefix", type=_positive, default=DEFAULT_PREFIX, help="prefix length for type ordering")
        sp.add_argument("--depth", type=_positive, default=DEFAULT_DEPTH, help="shift comparison depth")
        sp.add_argument("--pairs", type=_positive, default=DEFAULT_PAIRS, help="occurrence pairs per type pair")
        sp.add_argument("--precision", type=_positive, default=None, help="ball precision in bits")
        sp.add_argument("--auto-power", action="store_true", help="use the least monotone power")
        sp.add_argument("--out", default=None, help="write to a file instead of stdout")
        if with_n:
            sp.add_argument("-n", type=_positive, default=1000, help="number of values")

    a = sub.add_parser("analyze", help="run the construction and print a JSON report")
    common(a, with_n=False)
    a.set_defaults(func=cmd_analyze)

    g = sub.add_parser("generate", help="emit the canonical sequence with ranks")
    common(g)
    g.add_argument("--format", choices=("csv", "json"), default="csv")
    g.set_defaults(func=cmd_generate)

    v = sub.add_parser("verify", help="check the construction against the shift order")
    common(v)
    v.add_argument("--levels", type=int, default=3, help="dyadic levels for the canonicality check")
    v.add_argument("--tol", type=float, default=0.05, help="tolerance for frequency checks")
    v.add_argument("--window", type=_positive, default=1024, help="window for factor frequency envelopes")
    v.add_argument("--sturmian", nargs=2, metavar=("SIGMA", "RHO"), help="compare a rotation sequence instead")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sturmian", help="emit a rotation sequence or cross-check it")
    s.add_argument("--sigma", default="(3-sqrt(5))/2")
    s.add_argument("--rho", default="(3-sqrt(5))/2")
    s.add_argument("-n", type=_positive, default=1000)
    s.add_argument("--depth", type=_positive, default=DEFAULT_DEPTH)
    s.add_argument("--precision", type=_positive, default=None)
    s.add_argument("--format", choices=("csv", "json"), default="csv")
    s.add_argument("--cross-check", action="store_true", help="compare with the squared Fibonacci word")
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_sturmian)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "precision", None) is None:
            args.precision = default_precision()
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except AnalysisRejection as exc:
        print(json.dumps(rejection_report(exc)))
        return EXIT_REJECTED
    except (UnresolvableComparison, ComparisonExhausted, EndpointHit) as exc:
        print(f"arithmetic: {exc}", file=sys.stderr)
        return EXIT_ARITHMETIC
    except PermulexError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
