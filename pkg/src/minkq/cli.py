"""Command-line interface.

Subcommands: seq (mediant sequence export), q (question mark evaluation),
moments (solve and cache a moment system), recur (recurrence coefficients by
either method), analyze (means, diagnostics, zeros, plot data).  Every file
output gets a sibling ``<file>.manifest.json`` recording the command, its
parameters, the tool version and the wall time; re-running with the same
parameters reproduces the output byte for byte.

Exit codes: 0 success, 2 usage error, 3 numeric or domain failure.
"""

import argparse
import io
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from mpmath import mpf

from . import __version__, farey, measure, qfunc, recurrence
from .cache import cached_moments, write_atomic
from .errors import MinkqError
from .moments import load_moments, m1_error
from .numerics import PrecisionContext, to_decimal_string


def _write_manifest(out_path, command, parameters, digits, wall_time):
    manifest = {
        "command": command,
        "parameters": parameters,
        "tool_version": __version__,
        "digits": digits,
        "wall_time_seconds": wall_time,
    }
    data = (json.dumps(manifest, indent=1, sort_keys=True) + "\n").encode("utf-8")
    write_atomic(Path(str(out_path) + ".manifest.json"), data)


def _emit(out, data, command, parameters, digits, wall_time):
    if out is None:
        sys.stdout.write(data.decode("utf-8"))
    else:
        write_atomic(Path(out), data)
        _write_manifest(out, command, parameters, digits, wall_time)
        print(f"wrote {out}")


def _parse_point(text):
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    return text  # decimal string, parsed later at the requested precision


def cmd_seq(args):
    t0 = time.perf_counter()
    seq = farey.minkowski_sequence(args.N)
    if args.format == "csv":
        buf = io.StringIO()
        farey.write_sequence_csv(seq, buf)
        data = buf.getvalue().encode("utf-8")
    else:
        doc = {"level": seq.level, "points": [[p.numerator, p.denominator] for p in seq.points]}
        data = (json.dumps(doc, indent=1, sort_keys=True) + "\n").encode("utf-8")
    params = {"N": args.N, "format": args.format}
    _emit(args.out, data, "seq", params, None, time.perf_counter() - t0)
    return 0


def cmd_q(args):
    ctx = PrecisionContext(args.digits)
    point = _parse_point(args.x)
    if isinstance(point, Fraction):
        value = qfunc.q_rational(point)
        print(f"{value.numerator}/{value.denominator}")
        print(_dyadic_decimal(value))
    else:
        with ctx.working():
            x = mpf(point)
        print(to_decimal_string(qfunc.q_real(x, ctx)))
    return 0


def _dyadic_decimal(fr):
    """Exact decimal expansion of p/2^j (always terminates)."""
    num, den = fr.numerator, fr.denominator
    j = den.bit_length() - 1
    if num == 0:
        return "0"
    if den == 1:
        return str(num)
    digits = num * 5**j  # p/2^j = p*5^j / 10^j
    text = str(digits).rjust(j + 1, "0")
    return (text[:-j] + "." + text[-j:]).rstrip("0").rstrip(".")


def cmd_moments(args):
    t0 = time.perf_counter()
    mv, hit, path = cached_moments(args.variant, args.K, args.terms, args.digits)
    ctx = PrecisionContext(args.digits)
    gauge = m1_error(mv, ctx)
    print(f"cache {'hit' if hit else 'miss'}: {path}")
    print(f"m1_abs_error={to_decimal_string(gauge)}")
    if args.out:
        data = path.read_bytes()  # exact cached bytes
        params = {"variant": args.variant, "K": args.K, "terms": args.terms, "digits": args.digits}
        _emit(args.out, data, "moments", params, args.digits, time.perf_counter() - t0)
    return 0


def cmd_recur(args):
    t0 = time.perf_counter()
    if args.method == "stieltjes":
        if args.N is None:
            raise MinkqError("stieltjes method needs --N")
        digits = args.digits if args.digits else 100
        ctx = PrecisionContext(digits)
        mu = measure.empirical_measure(args.N)
        rc = recurrence.stieltjes(mu, args.n_max, ctx)
        params = {"method": "stieltjes", "N": args.N, "n_max": args.n_max, "digits": digits}
    else:
        if args.moments_file is None:
            raise MinkqError("chebyshev method needs --moments-file")
        mv = load_moments(args.moments_file)
        digits = args.digits if args.digits else mv.provenance["digits"]
        ctx = PrecisionContext(digits)
        rc = recurrence.chebyshev(mv, args.n_max, ctx)
        params = {
            "method": "chebyshev",
            "moments_file": str(args.moments_file),
            "n_max": args.n_max,
            "digits": digits,
        }
    data = recurrence.coefficients_bytes(rc, args.format)
    print(f"trusted_prefix={rc.trusted_prefix}")
    _emit(args.out, data, "recur", params, digits, time.perf_counter() - t0)
    return 0


def cmd_analyze(args):
    t0 = time.perf_counter()
    rc = recurrence.load_coefficients(args.coeffs_file, digits=args.digits)
    report = recurrence.nevai_diagnostics(rc)
    gmeans = recurrence.geometric_means(rc)
    lines = [
        f"coefficients: {len(rc.a2)} squared entries, trusted_prefix={rc.trusted_prefix}",
        f"a2_mean={to_decimal_string(report['a2_mean'])}",
        f"a2_min={to_decimal_string(report['a2_min'])}",
        f"a2_max={to_decimal_string(report['a2_max'])}",
        f"geometric_mean_final={to_decimal_string(report['geometric_mean_final'])}",
        f"reference_capacity_squared={to_decimal_string(report['reference_capacity_squared'])}",
        f"reference_capacity={to_decimal_string(report['reference_capacity'])}",
    ]
    if args.zeros:
        ctx = PrecisionContext(rc.digits)
        zs = recurrence.jacobi_zeros(rc, args.zeros, ctx)
        lines.append(f"zeros_n={args.zeros}")
        lines.extend(to_decimal_string(z) for z in zs)
    data = ("\n".join(lines) + "\n").encode("utf-8")
    params = {"coeffs_file": str(args.coeffs_file), "zeros": args.zeros}
    _emit(args.report, data, "analyze", params, rc.digits, time.perf_counter() - t0)
    if args.plot_data:
        prefix = Path(args.plot_data)
        a2_rows = ["k,a2_k"] + [
            f"{k},{to_decimal_string(v)}" for k, v in enumerate(rc.a2[: rc.trusted_prefix - 1], start=1)
        ]
        g_rows = ["k,g_k"] + [f"{k},{to_decimal_string(v)}" for k, v in enumerate(gmeans, start=1)]
        for suffix, rows in (("_a2.csv", a2_rows), ("_gmean.csv", g_rows)):
            out = Path(str(prefix) + suffix)
            write_atomic(out, ("\n".join(rows) + "\n").encode("utf-8"))
            _write_manifest(out, "analyze", params, rc.digits, time.perf_counter() - t0)
            print(f"wrote {out}")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="minkq",
        description="Recurrence coefficients and diagnostics for the question mark measure.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("seq", help="export the level-N mediant sequence")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_seq)

    p = sub.add_parser("q", help="evaluate the question mark function")
    p.add_argument("x", help="rational 'p/q' or decimal string in [0, 1]")
    p.add_argument("--digits", type=int, default=50)
    p.set_defaults(func=cmd_q)

    p = sub.add_parser("moments", help="solve a truncated moment system (cached)")
    p.add_argument("--variant", choices=["A", "B"], default="A")
    p.add_argument("--K", type=int, default=500)
    p.add_argument("--terms", type=int, default=400)
    p.add_argument("--digits", type=int, default=400)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("recur", help="compute recurrence coefficients")
    p.add_argument("--method", choices=["stieltjes", "chebyshev"], required=True)
    p.add_argument("--N", type=int, default=None, help="empirical-measure level (stieltjes)")
    p.add_argument("--moments-file", default=None, help="moment cache file (chebyshev)")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--digits", type=int, default=None,
                   help="working digits (default 100 stieltjes, moment file's for chebyshev)")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_recur)

    p = sub.add_parser("analyze", help="means, diagnostics, zeros and plot data")
    p.add_argument("--coeffs-file", required=True)
    p.add_argument("--digits", type=int, default=None, help="working digits for CSV input")
    p.add_argument("--zeros", type=int, default=None)
    p.add_argument("--report", default=None, help="report file (stdout when omitted)")
    p.add_argument("--plot-data", default=None, help="prefix for (k,a2) and (k,g) CSV files")
    p.set_defaults(func=cmd_analyze)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (MinkqError, ValueError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
