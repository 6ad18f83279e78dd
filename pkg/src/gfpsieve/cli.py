"""Command-line front end.

Exit codes: 0 success, 1 semantic failure (count mismatch, reducible
polynomial, failed verification), 2 invalid configuration, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import oracle, sieve
from .inverse import ReducibleModulusError, build_sbox
from .poly import ConfigurationError, check_field, decode, encode

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2
EXIT_IO = 3


class _Fatal(Exception):
    def __init__(self, code: int, msg: str):
        super().__init__(msg)
        self.code = code


def _colour(kind: str) -> tuple[str, str]:
    if os.environ.get("NO_COLOR") or not sys.stderr.isatty():
        return "", ""
    return {"error": "\033[31m", "warning": "\033[33m"}.get(kind, "\033[2m"), "\033[0m"


def _diag(kind: str, msg: str) -> None:
    on, off = _colour(kind)
    print(f"{on}{kind}:{off} {msg}", file=sys.stderr)


def _progress(args, msg: str) -> None:
    if not args.quiet:
        _diag("info", msg)


def parse_format(text: str) -> tuple[str, int | None]:
    """'lines', 'csv', 'json', 'c' or 'columns:N'."""
    if text.startswith("columns:"):
        try:
            n = int(text.split(":", 1)[1])
        except ValueError:
            n = 0
        if n < 1:
            raise argparse.ArgumentTypeError(f"bad column count in {text!r}")
        return "columns", n
    if text in ("lines", "csv", "json", "c"):
        return text, None
    raise argparse.ArgumentTypeError(f"unknown format {text!r}")


def _write(args, text: str) -> None:
    if args.out in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise _Fatal(EXIT_IO, f"cannot write {args.out}: {exc.strerror or exc}") from exc


def _monic_linear(p: int) -> np.ndarray:
    return np.arange(p, 2 * p, dtype=np.uint64)


def _sieve(args, include_nonmonic=False):
    """Sieve result, or a trivial stand-in for q = 1."""
    p, q = args.p, args.q
    if q == 1:
        codes = _monic_linear(p)
        report = sieve.SieveReport(
            p=p, q=1, monic_irreducible=p, reducible=0,
            nonmonic_irreducible=(p - 2) * p, total_irreducible=(p - 1) * p,
        )
        nonmonic = sieve.nonmonic_expand(codes, p, 1) if include_nonmonic else None
        return sieve.SieveResult(report, None, codes, nonmonic)
    blocks = sieve.enumerate_blocks(p, q)
    _progress(args, f"sieving GF({p}^{q}): {len(blocks)} block(s), {p**q} monic candidates")
    res = sieve.run_sieve(p, q, include_nonmonic=include_nonmonic, workers=args.workers)
    _progress(args, f"done in {res.report.duration_ms:.0f} ms")
    return res


def _published_warning(p: int, q: int, exact: int) -> None:
    pub = oracle.PUBLISHED_COUNTS.get((p, q))
    if pub is not None and pub != exact:
        extra = ""
        if pub == oracle.count_root_free(p, q):
            extra = f" ({pub} counts root-free monic polynomials, not irreducibles)"
        _diag("warning", f"published figure for GF({p}^{q}) is {pub}, exact count is {exact}{extra}")


def cmd_count(args) -> int:
    exact = oracle.count_monic_irreducible(args.p, args.q)
    line = f"formula={exact}"
    status = EXIT_OK
    if args.sieve:
        got = int(_sieve(args).codes.size)
        line += f" sieve={got}"
        if got != exact:
            status = EXIT_FAIL
    print(line)
    _published_warning(args.p, args.q, exact)
    return status


def _render_codes(codes, fmt: str, columns: int | None) -> str:
    if fmt == "json":
        return json.dumps(codes.tolist()) + "\n"
    if fmt == "csv":
        return sieve.format_codes(codes, columns or 11, sep=",")
    if fmt == "columns":
        return sieve.format_codes(codes, columns)
    if fmt == "c":
        raise _Fatal(EXIT_CONFIG, "format 'c' applies to sbox only")
    return sieve.format_codes(codes, columns)


def cmd_list(args) -> int:
    fmt, columns = args.format
    if args.columns is not None:
        if args.columns < 1:
            raise ConfigurationError("--columns must be >= 1")
        fmt, columns = "columns", args.columns
    res = _sieve(args, include_nonmonic=args.include_nonmonic)
    _write(args, _render_codes(res.all_codes(), fmt, columns))
    if args.report:
        try:
            with open(args.report, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(res.report.to_json())
        except OSError as exc:
            raise _Fatal(EXIT_IO, f"cannot write {args.report}: {exc.strerror or exc}") from exc
    return EXIT_OK


def cmd_check(args) -> int:
    p, q, code = args.p, args.q, args.code
    if not p**q <= code < 2 * p**q:
        raise ConfigurationError(
            f"code {code} is not a monic degree-{q} polynomial over GF({p}) "
            f"(expected {p**q} <= code < {2 * p**q})"
        )
    poly = decode(code, p)
    factor = oracle.find_factor(poly) if q > 1 else None
    if factor is None:
        print(f"irreducible: {poly}")
        return EXIT_OK
    print(f"reducible: factor {encode(factor)} ({factor}) of degree {factor.degree}")
    return EXIT_FAIL


def cmd_verify(args) -> int:
    res = _sieve(args)
    if args.q == 1:
        v = oracle.VerificationResult(args.p, 1, args.p, int(res.codes.size), exhaustive=True)
    else:
        v = oracle.verify(args.p, args.q, res.codes, exhaustive_bound=args.exhaustive_bound)
    for note in v.notes:
        _diag("warning", note)
    res.report.verification = v.to_dict()
    _write(args, res.report.to_json())
    return EXIT_OK if v.success else EXIT_FAIL


def cmd_sbox(args) -> int:
    fmt, columns = args.format
    try:
        table = build_sbox(args.p, args.q, args.ip, workers=args.workers)
    except ReducibleModulusError as exc:
        _diag("error", str(exc))
        return EXIT_FAIL
    if fmt == "csv":
        text = table.to_csv(columns or args.width)
    elif fmt == "c":
        text = table.to_c_array(width=args.width)
    elif fmt == "json":
        text = json.dumps({"p": table.p, "q": table.q, "ip": table.ip_code, "entries": table.entries}) + "\n"
    else:
        text = sieve.format_codes(table.entries, columns)
    _write(args, text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gfpsieve",
        description="Irreducible polynomials over GF(p^q) by the product sieve.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, required=True, help="prime field characteristic")
    common.add_argument("--q", type=int, required=True, help="extension degree")
    common.add_argument("--workers", type=int, default=None,
                        help="parallel workers (default: available CPUs)")
    common.add_argument("--out", default=None, help="output file (default: stdout)")
    common.add_argument("--quiet", action="store_true", help="no progress on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", parents=[common], help="count monic irreducibles")
    p.add_argument("--sieve", action="store_true", help="also run the sieve and compare")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("list", parents=[common], help="write irreducible codes")
    p.add_argument("--format", type=parse_format, default=("lines", None),
                   help="lines | columns:N | csv | json")
    p.add_argument("--columns", type=int, default=None, help="N codes per row")
    p.add_argument("--include-nonmonic", action="store_true")
    p.add_argument("--report", default=None, help="write the sieve report JSON here")
    p.set_defaults(func=cmd_list)

    p = sub.add_parser("check", parents=[common], help="trial-division test of one code")
    p.add_argument("code", type=int)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("verify", parents=[common], help="sieve and cross-check against the oracle")
    p.add_argument("--exhaustive-bound", type=int, default=oracle.DEFAULT_EXHAUSTIVE_BOUND,
                   help="run full trial division when p^q is at most this")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sbox", parents=[common], help="multiplicative inverse table")
    p.add_argument("--ip", type=int, required=True, help="code of the monic irreducible modulus")
    p.add_argument("--format", type=parse_format, default=("lines", None),
                   help="lines | csv | c | json")
    p.add_argument("--width", type=int, default=16, help="row width for csv and c output")
    p.set_defaults(func=cmd_sbox)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.workers is None:
        args.workers = sieve.default_workers()
    try:
        if args.workers < 1:
            raise ConfigurationError("--workers must be >= 1")
        check_field(args.p, args.q)
        return args.func(args)
    except ConfigurationError as exc:
        _diag("error", str(exc))
        return EXIT_CONFIG
    except _Fatal as exc:
        _diag("error", str(exc))
        return exc.code
    except OSError as exc:
        _diag("error", str(exc))
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
