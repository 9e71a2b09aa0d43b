"""Command-line front end.

Every numeric command emits rows ``n,q,method,value,tail_or_stderr,runtime_ms``
as CSV (default) or a JSON list with the same fields.  ``q`` is echoed as
``a/b`` when given as a fraction (exact-rational paths) and as a decimal
otherwise (floating-point paths).

Exit status: 0 on success, 1 when ``compare --check`` finds a discrepancy
beyond the combined certified tolerances, 2 on invalid input (with a JSON
error object on stderr).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from fractions import Fraction
from typing import Callable, Iterable

import mpmath

from . import __version__
from .asymptotics import s_n_asymptotic, t_n_asymptotic
from .closedform import BINOMIAL_MAX_N, binomial_expected_pairs, expected_pairs
from .model import GeomParams, distinct_pairs, sample_word
from .montecarlo import estimate_expected_pairs
from .patterns import MAX_DIRECT_N, enumerate_rgs, expected_pairs_direct, pattern_distinct_pairs, \
    pattern_probability, pattern_type
from .series import q_coeff

FIELDS = ["n", "q", "method", "value", "tail_or_stderr", "runtime_ms"]
# methods whose tails are rigorous and take part in `compare --check`
CERTIFIED = ("direct", "binomial", "exact", "series")
METHOD_ORDER = {m: k for k, m in enumerate(["direct", "binomial", "exact", "series", "asymp", "mc"])}
SERIES_MAX_N = 4096
TABLE1_TYPES = {(4,): "A", (2, 2): "B", (3, 1): "C", (2, 1, 1): "D", (1, 1, 1, 1): "E"}
_ROUNDING = mpmath.mpf(2) ** -96


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_n(text: str) -> list[int]:
    """``"8"`` -> [8]; ``"2..64"`` -> [2, ..., 64]."""
    try:
        if ".." in text:
            lo, hi = (int(t) for t in text.split("..", 1))
            values = list(range(lo, hi + 1))
            if not values:
                raise UsageError(f"empty range {text!r}")
        else:
            values = [int(text)]
    except ValueError:
        raise UsageError(f"invalid --n {text!r}") from None
    if any(v < 0 for v in values):
        raise UsageError(f"n must be non-negative, got {text!r}")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="distinctpairs", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, n_default="4"):
        p.add_argument("--q", default="1/2", help="q as a fraction a/b (exact) or a decimal (float)")
        p.add_argument("--n", default=n_default, help="word length or range a..b")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", help="write to FILE instead of stdout")

    p = sub.add_parser("sample", help="draw one random word")
    common(p, "10")
    p.add_argument("--seed", type=int, default=0)

    for name, text in [("exact", "truncated closed-form sums"), ("binomial", "finite binomial sums"),
                       ("series", "generating-function coefficients"), ("direct", "pattern enumeration")]:
        p = sub.add_parser(name, help=text)
        common(p)
        p.add_argument("--eps", type=float, default=1e-12)

    p = sub.add_parser("asymp", help="asymptotic expansions")
    common(p, "1048576")
    p.add_argument("--K", type=int, default=3)

    p = sub.add_parser("mc", help="Monte Carlo estimate")
    common(p)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("compare", help="all applicable methods side by side")
    common(p)
    p.add_argument("--eps", type=float, default=1e-12)
    p.add_argument("--K", type=int, default=3)
    p.add_argument("--samples", type=int, default=0, help="Monte Carlo samples (0 = skip)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--check", action="store_true", help="exit 1 on a certified discrepancy")

    p = sub.add_parser("table1", help="patterns of length four with their probabilities")
    p.add_argument("--q", default=None, help="also evaluate each probability at this q")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")
    return parser


def _timed(fn: Callable):
    start = time.perf_counter()
    value, tail = fn()
    return value, tail, (time.perf_counter() - start) * 1000


def _cell(method: str, params: GeomParams, n: int, args) -> dict | None:
    """Evaluate one (n, method) cell; None when n is outside the method's gate."""
    if method == "direct":
        if n > MAX_DIRECT_N:
            return None
        fn = lambda: (expected_pairs_direct(n)(params.q), 0)
    elif method == "binomial":
        if n > BINOMIAL_MAX_N:
            return None
        fn = lambda: (binomial_expected_pairs(params, n), 0)
    elif method == "exact":
        def fn():
            r = expected_pairs(params, n, args.eps)
            return r.value, r.tail_bound
    elif method == "series":
        if n > SERIES_MAX_N:
            return None

        def fn():
            r = q_coeff(params, n, args.eps)
            return r.value, r.tail_bound
    elif method == "asymp":
        if n < 2:
            return None

        def fn():
            s, t = s_n_asymptotic(params, n, args.K), t_n_asymptotic(params, n, args.K)
            return s.total + t.total, None
    elif method == "mc":
        def fn():
            r = estimate_expected_pairs(params, n, args.samples, args.seed, args.workers)
            return r.mean, r.stderr
    else:
        raise ValueError(method)
    value, tail, ms = _timed(fn)
    return {"n": n, "q": params.label(), "method": method, "value": value, "tail_or_stderr": tail,
            "runtime_ms": ms}


def _to_plain(x):
    if x is None:
        return None
    if isinstance(x, (Fraction, mpmath.mpf)):
        return float(x)
    return x


def _emit(rows: list[dict], fields: list[str], fmt: str, out) -> None:
    plain = [{k: _to_plain(r[k]) for k in fields} for r in rows]
    if fmt == "json":
        json.dump(plain, out, indent=1)
        out.write("\n")
        return
    writer = csv.DictWriter(out, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for r in plain:
        writer.writerow({k: ("" if v is None else (repr(v) if isinstance(v, float) else v)) for k, v in r.items()})


def find_discrepancies(rows: list[dict]) -> list[dict]:
    """Pairs of certified rows at the same n whose gap exceeds the sum of their tails."""
    bad = []
    by_n: dict[int, list[dict]] = {}
    for r in rows:
        if r["method"] in CERTIFIED:
            by_n.setdefault(r["n"], []).append(r)
    for n, group in sorted(by_n.items()):
        for k, a in enumerate(group):
            for b in group[k + 1:]:
                gap = abs(_as_mpf(a["value"]) - _as_mpf(b["value"]))
                allowed = _as_mpf(a["tail_or_stderr"]) + _as_mpf(b["tail_or_stderr"]) \
                    + _ROUNDING * max(1, abs(_as_mpf(a["value"])))
                if gap > allowed:
                    bad.append({"n": n, "methods": [a["method"], b["method"]], "gap": float(gap),
                                "allowed": float(allowed)})
    return bad


def _as_mpf(x):
    with mpmath.workprec(256):
        if isinstance(x, Fraction):
            return mpmath.mpf(x.numerator) / x.denominator
        return mpmath.mpf(x)


def _params(args) -> GeomParams:
    try:
        return GeomParams.from_q(args.q)
    except (ValueError, TypeError) as exc:
        raise UsageError(f"invalid --q: {exc}") from None


def _check_common(args):
    if getattr(args, "eps", 1) <= 0:
        raise UsageError("--eps must be positive")
    if getattr(args, "K", 0) < 0:
        raise UsageError("--K must be non-negative")
    if getattr(args, "workers", 1) < 1:
        raise UsageError("--workers must be positive")


def _table1_rows(q_text: str | None) -> tuple[list[dict], list[str]]:
    value_at = GeomParams.from_q(q_text).q if q_text is not None else None
    rows = []
    for rgs in enumerate_rgs(4):
        prob = pattern_probability(rgs)
        row = {"pattern": rgs.letters(), "distinct_pairs": pattern_distinct_pairs(rgs),
               "type": TABLE1_TYPES[pattern_type(rgs)], "probability": prob.serialize()}
        if value_at is not None:
            row["value"] = str(prob(value_at))
        rows.append(row)
    fields = ["pattern", "distinct_pairs", "type", "probability"] + (["value"] if value_at is not None else [])
    return rows, fields


def run(argv: Iterable[str] | None = None, stdout=None, stderr=None) -> int:
    """Parse ``argv``, run the command and return the exit status."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
        _check_common(args)
        if args.command == "table1":
            if args.q is not None:
                _params(args)
            rows, fields = _table1_rows(args.q)
            return _write(rows, fields, args, stdout)
        params = _params(args)
        ns = parse_n(args.n)
        if getattr(args, "samples", 2) < 0 or (args.command == "mc" and args.samples < 2):
            raise UsageError("--samples must be at least 2")
        if args.command == "direct" and max(ns) > MAX_DIRECT_N:
            raise UsageError(f"direct supports n <= {MAX_DIRECT_N}")
        if args.command == "binomial" and max(ns) > BINOMIAL_MAX_N:
            raise UsageError(f"binomial supports n <= {BINOMIAL_MAX_N}")
        if args.command == "asymp" and min(ns) < 2:
            raise UsageError("asymp needs n >= 2")
    except UsageError as exc:
        json.dump({"error": str(exc), "status": 2}, stderr)
        stderr.write("\n")
        return 2

    if args.command == "sample":
        rows = []
        for n in ns:
            word = sample_word(params, n, args.seed)
            rows.append({"n": n, "q": params.label(), "seed": args.seed,
                         "word": " ".join(map(str, word)), "distinct_pairs": distinct_pairs(word).distinct_count})
        return _write(rows, ["n", "q", "seed", "word", "distinct_pairs"], args, stdout)

    if args.command == "compare":
        methods = ["direct", "binomial", "exact", "series", "asymp"] + (["mc"] if args.samples >= 2 else [])
    else:
        methods = [args.command]
    rows = [cell for n in ns for m in methods if (cell := _cell(m, params, n, args)) is not None]
    rows.sort(key=lambda r: (r["n"], METHOD_ORDER[r["method"]]))
    status = _write(rows, FIELDS, args, stdout)
    if args.command == "compare" and args.check:
        bad = find_discrepancies(rows)
        if bad:
            json.dump({"error": "cross-method discrepancy", "status": 1, "rows": bad}, stderr)
            stderr.write("\n")
            return 1
    return status


def _write(rows, fields, args, stdout) -> int:
    if args.out:
        with open(args.out, "w", newline="") as fh:
            _emit(rows, fields, args.format, fh)
    else:
        _emit(rows, fields, args.format, stdout)
    return 0


def main() -> None:
    sys.exit(run())
