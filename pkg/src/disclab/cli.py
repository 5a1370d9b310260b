"""Command-line front end.

    disclab seq -k 1 0 10
    disclab disc -k 1 -n 130 --method auto
    disclab z -k 1 -m 29 --brute
    disclab sets -k 1 --limit 20
    disclab mset --count 21
    disclab fk -k 2 --nmax 2000
    disclab sunit next --primes 2,5 --min 1,1 17
    disclab verify --suite acceptance

Exit status: 0 success, 1 usage, 2 capacity, 3 closed form vs oracle mismatch.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional

from disclab import appearance, discriminator, sunit
from disclab.bigmod import DEFAULT_FACTOR_BOUND, LucasParams, lucas_u, window_mod
from disclab.errors import CapacityError, InconsistencyError, UndecidableError
from disclab.verify import SUITES, run_suite

EXIT_OK, EXIT_USAGE, EXIT_CAPACITY, EXIT_INCONSISTENT = 0, 1, 2, 3

_INT64_MAX = (1 << 63) - 1
_DIGITS = re.compile(r"-?\d+\Z")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    k: Optional[int]
    output_format: str
    precision_bits: int
    factor_bound: int
    thread_count: int
    args: Dict[str, Any] = field(default_factory=dict)

    def echo(self) -> Dict[str, Any]:
        # thread_count is left out so output does not depend on it
        return {"command": self.command, "k": self.k, "format": self.output_format,
                "precision_bits": self.precision_bits, "factor_bound": self.factor_bound,
                **self.args}


# ---------------------------------------------------------------------------
# Serialisation
# ---------------------------------------------------------------------------

def to_jsonable(value):
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return str(value) if abs(value) > _INT64_MAX else value
    if isinstance(value, dict):
        return {k: to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    return value


def _from_jsonable(value):
    if isinstance(value, str) and _DIGITS.match(value):
        return int(value)
    if isinstance(value, dict):
        return {k: _from_jsonable(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_from_jsonable(v) for v in value]
    return value


def load_json(text: str) -> Dict[str, Any]:
    """Parse CLI JSON output, restoring integers written as decimal strings."""
    return _from_jsonable(json.loads(text))


def records_from_json(text: str) -> List[discriminator.DiscriminatorRecord]:
    return [discriminator.DiscriminatorRecord(**row) for row in load_json(text)["results"]]


def render(fmt: str, config: RunConfig, results: List[Dict[str, Any]],
           diagnostics: List[str]) -> str:
    if fmt == "json":
        doc = {"config": config.echo(), "results": results, "diagnostics": diagnostics}
        return json.dumps(to_jsonable(doc), indent=2) + "\n"
    columns: List[str] = []
    for row in results:
        for key in row:
            if key not in columns:
                columns.append(key)

    def cell(v):
        if isinstance(v, (list, dict)):
            return json.dumps(to_jsonable(v), separators=(",", ":"))
        if isinstance(v, bool):
            return "true" if v else "false"
        return "" if v is None else str(v)

    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\r\n")
        writer.writerow(columns)
        for row in results:
            writer.writerow([cell(row.get(c)) for c in columns])
        return buf.getvalue()
    echo = " ".join(f"{k}={json.dumps(to_jsonable(v), separators=(',', ':'))}"
                    for k, v in config.echo().items())
    lines = [f"# config {echo}"]
    table = [columns] + [[cell(row.get(c)) for c in columns] for row in results]
    widths = [max(len(r[i]) for r in table) for i in range(len(columns))]
    for r in table:
        lines.append("  ".join(v.rjust(w) for v, w in zip(r, widths)).rstrip())
    lines += [f"# {d}" for d in diagnostics]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Argument helpers
# ---------------------------------------------------------------------------

def parse_range(text: str):
    m = re.fullmatch(r"\s*(\d+)\s*\.\.\s*(\d+)\s*", text)
    if not m:
        raise argparse.ArgumentTypeError(f"expected FROM..TO, got {text!r}")
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def _int_list(text: str) -> List[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _ratio(text: str):
    m = re.fullmatch(r"\s*(\d+)\s*/\s*(\d+)\s*", text)
    if not m:
        raise argparse.ArgumentTypeError(f"expected NUM/DEN, got {text!r}")
    return int(m.group(1)), int(m.group(2))


def _threads(text: str) -> int:
    if text == "auto":
        return os.cpu_count() or 1
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("threads must be >= 1 or 'auto'")
    return n


def _params(args) -> LucasParams:
    if args.k is None:
        raise UsageError("this command needs -k")
    return LucasParams(args.k)


def _row(record) -> Dict[str, Any]:
    return asdict(record)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_seq(args, cfg):
    params = _params(args)
    if args.n_from > args.n_to:
        raise UsageError("n_from must not exceed n_to")
    if args.m is not None:
        terms = window_mod(params, args.n_to + 1, args.m).terms
        return [{"n": n, "value": terms[n]} for n in range(args.n_from, args.n_to + 1)], []
    return [{"n": n, "value": lucas_u(params, n)} for n in range(args.n_from, args.n_to + 1)], []


def cmd_disc(args, cfg):
    params = _params(args)
    lo, hi = (args.n, args.n) if args.n is not None else args.range
    if lo < 1:
        raise UsageError("n must be >= 1")
    diags = []
    if args.method == "brute":
        values = discriminator.disc_brute_table(params, hi, cfg.thread_count)
        recs = [discriminator._record(params, n, values[n - 1], "brute", certified=True)
                for n in range(lo, hi + 1)]
    elif args.method == "closed":
        recs = []
        for n in range(lo, hi + 1):
            rec, exact = discriminator.disc_closed(params, n)
            if not exact:
                diags.append(f"n={n}: upper bound {rec.value} not certified equal")
            recs.append(rec)
    else:
        recs = discriminator.disc_auto_range(params, lo, hi, cfg.thread_count)
        for r in recs:
            if r.candidate is not None:
                diags.append(f"n={r.n}: brute {r.value} beat closed-form bound {r.candidate}")
    return [_row(r) for r in recs], diags


def cmd_z(args, cfg):
    params = _params(args)
    lo, hi = (args.m, args.m) if args.m is not None else args.range
    if lo < 1:
        raise UsageError("m must be >= 1")
    brute = appearance.z_brute_table(params, hi, cfg.thread_count) if args.brute else None
    rows, diags = [], []
    for m in range(lo, hi + 1):
        res = appearance.z_of(params, m, cfg.factor_bound)
        row = {"m": m, "z": res.z, "method": res.method,
               "breakdown": [asdict(b) for b in res.breakdown]}
        if brute is not None:
            row["z_brute"] = int(brute[m])
            row["match"] = row["z_brute"] == res.z
            if not row["match"]:
                diags.append(f"m={m}: formula {res.z} != brute {row['z_brute']}")
        rows.append(row)
    if diags:
        raise InconsistencyError("; ".join(diags))
    return rows, diags


def cmd_sets(args, cfg):
    params = _params(args)
    rows = []
    for m in range(1, args.limit + 1):
        mem = appearance.membership(params, m, cfg.factor_bound)
        if mem.positive:
            rows.append({"m": m, "set": "A" if mem.in_A else "B"})
    return rows, []


def cmd_mset(args, cfg):
    mparams = discriminator.MSetParams.create(cfg.precision_bits)
    rows = []
    for b in range(1, args.count + 1):
        try:
            if discriminator.m_set_member(b, mparams):
                rows.append({"b": b})
        except UndecidableError:
            rows.append({"b": b, "undecidable": True})
    dens = discriminator.m_density(args.count, mparams)
    diags = [f"density {dens.fraction} = {float(dens):.6f} over b <= {dens.count}"]
    return rows, diags


def cmd_fk(args, cfg):
    params = _params(args)
    recs = discriminator.fk_extract(params, args.nmax, cfg.thread_count)
    return [_row(r) for r in recs], []


def cmd_sunit(args, cfg):
    if args.sunit_cmd == "next":
        spec = sunit.SUnitSpec(tuple(args.primes), tuple(args.min or ()),
                               args.even, args.no_nine)
        return [{"x": args.x, "next": sunit.sunit_next(spec, args.x)}], []
    if args.sunit_cmd == "gap25":
        found, witness = sunit.gap_check_25(args.n)
        return [{"n": args.n, "found": found, "witness": witness}], []
    if args.sunit_cmd == "gap":
        num, den = args.ratio
        fails = sunit.gap_check_general(args.p, num, den, args.n_from, args.n_to)
        return [{"n": n} for n in fails], [f"{len(fails)} failures"]
    if args.sunit_cmd == "e37":
        return [{"i": i, "e": e} for i, e in sunit.thirty_seven_exponents()], []
    if args.sunit_cmd == "lbg":
        return [{"k": k, "a": a, "b": b} for k, a, b in sunit.levi_ben_gerson(args.kmax)], []
    raise UsageError("sunit needs a subcommand")


def cmd_verify(args, cfg):
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    results = run_suite(args.suite, cfg.thread_count)
    for r in results:
        print(r.line(), file=sys.stderr)
    rows = [asdict(r) for r in results]
    diags = [f"{r.key} failed: {r.detail}" for r in results if not r.passed]
    return rows, diags


COMMANDS = {
    "seq": cmd_seq, "disc": cmd_disc, "z": cmd_z, "sets": cmd_sets,
    "mset": cmd_mset, "fk": cmd_fk, "sunit": cmd_sunit, "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    # SUPPRESS lets a flag given before the subcommand survive the subparser
    common.add_argument("-k", "--k", type=int, default=argparse.SUPPRESS)
    common.add_argument("--format", choices=("json", "csv", "text"), default=argparse.SUPPRESS)
    common.add_argument("--precision-bits", type=int, default=argparse.SUPPRESS)
    common.add_argument("--factor-bound", type=int, default=argparse.SUPPRESS)
    common.add_argument("--threads", type=_threads, default=argparse.SUPPRESS)
    common.add_argument("--out", default=argparse.SUPPRESS)

    parser = _Parser(prog="disclab", parents=[common],
                     description="Discriminators of the Lucas family U(k).")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("seq", parents=[common], help="U_n(k), optionally mod m")
    p.add_argument("n_from", type=int)
    p.add_argument("n_to", type=int)
    p.add_argument("-m", type=int)

    p = sub.add_parser("disc", parents=[common], help="discriminator values")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("-n", type=int)
    g.add_argument("--range", type=parse_range)
    p.add_argument("--method", choices=("brute", "closed", "auto"), default="auto")

    p = sub.add_parser("z", parents=[common], help="index of appearance")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("-m", type=int)
    g.add_argument("--range", type=parse_range)
    p.add_argument("--brute", action="store_true")

    p = sub.add_parser("sets", parents=[common], help="members of A_k and B_k")
    p.add_argument("--limit", type=int, required=True)

    p = sub.add_parser("mset", parents=[common], help="the exponent set M")
    p.add_argument("--count", type=int, required=True)

    p = sub.add_parser("fk", parents=[common], help="exceptional discriminator values")
    p.add_argument("--nmax", type=int, required=True)

    p = sub.add_parser("sunit", parents=[common], help="S-unit tools")
    ss = p.add_subparsers(dest="sunit_cmd", required=True, parser_class=_Parser)
    q = ss.add_parser("next", parents=[common])
    q.add_argument("--primes", type=_int_list, required=True)
    q.add_argument("--min", type=_int_list)
    q.add_argument("--even", action="store_true")
    q.add_argument("--no-nine", action="store_true")
    q.add_argument("x", type=int)
    q = ss.add_parser("gap25", parents=[common])
    q.add_argument("-n", type=int, required=True)
    q = ss.add_parser("gap", parents=[common])
    q.add_argument("--p", type=int, required=True)
    q.add_argument("--ratio", type=_ratio, required=True)
    q.add_argument("n_from", type=int)
    q.add_argument("n_to", type=int)
    ss.add_parser("e37", parents=[common])
    q = ss.add_parser("lbg", parents=[common])
    q.add_argument("--kmax", type=int, required=True)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("--suite", default="acceptance")
    return parser


_DEFAULTS = {"k": None, "format": "text", "precision_bits": 192,
             "factor_bound": DEFAULT_FACTOR_BOUND, "threads": None, "out": None}
_GLOBAL = set(_DEFAULTS) | {"command"}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for key, value in _DEFAULTS.items():
        if not hasattr(args, key):
            setattr(args, key, value)
    if args.threads is None:
        try:
            args.threads = _threads(os.environ.get("DISCLAB_THREADS", "1"))
        except (ValueError, argparse.ArgumentTypeError):
            print("disclab: error: bad DISCLAB_THREADS value", file=sys.stderr)
            return EXIT_USAGE
    extra = {k: (list(v) if isinstance(v, tuple) else v)
             for k, v in sorted(vars(args).items()) if k not in _GLOBAL}
    cfg = RunConfig(args.command, args.k, args.format, args.precision_bits,
                    args.factor_bound, args.threads, extra)
    try:
        if cfg.precision_bits < 128:
            raise UsageError("--precision-bits must be >= 128")
        results, diags = COMMANDS[args.command](args, cfg)
    except (UsageError, ValueError, TypeError) as exc:
        print(f"disclab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CapacityError, UndecidableError) as exc:
        print(f"disclab: capacity: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except InconsistencyError as exc:
        print(f"disclab: inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    if args.format == "csv":
        print(f"# config {json.dumps(to_jsonable(cfg.echo()))}", file=sys.stderr)
    text = render(args.format, cfg, results, diags)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.command == "verify" and diags:
        return EXIT_INCONSISTENT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
