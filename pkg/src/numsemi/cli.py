"""Command-line entry point.

Exit codes: 0 success, 1 verification mismatch, 2 usage or input error,
3 resource, budget or overflow error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable

from . import bijections as bj
from . import counting, verify
from .errors import CountOverflowError, DomainError, ResourceError, ValidationError
from .numset import (
    NumericalSet,
    format_numerical_set,
    is_semigroup,
    parse_numerical_set,
    semigroup_from_generators,
    to_numerical_set,
    to_partition,
)
from .partition import (
    DEFAULT_BUDGET,
    PartitionConstraint,
    enumerate_partitions,
    format_frequency,
    format_partition,
    parse_partition,
)
from .semitree import enumerate_by_genus

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3
EMITS = ("json", "jsonl", "csv", "pretty")
CACHE_ENV = "NUMSEMI_CACHE"

log = logging.getLogger("numsemi")


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    emit: str
    threads: int
    budget: int
    cache_path: str | None
    seed: int
    sample: int | None
    output: str | None

    def __post_init__(self):
        if self.budget <= 0:
            raise ValidationError(f"--budget must be positive, got {self.budget}")
        if self.threads <= 0:
            raise ValidationError(f"--threads must be positive, got {self.threads}")
        if self.emit not in EMITS:
            raise ValidationError(f"--emit must be one of {', '.join(EMITS)}")


class UsageError(Exception):
    pass


def parse_range(text: str) -> list[int]:
    """``5``, ``1..10`` (inclusive) or ``1,3,7``."""
    out: list[int] = []
    try:
        for chunk in text.split(","):
            chunk = chunk.strip()
            if ".." in chunk:
                lo, hi = chunk.split("..", 1)
                out.extend(range(int(lo), int(hi) + 1))
            elif chunk:
                out.append(int(chunk))
    except ValueError:
        raise UsageError(f"bad range {text!r}; use N, A..B or A,B,C") from None
    return out


def parse_ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


# ---------------------------------------------------------------------------
# output


def _cell(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (dict, list)):
        return json.dumps(v, separators=(",", ":"))
    return str(v)


def render(records: list[dict], emit: str) -> str:
    if emit == "json":
        return json.dumps(records, indent=1) + "\n"
    if emit == "jsonl":
        return "".join(json.dumps(r, separators=(",", ":")) + "\n" for r in records)
    cols: list[str] = []
    for r in records:
        cols.extend(k for k in r if k not in cols)
    if emit == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in records:
            w.writerow([_cell(r.get(c)) for c in cols])
        return buf.getvalue()
    rows = [[_cell(r.get(c)) for c in cols] for r in records]
    widths = [max([len(c)] + [len(row[i]) for row in rows]) for i, c in enumerate(cols)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip()]
    lines += ["  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() for row in rows]
    return "\n".join(lines) + "\n"


def write(cfg: RunConfig, records: list[dict], emit: str | None = None) -> None:
    text = render(records, emit or cfg.emit)
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands


def _describe(s: NumericalSet) -> dict:
    lam = to_partition(s)
    cert = is_semigroup(s)
    return {
        "partition": format_partition(lam),
        "frequency": format_frequency(lam),
        "size": str(sum(lam)),
        "set": format_numerical_set(s),
        "gaps": [str(g) for g in s.gaps],
        "genus": str(s.genus),
        "frobenius": str(s.frobenius),
        "multiplicity": str(s.multiplicity),
        "semigroup": cert.closed,
        "witness": None if cert.witness is None else [str(x) for x in cert.witness],
    }


def cmd_convert(args, cfg: RunConfig) -> int:
    given = [x for x in (args.partition, args.set, args.gaps, args.generators) if x is not None]
    if len(given) != 1:
        raise UsageError("convert needs exactly one of --partition, --set, --gaps, --generators")
    if args.partition is not None:
        s = to_numerical_set(parse_partition(args.partition))
    elif args.set is not None:
        s = parse_numerical_set(args.set)
    elif args.gaps is not None:
        s = NumericalSet(parse_ints(args.gaps))
    else:
        s = semigroup_from_generators(parse_ints(args.generators))
    rec = _describe(s)
    if cfg.emit == "pretty":
        text = (
            f"{rec['set']}\n"
            f"partition {rec['partition']}  gaps {{{', '.join(rec['gaps'])}}}\n"
            f"(g,f,m) = ({rec['genus']},{rec['frobenius']},{rec['multiplicity']})  "
            f"semigroup: {'yes' if rec['semigroup'] else 'no'}"
            + (f" (witness {rec['witness'][0]}+{rec['witness'][1]})" if rec["witness"] else "")
            + "\n"
        )
        (open(cfg.output, "w") if cfg.output else sys.stdout).write(text)
        return EXIT_OK
    write(cfg, [rec])
    return EXIT_OK


def _count_record(fn: str, cargs: tuple[int, ...], cache, budget: int) -> dict:
    value = counting.evaluate(fn, cargs, cache=cache, budget=budget)
    return {"fn": fn, "args": ",".join(str(a) for a in cargs), "value": str(value)}


def cmd_count(args, cfg: RunConfig, cache) -> int:
    fn = args.fn.upper()
    rec = _count_record(fn, parse_ints(args.args), cache, cfg.budget)
    if cfg.emit == "pretty":
        sys.stdout.write(rec["value"] + "\n")
    else:
        write(cfg, [rec])
    return EXIT_OK


def cmd_table(args, cfg: RunConfig, cache) -> int:
    fn = args.fn.upper()
    if fn not in counting.ARITY:
        raise UsageError(f"unknown function {fn}; known: {', '.join(counting.FUNCTIONS)}")
    records = []
    for n in parse_range(args.n):
        if counting.ARITY[fn] == 1:
            records.append(_count_record(fn, (n,), cache, cfg.budget))
            continue
        second = parse_range(args.arg) if args.arg else range(0, n + 2)
        for x in second:
            rec = _count_record(fn, (n, x), cache, cfg.budget)
            records.append({"fn": fn, "n": str(n), "arg": str(x), "value": rec["value"]})
    write(cfg, records)
    return EXIT_OK


def cmd_enumerate(args, cfg: RunConfig) -> int:
    records = []
    if args.genus_tree is not None:
        for s in enumerate_by_genus(args.genus_tree):
            records.append(_describe(s))
    else:
        if args.n is None:
            raise UsageError("enumerate needs --n or --genus-tree")
        c = PartitionConstraint(
            length=args.length,
            ones=args.ones,
            largest_hook=args.hook,
            no_ones=args.no_ones,
            first_two=args.first_two,
            max_part=args.max_part,
            max_length=args.max_length,
        )
        for lam in enumerate_partitions(args.n, c, budget=cfg.budget):
            s = to_numerical_set(lam)
            if args.semigroups and not is_semigroup(s).closed:
                continue
            records.append(_describe(s))
    if args.count_only:
        write(cfg, [{"count": str(len(records))}])
    else:
        write(cfg, records)
    return EXIT_OK


def cmd_bijection(args, cfg: RunConfig) -> int:
    params = {k: getattr(args, k) for k in ("n", "g", "k", "j", "i") if getattr(args, k) is not None}
    spec = bj.make_spec(args.id.upper(), strict=not args.no_strict, **params)
    res = bj.audit(spec, sample=cfg.sample, seed=cfg.seed)
    if args.check:
        write(cfg, [r.to_dict() for r in res.records] + [{"summary": res.summary()}], emit="jsonl" if cfg.emit == "pretty" else None)
    else:
        write(cfg, [res.summary()])
    return EXIT_OK if res.ok else EXIT_MISMATCH


def _verify_ranges(args) -> dict[str, list[int] | None]:
    out: dict[str, list[int] | None] = {}
    for name in ("n", "g", "k", "j", "i", "m", "item"):
        val = getattr(args, name, None)
        if val is None or val == "auto":
            continue
        out[name] = parse_range(val)
    return out


def cmd_verify(args, cfg: RunConfig, cache) -> int:
    ids = verify.THEOREM_IDS if args.theorem.upper() == "ALL" else (args.theorem.upper(),)
    for tid in ids:
        if tid not in verify.THEOREMS:
            raise UsageError(f"unknown theorem {tid}; known: ALL, {', '.join(verify.THEOREM_IDS)}")
    reports = []
    for tid in ids:
        ranges = _verify_ranges(args)
        if args.n == "auto":
            if "n" not in verify.THEOREMS[tid].params:
                raise UsageError(f"{tid} has no n parameter")
            ranges["n"] = list(verify.auto_n_range(tid, ranges, seconds=args.auto_seconds, budget=cfg.budget))
        unknown = set(ranges) - set(verify.THEOREMS[tid].params)
        if unknown and len(ids) == 1:
            raise UsageError(f"{tid} takes {', '.join(verify.THEOREMS[tid].params)}, not {', '.join(sorted(unknown))}")
        ranges = {k: v for k, v in ranges.items() if k in verify.THEOREMS[tid].params}
        reports.extend(
            verify.verify_theorem(
                tid, ranges or None, workers=cfg.threads, cache=cache, budget=cfg.budget,
                bijections=not args.no_bijections,
            )
        )
    if args.summary:
        write(cfg, [{"theorem": t, **{k: str(v) for k, v in row.items()}} for t, row in verify.summarize(reports).items()])
    else:
        write(cfg, [r.to_dict(timings=args.timings) for r in reports])
    return EXIT_OK if verify.all_match(reports) else EXIT_MISMATCH


def cmd_explore(args, cfg: RunConfig) -> int:
    table = verify.explore_exceptions(args.family, parse_range(args.i), parse_range(args.n), budget=cfg.budget)
    write(cfg, table["summary"] if args.summary else table["rows"])
    return EXIT_OK


def _decimal(fr: Fraction, places: int = 6) -> str:
    scaled = fr.numerator * 10**places // fr.denominator
    whole, frac = divmod(scaled, 10**places)
    return f"{whole}.{frac:0{places}d}"


def cmd_ratio(args, cfg: RunConfig, cache) -> int:
    """Finite-range ratio of semigroup partitions to all partitions, no limit claim."""
    records = []
    prev = None
    for n in parse_range(args.n):
        sp = counting.s_prime(n, cache=cache, budget=cfg.budget)
        total = counting.cumulative_p(n)
        r = Fraction(sp, total)
        records.append({
            "n": str(n),
            "s_prime": str(sp),
            "cumulative_p": str(total),
            "ratio": f"{r.numerator}/{r.denominator}",
            "ratio_decimal": _decimal(r),
            "decreased": "" if prev is None else ("yes" if r < prev else "no"),
        })
        prev = r
    write(cfg, records)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


CSV_HELP = """CSV columns follow the record keys of each subcommand:
  count/table: fn, args | n, arg, value
  verify: theorem, params, lhs, relation, rhs, bijection, match, status, counterexample, note
  explore: family, i, n, difference (or the --summary columns)
  ratio: n, s_prime, cumulative_p, ratio, ratio_decimal, decreased
All numbers are written as decimal strings."""


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--emit", choices=EMITS, default="pretty", help="output format (default pretty)")
    common.add_argument("--output", "-o", help="write to this file instead of stdout")
    common.add_argument("--cache", default=os.environ.get(CACHE_ENV), help=f"count cache JSON file (default ${CACHE_ENV})")
    common.add_argument("--threads", type=int, default=1, help="worker processes (results do not depend on it)")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="largest partition size to enumerate")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled audits")
    common.add_argument("--sample", type=int, default=None, help="audit only this many random elements per side")
    common.add_argument("-v", "--verbose", action="store_true")

    ap = argparse.ArgumentParser(
        prog="numsemi",
        description="Numerical semigroups as integer partitions: conversion, counting and identity checks.",
        epilog=CSV_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("convert", parents=[common], help="partition <-> numerical set")
    p.add_argument("--partition", help='e.g. "[6,4,3^2,1^2]"')
    p.add_argument("--set", help='e.g. "{0, 3, 4, 7, ->}"')
    p.add_argument("--gaps", help="comma-separated gaps")
    p.add_argument("--generators", help="comma-separated generators with gcd 1")

    p = sub.add_parser("count", parents=[common], help="evaluate one counting function")
    p.add_argument("--fn", required=True, help=", ".join(counting.FUNCTIONS))
    p.add_argument("--args", required=True, help="comma-separated arguments")

    p = sub.add_parser("table", parents=[common], help="tabulate a counting function",
                       epilog=CSV_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--fn", required=True)
    p.add_argument("--n", required=True, help="range of the first argument")
    p.add_argument("--arg", help="range of the second argument (default 0..n+1)")

    p = sub.add_parser("enumerate", parents=[common], help="list partitions or semigroups")
    p.add_argument("--n", type=int)
    p.add_argument("--length", type=int)
    p.add_argument("--ones", type=int)
    p.add_argument("--hook", type=int, help="largest hook (Frobenius number)")
    p.add_argument("--no-ones", action="store_true")
    p.add_argument("--first-two", choices=("equal", "distinct"))
    p.add_argument("--max-part", type=int)
    p.add_argument("--max-length", type=int)
    p.add_argument("--semigroups", action="store_true", help="keep only semigroup partitions")
    p.add_argument("--genus-tree", type=int, metavar="G", help="all semigroups of genus <= G from the genus tree")
    p.add_argument("--count-only", action="store_true")

    p = sub.add_parser("bijection", parents=[common], help="audit one constructive map")
    p.add_argument("--id", required=True, help=", ".join(bj.SPECS))
    for name in ("n", "g", "k", "j", "i"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--check", action="store_true", help="print every audited element as JSON lines")
    p.add_argument("--no-strict", action="store_true", help="allow parameters outside the proved range")

    p = sub.add_parser("verify", parents=[common], help="sweep identities",
                       epilog=CSV_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--theorem", required=True, help="ALL or one of " + ", ".join(verify.THEOREM_IDS))
    for name in ("n", "g", "k", "j", "i", "m", "item"):
        p.add_argument(f"--{name}", help="range A..B, list A,B or single value" + (" or auto" if name == "n" else ""))
    p.add_argument("--auto-seconds", type=float, default=10.0, help="per-instance time budget for --n auto")
    p.add_argument("--timings", action="store_true", help="include elapsed time (breaks byte-identical output)")
    p.add_argument("--summary", action="store_true", help="one row per theorem with status counts")
    p.add_argument("--no-bijections", action="store_true", help="skip the map audits")

    p = sub.add_parser("explore", parents=[common], help="tabulate exception counts beyond the proved cases")
    p.add_argument("--family", required=True, type=str.upper, choices=verify.EXPLORE_FAMILIES)
    p.add_argument("--i", required=True, help="range of the shift parameter")
    p.add_argument("--n", required=True)
    p.add_argument("--summary", action="store_true")

    p = sub.add_parser("ratio", parents=[common], help="share of partitions that are semigroup partitions")
    p.add_argument("--n", default="0..40")
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    cache = None
    try:
        cfg = RunConfig(args.command, args.emit, args.threads, args.budget, args.cache, args.seed, args.sample, args.output)
        cache = counting.CountCache(cfg.cache_path) if cfg.cache_path else None
        cmd = args.command
        if cmd == "convert":
            code = cmd_convert(args, cfg)
        elif cmd == "count":
            code = cmd_count(args, cfg, cache)
        elif cmd == "table":
            code = cmd_table(args, cfg, cache)
        elif cmd == "enumerate":
            code = cmd_enumerate(args, cfg)
        elif cmd == "bijection":
            code = cmd_bijection(args, cfg)
        elif cmd == "verify":
            code = cmd_verify(args, cfg, cache)
        elif cmd == "explore":
            code = cmd_explore(args, cfg)
        else:
            code = cmd_ratio(args, cfg, cache)
    except (UsageError, ValidationError, DomainError) as exc:
        print(f"numsemi: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ResourceError, CountOverflowError) as exc:
        print(f"numsemi: resource error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    finally:
        if cache is not None and cache.path is not None:
            try:
                cache.save()
            except OSError as exc:
                log.warning("could not save cache: %s", exc)
    return code


if __name__ == "__main__":
    sys.exit(main())
