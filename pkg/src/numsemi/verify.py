"""Theorem harness.

Each identity is swept over a parameter range.  For every instance the
left side is counted by enumeration and closure testing, the right side
comes from a closed form, and where a constructive map exists a third
value is read off a full round-trip audit of that map.  Nothing stops at
the first mismatch.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable

from . import bijections as bj
from .counting import PF, PG, PM, CountCache, a_bar, b, p, p_bar, p_ji
from .errors import DomainError, ResourceError
from .partition import DEFAULT_BUDGET, PartitionConstraint, count_partitions

MATCH, MISMATCH, OUT_OF_RANGE, TRUNCATED = "MATCH", "MISMATCH", "OUT_OF_RANGE", "TRUNCATED"

Params = tuple[tuple[str, int], ...]


@dataclass
class TheoremReport:
    """One instance of one identity.

    ``match`` is ``lhs <relation> rhs``.  ``bijection`` is the count realised
    by the map, when there is one; ``status`` is MISMATCH if either the
    relation fails or the map disagrees with ``lhs`` or its audit fails.
    """

    theorem: str
    params: Params
    lhs: int | None
    rhs: int | None
    relation: str = "="
    bijection: int | None = None
    match: bool = False
    status: str = MISMATCH
    elapsed: float = 0.0
    counterexample: Any = None
    note: str = ""

    def to_dict(self, timings: bool = False) -> dict:
        out = {
            "theorem": self.theorem,
            "params": {k: str(v) for k, v in self.params},
            "lhs": None if self.lhs is None else str(self.lhs),
            "relation": self.relation,
            "rhs": None if self.rhs is None else str(self.rhs),
            "bijection": None if self.bijection is None else str(self.bijection),
            "match": self.match,
            "status": self.status,
            "counterexample": self.counterexample,
            "note": self.note,
        }
        if timings:
            out["elapsed"] = f"{self.elapsed:.6f}"
        return out


@dataclass(frozen=True)
class Theorem:
    id: str
    params: tuple[str, ...]
    default_ranges: Callable[[], Iterable[dict[str, int]]]
    in_range: Callable[..., bool]
    run: Callable[..., "Outcome"]
    relation: str = "="


@dataclass
class Outcome:
    lhs: int
    rhs: int
    relation: str = "="
    bijection: int | None = None
    audit_failures: list = field(default_factory=list)
    note: str = ""
    counterexample: Any = None


# ---------------------------------------------------------------------------
# realised counts from audits


def _backward_ok(res: bj.AuditResult, branches: tuple[str, ...] | None = None) -> int:
    n = 0
    for r in res.records:
        if r.direction != "backward" or r.status != "ok":
            continue
        if branches is None or (isinstance(r.input, bj.Tagged) and r.input.branch in branches):
            n += 1
    return n


def _forward_ok(res: bj.AuditResult) -> int:
    return sum(1 for r in res.records if r.direction == "forward" and r.status == "ok")


def _failures(res: bj.AuditResult, limit: int = 5) -> list:
    return [r.to_dict() for r in res.failures[:limit]]


def _audit(bid: str, **params) -> bj.AuditResult:
    return bj.audit(bj.make_spec(bid, strict=False, **params))


def _plist(xs) -> list[list[int]]:
    return [list(x) for x in xs]


# ---------------------------------------------------------------------------
# instance runners; ``ctx`` carries the cache and budget


@dataclass(frozen=True)
class Ctx:
    cache: CountCache | None = None
    budget: int = DEFAULT_BUDGET
    bijections: bool = True


def _pg(ctx, n, g):
    return PG(n, g, cache=ctx.cache, budget=ctx.budget)


def _pf(ctx, n, f):
    return PF(n, f, cache=ctx.cache, budget=ctx.budget)


def _pm(ctx, n, m):
    return PM(n, m, cache=ctx.cache, budget=ctx.budget)


def run_genus_main(ctx: Ctx, n: int, g: int) -> Outcome:
    out = Outcome(_pg(ctx, n, g), p(n - g))
    if ctx.bijections and n - g >= 0:
        res = _audit("GENUS_MAIN", n=n, g=g)
        out.bijection = _backward_ok(res) + res.domain_exceptions
        out.audit_failures = _failures(res)
    return out


def _genus_3n(i: int, drop: int):
    def run(ctx: Ctx, n: int) -> Outcome:
        out = Outcome(_pg(ctx, 3 * n - i, 2 * n - i), p(n) - drop)
        if ctx.bijections and n >= 1:
            res = _audit("GENUS_3N", i=i, n=n)
            out.bijection = _forward_ok(res)
            out.audit_failures = _failures(res)
            out.note = f"exceptions {_plist(bj.genus_shift_exceptions(i, n))}"
        return out

    return run


def _true_boxed_exceptions(n: int, k: int) -> list:
    """Box partitions whose lift is not a semigroup partition."""
    out = []
    for pi in bj.box_family(n).members():
        lam = bj.genus_boxed_backward(k, pi, n, strict=False)
        if not bj.partition_is_semigroup(lam):
            out.append(pi)
    return out


def run_genus_boxed(ctx: Ctx, k: int, n: int) -> Outcome:
    out = Outcome(_pg(ctx, 3 * n + 2 - k, 2 * n - k), b(n) - (k + 2))
    listed = bj.boxed_exceptional_set(n, k)
    actual = _true_boxed_exceptions(n, k)
    excluded = [x for x in bj.boxed_excluded(n, k) if bj.partition_is_semigroup(x)]
    out.note = (
        f"listed exceptional set size {len(listed)}, actual {len(actual)}; "
        f"excluded partitions that are semigroup partitions: {len(excluded)}"
    )
    if ctx.bijections:
        res = _audit("GENUS_BOXED_K", k=k, n=n)
        out.bijection = _backward_ok(res) + res.domain_exceptions
        out.audit_failures = _failures(res)
    if out.lhs != out.rhs:
        out.counterexample = {
            "listed_exceptions": _plist(listed),
            "actual_exceptions": _plist(actual),
            "excluded_semigroup_partitions": _plist(excluded),
        }
    return out


def run_genus_corollary(ctx: Ctx, k: int, n: int) -> Outcome:
    return Outcome(_pg(ctx, 3 * n + 2 - k, 2 * n - k), p(n + 2) - 6 - k)


def run_genus_rec(ctx: Ctx, j: int, n: int) -> Outcome:
    lhs = _pg(ctx, 3 * n + 2 - j, 2 * n - j) - _pg(ctx, 3 * (n - 1) + 2 - j, 2 * (n - 1) - j)
    out = Outcome(lhs, p_bar(n + 2))
    if ctx.bijections:
        res = _audit("GENUS_REC_J", j=j, n=n)
        out.bijection = _backward_ok(res, ("NEW",))
        out.audit_failures = _failures(res)
    return out


def run_frob_onehook(ctx: Ctx, n: int) -> Outcome:
    out = Outcome(_pf(ctx, n, n), -(-n // 2))
    if ctx.bijections:
        res = _audit("FROB_ONEHOOK", n=n)
        out.bijection = _backward_ok(res)
        out.audit_failures = _failures(res)
    return out


# item -> (size(n), frobenius(n), rhs(n), nesting depth j)
FROB_FIVE_ITEMS: dict[str, tuple[Callable, Callable, Callable, int]] = {
    "1": (lambda n: 2 * n, lambda n: 2 * n - 1, lambda n: n - 1, 1),
    "2": (lambda n: 2 * n + 1, lambda n: 2 * n, lambda n: n - 2, 1),
    "3a": (lambda n: 2 * n, lambda n: 2 * n - 2, lambda n: 2 * n - 7, 2),
    "3b": (lambda n: 2 * n - 1, lambda n: 2 * n - 3, lambda n: 2 * n - 7, 2),
    "4": (lambda n: 2 * n, lambda n: 2 * n - 3, lambda n: 3 * n - 11, 3),
    "5": (lambda n: 2 * n - 1, lambda n: 2 * n - 4, lambda n: 3 * n - 17, 3),
}
FROB_FIVE_CODES = {"1": 1, "2": 2, "3a": 31, "3b": 32, "4": 4, "5": 5}
_FROB_FIVE_NAMES = {v: k for k, v in FROB_FIVE_CODES.items()}


def run_frob_five(ctx: Ctx, item: int, n: int) -> Outcome:
    name = _FROB_FIVE_NAMES[item]
    size, frob, rhs, j = FROB_FIVE_ITEMS[name]
    out = Outcome(_pf(ctx, size(n), frob(n)), rhs(n))
    if ctx.bijections and size(n) - j >= 1:
        res = _audit("FROB_NEST", j=j, n=size(n))
        out.bijection = _forward_ok(res)
        out.audit_failures = _failures(res)
    return out


def frob_remark_rhs(j: int, n: int) -> int:
    total = p(j) * -(-(2 * n - j) // 2)
    return total - sum(p_ji(j, i) for i in range(1, n - j // 2 + 1))


def run_frob_remark(ctx: Ctx, j: int, n: int) -> Outcome:
    return Outcome(_pf(ctx, 2 * n, 2 * n - j), frob_remark_rhs(j, n), relation="<=")


def run_frob_rec(ctx: Ctx, k: int, n: int) -> Outcome:
    out = Outcome(_pf(ctx, n, n - k) - _pf(ctx, n - 2, n - k - 2), p(k))
    if ctx.bijections:
        res = _audit("FROB_REC_K", k=k, n=n)
        out.bijection = _backward_ok(res, ("B",))
        out.audit_failures = _failures(res)
        b_side = sum(
            1 for r in res.records if r.direction == "forward" and r.status == "ok" and r.output.branch == "B"
        )
        out.note = f"|B| = {b_side}"
    return out


def run_mult_prop(ctx: Ctx, n: int, m: int) -> Outcome:
    lhs = _pm(ctx, n, m)
    rhs = p_bar(n + 1 - m)
    relation = "=" if 2 * m > n else "<="
    note = ""
    if 2 * m == n:
        note = "equality at m = n/2: " + ("yes" if lhs == rhs else "no")
    return Outcome(lhs, rhs, relation=relation, note=note)


MULT_HALF_DROP = {0: 0, 1: 1, 2: 2, 3: 5}


def run_mult_half(ctx: Ctx, i: int, n: int) -> Outcome:
    out = Outcome(_pm(ctx, 2 * n - i, n - i), (p_bar(n + 1) - 1 if n + 1 >= 2 else 0) - MULT_HALF_DROP[i])
    listed = bj.mult_half_exceptional_set(n, i)
    starred = bj.mult_half_starred(n, i)
    actual = [
        lam
        for lam in (bj.mult_half_backward(i, mu, n, strict=False) for mu in bj.a_family(n + 1).members())
        if not bj.partition_is_semigroup(lam)
    ]
    starred_ok = all(bj.partition_is_semigroup(x) for x in starred)
    out.note = f"listed exceptional set size {len(listed)}, actual {len(actual)}" + (
        f"; starred entry is a semigroup partition: {'yes' if starred_ok else 'no'}" if starred else ""
    )
    if ctx.bijections:
        res = _audit("MULT_HALF_I", i=i, n=n)
        out.bijection = _backward_ok(res)
        out.audit_failures = _failures(res)
    if out.lhs != out.rhs or not starred_ok:
        out.counterexample = {"listed_exceptions": _plist(listed), "actual_exceptions": _plist(actual)}
    return out


def run_mult_rec(ctx: Ctx, j: int, n: int) -> Outcome:
    lhs = _pm(ctx, 2 * n - j, n - j) - _pm(ctx, 2 * (n - 1) - j, (n - 1) - j)
    out = Outcome(lhs, a_bar(n + 1))
    if ctx.bijections:
        res = _audit("MULT_REC_J", j=j, n=n)
        out.bijection = _backward_ok(res, ("NEW",))
        out.audit_failures = _failures(res)
    return out


def _a_enum(n: int, budget: int) -> int:
    if n < 2:
        return 0
    return count_partitions(n, PartitionConstraint(no_ones=True), budget=budget) - 1


def run_mult_cor(ctx: Ctx, n: int) -> Outcome:
    lhs = _a_enum(n + 1, ctx.budget) - _a_enum(n, ctx.budget)
    return Outcome(lhs, a_bar(n + 1))


def run_mult_3j2(ctx: Ctx, j: int) -> Outcome:
    out = Outcome(_pm(ctx, 3 * j + 2, j + 1) - _pm(ctx, 3 * j, j), a_bar(2 * j + 2) - j)
    fam = bj.mult_3j2_excluded_family(j)
    lifted_bad = sum(1 for x in fam if not bj.partition_is_semigroup(bj.mult_3j2_backward(j, bj.Tagged("NEW", x))))
    out.note = f"|I| = {len(fam)}, lifts that fail closure: {lifted_bad}"
    if ctx.bijections:
        res = _audit("MULT_3J2", j=j)
        out.bijection = _backward_ok(res, ("NEW",))
        out.audit_failures = _failures(res)
    return out


def run_mult_3j(ctx: Ctx, j: int) -> Outcome:
    out = Outcome(_pm(ctx, 3 * j, j) - _pm(ctx, 3 * j - 2, j - 1), a_bar(2 * j + 1) + 1)
    disc = bj.mult_3j_claim2_discrepancies(j)
    excluded_member = bj.partition_is_semigroup(bj.mult_3j_excluded(j))
    out.note = (
        f"excluded partition is a semigroup partition: {'yes' if excluded_member else 'no'}; "
        f"middle-branch formula discrepancies: {len(disc)}"
    )
    if ctx.bijections:
        res = _audit("MULT_3J", j=j)
        out.bijection = _backward_ok(res, ("NEW",)) + res.domain_exceptions
        out.audit_failures = _failures(res)
    return out


# ---------------------------------------------------------------------------
# registry with default ranges (the acceptance ranges)


def _grid(**axes) -> Callable[[], list[dict[str, int]]]:
    """Cartesian product; an axis may be a callable of the earlier values."""

    def build():
        rows: list[dict[str, int]] = [{}]
        for name, axis in axes.items():
            nxt = []
            for row in rows:
                values = axis(**row) if callable(axis) else axis
                nxt.extend({**row, name: v} for v in values)
            rows = nxt
        return rows

    return build


THEOREMS: dict[str, Theorem] = {}


def _reg(t: Theorem) -> None:
    THEOREMS[t.id] = t


_reg(Theorem(
    "GENUS_MAIN", ("n", "g"),
    _grid(n=range(1, 37), g=lambda n: range(-(-2 * n // 3), n + 1)),
    lambda n, g: n >= 0 and 0 <= g and 3 * g >= 2 * n,
    run_genus_main,
))
for _i, _drop in ((1, 1), (2, 2), (3, 2)):
    _reg(Theorem(f"GENUS_3N{_i}", ("n",), _grid(n=range(3, 14)), lambda n: n >= 3, _genus_3n(_i, _drop)))
_reg(Theorem(
    "GENUS_BOXED", ("k", "n"), _grid(k=range(3), n=range(4, 13)),
    lambda k, n: k in (0, 1, 2) and n >= 4, run_genus_boxed,
))
_reg(Theorem(
    "GENUS_COROLLARY", ("k", "n"), _grid(k=range(3), n=range(4, 13)),
    lambda k, n: k in (0, 1, 2) and n >= 4, run_genus_corollary,
))
_reg(Theorem(
    "GENUS_REC", ("j", "n"), _grid(j=range(5), n=lambda j: range(j + 5, 13)),
    lambda j, n: j >= 0 and n >= j + 5, run_genus_rec,
))
_reg(Theorem("FROB_ONEHOOK", ("n",), _grid(n=range(1, 81)), lambda n: n >= 1, run_frob_onehook))
_reg(Theorem(
    "FROB_FIVE", ("item", "n"), _grid(item=list(FROB_FIVE_CODES.values()), n=range(1, 17)),
    lambda item, n: n > 2, run_frob_five,
))
_reg(Theorem(
    "FROB_REMARK_BOUND", ("j", "n"), _grid(j=range(1, 7), n=lambda j: range(j // 2 + 1, 17)),
    lambda j, n: 1 <= j < 2 * n, run_frob_remark, relation="<=",
))
_reg(Theorem(
    "FROB_REC", ("k", "n"), _grid(k=range(5), n=lambda k: range(4 * k + 3, 37)),
    lambda k, n: k >= 0 and n >= 4 * k + 3, run_frob_rec,
))
_reg(Theorem(
    "MULT_PROP_BOUND", ("n", "m"), _grid(n=range(1, 37), m=lambda n: range(1, n + 2)),
    lambda n, m: n >= 0 and m >= 1, run_mult_prop, relation="<=",
))
_reg(Theorem(
    "MULT_HALF", ("i", "n"), _grid(i=range(4), n=range(5, 16)),
    lambda i, n: i in (0, 1, 2, 3) and n >= 5, run_mult_half,
))
_reg(Theorem(
    "MULT_REC", ("j", "n"), _grid(j=range(5), n=lambda j: range(2 * j + 2, 15)),
    lambda j, n: j >= 0 and n >= 2 * j + 2, run_mult_rec,
))
_reg(Theorem("MULT_COR", ("n",), _grid(n=range(1, 61)), lambda n: n >= 1, run_mult_cor))
_reg(Theorem("MULT_3J2", ("j",), _grid(j=range(4, 11)), lambda j: j >= 4, run_mult_3j2))
_reg(Theorem("MULT_3J", ("j",), _grid(j=range(4, 11)), lambda j: j >= 4, run_mult_3j))

THEOREM_IDS = tuple(THEOREMS)


# ---------------------------------------------------------------------------
# sweeping


def _holds(lhs: int, rhs: int, relation: str) -> bool:
    return lhs == rhs if relation == "=" else lhs <= rhs


def run_instance(tid: str, params: Params, ctx: Ctx = Ctx()) -> TheoremReport:
    th = THEOREMS[tid]
    kw = dict(params)
    in_range = th.in_range(**kw)
    start = time.perf_counter()
    try:
        out = th.run(ctx, **kw)
    except (ResourceError, DomainError) as exc:
        return TheoremReport(
            tid, params, None, None, relation=th.relation, status=TRUNCATED,
            elapsed=time.perf_counter() - start, note=f"not computed: {exc}",
        )
    elapsed = time.perf_counter() - start
    match = _holds(out.lhs, out.rhs, out.relation)
    bij_ok = out.bijection is None or (out.bijection == out.lhs and not out.audit_failures)
    if not in_range:
        status = OUT_OF_RANGE
    else:
        status = MATCH if match and bij_ok else MISMATCH
    counterexample = None
    if status == MISMATCH:
        counterexample = out.counterexample or {}
        if out.audit_failures:
            counterexample = {**counterexample, "audit_failures": out.audit_failures}
        counterexample = counterexample or None
    return TheoremReport(
        tid, params, out.lhs, out.rhs, relation=out.relation, bijection=out.bijection,
        match=match, status=status, elapsed=elapsed, counterexample=counterexample, note=out.note,
    )


def _worker(args: tuple[str, Params, Ctx]) -> TheoremReport:
    return run_instance(*args)


def _annotate_frob_five(reports: list[TheoremReport]) -> None:
    """In-range means at or above the observed validity threshold."""
    by_item: dict[int, list[TheoremReport]] = {}
    for r in reports:
        by_item.setdefault(dict(r.params)["item"], []).append(r)
    for item, rows in by_item.items():
        rows.sort(key=lambda r: dict(r.params)["n"])
        threshold = None
        for r in reversed(rows):
            if r.status == TRUNCATED or not r.match:
                break
            threshold = dict(r.params)["n"]
        name = _FROB_FIVE_NAMES[item]
        for r in rows:
            n = dict(r.params)["n"]
            r.note = f"item {name}; observed threshold n >= {threshold}; stated n > 2"
            if r.status == TRUNCATED:
                continue
            bij_ok = r.bijection is None or r.bijection == r.lhs
            if threshold is None or n < threshold:
                r.status = OUT_OF_RANGE
            else:
                r.status = MATCH if r.match and bij_ok else MISMATCH


def frob_five_thresholds(reports: list[TheoremReport]) -> dict[str, int | None]:
    out: dict[str, int | None] = {}
    for r in reports:
        if r.theorem != "FROB_FIVE":
            continue
        name = _FROB_FIVE_NAMES[dict(r.params)["item"]]
        out.setdefault(name, None)
        if r.status == MATCH:
            n = dict(r.params)["n"]
            out[name] = n if out[name] is None else min(out[name], n)
    return out


def instances(tid: str, ranges: dict[str, Iterable[int]] | None = None) -> list[Params]:
    """Parameter tuples for a sweep; explicit ranges override the defaults.

    Axes left out keep their default values for each combination of the
    given ones, so ``{"n": [6]}`` for GENUS_MAIN sweeps g over its
    default range at n = 6.
    """
    th = THEOREMS[tid]
    defaults = th.default_ranges()
    given = {k: list(v) for k, v in (ranges or {}).items() if v is not None and k in th.params}
    if not given:
        rows = defaults
    else:
        rows = []
        for combo in _grid(**given)():
            matching = [r for r in defaults if all(r[k] == v for k, v in combo.items())]
            if matching:
                rows.extend(matching)
                continue
            missing = {k: sorted({r[k] for r in defaults}) for k in th.params if k not in combo}
            rows.extend({**combo, **extra} for extra in _grid(**missing)())
    return [tuple((name, row[name]) for name in th.params) for row in rows]


def verify_theorem(
    tid: str,
    ranges: dict[str, Iterable[int]] | None = None,
    *,
    workers: int = 1,
    cache: CountCache | None = None,
    budget: int = DEFAULT_BUDGET,
    bijections: bool = True,
) -> list[TheoremReport]:
    """Run every instance of one identity, in parameter order."""
    if tid not in THEOREMS:
        raise DomainError(f"unknown theorem {tid!r}; known: {', '.join(THEOREM_IDS)}")
    ctx = Ctx(cache=cache if workers <= 1 else None, budget=budget, bijections=bijections)
    jobs = [(tid, params, ctx) for params in instances(tid, ranges)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_worker, jobs))
    else:
        reports = [run_instance(*job) for job in jobs]
    if tid == "FROB_FIVE":
        _annotate_frob_five(reports)
    return reports


def verify_all(**kw) -> list[TheoremReport]:
    out: list[TheoremReport] = []
    for tid in THEOREM_IDS:
        out.extend(verify_theorem(tid, **kw))
    return out


def auto_n_range(
    tid: str,
    fixed: dict[str, Iterable[int]] | None = None,
    *,
    seconds: float = 10.0,
    n_cap: int = 200,
    budget: int = DEFAULT_BUDGET,
) -> range:
    """Largest n range whose every probed instance fits in ``seconds``.

    n is probed at start, start + 1, start + 3, start + 7, ... and the
    range ends at the last probe that finished in time.  Timing based, so
    the result may vary between machines.
    """
    th = THEOREMS[tid]
    lows = [row["n"] for row in th.default_ranges()]
    start = min(lows)
    others = {k: list(v) for k, v in (fixed or {}).items() if k != "n" and v is not None}
    step, n, last_ok = 1, start, start - 1
    while n <= n_cap:
        rows = instances(tid, {**others, "n": [n]})
        t0 = time.perf_counter()
        truncated = False
        for params in rows:
            r = run_instance(tid, params, Ctx(budget=budget, bijections=False))
            truncated |= r.status == TRUNCATED
            if time.perf_counter() - t0 > seconds:
                break
        if truncated or time.perf_counter() - t0 > seconds:
            break
        last_ok = n
        n += step
        step *= 2
    return range(start, last_ok + 1)


def summarize(reports: list[TheoremReport]) -> dict[str, dict[str, int]]:
    out: dict[str, dict[str, int]] = {}
    for r in reports:
        row = out.setdefault(r.theorem, {MATCH: 0, MISMATCH: 0, OUT_OF_RANGE: 0, TRUNCATED: 0})
        row[r.status] += 1
    return out


def all_match(reports: list[TheoremReport]) -> bool:
    return all(r.status in (MATCH, OUT_OF_RANGE) for r in reports)


# ---------------------------------------------------------------------------
# exploring exception counts beyond the proved cases


def _diff(family: str, i: int, n: int, budget: int) -> int | None:
    if family == "GENUS":
        if 2 * n - i < 0:
            return None
        return p(n) - PG(3 * n - i, 2 * n - i, budget=budget)
    if family == "GENUS_BOXED":
        if 2 * n - i < 0 or n < 1:
            return None
        return b(n) - PG(3 * n + 2 - i, 2 * n - i, budget=budget)
    if family == "MULT":
        if n - i < 1:
            return None
        return (p_bar(n + 1) - 1) - PM(2 * n - i, n - i, budget=budget)
    if family == "FROB":
        if 2 * n - i < 1:
            return None
        return p(i) * -(-(2 * n - i) // 2) - PF(2 * n, 2 * n - i, budget=budget)
    raise DomainError(f"unknown family {family!r}; use GENUS, GENUS_BOXED, MULT or FROB")


EXPLORE_FAMILIES = ("GENUS", "GENUS_BOXED", "MULT", "FROB")


def explore_exceptions(family: str, k_range: Iterable[int], n_range: Iterable[int], *, budget: int = DEFAULT_BUDGET) -> dict:
    """Tabulate the defect of each family against its base count.

    GENUS: p(n) - PG(3n-i, 2n-i).  GENUS_BOXED: b(n) - PG(3n+2-i, 2n-i).
    MULT: a(n+1) - PM(2n-i, n-i).  FROB: p(i) ceil((2n-i)/2) - PF(2n, 2n-i),
    the number of hook nestings that fail.  For each i the summary gives
    the value on the tail of the window where it stops changing; no claim
    is made beyond the window.
    """
    family = family.upper()
    if family not in EXPLORE_FAMILIES:
        raise DomainError(f"unknown family {family!r}; use {', '.join(EXPLORE_FAMILIES)}")
    ns = list(n_range)
    rows, summary = [], []
    for i in k_range:
        vals = []
        for n in ns:
            try:
                d = _diff(family, i, n, budget)
            except ResourceError:
                d = None
            if d is not None:
                rows.append({"family": family, "i": str(i), "n": str(n), "difference": str(d)})
                vals.append((n, d))
        stable_from, value = None, None
        if vals:
            value = vals[-1][1]
            stable_from = vals[-1][0]
            for n, d in reversed(vals):
                if d != value:
                    break
                stable_from = n
        summary.append({
            "family": family,
            "i": str(i),
            "tail_value": None if value is None else str(value),
            "constant_from_n": None if stable_from is None else str(stable_from),
            "tail_length": str(sum(1 for n, _ in vals if stable_from is not None and n >= stable_from)),
            "constant_over_window": bool(vals) and all(d == value for _, d in vals),
        })
    return {"rows": rows, "summary": summary}
