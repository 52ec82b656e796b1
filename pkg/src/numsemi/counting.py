"""Exact counting functions.

Closed forms (``p``, ``p_bar``, ``a``, ``a_bar``, ``b``, ``p_ji``) come from
recurrences and bounded-part dynamic programs.  The semigroup counts
``PG``, ``PF`` and ``PM`` are always brute force: enumerate the matching
partitions and test each numerical set for closure.

Every count is kept inside the signed 64-bit range; leaving it raises
:class:`CountOverflowError` instead of silently growing.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import threading
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

from .errors import CountOverflowError, DomainError
from .numset import partition_is_semigroup
from .partition import DEFAULT_BUDGET, PartitionConstraint, enumerate_partitions

log = logging.getLogger(__name__)

INT64_MAX = (1 << 63) - 1

FUNCTIONS = ("P", "PBAR", "A", "ABAR", "B", "PJI", "PG", "PF", "PM", "SPRIME")
ARITY = {"P": 1, "PBAR": 1, "A": 1, "ABAR": 1, "B": 1, "PJI": 2, "PG": 2, "PF": 2, "PM": 2, "SPRIME": 1}


def checked(value: int) -> int:
    if value > INT64_MAX or value < -INT64_MAX - 1:
        raise CountOverflowError(f"count {value} does not fit in 64 bits")
    return value


@dataclass(frozen=True)
class CountKey:
    fn: str
    args: tuple[int, ...]

    def __post_init__(self):
        if self.fn not in ARITY:
            raise DomainError(f"unknown counting function {self.fn!r}")
        if len(self.args) != ARITY[self.fn]:
            raise DomainError(f"{self.fn} takes {ARITY[self.fn]} argument(s), got {len(self.args)}")

    def __str__(self) -> str:
        return f"{self.fn}:" + ",".join(str(a) for a in self.args)

    @classmethod
    def parse(cls, text: str) -> "CountKey":
        fn, _, rest = text.partition(":")
        args = tuple(int(x) for x in rest.split(",")) if rest else ()
        return cls(fn, args)


class CountCache:
    """In-memory memo for counts, optionally persisted as JSON.

    The file maps ``"FN:args"`` to decimal strings and carries a SHA-256
    of its entries; a file whose checksum does not match is ignored.
    """

    VERSION = 1

    def __init__(self, path: str | os.PathLike | None = None):
        self.path = Path(path) if path else None
        self._data: dict[str, int] = {}
        self._lock = threading.Lock()
        self.corrupt = False
        if self.path and self.path.exists():
            self.load()

    def __len__(self) -> int:
        return len(self._data)

    def get(self, key: CountKey) -> int | None:
        return self._data.get(str(key))

    def put(self, key: CountKey, value: int) -> int:
        k = str(key)
        with self._lock:
            old = self._data.get(k)
            if old is not None and old != value:
                raise RuntimeError(f"cache disagreement for {k}: {old} != {value}")
            self._data[k] = value
        return value

    def clear(self) -> None:
        with self._lock:
            self._data.clear()

    @staticmethod
    def _digest(entries: dict[str, str]) -> str:
        blob = json.dumps(entries, sort_keys=True, separators=(",", ":")).encode()
        return hashlib.sha256(blob).hexdigest()

    def load(self) -> None:
        try:
            raw = json.loads(self.path.read_text())
            entries = raw["entries"]
            if raw.get("version") != self.VERSION or raw.get("checksum") != self._digest(entries):
                raise ValueError("checksum mismatch")
            data = {str(CountKey.parse(k)): checked(int(v)) for k, v in entries.items()}
        except (OSError, ValueError, KeyError, TypeError, DomainError) as exc:
            log.warning("ignoring count cache %s: %s", self.path, exc)
            self.corrupt = True
            return
        with self._lock:
            for k, v in data.items():
                self._data.setdefault(k, v)

    def save(self, path: str | os.PathLike | None = None) -> None:
        target = Path(path) if path else self.path
        if target is None:
            return
        with self._lock:
            entries = {k: str(v) for k, v in sorted(self._data.items())}
        payload = {"version": self.VERSION, "checksum": self._digest(entries), "entries": entries}
        tmp = target.with_suffix(target.suffix + ".tmp")
        tmp.write_text(json.dumps(payload, indent=1, sort_keys=True) + "\n")
        tmp.replace(target)


CACHE = CountCache()


def _memo(fn: str, args: tuple[int, ...], compute, cache: CountCache | None):
    cache = CACHE if cache is None else cache
    key = CountKey(fn, args)
    hit = cache.get(key)
    if hit is not None:
        return hit
    return cache.put(key, checked(compute()))


# ---------------------------------------------------------------------------
# closed forms

_P = [1]


def p(n: int) -> int:
    """Number of partitions of n, by the pentagonal-number recurrence."""
    if n < 0:
        return 0
    while len(_P) <= n:
        m = len(_P)
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > m:
                break
            sign = 1 if k % 2 else -1
            total += sign * _P[m - g1]
            g2 = g1 + k
            if g2 <= m:
                total += sign * _P[m - g2]
            k += 1
        _P.append(checked(total))
    return _P[n]


def p_bar(n: int) -> int:
    """Partitions of n with no part equal to 1."""
    if n < 0:
        return 0
    if n == 0:
        return 1
    return checked(p(n) - p(n - 1))


def a(n: int) -> int:
    """Partitions of n with at least two parts and no part equal to 1."""
    if n < 2:
        return 0
    return checked(p_bar(n) - 1)


@lru_cache(maxsize=None)
def _parts_between(total: int, lo: int, hi: int) -> int:
    """Partitions of ``total`` into parts from [lo, hi]."""
    if total == 0:
        return 1
    if hi < lo or total < lo:
        return 0
    hi = min(hi, total)
    # largest part is hi, or every part is below hi
    return checked(_parts_between(total - hi, lo, hi) + _parts_between(total, lo, hi - 1))


def a_bar(n: int) -> int:
    """No-ones partitions of n with a repeated largest part."""
    total = 0
    for top in range(2, n // 2 + 1):
        total += _parts_between(n - 2 * top, 2, top)
    return checked(total)


@lru_cache(maxsize=None)
def box_count(total: int, rows: int, cols: int) -> int:
    """Partitions of ``total`` with at most ``rows`` parts, each at most ``cols``."""
    if total == 0:
        return 1
    if rows <= 0 or cols <= 0 or total > rows * cols:
        return 0
    # split on whether a part equals cols
    return checked(box_count(total - cols, rows - 1, cols) + box_count(total, rows, cols - 1))


def b(n: int) -> int:
    """Partitions of n + 2 fitting in an n-by-n box."""
    if n < 1:
        raise DomainError(f"b(n) needs n >= 1, got {n}")
    return box_count(n + 2, n, n)


def p_ji(j: int, i: int) -> int:
    """Partitions of j whose largest part is at least i."""
    if j < 0 or i < 1:
        raise DomainError(f"p(j, i) needs j >= 0 and i >= 1, got ({j}, {i})")
    return checked(p(j) - box_count(j, j, i - 1))


# ---------------------------------------------------------------------------
# brute-force semigroup counts


def _count_slice(args: tuple[int, PartitionConstraint, int]) -> int:
    n, c, budget = args
    return sum(1 for lam in enumerate_partitions(n, c, budget=budget) if partition_is_semigroup(lam))


def count_semigroup_partitions(
    n: int,
    constraint: PartitionConstraint | None = None,
    *,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> int:
    """Partitions of n matching ``constraint`` whose numerical set is a semigroup.

    With ``workers > 1`` the enumeration is split by first part across
    processes; the total does not depend on the split.
    """
    c = constraint or PartitionConstraint()
    if workers <= 1 or n < 2 or c.first_part is not None:
        return checked(_count_slice((n, c, budget)))
    from dataclasses import replace

    top = n if c.max_part is None else min(n, c.max_part)
    jobs = [(n, replace(c, first_part=a_), budget) for a_ in range(top, 0, -1)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return checked(sum(pool.map(_count_slice, jobs)))


def PG(n: int, g: int, *, cache: CountCache | None = None, budget: int = DEFAULT_BUDGET) -> int:
    """Semigroup partitions of n with exactly g parts."""
    if n < 0 or g < 0:
        return 0
    return _memo("PG", (n, g), lambda: count_semigroup_partitions(n, PartitionConstraint(length=g), budget=budget), cache)


def PF(n: int, f: int, *, cache: CountCache | None = None, budget: int = DEFAULT_BUDGET) -> int:
    """Semigroup partitions of n with largest hook f."""
    if n < 0 or f < -1:
        return 0
    return _memo("PF", (n, f), lambda: count_semigroup_partitions(n, PartitionConstraint(largest_hook=f), budget=budget), cache)


def PM(n: int, m: int, *, cache: CountCache | None = None, budget: int = DEFAULT_BUDGET) -> int:
    """Semigroup partitions of n with exactly m - 1 parts equal to 1."""
    if n < 0 or m < 1:
        return 0
    return _memo("PM", (n, m), lambda: count_semigroup_partitions(n, PartitionConstraint(ones=m - 1), budget=budget), cache)


def semigroup_partition_count(n: int, *, budget: int = DEFAULT_BUDGET) -> int:
    """All semigroup partitions of n (every genus)."""
    return count_semigroup_partitions(n, budget=budget)


def s_prime(n: int, *, cache: CountCache | None = None, budget: int = DEFAULT_BUDGET) -> int:
    """Semigroup partitions of size at most n."""
    if n < 0:
        return 0

    def compute():
        return sum(semigroup_partition_count(k, budget=budget) for k in range(n + 1))

    return _memo("SPRIME", (n,), compute, cache)


def cumulative_p(n: int) -> int:
    """Partitions of size at most n."""
    return checked(sum(p(k) for k in range(n + 1)))


# ---------------------------------------------------------------------------
# dispatch by tag, used by the CLI and the cache


def evaluate(fn: str, args: tuple[int, ...], *, cache: CountCache | None = None, budget: int = DEFAULT_BUDGET) -> int:
    key = CountKey(fn, tuple(args))
    if fn == "P":
        return _memo(fn, key.args, lambda: p(*key.args), cache)
    if fn == "PBAR":
        return _memo(fn, key.args, lambda: p_bar(*key.args), cache)
    if fn == "A":
        return _memo(fn, key.args, lambda: a(*key.args), cache)
    if fn == "ABAR":
        return _memo(fn, key.args, lambda: a_bar(*key.args), cache)
    if fn == "B":
        return _memo(fn, key.args, lambda: b(*key.args), cache)
    if fn == "PJI":
        return _memo(fn, key.args, lambda: p_ji(*key.args), cache)
    if fn == "PG":
        return PG(*key.args, cache=cache, budget=budget)
    if fn == "PF":
        return PF(*key.args, cache=cache, budget=budget)
    if fn == "PM":
        return PM(*key.args, cache=cache, budget=budget)
    return s_prime(*key.args, cache=cache, budget=budget)
