"""Integer partitions, hook lengths and constrained enumeration.

Partitions are stored as weakly decreasing tuples of positive integers.
Enumeration always runs in reverse-lexicographic order, so two runs with
the same arguments produce the same stream.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

from .errors import InvalidCellError, ResourceError, ValidationError

DEFAULT_BUDGET = 200


class Partition(tuple):
    """A weakly decreasing tuple of positive integers.

    >>> lam = Partition([6, 4, 3, 3, 1, 1])
    >>> lam.size, lam.length, lam.ones
    (18, 6, 2)
    """

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()) -> "Partition":
        parts = tuple(parts)
        prev = None
        for x in parts:
            if not isinstance(x, int) or isinstance(x, bool):
                raise ValidationError(f"partition part {x!r} is not an integer")
            if x < 1:
                raise ValidationError(f"partition part {x} is not positive")
            if prev is not None and x > prev:
                raise ValidationError(f"parts {parts} are not weakly decreasing")
            prev = x
        return tuple.__new__(cls, parts)

    @classmethod
    def trusted(cls, parts: Iterable[int]) -> "Partition":
        """Wrap parts already known to be valid, skipping the checks."""
        return tuple.__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    @property
    def ones(self) -> int:
        """Number of parts equal to 1."""
        n = 0
        for x in reversed(self):
            if x != 1:
                break
            n += 1
        return n

    def non_ones(self) -> "Partition":
        """The partition with every part of size 1 removed."""
        return Partition.trusted(self[: len(self) - self.ones])

    def conjugate(self) -> "Partition":
        if not self:
            return Partition.trusted(())
        cols = []
        for j in range(1, self[0] + 1):
            cols.append(sum(1 for x in self if x >= j))
        return Partition.trusted(cols)

    def __repr__(self) -> str:
        return format_partition(self)


class HookIndex(NamedTuple):
    """1-based (row, column) of a cell in a Ferrers diagram."""

    row: int
    col: int


def size(lam: Partition) -> int:
    return sum(lam)


def hook_length(lam: Partition, idx: tuple[int, int]) -> int:
    """Hook length of cell ``idx`` = (row, col), both 1-based."""
    i, j = idx
    if i < 1 or i > len(lam) or j < 1 or j > lam[i - 1]:
        raise InvalidCellError(f"cell {tuple(idx)} is outside the diagram of {format_partition(lam)}")
    arm = lam[i - 1] - j
    leg = sum(1 for x in lam[i:] if x >= j)
    return arm + leg + 1


def all_hook_lengths(lam: Partition) -> list[int]:
    """Hook lengths of every cell, row by row."""
    conj = Partition.trusted(lam).conjugate()
    return [lam[i] - j + conj[j] - i - 1 for i in range(len(lam)) for j in range(lam[i])]


def largest_hook(lam: Partition) -> int:
    """Hook length of cell (1, 1); -1 for the empty partition."""
    if not lam:
        return -1
    return lam[0] + len(lam) - 1


def first_column_hooks(lam: Partition) -> list[int]:
    """Hook lengths down the first column, strictly decreasing."""
    ell = len(lam)
    return [lam[i] + ell - 1 - i for i in range(ell)]


# ---------------------------------------------------------------------------
# text forms

_TOKEN = re.compile(r"^\s*(\d+)\s*(?:\^\s*(\d+))?\s*$")


def parse_partition(text: str) -> Partition:
    """Parse ``[6,4,3,3,1,1]`` or the frequency form ``[6,4,3^2,1^2]``."""
    s = text.strip()
    if s.startswith("(") and s.endswith(")"):
        s = "[" + s[1:-1] + "]"
    if not (s.startswith("[") and s.endswith("]")):
        raise ValidationError(f"partition text must be bracketed: {text!r}")
    body = s[1:-1].strip()
    if not body:
        return Partition(())
    parts: list[int] = []
    for tok in body.split(","):
        m = _TOKEN.match(tok)
        if not m:
            raise ValidationError(f"bad partition token {tok!r} in {text!r}")
        value = int(m.group(1))
        reps = int(m.group(2)) if m.group(2) is not None else 1
        parts.extend([value] * reps)
    return Partition(parts)


def format_partition(lam: Iterable[int]) -> str:
    return "[" + ",".join(str(x) for x in lam) + "]"


def format_frequency(lam: Iterable[int]) -> str:
    """Frequency notation, e.g. ``[6,4,3^2,1^2]``."""
    out = []
    items = list(lam)
    i = 0
    while i < len(items):
        j = i
        while j < len(items) and items[j] == items[i]:
            j += 1
        reps = j - i
        out.append(str(items[i]) if reps == 1 else f"{items[i]}^{reps}")
        i = j
    return "[" + ",".join(out) + "]"


# ---------------------------------------------------------------------------
# enumeration


@dataclass(frozen=True)
class PartitionConstraint:
    """Conjunctive filter for :func:`enumerate_partitions`. ``None`` means free.

    ``length``, ``ones``, ``no_ones``, ``first_part``, ``max_part`` and
    ``max_length`` prune the generator; ``largest_hook`` is realised by
    fixing the first part and the length together; ``first_two`` is a
    post-filter (``"equal"`` or ``"distinct"``).
    """

    length: int | None = None
    ones: int | None = None
    largest_hook: int | None = None
    no_ones: bool = False
    first_two: str | None = None
    max_part: int | None = None
    max_length: int | None = None
    first_part: int | None = None

    def __post_init__(self):
        if self.first_two not in (None, "equal", "distinct"):
            raise ValidationError(f"first_two must be 'equal' or 'distinct', not {self.first_two!r}")
        if self.no_ones and self.ones not in (None, 0):
            raise ValidationError("no_ones conflicts with a positive ones count")

    def admits(self, lam: tuple[int, ...]) -> bool:
        """Direct predicate; the generator must agree with filtering by it."""
        ell = len(lam)
        ones = sum(1 for x in lam if x == 1)
        if self.length is not None and ell != self.length:
            return False
        if self.max_length is not None and ell > self.max_length:
            return False
        if self.ones is not None and ones != self.ones:
            return False
        if self.no_ones and ones:
            return False
        first = lam[0] if lam else 0
        if self.max_part is not None and first > self.max_part:
            return False
        if self.first_part is not None and first != self.first_part:
            return False
        if self.largest_hook is not None and largest_hook(lam) != self.largest_hook:
            return False
        if self.first_two == "equal" and not (ell >= 2 and lam[0] == lam[1]):
            return False
        if self.first_two == "distinct" and ell >= 2 and lam[0] == lam[1]:
            return False
        return True


def _bounded(n: int, kmin: int, kmax: int, hi: int, lo: int) -> Iterator[tuple[int, ...]]:
    """Partitions of n with between kmin and kmax parts, each in [lo, hi].

    Reverse-lexicographic order.
    """
    if n == 0:
        if kmin <= 0 <= kmax:
            yield ()
        return
    if kmax <= 0 or hi < lo:
        return
    hi = min(hi, n)
    if n > kmax * hi or n < lo:
        return
    kmin1 = max(kmin - 1, 0)
    for a in range(hi, lo - 1, -1):
        rest = n - a
        # the remaining parts are each in [lo, a]
        if rest > (kmax - 1) * a:
            break
        if rest and rest < lo:
            continue
        if rest < kmin1 * lo:
            continue
        if rest == 0:
            if kmin1 == 0:
                yield (a,)
            continue
        for tail in _bounded(rest, kmin1, kmax - 1, a, lo):
            yield (a,) + tail


def _generate(n: int, c: PartitionConstraint) -> Iterator[tuple[int, ...]]:
    if n == 0:
        if c.admits(()):
            yield ()
        return
    ones = 0 if c.no_ones else c.ones
    lo_len = c.length if c.length is not None else 1
    hi_len = c.length if c.length is not None else n
    if c.max_length is not None:
        hi_len = min(hi_len, c.max_length)
    top = n
    if c.max_part is not None:
        top = min(top, c.max_part)
    if c.largest_hook is not None:
        top = min(top, c.largest_hook)
    bottom = 1
    if c.first_part is not None:
        top = min(top, c.first_part)
        bottom = c.first_part
    if ones is not None and n - ones > 0:
        bottom = max(bottom, 2)
    if hi_len < 1 or lo_len > hi_len:
        return

    for a in range(top, bottom - 1, -1):
        if c.largest_hook is not None:
            ell = c.largest_hook + 1 - a
            if ell < lo_len or ell > hi_len:
                continue
            kmin = kmax = ell - 1
        else:
            kmin, kmax = lo_len - 1, hi_len - 1
        rest = n - a
        if a == 1:
            # all-ones partition
            if rest > kmax or rest < kmin:
                continue
            if ones is not None and ones != n:
                continue
            yield (1,) * n
            continue
        if ones is None:
            for tail in _bounded(rest, kmin, kmax, a, 1):
                yield (a,) + tail
        else:
            if rest < ones:
                continue
            for tail in _bounded(rest - ones, kmin - ones, kmax - ones, a, 2):
                yield (a,) + tail + (1,) * ones


def enumerate_partitions(
    n: int,
    constraint: PartitionConstraint | None = None,
    *,
    budget: int = DEFAULT_BUDGET,
) -> Iterator[Partition]:
    """Yield every partition of ``n`` satisfying ``constraint`` exactly once.

    Order is reverse-lexicographic on the parts.  ``n`` above ``budget``
    raises :class:`ResourceError` before anything is generated.
    """
    if n < 0:
        raise ValidationError(f"cannot partition a negative number: {n}")
    if n > budget:
        raise ResourceError(f"n={n} exceeds the enumeration budget {budget}")
    c = constraint or PartitionConstraint()
    wrap = Partition.trusted
    if c.first_two is None:
        for parts in _generate(n, c):
            yield wrap(parts)
        return
    want_equal = c.first_two == "equal"
    for parts in _generate(n, c):
        equal = len(parts) >= 2 and parts[0] == parts[1]
        if equal == want_equal:
            yield wrap(parts)


def count_partitions(n: int, constraint: PartitionConstraint | None = None, *, budget: int = DEFAULT_BUDGET) -> int:
    return sum(1 for _ in enumerate_partitions(n, constraint, budget=budget))
