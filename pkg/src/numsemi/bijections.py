"""Constructive maps behind the counting identities, and a round-trip audit.

Each map is written from its explicit formula.  Nothing about a map's
image is trusted: :func:`audit` re-checks codomain membership (including
closure of the numerical set) for every element, in both directions, and
checks that each documented exceptional element really is exceptional.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Iterator, NamedTuple

from .errors import DomainError, ValidationError
from .numset import is_semigroup, partition_is_semigroup, to_numerical_set
from .partition import Partition, PartitionConstraint, enumerate_partitions, largest_hook


class Tagged(NamedTuple):
    """An element of a disjoint union, labelled with the branch it lives in."""

    branch: str
    partition: Partition


class Nested(NamedTuple):
    """A single hook with a partition placed inside it."""

    hook: Partition
    insert: Partition


@dataclass(frozen=True)
class NestResult:
    partition: Partition
    semigroup: bool
    reason: str | None = None


def _P(parts: Iterable[int]) -> Partition:
    try:
        return Partition(parts)
    except ValidationError as exc:
        raise DomainError(str(exc)) from None


def _blocks(*blocks: tuple[int, int]) -> Partition | None:
    """Partition from (value, multiplicity) blocks; None if ill-formed."""
    parts: list[int] = []
    for value, reps in blocks:
        if reps < 0:
            return None
        if reps and value < 1:
            return None
        parts.extend([value] * reps)
    try:
        return Partition(parts)
    except ValidationError:
        return None


def _ones(k: int) -> tuple[int, ...]:
    return (1,) * k


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise DomainError(msg)


def _sorted_partition(parts: Iterable[int]) -> Partition:
    return Partition.trusted(sorted((x for x in parts if x > 0), reverse=True))


# ---------------------------------------------------------------------------
# families of partitions


@dataclass(frozen=True)
class Family:
    """A finite set given by an enumerator and a membership test."""

    label: str
    members: Callable[[], Iterator[Any]]
    contains: Callable[[Any], bool]


def _semigroups(n: int, c: PartitionConstraint) -> Callable[[], Iterator[Partition]]:
    def gen():
        if n < 0:
            return
        for lam in enumerate_partitions(n, c):
            if partition_is_semigroup(lam):
                yield lam

    return gen


def _shape_ok(x: Any) -> bool:
    return isinstance(x, tuple) and all(isinstance(v, int) and v >= 1 for v in x) and all(
        x[i] >= x[i + 1] for i in range(len(x) - 1)
    )


def pg_family(n: int, g: int) -> Family:
    return Family(
        f"PG({n},{g})",
        _semigroups(n, PartitionConstraint(length=g)),
        lambda x: _shape_ok(x) and sum(x) == n and len(x) == g and is_semigroup(to_numerical_set(x)).closed,
    )


def pf_family(n: int, f: int) -> Family:
    return Family(
        f"PF({n},{f})",
        _semigroups(n, PartitionConstraint(largest_hook=f)),
        lambda x: _shape_ok(x) and sum(x) == n and largest_hook(x) == f and is_semigroup(to_numerical_set(x)).closed,
    )


def pm_family(n: int, m: int, first_two: str | None = None) -> Family:
    def contains(x):
        if not (_shape_ok(x) and sum(x) == n and x.count(1) == m - 1):
            return False
        if first_two == "distinct" and len(x) >= 2 and x[0] == x[1]:
            return False
        return is_semigroup(to_numerical_set(x)).closed

    label = f"PM({n},{m})" + (" with distinct first parts" if first_two else "")
    return Family(label, _semigroups(n, PartitionConstraint(ones=m - 1, first_two=first_two)), contains)


def p_family(n: int) -> Family:
    return Family(f"P({n})", lambda: enumerate_partitions(n), lambda x: _shape_ok(x) and sum(x) == n)


def pbar_family(n: int) -> Family:
    return Family(
        f"Pbar({n})",
        lambda: enumerate_partitions(n, PartitionConstraint(no_ones=True)),
        lambda x: _shape_ok(x) and sum(x) == n and 1 not in x,
    )


def a_family(n: int) -> Family:
    def gen():
        for lam in enumerate_partitions(n, PartitionConstraint(no_ones=True)):
            if len(lam) >= 2:
                yield lam

    return Family(f"A({n})", gen, lambda x: _shape_ok(x) and sum(x) == n and 1 not in x and len(x) >= 2)


def abar_family(n: int) -> Family:
    return Family(
        f"Abar({n})",
        lambda: enumerate_partitions(n, PartitionConstraint(no_ones=True, first_two="equal")),
        lambda x: _shape_ok(x) and sum(x) == n and 1 not in x and len(x) >= 2 and x[0] == x[1],
    )


def box_family(n: int) -> Family:
    return Family(
        f"B({n})",
        lambda: enumerate_partitions(n + 2, PartitionConstraint(max_part=n, max_length=n)),
        lambda x: _shape_ok(x) and sum(x) == n + 2 and len(x) <= n and (not x or x[0] <= n),
    )


def union_family(**parts: Family) -> Family:
    def gen():
        for tag, fam in parts.items():
            for x in fam.members():
                yield Tagged(tag, x)

    def contains(t):
        return isinstance(t, Tagged) and t.branch in parts and parts[t.branch].contains(t.partition)

    label = " + ".join(f"{tag}:{fam.label}" for tag, fam in parts.items())
    return Family(label, gen, contains)


# ---------------------------------------------------------------------------
# genus: PG(n, g) = p(n - g) for g >= 2n/3


def genus_main_forward(lam: Partition, n: int, g: int, *, strict: bool = True) -> Partition:
    """Drop the ones and subtract 1 from every other part."""
    if strict:
        _need(3 * g >= 2 * n, f"need g >= 2n/3, got n={n}, g={g}")
    _need(sum(lam) == n and len(lam) == g, f"{lam} is not a partition of {n} into {g} parts")
    return Partition.trusted(x - 1 for x in lam if x > 1)


def genus_main_backward(mu: Partition, n: int, g: int, *, strict: bool = True) -> Partition:
    if strict:
        _need(3 * g >= 2 * n, f"need g >= 2n/3, got n={n}, g={g}")
    _need(sum(mu) == n - g and len(mu) <= g, f"{mu} cannot be lifted to {g} parts of total {n}")
    return Partition.trusted(tuple(x + 1 for x in mu) + _ones(g - len(mu)))


# ---------------------------------------------------------------------------
# genus: PG(3n - i, 2n - i), i = 1, 2, 3


def genus_shift_family(i: int, lam: Partition, n: int, *, strict: bool = True) -> Partition:
    """Add 1 to every part and pad with ones up to 2n - i parts."""
    _need(i in (1, 2, 3), f"i must be 1, 2 or 3, got {i}")
    if strict:
        _need(n >= 3, f"need n >= 3, got {n}")
    _need(sum(lam) == n and len(lam) <= 2 * n - i, f"{lam} is not a partition of {n} with at most {2 * n - i} parts")
    return Partition.trusted(tuple(x + 1 for x in lam) + _ones(2 * n - i - len(lam)))


def genus_shift_inverse(i: int, mu: Partition, n: int) -> Partition:
    _need(i in (1, 2, 3), f"i must be 1, 2 or 3, got {i}")
    _need(sum(mu) == 3 * n - i and len(mu) == 2 * n - i, f"{mu} is not a partition of {3 * n - i} into {2 * n - i} parts")
    return Partition.trusted(x - 1 for x in mu if x > 1)


def genus_shift_exceptions(i: int, n: int) -> list[Partition]:
    """Images that are not semigroup partitions."""
    rows = {
        1: [((2, n), (1, n - 1))],
        2: [((2, n), (1, n - 2)), ((3, 1), (2, n - 2), (1, n - 1))],
        3: [((2, n), (1, n - 3)), ((4, 1), (2, n - 3), (1, n - 1))],
    }
    _need(i in rows, f"i must be 1, 2 or 3, got {i}")
    out = [_blocks(*r) for r in rows[i]]
    return [x for x in out if x is not None]


# ---------------------------------------------------------------------------
# genus: PG(3n + 2 - k, 2n - k) against the n x n box


def boxed_excluded(n: int, k: int) -> list[Partition]:
    """The two partitions removed from the domain before mapping into the box."""
    out = [
        _blocks((n + 2, 1), (2, 1), (1, 2 * n - k - 2)),
        _blocks((n + 3, 1), (1, 2 * n - k - 1)),
    ]
    return [x for x in out if x is not None]


def boxed_exceptional_set(n: int, k: int) -> list[Partition]:
    """Box partitions listed as lifting to non-semigroup partitions."""
    rows = {
        0: [((4, 1), (1, n - 2)), ((2, 2), (1, n - 2))],
        1: [((5, 1), (1, n - 3)), ((3, 1), (2, 1), (1, n - 3)), ((3, 1), (1, n - 1))],
        2: [((6, 1), (1, n - 4)), ((4, 1), (2, 1), (1, n - 4)), ((2, 3), (1, n - 4)), ((3, 1), (1, n - 1))],
    }
    _need(k in rows, f"k must be 0, 1 or 2, got {k}")
    out = [_blocks(*r) for r in rows[k]]
    return [x for x in out if x is not None]


def genus_boxed_forward(k: int, lam: Partition, n: int, *, strict: bool = True) -> Partition:
    _need(k in (0, 1, 2), f"k must be 0, 1 or 2, got {k}")
    if strict:
        _need(n >= 4, f"need n >= 4, got {n}")
    _need(
        sum(lam) == 3 * n + 2 - k and len(lam) == 2 * n - k,
        f"{lam} is not a partition of {3 * n + 2 - k} into {2 * n - k} parts",
    )
    return Partition.trusted(x - 1 for x in lam if x > 1)


def genus_boxed_backward(k: int, pi: Partition, n: int, *, strict: bool = True) -> Partition:
    _need(k in (0, 1, 2), f"k must be 0, 1 or 2, got {k}")
    if strict:
        _need(n >= 4, f"need n >= 4, got {n}")
    _need(sum(pi) == n + 2 and len(pi) <= 2 * n - k, f"{pi} cannot be lifted")
    return Partition.trusted(tuple(x + 1 for x in pi) + _ones(2 * n - k - len(pi)))


def genus_boxed(k: int, direction: str, x: Partition, n: int, *, strict: bool = True) -> Partition:
    if direction == "forward":
        return genus_boxed_forward(k, x, n, strict=strict)
    if direction == "backward":
        return genus_boxed_backward(k, x, n, strict=strict)
    raise DomainError(f"direction must be 'forward' or 'backward', got {direction!r}")


# ---------------------------------------------------------------------------
# genus recurrence: PG(3n+2-j, 2n-j) - PG(3(n-1)+2-j, 2(n-1)-j) = pbar(n+2)


def genus_recurrence_map(j: int, lam: Partition, n: int, *, strict: bool = True) -> Tagged:
    """Remove {2, 1} when 2 is a part, else strip ones and subtract 1."""
    if strict:
        _need(j >= 0 and n >= j + 5, f"need n >= j + 5, got j={j}, n={n}")
    _need(
        sum(lam) == 3 * n + 2 - j and len(lam) == 2 * n - j,
        f"{lam} is not a partition of {3 * n + 2 - j} into {2 * n - j} parts",
    )
    if 2 in lam:
        _need(1 in lam, f"{lam} has no part 1 to remove")
        rest = list(lam)
        rest.remove(2)
        rest.remove(1)
        return Tagged("REC", Partition.trusted(rest))
    ones = lam.count(1)
    big = 2 * n - j - (ones + 1) + 1
    return Tagged("NEW", Partition.trusted(x - 1 for x in lam[:big]))


def genus_recurrence_inverse(j: int, t: Tagged, n: int) -> Partition:
    branch, mu = t
    if branch == "REC":
        _need(sum(mu) == 3 * (n - 1) + 2 - j, f"{mu} has the wrong size for the REC branch")
        return _sorted_partition(tuple(mu) + (2, 1))
    if branch == "NEW":
        _need(sum(mu) == n + 2 and len(mu) <= 2 * n - j, f"{mu} cannot be lifted")
        return Partition.trusted(tuple(x + 1 for x in mu) + _ones(2 * n - j - len(mu)))
    raise DomainError(f"unknown branch {branch!r}")


# ---------------------------------------------------------------------------
# Frobenius: single hooks and nesting


def hooks(n: int) -> list[Partition]:
    """All single-hook partitions of n, arm longest first."""
    return [Partition.trusted((n - t,) + _ones(t)) for t in range(n)]


def frob_onehook(n: int) -> list[Partition]:
    """Single hooks of size n with leg at least floor(n/2)."""
    _need(n >= 1, f"need n >= 1, got {n}")
    return [Partition.trusted((n - t,) + _ones(t)) for t in range(n // 2, n)]


def _is_hook(lam: Partition) -> bool:
    return len(lam) >= 1 and all(x == 1 for x in lam[1:])


def _failure_reason(lam: Partition) -> str | None:
    s = to_numerical_set(lam)
    cert = is_semigroup(s)
    if cert.closed:
        return None
    x, y = cert.witness
    m, f = s.multiplicity, s.frobenius
    if x == y == m and 2 * m == f:
        return "2m = F"
    if x == m and x + y == f:
        return "m+k = F"
    return f"{x}+{y} = {x + y} is a gap"


def frob_nest(j: int, hook: Partition, insert: Partition) -> NestResult | None:
    """Place ``insert`` inside ``hook``: its part i is added to hook row i + 1.

    Returns None when the result is not a partition.
    """
    _need(_is_hook(hook), f"{hook} is not a single hook")
    _need(sum(insert) == j, f"{insert} is not a partition of {j}")
    a, leg = hook[0], len(hook) - 1
    if not insert:
        return NestResult(hook, partition_is_semigroup(hook), _failure_reason(hook))
    if len(insert) > leg or insert[0] + 1 > a:
        return None
    lam = Partition.trusted((a,) + tuple(x + 1 for x in insert) + _ones(leg - len(insert)))
    reason = _failure_reason(lam)
    return NestResult(lam, reason is None, reason)


def frob_unnest(lam: Partition) -> Nested:
    """Split off the largest hook; the inverse of :func:`frob_nest`."""
    _need(len(lam) >= 1, "the empty partition has no hook")
    return Nested(
        Partition.trusted((lam[0],) + _ones(len(lam) - 1)),
        Partition.trusted(x - 1 for x in lam[1:] if x > 1),
    )


# ---------------------------------------------------------------------------
# Frobenius recurrence: PF(n, n-k) - PF(n-2, n-k-2) = p(k)


def frob_recurrence_forward(k: int, lam: Partition, n: int, *, strict: bool = True) -> Tagged:
    """A branch (first parts differ) or B branch (first parts equal)."""
    if strict:
        _need(k >= 0 and n >= 4 * k + 3, f"need n >= 4k + 3, got k={k}, n={n}")
    _need(sum(lam) == n and largest_hook(lam) == n - k, f"{lam} is not in PF({n},{n - k})")
    if len(lam) >= 2 and lam[0] == lam[1]:
        return Tagged("B", Partition.trusted(x - 1 for x in lam[1:] if x > 1))
    _need(len(lam) >= 2 and lam[-1] == 1, f"{lam} does not end in a part 1")
    return Tagged("A", Partition.trusted((lam[0] - 1,) + tuple(lam[1:-1])))


def frob_recurrence_backward(k: int, t: Tagged, n: int) -> Partition:
    branch, mu = t
    if branch == "A":
        _need(len(mu) >= 1 and sum(mu) == n - 2, f"{mu} is not a nonempty partition of {n - 2}")
        return Partition.trusted((mu[0] + 1,) + tuple(mu[1:]) + (1,))
    if branch == "B":
        _need(sum(mu) == k, f"{mu} is not a partition of {k}")
        top = mu[0] if mu else 0
        tail = n - k - top - 1 - len(mu)
        _need(tail >= 0, f"a hook of length {n - k} cannot wrap {mu}")
        return Partition.trusted((top + 1,) + tuple(x + 1 for x in mu) + _ones(tail))
    raise DomainError(f"unknown branch {branch!r}")


def frob_recurrence(k: int, direction: str, x, n: int, *, strict: bool = True):
    if direction == "forward":
        return frob_recurrence_forward(k, x, n, strict=strict)
    if direction == "backward":
        return frob_recurrence_backward(k, x, n)
    raise DomainError(f"direction must be 'forward' or 'backward', got {direction!r}")


# ---------------------------------------------------------------------------
# multiplicity


def _split_ones(lam: Partition, ones: int, what: str) -> tuple[int, ...]:
    _need(lam.count(1) == ones, f"{lam} does not have exactly {ones} parts equal to 1 ({what})")
    return tuple(lam[: len(lam) - ones])


def mult_shift_forward(j: int, mu: Partition, n: int, *, strict: bool = True) -> Partition:
    """(mu_1, ..., mu_k, 1^(j-1)) -> (mu_1 + 1, mu_2, ..., mu_k, 1^j)."""
    if strict:
        _need(j >= 1 and n <= 3 * j, f"need n <= 3j, got j={j}, n={n}")
    _need(sum(mu) == n, f"{mu} is not a partition of {n}")
    big = _split_ones(mu, j - 1, "multiplicity j")
    _need(len(big) >= 1, f"{mu} has no part larger than 1")
    return Partition.trusted((big[0] + 1,) + big[1:] + _ones(j))


def mult_shift_backward(j: int, lam: Partition, n: int, *, strict: bool = True) -> Partition:
    if strict:
        _need(j >= 1 and n <= 3 * j, f"need n <= 3j, got j={j}, n={n}")
    _need(sum(lam) == n + 2, f"{lam} is not a partition of {n + 2}")
    big = _split_ones(lam, j, "multiplicity j + 1")
    _need(len(big) >= 1, f"{lam} has no part larger than 1")
    _need(len(big) < 2 or big[0] != big[1], f"{lam} has equal first two parts")
    _need(big[0] - 1 >= 2, f"{lam}: lowering the first part would create a new part 1")
    return Partition.trusted((big[0] - 1,) + big[1:] + _ones(j - 1))


def mult_shift(j: int, direction: str, x: Partition, n: int, *, strict: bool = True) -> Partition:
    if direction == "forward":
        return mult_shift_forward(j, x, n, strict=strict)
    if direction == "backward":
        return mult_shift_backward(j, x, n, strict=strict)
    raise DomainError(f"direction must be 'forward' or 'backward', got {direction!r}")


def mult_shift_flag_violations(j: int, n: int) -> list[Partition]:
    """Partitions with j - 1 ones whose semigroup flag changes under the shift."""
    out = []
    for mu in enumerate_partitions(n, PartitionConstraint(ones=j - 1)):
        if len(mu) == j - 1:
            continue
        lam = mult_shift_forward(j, mu, n, strict=False)
        if partition_is_semigroup(mu) != partition_is_semigroup(lam):
            out.append(mu)
    return out


def mult_half_forward(i: int, lam: Partition, n: int, *, strict: bool = True) -> Partition:
    """Strip the n - i - 1 ones."""
    _need(i in (0, 1, 2, 3), f"i must be 0..3, got {i}")
    if strict:
        _need(n >= 5, f"need n >= 5, got {n}")
    _need(sum(lam) == 2 * n - i, f"{lam} is not a partition of {2 * n - i}")
    return Partition.trusted(_split_ones(lam, n - i - 1, "multiplicity n - i"))


def mult_half_backward(i: int, mu: Partition, n: int, *, strict: bool = True) -> Partition:
    _need(i in (0, 1, 2, 3), f"i must be 0..3, got {i}")
    if strict:
        _need(n >= 5, f"need n >= 5, got {n}")
    _need(sum(mu) == n + 1 and 1 not in mu, f"{mu} is not a no-ones partition of {n + 1}")
    return Partition.trusted(tuple(mu) + _ones(n - i - 1))


def mult_half_family(i: int, direction: str, x: Partition, n: int, *, strict: bool = True) -> Partition:
    if direction == "forward":
        return mult_half_forward(i, x, n, strict=strict)
    if direction == "backward":
        return mult_half_backward(i, x, n, strict=strict)
    raise DomainError(f"direction must be 'forward' or 'backward', got {direction!r}")


def mult_half_exceptional_set(n: int, i: int) -> list[Partition]:
    """Lifted partitions of size 2n - i that fail to be semigroup partitions."""
    rows = {
        0: [],
        1: [((n - 1, 1), (2, 1), (1, n - 2))],
        2: [((n - 2, 1), (3, 1), (1, n - 3)), ((n - 3, 1), (2, 2), (1, n - 3))],
        3: [
            ((n - 1, 1), (2, 1), (1, n - 4)),
            ((n - 2, 1), (3, 1), (1, n - 4)),
            ((n - 3, 1), (4, 1), (1, n - 4)),
            ((n - 4, 1), (3, 1), (2, 1), (1, n - 4)),
            ((n - 5, 1), (2, 3), (1, n - 4)),
        ],
    }
    _need(i in rows, f"i must be 0..3, got {i}")
    out = [_blocks(*r) for r in rows[i]]
    return [x for x in out if x is not None]


def mult_half_starred(n: int, i: int) -> list[Partition]:
    """Listed with the exceptions but actually a semigroup partition."""
    if i != 2:
        return []
    x = _blocks((n - 1, 1), (2, 1), (1, n - 3))
    return [x] if x is not None else []


def mult_recurrence_forward(j: int, lam: Partition, n: int, *, strict: bool = True) -> Tagged:
    """NEW: strip ones when the first two parts agree; REC: lower the first part."""
    if strict:
        _need(j >= 0 and n >= 2 * j + 2, f"need n >= 2j + 2, got j={j}, n={n}")
    _need(sum(lam) == 2 * n - j, f"{lam} is not a partition of {2 * n - j}")
    big = _split_ones(lam, n - j - 1, "multiplicity n - j")
    _need(len(big) >= 1, f"{lam} has no part larger than 1")
    if len(big) >= 2 and big[0] == big[1]:
        return Tagged("NEW", Partition.trusted(big))
    _need(big[0] - 1 >= 2, f"{lam}: lowering the first part would create a new part 1")
    return Tagged("REC", Partition.trusted((big[0] - 1,) + big[1:] + _ones(n - j - 2)))


def mult_recurrence_backward(j: int, t: Tagged, n: int) -> Partition:
    branch, mu = t
    if branch == "NEW":
        _need(sum(mu) == n + 1 and 1 not in mu, f"{mu} is not a no-ones partition of {n + 1}")
        return Partition.trusted(tuple(mu) + _ones(n - j - 1))
    if branch == "REC":
        _need(sum(mu) == 2 * (n - 1) - j, f"{mu} is not a partition of {2 * (n - 1) - j}")
        big = _split_ones(mu, n - j - 2, "multiplicity n - j - 1")
        _need(len(big) >= 1, f"{mu} has no part larger than 1")
        return Partition.trusted((big[0] + 1,) + big[1:] + _ones(n - j - 1))
    raise DomainError(f"unknown branch {branch!r}")


def mult_recurrence(j: int, direction: str, x, n: int, *, strict: bool = True):
    if direction == "forward":
        return mult_recurrence_forward(j, x, n, strict=strict)
    if direction == "backward":
        return mult_recurrence_backward(j, x, n)
    raise DomainError(f"direction must be 'forward' or 'backward', got {direction!r}")


# PM(3j+2, j+1) - PM(3j, j) = abar(2j+2) - j


def mult_3j2_excluded_family(j: int) -> list[Partition]:
    """The j partitions (s, s, 2^(j-s+1)), 2 <= s <= j + 1."""
    return [Partition.trusted((s, s) + (2,) * (j - s + 1)) for s in range(2, j + 2)]


def mult_3j2_forward(j: int, lam: Partition, *, strict: bool = True) -> Tagged:
    if strict:
        _need(j >= 4, f"need j >= 4, got {j}")
    _need(sum(lam) == 3 * j + 2, f"{lam} is not a partition of {3 * j + 2}")
    big = _split_ones(lam, j, "multiplicity j + 1")
    _need(len(big) >= 1, f"{lam} has no part larger than 1")
    if len(big) >= 2 and big[0] == big[1]:
        return Tagged("NEW", Partition.trusted(big))
    _need(big[0] - 1 >= 2, f"{lam}: lowering the first part would create a new part 1")
    return Tagged("REC", Partition.trusted((big[0] - 1,) + big[1:] + _ones(j - 1)))


def mult_3j2_backward(j: int, t: Tagged) -> Partition:
    branch, mu = t
    if branch == "NEW":
        _need(sum(mu) == 2 * j + 2 and 1 not in mu, f"{mu} is not a no-ones partition of {2 * j + 2}")
        return Partition.trusted(tuple(mu) + _ones(j))
    if branch == "REC":
        _need(sum(mu) == 3 * j, f"{mu} is not a partition of {3 * j}")
        big = _split_ones(mu, j - 1, "multiplicity j")
        _need(len(big) >= 1, f"{mu} has no part larger than 1")
        return Partition.trusted((big[0] + 1,) + big[1:] + _ones(j))
    raise DomainError(f"unknown branch {branch!r}")


def mult_boundary_3j2(j: int, direction: str, x, *, strict: bool = True):
    if direction == "forward":
        return mult_3j2_forward(j, x, strict=strict)
    if direction == "backward":
        return mult_3j2_backward(j, x)
    raise DomainError(f"direction must be 'forward' or 'backward', got {direction!r}")


# PM(3j, j) - PM(3j-2, j-1) = abar(2j+1) + 1


def mult_3j_excluded(j: int) -> Partition:
    return Partition.trusted((3,) + (2,) * (j - 1) + _ones(j - 1))


def _is_middle(big: tuple[int, ...]) -> bool:
    return len(big) >= 3 and big[0] == big[1] + 1 and big[2] == 2


def mult_3j_forward(j: int, lam: Partition, *, strict: bool = True) -> Tagged:
    """Three branches: equal first parts, the (l, l-1, 2, ..., 2) shape, and the rest."""
    if strict:
        _need(j >= 4, f"need j >= 4, got {j}")
    _need(sum(lam) == 3 * j, f"{lam} is not a partition of {3 * j}")
    _need(lam != mult_3j_excluded(j), f"{lam} is excluded from the domain")
    big = _split_ones(lam, j - 1, "multiplicity j")
    _need(len(big) >= 1, f"{lam} has no part larger than 1")
    if len(big) >= 2 and big[0] == big[1]:
        return Tagged("NEW", Partition.trusted(big))
    if _is_middle(big):
        top = big[0]
        _need(big == (top, top - 1) + (2,) * (j + 1 - top), f"{lam} does not have the middle-branch shape")
        return Tagged("NEW", Partition.trusted((top - 1, top - 1, 3) + (2,) * (j - top)))
    _need(big[0] - 1 >= 2, f"{lam}: lowering the first part would create a new part 1")
    return Tagged("REC", Partition.trusted((big[0] - 1,) + big[1:] + _ones(j - 2)))


def mult_3j_backward(j: int, t: Tagged) -> Partition:
    branch, mu = t
    if branch == "NEW":
        _need(
            sum(mu) == 2 * j + 1 and 1 not in mu and len(mu) >= 2 and mu[0] == mu[1],
            f"{mu} is not in Abar({2 * j + 1})",
        )
        if largest_hook(mu) == j + 1:
            _need(len(mu) >= 3, f"{mu} has no third part to lower")
            return _P((mu[0] + 1, mu[1], mu[2] - 1) + tuple(mu[3:]) + _ones(j - 1))
        return Partition.trusted(tuple(mu) + _ones(j - 1))
    if branch == "REC":
        _need(sum(mu) == 3 * j - 2, f"{mu} is not a partition of {3 * j - 2}")
        big = _split_ones(mu, j - 2, "multiplicity j - 1")
        _need(len(big) >= 1, f"{mu} has no part larger than 1")
        return Partition.trusted((big[0] + 1,) + big[1:] + _ones(j - 1))
    raise DomainError(f"unknown branch {branch!r}")


def mult_boundary_3j(j: int, direction: str, x, *, strict: bool = True):
    if direction == "forward":
        return mult_3j_forward(j, x, strict=strict)
    if direction == "backward":
        return mult_3j_backward(j, x)
    raise DomainError(f"direction must be 'forward' or 'backward', got {direction!r}")


def mult_3j_claim2_discrepancies(j: int) -> list[tuple[Partition, Partition, Partition]]:
    """Middle-branch elements where the alternative image formula differs.

    The alternative keeps the third part as is instead of replacing it by
    3.  Each entry is (element, map image, alternative image).
    """
    out = []
    for lam in pm_family(3 * j, j).members():
        if lam == mult_3j_excluded(j):
            continue
        big = tuple(lam[: len(lam) - (j - 1)])
        if not _is_middle(big):
            continue
        top = big[0]
        image = Partition.trusted((top - 1, top - 1, 3) + (2,) * (j - top))
        alt = _sorted_partition((top - 1, top - 1, big[2]) + (2,) * (j - top))
        if alt != image:
            out.append((lam, image, alt))
    return out


# ---------------------------------------------------------------------------
# specs and the audit


@dataclass(frozen=True)
class BijectionSpec:
    """A map between two finite families with its documented exceptions.

    ``forward_exceptions`` are domain-side elements the construction says do
    not map into the codomain; ``backward_exceptions`` are codomain-side
    elements said not to pull back into the domain.
    """

    id: str
    params: tuple[tuple[str, int], ...]
    domain: Family
    codomain: Family
    forward: Callable[[Any], Any]
    backward: Callable[[Any], Any]
    forward_exceptions: tuple = ()
    backward_exceptions: tuple = ()


def _spec_genus_main(n: int, g: int, strict: bool) -> BijectionSpec:
    if strict:
        _need(3 * g >= 2 * n, f"need g >= 2n/3, got n={n}, g={g}")
    return BijectionSpec(
        "GENUS_MAIN",
        (("n", n), ("g", g)),
        pg_family(n, g),
        p_family(n - g),
        lambda x: genus_main_forward(x, n, g, strict=False),
        lambda y: genus_main_backward(y, n, g, strict=False),
    )


def _spec_genus_3n(i: int, n: int, strict: bool) -> BijectionSpec:
    if strict:
        _need(n >= 3, f"need n >= 3, got {n}")
    excluded = tuple(genus_shift_inverse(i, e, n) for e in genus_shift_exceptions(i, n))
    return BijectionSpec(
        "GENUS_3N",
        (("i", i), ("n", n)),
        p_family(n),
        pg_family(3 * n - i, 2 * n - i),
        lambda x: genus_shift_family(i, x, n, strict=False),
        lambda y: genus_shift_inverse(i, y, n),
        forward_exceptions=excluded,
    )


def _spec_genus_boxed(k: int, n: int, strict: bool) -> BijectionSpec:
    if strict:
        _need(n >= 4, f"need n >= 4, got {n}")
    return BijectionSpec(
        "GENUS_BOXED_K",
        (("k", k), ("n", n)),
        pg_family(3 * n + 2 - k, 2 * n - k),
        box_family(n),
        lambda x: genus_boxed_forward(k, x, n, strict=False),
        lambda y: genus_boxed_backward(k, y, n, strict=False),
        forward_exceptions=tuple(boxed_excluded(n, k)),
        backward_exceptions=tuple(boxed_exceptional_set(n, k)),
    )


def _spec_genus_rec(j: int, n: int, strict: bool) -> BijectionSpec:
    if strict:
        _need(n >= j + 5, f"need n >= j + 5, got j={j}, n={n}")
    return BijectionSpec(
        "GENUS_REC_J",
        (("j", j), ("n", n)),
        pg_family(3 * n + 2 - j, 2 * n - j),
        union_family(REC=pg_family(3 * (n - 1) + 2 - j, 2 * (n - 1) - j), NEW=pbar_family(n + 2)),
        lambda x: genus_recurrence_map(j, x, n, strict=False),
        lambda y: genus_recurrence_inverse(j, y, n),
    )


def _spec_frob_onehook(n: int, strict: bool) -> BijectionSpec:
    built = frob_onehook(n)
    return BijectionSpec(
        "FROB_ONEHOOK",
        (("n", n),),
        pf_family(n, n),
        Family(f"onehook({n})", lambda: iter(built), lambda x: x in built),
        lambda x: x,
        lambda y: y,
    )


def _spec_frob_nest(j: int, n: int, strict: bool) -> BijectionSpec:
    """Hook of length n - j from PF(n-j, n-j) around a partition of j."""
    outer = pf_family(n - j, n - j)

    def pairs():
        for h in outer.members():
            for pi in enumerate_partitions(j):
                yield Nested(h, pi)

    def contains(x):
        return isinstance(x, Nested) and outer.contains(x.hook) and _shape_ok(x.insert) and sum(x.insert) == j

    def forward(x):
        res = frob_nest(j, x.hook, x.insert)
        if res is None:
            raise DomainError(f"{x.insert} does not fit inside {x.hook}")
        return res.partition

    # nestings that are not partitions, or not semigroup partitions
    bad = []
    for x in pairs():
        res = frob_nest(j, x.hook, x.insert)
        if res is None or not res.semigroup:
            bad.append(x)
    return BijectionSpec(
        "FROB_NEST",
        (("j", j), ("n", n)),
        Family(f"PF({n - j},{n - j}) x P({j})", pairs, contains),
        pf_family(n, n - j),
        forward,
        frob_unnest,
        forward_exceptions=tuple(bad),
    )


def _spec_frob_rec(k: int, n: int, strict: bool) -> BijectionSpec:
    if strict:
        _need(n >= 4 * k + 3, f"need n >= 4k + 3, got k={k}, n={n}")
    return BijectionSpec(
        "FROB_REC_K",
        (("k", k), ("n", n)),
        pf_family(n, n - k),
        union_family(A=pf_family(n - 2, n - k - 2), B=p_family(k)),
        lambda x: frob_recurrence_forward(k, x, n, strict=False),
        lambda y: frob_recurrence_backward(k, y, n),
    )


def _spec_mult_shift(j: int, n: int, strict: bool) -> BijectionSpec:
    if strict:
        _need(j >= 1 and n <= 3 * j, f"need n <= 3j, got j={j}, n={n}")
    fwd_exc = (Partition.trusted(_ones(j - 1)),) if n == j - 1 else ()
    bwd_exc = (Partition.trusted((2,) + _ones(j)),) if n == j else ()
    return BijectionSpec(
        "MULT_SHIFT",
        (("j", j), ("n", n)),
        pm_family(n, j),
        pm_family(n + 2, j + 1, first_two="distinct"),
        lambda x: mult_shift_forward(j, x, n, strict=False),
        lambda y: mult_shift_backward(j, y, n, strict=False),
        forward_exceptions=fwd_exc,
        backward_exceptions=bwd_exc,
    )


def _spec_mult_half(i: int, n: int, strict: bool) -> BijectionSpec:
    if strict:
        _need(n >= 5, f"need n >= 5, got {n}")
    bwd = tuple(Partition.trusted(x[: len(x) - x.count(1)]) for x in mult_half_exceptional_set(n, i))
    return BijectionSpec(
        "MULT_HALF_I",
        (("i", i), ("n", n)),
        pm_family(2 * n - i, n - i),
        a_family(n + 1),
        lambda x: mult_half_forward(i, x, n, strict=False),
        lambda y: mult_half_backward(i, y, n, strict=False),
        backward_exceptions=bwd,
    )


def _spec_mult_rec(j: int, n: int, strict: bool) -> BijectionSpec:
    if strict:
        _need(n >= 2 * j + 2, f"need n >= 2j + 2, got j={j}, n={n}")
    return BijectionSpec(
        "MULT_REC_J",
        (("j", j), ("n", n)),
        pm_family(2 * n - j, n - j),
        union_family(REC=pm_family(2 * (n - 1) - j, (n - 1) - j), NEW=abar_family(n + 1)),
        lambda x: mult_recurrence_forward(j, x, n, strict=False),
        lambda y: mult_recurrence_backward(j, y, n),
    )


def _spec_mult_3j2(j: int, strict: bool) -> BijectionSpec:
    if strict:
        _need(j >= 4, f"need j >= 4, got {j}")
    return BijectionSpec(
        "MULT_3J2",
        (("j", j),),
        pm_family(3 * j + 2, j + 1),
        union_family(REC=pm_family(3 * j, j), NEW=abar_family(2 * j + 2)),
        lambda x: mult_3j2_forward(j, x, strict=False),
        lambda y: mult_3j2_backward(j, y),
        backward_exceptions=tuple(Tagged("NEW", x) for x in mult_3j2_excluded_family(j)),
    )


def _spec_mult_3j(j: int, strict: bool) -> BijectionSpec:
    if strict:
        _need(j >= 4, f"need j >= 4, got {j}")
    return BijectionSpec(
        "MULT_3J",
        (("j", j),),
        pm_family(3 * j, j),
        union_family(REC=pm_family(3 * j - 2, j - 1), NEW=abar_family(2 * j + 1)),
        lambda x: mult_3j_forward(j, x, strict=False),
        lambda y: mult_3j_backward(j, y),
        forward_exceptions=(mult_3j_excluded(j),),
    )


SPECS: dict[str, tuple[tuple[str, ...], Callable[..., BijectionSpec]]] = {
    "GENUS_MAIN": (("n", "g"), _spec_genus_main),
    "GENUS_3N": (("i", "n"), _spec_genus_3n),
    "GENUS_BOXED_K": (("k", "n"), _spec_genus_boxed),
    "GENUS_REC_J": (("j", "n"), _spec_genus_rec),
    "FROB_ONEHOOK": (("n",), _spec_frob_onehook),
    "FROB_NEST": (("j", "n"), _spec_frob_nest),
    "FROB_REC_K": (("k", "n"), _spec_frob_rec),
    "MULT_SHIFT": (("j", "n"), _spec_mult_shift),
    "MULT_HALF_I": (("i", "n"), _spec_mult_half),
    "MULT_REC_J": (("j", "n"), _spec_mult_rec),
    "MULT_3J2": (("j",), _spec_mult_3j2),
    "MULT_3J": (("j",), _spec_mult_3j),
}

ALIASES = {"GENUS_3N1": ("GENUS_3N", {"i": 1}), "GENUS_3N2": ("GENUS_3N", {"i": 2}), "GENUS_3N3": ("GENUS_3N", {"i": 3})}


def make_spec(bid: str, *, strict: bool = True, **params: int) -> BijectionSpec:
    """Build the named map for concrete parameters."""
    if bid in ALIASES:
        bid, extra = ALIASES[bid]
        params = {**extra, **params}
    if bid not in SPECS:
        raise DomainError(f"unknown bijection id {bid!r}; known: {', '.join(sorted(SPECS))}")
    names, factory = SPECS[bid]
    missing = [p for p in names if params.get(p) is None]
    if missing:
        raise DomainError(f"{bid} needs parameter(s) {', '.join(missing)}")
    return factory(*(params[p] for p in names), strict)


def to_jsonable(x: Any) -> Any:
    if isinstance(x, Tagged):
        return {"branch": x.branch, "partition": list(x.partition)}
    if isinstance(x, Nested):
        return {"hook": list(x.hook), "insert": list(x.insert)}
    if isinstance(x, tuple):
        return list(x)
    return x


@dataclass
class AuditRecord:
    direction: str
    input: Any
    output: Any
    status: str
    detail: str = ""

    @property
    def ok(self) -> bool:
        return not self.status.startswith("FAIL")

    def to_dict(self) -> dict:
        return {
            "direction": self.direction,
            "input": to_jsonable(self.input),
            "output": to_jsonable(self.output),
            "status": self.status,
            "detail": self.detail,
        }


@dataclass
class AuditResult:
    spec: BijectionSpec
    records: list[AuditRecord] = field(default_factory=list)
    domain_size: int = 0
    codomain_size: int = 0
    domain_exceptions: int = 0
    codomain_exceptions: int = 0
    sampled: bool = False

    @property
    def failures(self) -> list[AuditRecord]:
        return [r for r in self.records if not r.ok]

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def valid_pullbacks(self) -> int:
        """Codomain elements that pulled back into the domain and round-tripped."""
        return sum(1 for r in self.records if r.direction == "backward" and r.status == "ok")

    @property
    def valid_images(self) -> int:
        return sum(1 for r in self.records if r.direction == "forward" and r.status == "ok")

    def summary(self) -> dict:
        return {
            "id": self.spec.id,
            "params": dict(self.spec.params),
            "domain": self.spec.domain.label,
            "codomain": self.spec.codomain.label,
            "domain_size": str(self.domain_size),
            "codomain_size": str(self.codomain_size),
            "domain_exceptions": str(self.domain_exceptions),
            "codomain_exceptions": str(self.codomain_exceptions),
            "failures": str(len(self.failures)),
            "sampled": self.sampled,
            "ok": self.ok,
        }


def _apply(fn, x):
    try:
        return fn(x), None
    except DomainError as exc:
        return None, str(exc)


def audit(spec: BijectionSpec, *, sample: int | None = None, seed: int = 0) -> AuditResult:
    """Check both compositions element by element, and every listed exception.

    With ``sample`` set, only that many randomly chosen elements of each
    side are checked (reproducible through ``seed``); sizes are still exact.
    """
    res = AuditResult(spec)
    dom = list(spec.domain.members())
    cod = list(spec.codomain.members())
    res.domain_size, res.codomain_size = len(dom), len(cod)
    fexc, bexc = set(spec.forward_exceptions), set(spec.backward_exceptions)
    dom_set, cod_set = set(dom), set(cod)
    res.domain_exceptions = len(fexc & dom_set)
    res.codomain_exceptions = len(bexc & cod_set)
    if sample is not None:
        rng = random.Random(seed)
        dom = rng.sample(dom, min(sample, len(dom)))
        cod = rng.sample(cod, min(sample, len(cod)))
        res.sampled = True

    for x in dom:
        y, err = _apply(spec.forward, x)
        if x in fexc:
            if y is not None and spec.codomain.contains(y):
                res.records.append(AuditRecord("forward", x, y, "FAIL", "listed exception maps into the codomain"))
            else:
                res.records.append(AuditRecord("forward", x, y, "exception", err or "image outside the codomain"))
            continue
        if y is None:
            res.records.append(AuditRecord("forward", x, None, "FAIL", err))
        elif not spec.codomain.contains(y):
            res.records.append(AuditRecord("forward", x, y, "FAIL", "image outside the codomain"))
        else:
            back, err = _apply(spec.backward, y)
            if back != x:
                res.records.append(AuditRecord("forward", x, y, "FAIL", f"backward gives {to_jsonable(back)} {err or ''}".strip()))
            else:
                res.records.append(AuditRecord("forward", x, y, "ok"))

    for y in cod:
        x, err = _apply(spec.backward, y)
        if y in bexc:
            if x is not None and spec.domain.contains(x):
                res.records.append(AuditRecord("backward", y, x, "FAIL", "listed exception pulls back into the domain"))
            else:
                res.records.append(AuditRecord("backward", y, x, "exception", err or "preimage outside the domain"))
            continue
        if x is None:
            res.records.append(AuditRecord("backward", y, None, "FAIL", err))
        elif not spec.domain.contains(x):
            res.records.append(AuditRecord("backward", y, x, "FAIL", "preimage outside the domain"))
        else:
            fwd, err = _apply(spec.forward, x)
            if x in fexc:
                res.records.append(AuditRecord("backward", y, x, "FAIL", "pulls back onto a listed domain exception"))
            elif fwd != y:
                res.records.append(AuditRecord("backward", y, x, "FAIL", f"forward gives {to_jsonable(fwd)} {err or ''}".strip()))
            else:
                res.records.append(AuditRecord("backward", y, x, "ok"))

    if sample is None:
        # listed exceptions that are not even members are reported, not failed
        for x in sorted(fexc - dom_set, key=repr):
            res.records.append(AuditRecord("forward", x, None, "absent", "listed domain exception is not in the domain"))
        for y in sorted(bexc - cod_set, key=repr):
            res.records.append(AuditRecord("backward", y, None, "absent", "listed codomain exception is not in the codomain"))
    return res
