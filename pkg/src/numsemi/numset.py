"""Numerical sets, numerical semigroups and the profile correspondence.

A numerical set is stored by its finite gap set.  Membership questions
below the Frobenius number go through an integer bitmask, bit ``x`` set
when ``x`` belongs to the set.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property, reduce
from math import gcd
from typing import Iterable

from .errors import NotCofiniteError, ValidationError
from .partition import Partition, first_column_hooks


@dataclass(frozen=True)
class NumericalSet:
    """Cofinite subset of the nonnegative integers containing 0.

    ``gaps`` is the strictly increasing tuple of missing positive integers.
    """

    gaps: tuple[int, ...] = ()

    def __post_init__(self):
        prev = 0
        for g in self.gaps:
            if not isinstance(g, int) or isinstance(g, bool):
                raise ValidationError(f"gap {g!r} is not an integer")
            if g <= prev:
                if g <= 0:
                    raise ValidationError(f"gap {g} is not positive (0 always belongs to a numerical set)")
                raise ValidationError(f"gaps {self.gaps} are not strictly increasing")
            prev = g

    @property
    def genus(self) -> int:
        return len(self.gaps)

    @property
    def frobenius(self) -> int:
        return self.gaps[-1] if self.gaps else -1

    @property
    def multiplicity(self) -> int:
        m = 1
        for g in self.gaps:
            if g != m:
                break
            m += 1
        return m

    @property
    def mask(self) -> int:
        """Bitmask of the elements in [0, frobenius]."""
        f = self.frobenius
        full = (1 << (f + 1)) - 1 if f >= 0 else 0
        gm = 0
        for g in self.gaps:
            gm |= 1 << g
        return full & ~gm

    def __contains__(self, x: int) -> bool:
        if x < 0:
            return False
        if x > self.frobenius:
            return True
        return x not in self._gapset

    @cached_property
    def _gapset(self) -> frozenset[int]:
        return frozenset(self.gaps)

    def elements(self, upto: int | None = None) -> list[int]:
        """Elements not exceeding ``upto`` (default: frobenius + 1)."""
        if upto is None:
            upto = self.frobenius + 1
        gs = self._gapset
        return [x for x in range(upto + 1) if x not in gs]

    def __str__(self) -> str:
        return format_numerical_set(self)


@dataclass(frozen=True)
class SemigroupCertificate:
    """Result of a closure test.

    ``witness`` is the lexicographically least pair ``x <= y`` of nonzero
    elements whose sum is a gap, or ``None`` when the set is closed.
    """

    closed: bool
    witness: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.closed


def from_gaps(gaps: Iterable[int]) -> NumericalSet:
    return NumericalSet(tuple(gaps))


def invariants(s: NumericalSet) -> tuple[int, int, int]:
    """(genus, frobenius, multiplicity)."""
    return s.genus, s.frobenius, s.multiplicity


def _closure_witness(gaps: tuple[int, ...]) -> tuple[int, int] | None:
    if not gaps:
        return None
    f = gaps[-1]
    gm = 0
    for g in gaps:
        gm |= 1 << g
    elems = ((1 << (f + 1)) - 1) & ~gm
    m = 1
    while (gm >> m) & 1:
        m += 1
    # sums above f always land in the set, so x ranges over [m, f // 2]
    for x in range(m, f // 2 + 1):
        if not (elems >> x) & 1:
            continue
        high = (elems >> x) << x  # elements y >= x
        hits = (high << x) & gm
        if hits:
            s = (hits & -hits).bit_length() - 1
            return x, s - x
    return None


def is_semigroup(s: NumericalSet) -> SemigroupCertificate:
    """Test closure under addition, with the witness of failure if any."""
    f, m = s.frobenius, s.multiplicity
    if f < 2 * m:
        return SemigroupCertificate(True)
    w = _closure_witness(s.gaps)
    return SemigroupCertificate(w is None, w)


def is_semigroup_full(s: NumericalSet) -> SemigroupCertificate:
    """Closure test without the ``f < 2m`` shortcut, by plain pair search."""
    f = s.frobenius
    members = [x for x in range(1, f + 1) if x in s]
    for i, x in enumerate(members):
        for y in members[i:]:
            if x + y <= f and x + y not in s:
                return SemigroupCertificate(False, (x, y))
    return SemigroupCertificate(True)


def gaps_are_semigroup(gaps: tuple[int, ...]) -> bool:
    """Closure test straight from a sorted gap tuple (hot path)."""
    if not gaps:
        return True
    f = gaps[-1]
    m = 1
    for g in gaps:
        if g != m:
            break
        m += 1
    if f < 2 * m:
        return True
    return _closure_witness(gaps) is None


def partition_is_semigroup(lam: tuple[int, ...]) -> bool:
    """Whether the numerical set of ``lam`` is a semigroup."""
    ell = len(lam)
    if not ell:
        return True
    if lam[-1] != 1:
        return False
    gaps = tuple(lam[ell - 1 - k] + k for k in range(ell))
    return gaps_are_semigroup(gaps)


def to_partition(s: NumericalSet) -> Partition:
    """Profile walk: with gaps g_1 > ... > g_l, part i is g_i - (l - i)."""
    desc = s.gaps[::-1]
    ell = len(desc)
    return Partition.trusted(desc[i] - (ell - 1 - i) for i in range(ell))


def to_numerical_set(lam: Partition) -> NumericalSet:
    """The gap set is the first-column hook lengths."""
    return NumericalSet(tuple(sorted(first_column_hooks(lam))))


def semigroup_from_generators(gens: Iterable[int]) -> NumericalSet:
    """Numerical semigroup generated by ``gens`` (gcd must be 1)."""
    gens = sorted(set(gens))
    if not gens or gens[0] < 1:
        raise ValidationError(f"generators must be positive integers: {gens}")
    if reduce(gcd, gens) != 1:
        raise NotCofiniteError(f"gcd of {gens} is not 1, the complement is infinite")
    a = gens[0]
    reach = [True]
    run = 1 if a == 1 else 0
    x = 0
    # stop after a consecutive members: everything beyond is reachable
    while run < a:
        x += 1
        ok = any(x >= g and reach[x - g] for g in gens)
        reach.append(ok)
        run = run + 1 if ok else 0
    return NumericalSet(tuple(i for i, r in enumerate(reach) if not r))


# ---------------------------------------------------------------------------
# text and JSON forms

_SET_RE = re.compile(r"^\{\s*(.*?)\s*,?\s*->\s*\}$")


def format_numerical_set(s: NumericalSet) -> str:
    """``{0, 3, 5, 6, 8, ->}``: elements up to frobenius + 1, then the tail."""
    return "{" + ", ".join(str(x) for x in s.elements()) + ", ->}"


def parse_numerical_set(text: str) -> NumericalSet:
    """Inverse of :func:`format_numerical_set`; ``→`` is accepted for ``->``."""
    t = text.strip().replace("→", "->")
    m = _SET_RE.match(t)
    if not m:
        raise ValidationError(f"numerical set text must look like '{{0, 3, 5, ->}}': {text!r}")
    body = m.group(1).strip().rstrip(",")
    try:
        elems = sorted({int(tok) for tok in body.split(",") if tok.strip()})
    except ValueError:
        raise ValidationError(f"bad element in {text!r}") from None
    if not elems or elems[0] != 0:
        raise ValidationError(f"a numerical set must contain 0: {text!r}")
    if elems[0] < 0:
        raise ValidationError(f"negative element in {text!r}")
    top = elems[-1]
    present = set(elems)
    return NumericalSet(tuple(x for x in range(1, top) if x not in present))


def to_json(s: NumericalSet) -> dict:
    return {"gaps": list(s.gaps)}


def from_json(obj: dict) -> NumericalSet:
    if not isinstance(obj, dict) or "gaps" not in obj:
        raise ValidationError(f"expected an object with a 'gaps' list: {obj!r}")
    return from_gaps(obj["gaps"])
