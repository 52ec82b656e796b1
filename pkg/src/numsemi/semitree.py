"""Genus-tree enumeration of numerical semigroups.

The root is the set of all nonnegative integers.  The children of a
semigroup S are S minus g for every minimal generator g of S larger than
the Frobenius number; each semigroup of genus g + 1 arises exactly once.
This gives an oracle that never looks at partitions.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator

from .errors import ResourceError
from .numset import NumericalSet, to_partition

DEFAULT_CAP = 30


def effective_generators(s: NumericalSet) -> tuple[int, ...]:
    """Minimal generators of ``s`` that exceed its Frobenius number."""
    f, m = s.frobenius, s.multiplicity
    top = max(f + m, m)
    gaps = 0
    for g in s.gaps:
        gaps |= 1 << g
    members = ((1 << (top + 1)) - 1) & ~gaps & ~1  # nonzero elements up to f + m
    out = []
    for x in range(max(f + 1, m), top + 1):
        # x = y + (x - y) with both summands nonzero members
        low = members & ((1 << (x // 2 + 1)) - 1)
        decomposable = False
        while low:
            y = (low & -low).bit_length() - 1
            if (members >> (x - y)) & 1:
                decomposable = True
                break
            low &= low - 1
        if not decomposable:
            out.append(x)
    return tuple(out)


@dataclass(frozen=True)
class SemigroupTreeNode:
    semigroup: NumericalSet
    effective_generators: tuple[int, ...]

    @classmethod
    def of(cls, s: NumericalSet) -> "SemigroupTreeNode":
        return cls(s, effective_generators(s))

    @property
    def genus(self) -> int:
        return self.semigroup.genus

    def children(self) -> list["SemigroupTreeNode"]:
        gaps = self.semigroup.gaps
        return [SemigroupTreeNode.of(NumericalSet(gaps + (x,))) for x in self.effective_generators]


ROOT = SemigroupTreeNode(NumericalSet(()), (1,))


def _check_cap(max_genus: int, cap: int) -> None:
    if max_genus < 0:
        raise ValueError(f"genus bound must be nonnegative, got {max_genus}")
    if max_genus > cap:
        raise ResourceError(f"genus {max_genus} exceeds the tree cap {cap}")


def walk(max_genus: int, *, root: SemigroupTreeNode = ROOT, cap: int = DEFAULT_CAP) -> Iterator[SemigroupTreeNode]:
    """Depth-first traversal of every node with genus <= ``max_genus``."""
    _check_cap(max_genus, cap)
    stack = [root]
    while stack:
        node = stack.pop()
        yield node
        if node.genus < max_genus:
            # reversed so children come out in increasing generator order
            stack.extend(reversed(node.children()))


def enumerate_by_genus(max_genus: int, *, cap: int = DEFAULT_CAP) -> Iterator[NumericalSet]:
    """Every numerical semigroup of genus <= ``max_genus``, genus by genus.

    Each level is produced by its own depth-limited walk, so memory stays
    proportional to the tree depth rather than to a whole level.
    """
    _check_cap(max_genus, cap)
    for level in range(max_genus + 1):
        for node in walk(level, cap=cap):
            if node.genus == level:
                yield node.semigroup


def count_by_genus(max_genus: int, *, cap: int = DEFAULT_CAP) -> list[int]:
    counts = [0] * (max_genus + 1)
    for node in walk(max_genus, cap=cap):
        counts[node.genus] += 1
    return counts


Cell = tuple[int, int, int, int]


def _subtree_cells(args: tuple[NumericalSet, int, int]) -> Counter:
    s, max_genus, cap = args
    table: Counter = Counter()
    for node in walk(max_genus, root=SemigroupTreeNode.of(s), cap=cap):
        sg = node.semigroup
        table[(sg.genus, sg.frobenius, sg.multiplicity, sum(to_partition(sg)))] += 1
    return table


def aggregate_counts(max_genus: int, *, workers: int = 1, cap: int = DEFAULT_CAP, split_genus: int = 6) -> dict[Cell, int]:
    """Count semigroups by (genus, frobenius, multiplicity, partition size).

    With ``workers > 1`` the subtrees rooted at genus ``split_genus`` are
    farmed out to processes; the merged table is the same either way.
    """
    _check_cap(max_genus, cap)
    table: Counter = Counter()
    if workers <= 1 or max_genus <= split_genus:
        table = _subtree_cells((ROOT.semigroup, max_genus, cap))
    else:
        frontier = []
        for node in walk(split_genus, cap=cap):
            sg = node.semigroup
            if node.genus == split_genus:
                frontier.append(sg)
            else:
                table[(sg.genus, sg.frobenius, sg.multiplicity, sum(to_partition(sg)))] += 1
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_subtree_cells, [(sg, max_genus, cap) for sg in frontier]):
                table.update(part)
    return dict(sorted(table.items()))


def marginal(table: dict[Cell, int], axis: str, size: int | None = None) -> dict[int, int]:
    """Sum a cell table down to one invariant, optionally at a fixed size."""
    pos = {"genus": 0, "frobenius": 1, "multiplicity": 2, "size": 3}[axis]
    out: Counter = Counter()
    for cell, count in table.items():
        if size is not None and cell[3] != size:
            continue
        out[cell[pos]] += count
    return dict(sorted(out.items()))
