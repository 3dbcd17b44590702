"""Special numbers: n where a split off the midpoint still attains equality.

Everything here is brute force up to a caller-chosen ``n_max``; nothing is
claimed beyond it.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Sequence

from .decomposition import _tight_indices, run_chunks
from .recurrence import HalfSplitRecurrence, MemoTable, _resolve_memo, children, midpoint_set

log = logging.getLogger(__name__)


def _special_chunk(F: Sequence[int], c: int, lo: int, hi: int) -> list[int]:
    out = []
    for n in range(lo, hi + 1):
        _, tight, _ = _tight_indices(F, c, n)
        if frozenset(tight) > midpoint_set(n):
            out.append(n)
    return out


def special_set(recurrence: HalfSplitRecurrence, memo: MemoTable | None, n_max: int,
                jobs: int = 1) -> tuple[int, ...]:
    """All n <= n_max whose equality set has a split outside the midpoint set."""
    if n_max < 3:
        raise ValueError(f"n_max must be >= 3, got {n_max}")
    memo = _resolve_memo(recurrence, memo)
    memo.extend_to(n_max)
    values = list(memo.values[:n_max + 1])
    c = recurrence.addend
    parts = run_chunks(_special_chunk, lambda a, b: (values, c, a, b), 3, n_max, jobs)
    return tuple(n for part in parts for n in part)


@dataclass(frozen=True)
class SpecialGroup:
    index: int
    first: int
    last: int

    def __post_init__(self) -> None:
        if self.first > self.last:
            raise ValueError(f"empty group [{self.first}, {self.last}]")

    @property
    def members(self) -> range:
        return range(self.first, self.last + 1)

    def __len__(self) -> int:
        return self.last - self.first + 1


def detect_groups(specials: Iterable[int]) -> list[SpecialGroup]:
    """Maximal runs of consecutive integers, numbered from 1."""
    specials = list(specials)
    if any(b <= a for a, b in zip(specials, specials[1:])):
        raise ValueError("specials must be strictly ascending")
    groups: list[SpecialGroup] = []
    start = prev = None
    for n in specials:
        if prev is not None and n == prev + 1:
            prev = n
            continue
        if start is not None:
            groups.append(SpecialGroup(len(groups) + 1, start, prev))
        start = prev = n
    if start is not None:
        groups.append(SpecialGroup(len(groups) + 1, start, prev))
    return groups


def check_group_recurrence(groups: Sequence[SpecialGroup]) -> tuple[bool, list[tuple[int, int, int]]]:
    """Test first = 2*prev_first - 1 and last = 2*prev_last + 1 between neighbours.

    Returns (ok, residuals) with one (index, first residual, last residual)
    triple per group from the second on.
    """
    if len(groups) < 2:
        raise ValueError("need at least two groups")
    residuals = [
        (cur.index, cur.first - (2 * prev.first - 1), cur.last - (2 * prev.last + 1))
        for prev, cur in zip(groups, groups[1:])
    ]
    return all(a == 0 and b == 0 for _, a, b in residuals), residuals


def parents_containing(k: int, lo: int, hi: int) -> tuple[int, ...]:
    """n in [lo, hi] (n >= 3) with k among children(n)."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return tuple(n for n in range(max(lo, 3), hi + 1) if k in children(n))


@dataclass(frozen=True)
class SpreadProfile:
    n: int
    width: int
    offsets: tuple[int, ...]
    value: int

    @property
    def contiguous(self) -> bool:
        return self.offsets == tuple(range(self.offsets[0], self.offsets[-1] + 1))


def spread_profile(recurrence: HalfSplitRecurrence, memo: MemoTable | None,
                   group: SpecialGroup) -> list[SpreadProfile]:
    """Equality-set width and offsets (i - lowest midpoint) for each member."""
    memo = _resolve_memo(recurrence, memo)
    memo.extend_to(group.last)
    out = []
    for n in group.members:
        fn, tight, _ = _tight_indices(memo.values, recurrence.addend, n)
        base = min(midpoint_set(n))
        out.append(SpreadProfile(n, len(tight), tuple(i - base for i in tight), fn))
    if not rises_then_falls([p.width for p in out]):
        log.warning("equality-set widths in group %d are not unimodal", group.index)
    return out


def rises_then_falls(widths: Sequence[int]) -> bool:
    """Non-decreasing up to a peak, then non-increasing."""
    k = 0
    while k + 1 < len(widths) and widths[k + 1] >= widths[k]:
        k += 1
    return all(widths[m + 1] <= widths[m] for m in range(k, len(widths) - 1))
