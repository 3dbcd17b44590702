"""Argument matrices, column epsilon-partitions and the unlucky-column census.

Expanding each of F(i), F(n-i+1), F(i-1), F(n-i) one level gives sixteen
arguments. They regroup into four columns, each an epsilon-partition
(j, k-j+1, j-1, k-j) of 2k where the four k are the children of n. A column
whose j sits at the midpoint of its own k cannot contribute a strict local
inequality and is called unlucky.
"""
from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass

from .decomposition import Relation, equality_set, split_value
from .recurrence import HalfSplitRecurrence, MemoTable, _resolve_memo, children, midpoint_set

Grid = tuple[tuple[int, int, int, int], ...]


class ParityCase(str, enum.Enum):
    """Parities of (n, i)."""
    EVEN_EVEN = "even_even"
    ODD_ODD = "odd_odd"
    EVEN_ODD = "even_odd"
    ODD_EVEN = "odd_even"

    @classmethod
    def of(cls, n: int, i: int) -> "ParityCase":
        return {
            (0, 0): cls.EVEN_EVEN, (1, 1): cls.ODD_ODD,
            (0, 1): cls.EVEN_ODD, (1, 0): cls.ODD_EVEN,
        }[(n % 2, i % 2)]


@dataclass(frozen=True)
class EpsilonPartition:
    n: int
    i: int

    @property
    def parts(self) -> tuple[int, int, int, int]:
        n, i = self.n, self.i
        return (i, n - i + 1, i - 1, n - i)

    @property
    def degenerate(self) -> bool:
        # only 1 < i < n is a feasible partition
        return not 1 < self.i < self.n


def epsilon_partition(n: int, i: int) -> EpsilonPartition:
    if not 1 <= i <= n:
        raise ValueError(f"split index i={i} outside [1, {n}]")
    return EpsilonPartition(n, i)


def halves(a: int) -> tuple[int, int, int, int]:
    """children() pattern, also applied to a < 3 where it is only formal."""
    up, down = (a + 1) // 2, a // 2
    return (up, down + 1, up - 1, down)


def _check_inner(n: int, i: int) -> None:
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n}")
    if not 2 <= i <= n - 1:
        raise ValueError(f"i={i} outside [2, {n - 1}]")


@dataclass(frozen=True)
class ArgumentMatrix:
    n: int
    i: int
    rows: Grid
    # per row: True when its argument is < 3, so the expansion is not an equation
    formal_rows: tuple[bool, bool, bool, bool]

    @property
    def row_arguments(self) -> tuple[int, int, int, int]:
        return epsilon_partition(self.n, self.i).parts

    def entries(self) -> Counter:
        return Counter(x for row in self.rows for x in row)


def build_matrix(n: int, i: int) -> ArgumentMatrix:
    _check_inner(n, i)
    args = epsilon_partition(n, i).parts
    return ArgumentMatrix(n, i, tuple(halves(a) for a in args),
                          tuple(a < 3 for a in args))


def column_params(n: int, i: int) -> tuple[tuple[int, int], ...]:
    """The (k, j) of each of the four regrouped columns, left to right."""
    _check_inner(n, i)
    case = ParityCase.of(n, i)
    if case is ParityCase.EVEN_EVEN:
        h, j = n // 2, i // 2
        return ((h, j), (h - 1, j), (h, j), (h + 1, j + 1))
    if case is ParityCase.ODD_ODD:
        lo, hi = (n - 1) // 2, (n + 1) // 2
        return ((lo, (i - 1) // 2), (lo, (i + 1) // 2), (hi, (i + 1) // 2), (hi, (i + 1) // 2))
    if case is ParityCase.EVEN_ODD:
        h, j = n // 2, (i + 1) // 2
        return ((h - 1, (i - 1) // 2), (h, j), (h + 1, j), (h, j))
    lo, hi, j = (n - 1) // 2, (n + 1) // 2, i // 2
    return ((lo, j), (lo, j), (hi, j), (hi, j + 1))


def rearranged_matrix(n: int, i: int) -> Grid:
    """4x4 grid whose columns are the epsilon-partitions from column_params."""
    cols = [epsilon_partition(k, j).parts for k, j in column_params(n, i)]
    return tuple(tuple(col[r] for col in cols) for r in range(4))


@dataclass(frozen=True)
class ColumnRecord:
    k: int
    j: int
    relation: Relation
    unlucky: bool
    degenerate: bool
    special: bool = False


def classify_column(recurrence: HalfSplitRecurrence, memo: MemoTable | None, k: int,
                    j: int) -> ColumnRecord:
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if not 1 <= j <= k:
        raise ValueError(f"j={j} outside [1, {k}]")
    memo = _resolve_memo(recurrence, memo)
    ev = split_value(recurrence, memo, k, j)
    special = False
    if ev.relation is Relation.TIGHT:
        tight = equality_set(recurrence, memo, k)
        special = tight > midpoint_set(k)
    return ColumnRecord(
        k=k, j=j, relation=ev.relation,
        unlucky=j in midpoint_set(k),
        degenerate=k <= 2 or j in (1, k),
        special=special,
    )


@dataclass(frozen=True)
class ColumnCensus:
    n: int
    i: int
    parity_case: ParityCase
    columns: tuple[ColumnRecord, ...]

    @property
    def half_parity(self) -> str:
        """Parity of n/2 (even n) or (n-1)/2 (odd n)."""
        return "even" if (self.n // 2) % 2 == 0 else "odd"

    @property
    def unlucky_count(self) -> int:
        return sum(c.unlucky for c in self.columns)

    @property
    def strict_count(self) -> int:
        return sum(c.relation is Relation.STRICT for c in self.columns)

    @property
    def tight_count(self) -> int:
        return sum(c.relation is Relation.TIGHT for c in self.columns)

    @property
    def degenerate_count(self) -> int:
        return sum(c.degenerate for c in self.columns)

    @property
    def special_count(self) -> int:
        return sum(c.special for c in self.columns)

    def counts(self) -> dict[str, int]:
        return {
            "unlucky": self.unlucky_count,
            "strict": self.strict_count,
            "tight": self.tight_count,
            "degenerate": self.degenerate_count,
            "special": self.special_count,
        }


def census(recurrence: HalfSplitRecurrence, memo: MemoTable | None, n: int,
           i: int) -> ColumnCensus:
    memo = _resolve_memo(recurrence, memo)
    cols = tuple(classify_column(recurrence, memo, k, j) for k, j in column_params(n, i))
    return ColumnCensus(n, i, ParityCase.of(n, i), cols)


@dataclass(frozen=True)
class QuartetCheck:
    lhs_gap: int
    column_gaps: tuple[int, int, int, int]

    @property
    def holds(self) -> bool:
        return self.lhs_gap == sum(self.column_gaps)


def verify_quartet_identity(recurrence: HalfSplitRecurrence, memo: MemoTable | None,
                            n: int, i: int) -> QuartetCheck:
    """Check rhs(n,i) - F(n) against the sum of the four column gaps.

    Only for 4 <= i <= n-3, where every one-level expansion is an equation.
    """
    if n < 7 or not 4 <= i <= n - 3:
        raise ValueError(f"quartet identity needs n >= 7 and 4 <= i <= n-3, got n={n}, i={i}")
    memo = _resolve_memo(recurrence, memo)
    lhs = split_value(recurrence, memo, n, i).gap
    gaps = tuple(split_value(recurrence, memo, k, j).gap for k, j in column_params(n, i))
    return QuartetCheck(lhs, gaps)


def children_match(n: int, i: int) -> bool:
    """The k of column_params(n, i) are children(n) as a multiset."""
    return Counter(k for k, _ in column_params(n, i)) == Counter(children(n))
