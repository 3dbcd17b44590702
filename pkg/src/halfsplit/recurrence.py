"""Half-split recurrences and their exact memoized evaluation.

A half-split recurrence is fixed by three base values and an addend::

    F(0), F(1), F(2) = base0, base1, base2
    F(n) = F(ceil(n/2)) + F(floor(n/2)+1) + F(ceil(n/2)-1) + F(floor(n/2)) + addend   (n >= 3)

Values are Python integers, so evaluation never wraps. A :class:`MemoTable`
may carry an upper ``bound`` to emulate a fixed-width value representation;
exceeding it raises :class:`RecurrenceOverflowError`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "HalfSplitRecurrence",
    "MemoTable",
    "RecurrenceOverflowError",
    "T",
    "P",
    "ZERO",
    "children",
    "evaluate",
    "make_recurrence",
    "midpoint_set",
]

UNVERIFIED = "unverified family member"


class RecurrenceOverflowError(ArithmeticError):
    """A value exceeded the table's configured bound."""

    def __init__(self, n: int, value: int, bound: int):
        super().__init__(f"F({n}) = {value} exceeds bound {bound}")
        self.n = n
        self.value = value
        self.bound = bound


def _check_nonneg_int(label: str, value: object) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise TypeError(f"{label} must be an int, got {type(value).__name__}")
    if value < 0:
        raise ValueError(f"{label} must be nonnegative, got {value}")
    return value


@dataclass(frozen=True)
class HalfSplitRecurrence:
    base0: int
    base1: int
    base2: int
    addend: int
    name: str = "custom"

    def __post_init__(self) -> None:
        for label in ("base0", "base1", "base2", "addend"):
            _check_nonneg_int(label, getattr(self, label))
        if not isinstance(self.name, str) or not self.name:
            raise ValueError("name must be a nonempty string")

    @property
    def params(self) -> tuple[int, int, int, int]:
        return (self.base0, self.base1, self.base2, self.addend)

    @property
    def family_status(self) -> str:
        """``"builtin"`` for T and P, otherwise an unverified label."""
        builtin = _BUILTINS.get(self.name)
        if builtin is not None and builtin.params == self.params:
            return "builtin"
        return UNVERIFIED

    def spec_string(self) -> str:
        return "{}({},{},{},{})".format(self.name, *self.params)


def make_recurrence(base0: int, base1: int, base2: int, addend: int,
                    name: str = "custom") -> HalfSplitRecurrence:
    return HalfSplitRecurrence(base0, base1, base2, addend, name)


T = HalfSplitRecurrence(0, 0, 1, 1, "T")
P = HalfSplitRecurrence(0, 0, 0, 1, "P")
ZERO = HalfSplitRecurrence(0, 0, 0, 0, "zero")
_BUILTINS = {"T": T, "P": P}


def children(n: int) -> tuple[int, int, int, int]:
    """The four arguments of the defining equation, in fixed order."""
    if n < 3:
        raise ValueError(f"children(n) needs n >= 3, got {n}")
    up, down = (n + 1) // 2, n // 2
    return (up, down + 1, up - 1, down)


def midpoint_set(n: int) -> frozenset[int]:
    """Split indices at which the decomposition reduces to the definition.

    Empty for n in {1, 2}: there the inequality is strict for every split.
    """
    if n <= 0:
        raise ValueError(f"midpoint_set(n) needs n >= 1, got {n}")
    if n < 3:
        return frozenset()
    if n % 2:
        return frozenset({(n + 1) // 2})
    return frozenset({n // 2, n // 2 + 1})


class MemoTable:
    """Dense bottom-up table of F(0..max_n) for one recurrence.

    Single writer. Once filled, :attr:`values` can be handed to readers
    (including worker processes) as a plain list.
    """

    def __init__(self, recurrence: HalfSplitRecurrence, bound: int | None = None):
        self.recurrence = recurrence
        self.bound = bound
        self.values: list[int] = []
        # n -> equality set, filled lazily by decomposition.equality_set
        self.equality_sets: dict[int, frozenset[int]] = {}
        self._append_checked(0, recurrence.base0)
        self._append_checked(1, recurrence.base1)
        self._append_checked(2, recurrence.base2)

    @classmethod
    def from_values(cls, recurrence: HalfSplitRecurrence, values: Iterable[int],
                    bound: int | None = None) -> "MemoTable":
        """Rebuild a table from stored values, re-deriving every entry.

        Raises ValueError on the first entry that disagrees with the recurrence.
        """
        values = list(values)
        if len(values) < 3:
            raise ValueError("stored table must cover at least n = 0..2")
        table = cls(recurrence, bound)
        table.extend_to(len(values) - 1)
        for n, (got, want) in enumerate(zip(values, table.values)):
            if got != want:
                raise ValueError(f"stored F({n}) = {got} but recurrence gives {want}")
        return table

    def _append_checked(self, n: int, value: int) -> None:
        if self.bound is not None and value > self.bound:
            raise RecurrenceOverflowError(n, value, self.bound)
        self.values.append(value)

    @property
    def max_n(self) -> int:
        return len(self.values) - 1

    def extend_to(self, n: int) -> None:
        F = self.values
        c = self.recurrence.addend
        for m in range(len(F), n + 1):
            up, down = (m + 1) // 2, m // 2
            self._append_checked(m, F[up] + F[down + 1] + F[up - 1] + F[down] + c)

    def __getitem__(self, n: int) -> int:
        if n < 0:
            raise IndexError(f"negative index {n}")
        if n > self.max_n:
            self.extend_to(n)
        return self.values[n]

    def __len__(self) -> int:
        return len(self.values)

    def snapshot(self) -> Sequence[int]:
        return tuple(self.values)


def _resolve_memo(recurrence: HalfSplitRecurrence, memo: MemoTable | None) -> MemoTable:
    if memo is None:
        return MemoTable(recurrence)
    if memo.recurrence != recurrence:
        raise ValueError(
            f"memo table belongs to {memo.recurrence.spec_string()}, "
            f"not {recurrence.spec_string()}")
    return memo


def evaluate(recurrence: HalfSplitRecurrence, n: int, memo: MemoTable | None = None) -> int:
    """Exact F(n); ``memo`` is extended in place when given."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    return _resolve_memo(recurrence, memo)[n]
