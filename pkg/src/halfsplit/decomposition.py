"""Split costs, equality sets and exhaustive verification of the decomposition inequality."""
from __future__ import annotations

import enum
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .recurrence import HalfSplitRecurrence, MemoTable, _resolve_memo, midpoint_set

DEFAULT_CAP = 1000


class Relation(str, enum.Enum):
    STRICT = "strict"
    TIGHT = "tight"


class Mode(str, enum.Enum):
    IFF = "iff"
    INEQ = "ineq"


class ViolationKind(str, enum.Enum):
    INEQUALITY_VIOLATED = "inequality_violated"
    EQUALITY_MISSING_AT_MIDPOINT = "equality_missing_at_midpoint"
    UNEXPECTED_EQUALITY_OFF_MIDPOINT = "unexpected_equality_off_midpoint"


class InequalityViolation(ArithmeticError):
    """rhs(n, i) < F(n): the decomposition inequality fails."""

    def __init__(self, n: int, i: int, rhs: int, fn: int):
        super().__init__(f"rhs({n},{i}) = {rhs} < F({n}) = {fn}")
        self.n, self.i, self.rhs, self.fn = n, i, rhs, fn


@dataclass(frozen=True)
class SplitEvaluation:
    n: int
    i: int
    rhs: int
    fn: int
    relation: Relation

    @property
    def gap(self) -> int:
        return self.rhs - self.fn


@dataclass(frozen=True)
class Violation:
    n: int
    i: int
    rhs: int
    fn: int
    kind: ViolationKind


@dataclass
class VerificationReport:
    recurrence: str
    n_range: tuple[int, int]
    mode: Mode
    violations: list[Violation] = field(default_factory=list)
    violation_count: int = 0
    special_equalities: list[tuple[int, int]] = field(default_factory=list)
    special_equality_count: int = 0
    elapsed: float = 0.0
    cap: int = DEFAULT_CAP

    @property
    def passed(self) -> bool:
        return self.violation_count == 0

    @property
    def truncated(self) -> bool:
        return (self.violation_count > len(self.violations)
                or self.special_equality_count > len(self.special_equalities))


def _check_split(n: int, i: int) -> None:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not 1 <= i <= n:
        raise ValueError(f"split index i={i} outside [1, {n}]")


def split_value(recurrence: HalfSplitRecurrence, memo: MemoTable | None, n: int,
                i: int) -> SplitEvaluation:
    """F(i) + F(n-i+1) + F(i-1) + F(n-i) + addend compared with F(n).

    Raises InequalityViolation if the right-hand side falls below F(n).
    """
    _check_split(n, i)
    memo = _resolve_memo(recurrence, memo)
    memo.extend_to(n)
    F = memo.values
    rhs = F[i] + F[n - i + 1] + F[i - 1] + F[n - i] + recurrence.addend
    fn = F[n]
    if rhs < fn:
        raise InequalityViolation(n, i, rhs, fn)
    return SplitEvaluation(n, i, rhs, fn, Relation.TIGHT if rhs == fn else Relation.STRICT)


def _rhs_row(F: Sequence[int], c: int, n: int) -> list[int]:
    # entry i-1 holds rhs(n, i)
    return [a + b + d + e + c for a, b, d, e in
            zip(F[1:n + 1], F[n:0:-1], F[0:n], F[n - 1::-1])]


def _tight_indices(F: Sequence[int], c: int, n: int) -> tuple[int, list[int], list[int]]:
    """(F(n), tight splits, violating splits) for one n."""
    row = _rhs_row(F, c, n)
    fn = F[n]
    low = min(row)
    if low > fn:
        return fn, [], []
    tight = [i for i, r in enumerate(row, 1) if r == fn]
    below = [i for i, r in enumerate(row, 1) if r < fn] if low < fn else []
    return fn, tight, below


def equality_set(recurrence: HalfSplitRecurrence, memo: MemoTable | None,
                 n: int) -> frozenset[int]:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    memo = _resolve_memo(recurrence, memo)
    found = memo.equality_sets.get(n)
    if found is None:
        memo.extend_to(n)
        found = frozenset(_tight_indices(memo.values, recurrence.addend, n)[1])
        memo.equality_sets[n] = found
    return found


@dataclass
class _Partial:
    violations: list[Violation] = field(default_factory=list)
    violation_count: int = 0
    specials: list[tuple[int, int]] = field(default_factory=list)
    special_count: int = 0


def _sweep(F: Sequence[int], c: int, lo: int, hi: int, mode: Mode, cap: int) -> _Partial:
    out = _Partial()

    def add_violation(v: Violation) -> None:
        out.violation_count += 1
        if len(out.violations) < cap:
            out.violations.append(v)

    for n in range(lo, hi + 1):
        fn, tight, below = _tight_indices(F, c, n)
        mids = midpoint_set(n)
        events: list[tuple[int, ViolationKind | None]] = []
        for i in below:
            events.append((i, ViolationKind.INEQUALITY_VIOLATED))
        tight_set = set(tight)
        for i in tight:
            if i not in mids:
                events.append((i, ViolationKind.UNEXPECTED_EQUALITY_OFF_MIDPOINT
                               if mode is Mode.IFF else None))
        if mode is Mode.IFF:
            for i in mids:
                if i not in tight_set:
                    events.append((i, ViolationKind.EQUALITY_MISSING_AT_MIDPOINT))
        events.sort(key=lambda e: e[0])
        for i, kind in events:
            if kind is None:
                out.special_count += 1
                if len(out.specials) < cap:
                    out.specials.append((n, i))
            else:
                rhs = F[i] + F[n - i + 1] + F[i - 1] + F[n - i] + c
                add_violation(Violation(n, i, rhs, fn, kind))
    return out


def split_range(lo: int, hi: int, parts: int) -> list[tuple[int, int]]:
    """Split [lo, hi] into contiguous chunks of roughly equal O(n) work."""
    if hi < lo:
        return []
    parts = max(1, min(parts, hi - lo + 1))
    bounds = [lo]
    for k in range(1, parts):
        cut = int(math.isqrt((lo * lo * (parts - k) + hi * hi * k) // parts))
        bounds.append(max(bounds[-1] + 1, min(cut, hi)))
    bounds.append(hi + 1)
    return [(a, b - 1) for a, b in zip(bounds, bounds[1:]) if a <= b - 1]


def run_chunks(worker: Callable, args_for: Callable[[int, int], tuple], lo: int, hi: int,
               jobs: int) -> list:
    """Run ``worker`` over range chunks; results come back in range order."""
    chunks = split_range(lo, hi, jobs)
    if jobs <= 1 or len(chunks) <= 1:
        return [worker(*args_for(a, b)) for a, b in chunks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(worker, *args_for(a, b)) for a, b in chunks]
        return [f.result() for f in futures]


def verify_range(recurrence: HalfSplitRecurrence, memo: MemoTable | None, n_max: int,
                 mode: Mode | str = Mode.IFF, jobs: int = 1,
                 cap: int = DEFAULT_CAP) -> VerificationReport:
    """Check every (n, i) with 1 <= i <= n <= n_max.

    IFF mode treats any off-midpoint equality (and any missing midpoint
    equality) as a violation; INEQ mode records off-midpoint equalities as
    findings in ``special_equalities``. Lists are capped at ``cap`` entries
    sorted by (n, i); the counts are always exact.
    """
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    mode = Mode(mode)
    memo = _resolve_memo(recurrence, memo)
    start = time.perf_counter()
    memo.extend_to(n_max)
    values = list(memo.values[:n_max + 1])
    c = recurrence.addend
    partials = run_chunks(_sweep, lambda a, b: (values, c, a, b, mode, cap), 1, n_max, jobs)
    report = VerificationReport(recurrence.name, (1, n_max), mode, cap=cap)
    for part in partials:
        report.violation_count += part.violation_count
        report.special_equality_count += part.special_count
        report.violations.extend(part.violations[:cap - len(report.violations)])
        report.special_equalities.extend(part.specials[:cap - len(report.special_equalities)])
    report.elapsed = time.perf_counter() - start
    return report
