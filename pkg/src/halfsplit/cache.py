"""Line-based memo-table cache files.

Layout (ASCII, LF line endings)::

    halfsplit-cache v1 <name> <base0> <base1> <base2> <addend>
    0,<F(0)>
    1,<F(1)>
    ...
"""
from __future__ import annotations

from pathlib import Path

from .recurrence import HalfSplitRecurrence, MemoTable

MAGIC = "halfsplit-cache"
VERSION = "v1"


class CacheError(ValueError):
    pass


def dumps(memo: MemoTable) -> str:
    r = memo.recurrence
    lines = [f"{MAGIC} {VERSION} {r.name} {r.base0} {r.base1} {r.base2} {r.addend}"]
    lines.extend(f"{n},{v}" for n, v in enumerate(memo.values))
    return "\n".join(lines) + "\n"


def save_cache(memo: MemoTable, path: str | Path) -> None:
    Path(path).write_bytes(dumps(memo).encode("ascii"))


def loads(text: str, recurrence: HalfSplitRecurrence | None = None,
          bound: int | None = None) -> MemoTable:
    """Parse and re-validate a cache; any mismatch raises CacheError."""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise CacheError("empty cache file")
    head = lines[0].split(" ")
    if len(head) != 7 or head[0] != MAGIC:
        raise CacheError(f"bad cache header: {lines[0]!r}")
    if head[1] != VERSION:
        raise CacheError(f"unsupported cache version {head[1]!r}")
    try:
        stored = HalfSplitRecurrence(*(int(x) for x in head[3:]), name=head[2])
    except (TypeError, ValueError) as exc:
        raise CacheError(f"bad cache header: {exc}") from None
    if recurrence is not None and stored != recurrence:
        raise CacheError(
            f"cache is for {stored.spec_string()}, expected {recurrence.spec_string()}")
    values = []
    for lineno, line in enumerate(lines[1:], 2):
        n_text, sep, v_text = line.partition(",")
        try:
            n, v = int(n_text), int(v_text)
        except ValueError:
            raise CacheError(f"line {lineno}: malformed entry {line!r}") from None
        if not sep or n != len(values):
            raise CacheError(f"line {lineno}: expected index {len(values)}, got {line!r}")
        values.append(v)
    try:
        return MemoTable.from_values(stored, values, bound=bound)
    except ValueError as exc:
        raise CacheError(str(exc)) from None


def load_cache(path: str | Path, recurrence: HalfSplitRecurrence | None = None,
               bound: int | None = None) -> MemoTable:
    try:
        text = Path(path).read_bytes().decode("ascii")
    except UnicodeDecodeError:
        raise CacheError(f"{path}: not an ASCII cache file") from None
    return loads(text, recurrence, bound)
