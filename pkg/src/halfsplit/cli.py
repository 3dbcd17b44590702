"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or input error,
3 arithmetic overflow.
"""
from __future__ import annotations

import argparse
import logging
import re
import sys
from pathlib import Path
from typing import Sequence

from . import cache as cachefile
from .decomposition import InequalityViolation, Mode, equality_set, split_value, verify_range
from .matrix_lab import build_matrix, census, rearranged_matrix, verify_quartet_identity
from .output import FORMATS, OutputRecord, fmt_set
from .recurrence import (P, T, ZERO, HalfSplitRecurrence, MemoTable, RecurrenceOverflowError,
                         children, midpoint_set)
from .special import (check_group_recurrence, detect_groups, parents_containing, rises_then_falls,
                      special_set, spread_profile)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_ARITH = 0, 1, 2, 3
INT64_MAX = 2**63 - 1

_NAMED = {"T": T, "P": P, "zero": ZERO}
_PARAMS = r"(\d+),(\d+),(\d+),(\d+)"
_BARE = re.compile(rf"^{_PARAMS}$")
_NAMED_PARAMS = re.compile(rf"^([A-Za-z_][\w-]*)\({_PARAMS}\)$")


class UsageError(Exception):
    pass


def parse_recurrence(text: str) -> HalfSplitRecurrence:
    """``T``, ``P``, ``zero``, ``b0,b1,b2,c`` or ``name(b0,b1,b2,c)``."""
    if text in _NAMED:
        return _NAMED[text]
    text = text.strip()
    m = _BARE.match(text)
    if m:
        return HalfSplitRecurrence(*(int(g) for g in m.groups()), name="custom")
    m = _NAMED_PARAMS.match(text)
    if m:
        return HalfSplitRecurrence(*(int(g) for g in m.groups()[1:]), name=m.group(1))
    raise UsageError(f"bad recurrence spec {text!r}")


def parse_range(text: str) -> tuple[int, int]:
    """``n`` or inclusive ``a..b``."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise UsageError(f"bad range {text!r}") from None
    if lo < 0 or hi < lo:
        raise UsageError(f"bad range {text!r}")
    return lo, hi


def _int(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"expected an integer, got {text!r}") from None


def _bound(text: str) -> int | None:
    if text.lower() == "none":
        return None
    return int(text)


class Session:
    """Resolved recurrence, memo table and cache bookkeeping for one invocation."""

    def __init__(self, args: argparse.Namespace, operands: list[str]):
        rec_text = args.recurrence
        if rec_text is None:
            if not operands:
                raise UsageError("missing recurrence (T, P, or b0,b1,b2,c)")
            rec_text, operands = operands[0], operands[1:]
        self.recurrence = parse_recurrence(rec_text)
        self.operands = operands
        self.cache_path = Path(args.cache) if args.cache else None
        if self.cache_path is not None and self.cache_path.exists():
            self.memo = cachefile.load_cache(self.cache_path, self.recurrence, args.max_value)
        else:
            self.memo = MemoTable(self.recurrence, args.max_value)
        self._loaded_len = len(self.memo) if self.cache_path and self.cache_path.exists() else -1

    def take(self, count: int, what: str) -> list[str]:
        if len(self.operands) != count:
            raise UsageError(f"expected {what}")
        return self.operands

    def flush(self) -> None:
        if self.cache_path is not None and len(self.memo) != self._loaded_len:
            cachefile.save_cache(self.memo, self.cache_path)

    def base_params(self) -> dict:
        return {
            "recurrence": self.recurrence.spec_string(),
            "family_status": self.recurrence.family_status,
        }


def cmd_eval(args, s: Session) -> tuple[OutputRecord, int]:
    lo, hi = parse_range(s.take(1, "one N or A..B")[0])
    s.memo.extend_to(hi)
    values = [s.memo[n] for n in range(lo, hi + 1)]
    name = s.recurrence.name
    rows = [{"n": n, "value": v} for n, v in zip(range(lo, hi + 1), values)]
    text = [f"{name}({n}) = {v}" for n, v in zip(range(lo, hi + 1), values)]
    if hi > lo:
        text.append(",".join(map(str, values)))
    rec = OutputRecord("eval", {**s.base_params(), "range": [lo, hi]},
                       {"values": rows}, rows, text)
    return rec, EXIT_OK


def cmd_verify(args, s: Session) -> tuple[OutputRecord, int]:
    s.take(0, "no positional operands besides the recurrence")
    rep = verify_range(s.recurrence, s.memo, args.max, Mode(args.mode), jobs=args.jobs,
                       cap=args.cap)
    violations = [{"n": v.n, "i": v.i, "rhs": v.rhs, "fn": v.fn, "kind": v.kind.value}
                  for v in rep.violations]
    specials = [{"n": n, "i": i} for n, i in rep.special_equalities]
    result = {
        "passed": rep.passed,
        "n_range": list(rep.n_range),
        "violation_count": rep.violation_count,
        "violations": violations,
        "special_equality_count": rep.special_equality_count,
        "special_equalities": specials,
        "truncated": rep.truncated,
    }
    rows = ([{"record": "violation", **v} for v in violations]
            + [{"record": "special_equality", "n": d["n"], "i": d["i"]} for d in specials])
    rows.insert(0, {"record": "summary", "n": args.max, "passed": rep.passed,
                    "violation_count": rep.violation_count,
                    "special_equality_count": rep.special_equality_count})
    status = "PASS" if rep.passed else "FAIL"
    text = [
        f"{status}: {s.recurrence.spec_string()} mode={rep.mode.value} n=1..{args.max}",
        f"violations: {rep.violation_count}",
        f"off-midpoint equalities: {rep.special_equality_count}",
        f"elapsed: {rep.elapsed:.3f}s",
    ]
    text += [f"  {v['kind']} at n={v['n']} i={v['i']}: rhs={v['rhs']} F(n)={v['fn']}"
             for v in violations[:20]]
    if s.recurrence.family_status != "builtin":
        text.append(f"note: {s.recurrence.family_status}")
    params = {**s.base_params(), "max": args.max, "mode": rep.mode.value, "cap": args.cap}
    return OutputRecord("verify", params, result, rows, text), (EXIT_OK if rep.passed else EXIT_FAIL)


def cmd_equality(args, s: Session) -> tuple[OutputRecord, int]:
    lo, hi = parse_range(s.take(1, "one N or A..B")[0])
    if lo < 1:
        raise UsageError("equality sets need n >= 1")
    entries, text = [], []
    for n in range(lo, hi + 1):
        eq = equality_set(s.recurrence, s.memo, n)
        mids = midpoint_set(n)
        fn = s.memo[n]
        entry = {"n": n, "equality_set": sorted(eq), "midpoint_set": sorted(mids),
                 "off_midpoint": sorted(eq - mids), "value": fn, "special": eq > mids}
        entries.append(entry)
        text.append(f"n={n}: equality {fmt_set(eq)} midpoint {fmt_set(mids)} rhs {fn}"
                    + ("  [special]" if entry["special"] else ""))
    rec = OutputRecord("equality", {**s.base_params(), "range": [lo, hi]},
                       {"entries": entries}, entries, text)
    return rec, EXIT_OK


def cmd_census(args, s: Session) -> tuple[OutputRecord, int]:
    n_text, i_text = s.take(2, "N I")
    n, i = _int(n_text), _int(i_text)
    c = census(s.recurrence, s.memo, n, i)
    split = split_value(s.recurrence, s.memo, n, i)
    cols = [{"column": idx, "k": col.k, "j": col.j, "relation": col.relation.value,
             "unlucky": col.unlucky, "degenerate": col.degenerate, "special": col.special}
            for idx, col in enumerate(c.columns, 1)]
    result = {
        "parity_case": c.parity_case.value,
        "half_parity": c.half_parity,
        "columns": cols,
        "counts": c.counts(),
        "rhs": split.rhs,
        "value": split.fn,
        "relation": split.relation.value,
        "matrix": [list(r) for r in build_matrix(n, i).rows],
        "rearranged": [list(r) for r in rearranged_matrix(n, i)],
    }
    if n >= 7 and 4 <= i <= n - 3:
        q = verify_quartet_identity(s.recurrence, s.memo, n, i)
        result["quartet"] = {"lhs_gap": q.lhs_gap, "column_gaps": list(q.column_gaps),
                             "holds": q.holds}
    text = [f"census n={n} i={i} ({c.parity_case.value}, half {c.half_parity}): "
            f"rhs {split.rhs} vs F(n) {split.fn} [{split.relation.value}]"]
    for col in cols:
        flags = [f for f in ("unlucky", "degenerate", "special") if col[f]]
        text.append(f"  column {col['column']}: k={col['k']} j={col['j']} {col['relation']}"
                    + (" " + ",".join(flags) if flags else ""))
    text.append("  counts: " + " ".join(f"{k}={v}" for k, v in c.counts().items()))
    if "quartet" in result:
        q = result["quartet"]
        text.append(f"  quartet: gap {q['lhs_gap']} = "
                    + "+".join(map(str, q["column_gaps"])) + f" holds={q['holds']}")
    rec = OutputRecord("census", {**s.base_params(), "n": n, "i": i}, result, cols, text)
    return rec, EXIT_OK


def _groups_payload(groups, n_max):
    out = []
    for g in groups:
        out.append({"index": g.index, "first": g.first, "last": g.last,
                    "truncated": g.last == n_max})
    return out


def _recurrence_check(groups, n_max):
    complete = [g for g in groups if g.last != n_max]
    if len(complete) < 2:
        return None
    ok, residuals = check_group_recurrence(complete)
    return {"holds": ok,
            "residuals": [{"index": nu, "first": a, "last": b} for nu, a, b in residuals]}


def _extrapolation_note(n_max):
    return f"verified by brute force for n <= {n_max}; unverified beyond"


def cmd_special(args, s: Session) -> tuple[OutputRecord, int]:
    s.take(0, "no positional operands besides the recurrence")
    specials = special_set(s.recurrence, s.memo, args.max, jobs=args.jobs)
    groups = detect_groups(specials)
    result = {"specials": list(specials), "groups": _groups_payload(groups, args.max),
              "group_recurrence": _recurrence_check(groups, args.max),
              "note": _extrapolation_note(args.max)}
    rows = [{"n": n} for n in specials]
    text = [f"{len(specials)} special numbers up to {args.max}"]
    text += [f"  group {g.index}: {g.first}..{g.last}"
             + (" (may be truncated)" if g.last == args.max else "") for g in groups]
    if result["group_recurrence"] is not None:
        text.append(f"  boundary recurrence holds: {result['group_recurrence']['holds']}")
    text.append(result["note"])
    rec = OutputRecord("special", {**s.base_params(), "max": args.max}, result, rows, text)
    return rec, EXIT_OK


def cmd_groups(args, s: Session) -> tuple[OutputRecord, int]:
    s.take(0, "no positional operands besides the recurrence")
    groups = detect_groups(special_set(s.recurrence, s.memo, args.max, jobs=args.jobs))
    payload, rows, text = [], [], []
    for g, meta in zip(groups, _groups_payload(groups, args.max)):
        profiles = spread_profile(s.recurrence, s.memo, g)
        widths = [p.width for p in profiles]
        meta["profiles"] = [{"n": p.n, "width": p.width, "offsets": list(p.offsets),
                             "value": p.value, "contiguous": p.contiguous} for p in profiles]
        meta["unimodal"] = rises_then_falls(widths)
        payload.append(meta)
        rows += [{"group": g.index, **prof} for prof in meta["profiles"]]
        text.append(f"group {g.index}: {g.first}..{g.last} widths {widths}"
                    + ("" if meta["unimodal"] else " (not unimodal)")
                    + (" (may be truncated)" if meta["truncated"] else ""))
    check = _recurrence_check(groups, args.max)
    if check is not None:
        text.append(f"boundary recurrence holds: {check['holds']}")
    text.append(_extrapolation_note(args.max))
    result = {"groups": payload, "group_recurrence": check, "note": _extrapolation_note(args.max)}
    return OutputRecord("groups", {**s.base_params(), "max": args.max}, result, rows, text), EXIT_OK


def cmd_parents(args) -> tuple[OutputRecord, int]:
    if len(args.operands) != 1:
        raise UsageError("expected K")
    k = _int(args.operands[0])
    lo, hi = parse_range(args.range) if args.range else (3, 2 * k + 2)
    found = parents_containing(k, lo, hi)
    rows = [{"n": n, "children": list(children(n))} for n in found]
    text = [f"n = {r['n']}: " + ",".join(map(str, r["children"])) for r in rows]
    rec = OutputRecord("parents", {"k": k, "range": [lo, hi]}, {"parents": rows}, rows, text)
    return rec, EXIT_OK


def cmd_cache(args, s: Session) -> tuple[OutputRecord, int]:
    if s.cache_path is None:
        raise UsageError("cache needs --cache FILE")
    action = s.take(1, "save or check")[0]
    if action == "save":
        if args.max is None:
            raise UsageError("cache save needs --max N")
        s.memo.extend_to(args.max)
        cachefile.save_cache(s.memo, s.cache_path)
        s._loaded_len = len(s.memo)
    elif action == "check":
        if not s.cache_path.exists():
            raise UsageError(f"{s.cache_path} does not exist")
    else:
        raise UsageError(f"unknown cache action {action!r}")
    result = {"max_n": s.memo.max_n, "valid": True}
    text = [f"{s.cache_path}: {s.recurrence.spec_string()} F(0..{s.memo.max_n}) valid"]
    rec = OutputRecord("cache", {**s.base_params(), "action": action}, result, [result], text)
    return rec, EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--recurrence", help="T, P, zero, b0,b1,b2,c or name(b0,b1,b2,c)")
    common.add_argument("--format", choices=FORMATS, default="text")
    common.add_argument("--out", help="write output to FILE instead of stdout")
    common.add_argument("--cache", help="memo cache file, loaded if present and updated")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--max-value", type=_bound, default=INT64_MAX,
                        help="overflow bound for values, or 'none' (default 2**63-1)")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="halfsplit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, help_text, operands_help, **extra):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("operands", nargs="*", metavar="ARG", help=operands_help)
        for flag, kw in extra.items():
            p.add_argument(flag, **kw)
        return p

    add("eval", "evaluate F(n) over a range", "[REC] N|A..B")
    add("verify", "exhaustive decomposition check", "[REC]",
        **{"--max": dict(type=int, required=True),
           "--mode": dict(choices=[m.value for m in Mode], default="iff"),
           "--cap": dict(type=int, default=1000, help="max listed entries per list")})
    add("equality", "equality set of splits", "[REC] N|A..B")
    add("census", "column census for (n, i)", "[REC] N I")
    add("special", "special numbers up to --max", "[REC]", **{"--max": dict(type=int, required=True)})
    add("groups", "special-number groups and spread profiles", "[REC]",
        **{"--max": dict(type=int, required=True)})
    add("parents", "n whose children contain K", "K", **{"--range": dict(default=None)})
    add("cache", "save or check a memo cache file", "[REC] save|check",
        **{"--max": dict(type=int, default=None)})
    return parser


_COMMANDS = {
    "eval": cmd_eval, "verify": cmd_verify, "equality": cmd_equality, "census": cmd_census,
    "special": cmd_special, "groups": cmd_groups, "cache": cmd_cache,
}


def _cache_recurrence_from_file(args) -> None:
    # `cache check --cache FILE` may omit the recurrence: take it from the header
    if args.command == "cache" and args.recurrence is None and args.cache \
            and args.operands == ["check"] and Path(args.cache).exists():
        head = Path(args.cache).read_bytes().split(b"\n", 1)[0].decode("ascii", "replace").split()
        if len(head) == 7:
            args.recurrence = "{}({},{},{},{})".format(*head[2:])


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.jobs < 1:
            raise UsageError("--jobs must be >= 1")
        if getattr(args, "max", None) is not None and args.max < 1:
            raise UsageError("--max must be >= 1")
        if args.command == "parents":
            record, code = cmd_parents(args)
        else:
            _cache_recurrence_from_file(args)
            session = Session(args, list(args.operands))
            record, code = _COMMANDS[args.command](args, session)
            session.flush()
    except InequalityViolation as exc:
        print(f"halfsplit: inequality violated: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except RecurrenceOverflowError as exc:
        print(f"halfsplit: overflow: {exc}", file=sys.stderr)
        return EXIT_ARITH
    except (UsageError, ValueError, TypeError) as exc:
        print(f"halfsplit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    rendered = record.render(args.format)
    if args.out:
        Path(args.out).write_text(rendered, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(rendered)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
