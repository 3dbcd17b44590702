import pytest

from halfsplit import P, T, MemoTable, RecurrenceOverflowError, make_recurrence
from halfsplit.cache import CacheError, dumps, load_cache, loads, save_cache


def test_format(memo_t):
    m = MemoTable(T)
    m.extend_to(4)
    assert dumps(m) == "halfsplit-cache v1 T 0 0 1 1\n0,0\n1,0\n2,1\n3,3\n4,6\n"


@pytest.mark.parametrize("fixture", ["memo_t", "memo_p"])
def test_round_trip_4096(tmp_path, request, fixture):
    memo = request.getfixturevalue(fixture)
    small = MemoTable(memo.recurrence)
    small.extend_to(4096)
    path = tmp_path / "f.cache"
    save_cache(small, path)
    back = load_cache(path, memo.recurrence)
    assert back.values == small.values
    assert back.recurrence == memo.recurrence
    raw = path.read_bytes()
    assert raw.endswith(b"\n") and b"\r" not in raw
    assert raw.decode("ascii").count("\n") == 4098


def test_load_without_expected_recurrence():
    m = MemoTable(P)
    m.extend_to(20)
    assert loads(dumps(m)).recurrence == P


def test_wrong_recurrence_rejected():
    m = MemoTable(P)
    m.extend_to(20)
    with pytest.raises(CacheError):
        loads(dumps(m), T)


@pytest.mark.parametrize("mutate", [
    lambda s: s.replace("\n5,9\n", "\n5,10\n"),        # wrong value
    lambda s: s.replace("\n5,9\n", "\n"),              # gap
    lambda s: s.replace("v1", "v2"),                   # version
    lambda s: s.replace("halfsplit-cache", "cache"),   # magic
    lambda s: s.replace("\n3,3\n", "\n3;3\n"),         # syntax
    lambda s: "",
    lambda s: s.split("\n", 1)[0] + "\n0,0\n",         # too short
])
def test_corrupt_cache_is_hard_error(mutate):
    m = MemoTable(T)
    m.extend_to(10)
    with pytest.raises(CacheError):
        loads(mutate(dumps(m)), T)


def test_bound_applies_on_load():
    rec = make_recurrence(0, 0, 0, 2**62, "big")
    m = MemoTable(rec)
    m.extend_to(5)
    with pytest.raises(RecurrenceOverflowError):
        loads(dumps(m), rec, bound=2**63 - 1)
