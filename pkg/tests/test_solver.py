import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracle import brute_p_positions, oracle_grundy, parity_contract
from twystoff.beatty import is_wythoff_p
from twystoff.position import FROZEN, HEAVY, STANDARD, canonical_key, options
from twystoff.solver import (
    FormatError,
    MemoTable,
    Outcome,
    SearchCapExceeded,
    Solver,
    load_memo,
    mex,
    save_memo,
)

P, N = Outcome.P, Outcome.N


@pytest.fixture(scope="module")
def solver():
    return Solver()


@pytest.fixture(scope="module")
def brute():
    return brute_p_positions(4, 12)


def test_mex():
    assert mex([]) == 0
    assert mex([0, 1, 3]) == 2
    assert mex([1, 2]) == 0


@pytest.mark.parametrize(
    "pos, rules, expected",
    [
        ((), STANDARD, P),
        ((1, 2), STANDARD, P),
        ((1, 2, 1), STANDARD, N),
        ((1, 3, 1), STANDARD, N),
        ((2, 3, 2), STANDARD, N),
        ((1, 3, 2), STANDARD, P),
        ((3, 0, 3), FROZEN, P),
        ((3, 0, 3), STANDARD, N),
    ],
)
def test_outcome_examples(solver, pos, rules, expected):
    assert solver.outcome(pos, rules) is expected


def test_equal_triples_are_p(solver):
    assert all(solver.is_p((a, a, a)) for a in range(26))


def test_grundy_examples(solver):
    assert solver.grundy(()) == 0
    assert [solver.grundy((a,)) for a in range(10)] == list(range(10))
    assert solver.grundy((1, 2)) == 0
    assert solver.grundy((2, 2)) == 1  # frozen from the recursive oracle


def test_agrees_with_bottom_up_oracle(solver, brute):
    for pos, is_p in brute.items():
        assert solver.is_p(pos) == is_p, pos


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(1, 5), max_size=4).map(tuple))
def test_grundy_matches_oracle_and_outcome(pos):
    s = Solver()
    g = s.grundy(pos)
    assert g == oracle_grundy(pos)
    assert (g == 0) == (s.outcome(pos) is P)


def test_grundy_zero_iff_p_small_totals(solver, brute):
    for pos in brute:
        if sum(pos) <= 10:
            assert (solver.grundy(pos) == 0) == solver.is_p(pos)


@given(st.lists(st.integers(1, 6), max_size=4).map(tuple))
def test_reversal_invariance(pos):
    s = Solver()
    assert s.outcome(pos) is s.outcome(pos[::-1])
    assert s.grundy(pos) == s.grundy(pos[::-1])


def test_definitional_soundness_of_cache(solver):
    for a in range(8):
        for b in range(1, 8):
            solver.unique_c(a, b)
    rng = random.Random(7)
    cached = list(solver.memo.outcomes[STANDARD].items())
    for key, out in rng.sample(cached, min(300, len(cached))):
        kids = [solver.outcome(o) for o in options(key)]
        assert (out is P) == all(k is N for k in kids)


def test_unique_c_examples(solver):
    assert [solver.unique_c(a, 7) for a in (0, 4, 5, 8)] == [4, 0, 8, 5]
    assert solver.unique_c(2, 3) == 1
    assert solver.unique_c(1, 2) == 0
    assert all(solver.unique_c(1, b) == 1 for b in range(4, 30))


def test_unique_c_is_unique_and_bounded(solver):
    for a in range(1, 16):
        for b in range(1, 16):
            c = solver.unique_c(a, b)
            assert c < a + b
            top = a + b + min(a, b) + 1
            assert [x for x in range(top + 1) if solver.is_p((a, b, x))] == [c]


def test_unique_c_zero_column_is_wythoff(solver):
    for b in range(1, 30):
        c = solver.unique_c(0, b)
        assert is_wythoff_p(b, c)
        assert c <= 2 * b


def test_unique_c_frozen_and_heavy(solver):
    for a in range(1, 10):
        for b in range(1, 10):
            c = solver.unique_c(a, b, FROZEN)
            assert c < a + b
            assert solver.unique_c(a, b, HEAVY) == solver.unique_c(a, b)


def test_unique_c_rejects_empty_middle(solver):
    with pytest.raises(ValueError):
        solver.unique_c(3, 0)


def test_unique_last_for_grundy_examples(solver):
    assert solver.unique_last_for_grundy((1,), 0) == 2
    assert solver.unique_last_for_grundy((7,), 0) == 4
    assert solver.unique_last_for_grundy((1,), 1) == 0  # frozen from the recursive oracle
    assert solver.unique_last_for_grundy((2, 3), 0) == 1


def test_unique_last_for_grundy_against_oracle_sweep():
    s = Solver()
    for prefix in [(1,), (3,), (2, 2), (1, 4), (4, 1, 2)]:
        for g in range(5):
            x = s.unique_last_for_grundy(prefix, g)
            hits = [y for y in range(3 * (sum(prefix) + g) + 6) if oracle_grundy(parity_contract(prefix + (y,))) == g]
            assert hits == [x]


def test_unique_last_for_grundy_validates_prefix(solver):
    with pytest.raises(ValueError):
        solver.unique_last_for_grundy((), 0)
    with pytest.raises(ValueError):
        solver.unique_last_for_grundy((1, 0), 0)


def test_search_cap_exceeded(monkeypatch):
    import twystoff.solver as mod

    s = Solver()
    monkeypatch.setattr(mod, "MAX_SEARCH_CAP", 4)
    monkeypatch.setattr(s, "grundy", lambda pos, rules=STANDARD: 99)
    with pytest.raises(SearchCapExceeded):
        s.unique_last_for_grundy((1,), 0)


def test_deep_position_does_not_recurse():
    s = Solver()
    pos = (1, 1) * 400
    assert s.outcome(pos) is (P if sum(pos) % 3 == 0 else N)


def test_memo_roundtrip_empty(tmp_path):
    path = tmp_path / "m.txt"
    save_memo(MemoTable(), path)
    assert load_memo(path) == MemoTable()


def test_memo_roundtrip_bit_exact(tmp_path):
    t = MemoTable()
    t.insert(STANDARD, (1, 2), P, 0)
    s = Solver(t)
    s.grundy((3, 4, 2))
    s.outcome((2, 5, 1), FROZEN)
    first, second = tmp_path / "a.txt", tmp_path / "b.txt"
    save_memo(t, first)
    loaded = load_memo(first)
    assert loaded == t
    save_memo(loaded, second)
    assert first.read_bytes() == second.read_bytes()
    assert "standard;1,2;P;0" in first.read_text().splitlines()


def test_memo_format_errors(tmp_path):
    t = MemoTable()
    Solver(t).unique_c(3, 4)
    path = tmp_path / "m.txt"
    save_memo(t, path)
    text = path.read_text()
    bad = tmp_path / "bad.txt"
    bad.write_text(text[: len(text) // 2])
    with pytest.raises(FormatError):
        load_memo(bad)
    bad.write_text("\n".join(text.splitlines()[:-2]) + "\n")
    with pytest.raises(FormatError):
        load_memo(bad)
    bad.write_text(text.replace("TWYSTOFF-MEMO v1", "TWYSTOFF-MEMO v2"))
    with pytest.raises(FormatError):
        load_memo(bad)
    bad.write_text("TWYSTOFF-MEMO v1\nstandard;1,2;P;3\nEND 1\n")
    with pytest.raises(FormatError):
        load_memo(bad)
    with pytest.raises(OSError):
        load_memo(tmp_path / "missing.txt")


def test_insert_if_absent():
    t = MemoTable()
    assert t.insert(STANDARD, (1, 2), P) is P
    assert t.insert(STANDARD, (1, 2), N) is P
    assert len(t) == 1


def test_concurrent_workers_share_memo():
    from concurrent.futures import ThreadPoolExecutor

    t = MemoTable()
    s = Solver(t)
    cells = [(a, b) for a in range(12) for b in range(1, 12)]
    with ThreadPoolExecutor(4) as pool:
        got = list(pool.map(lambda ab: s.unique_c(*ab), cells))
    fresh = Solver()
    assert got == [fresh.unique_c(a, b) for a, b in cells]
