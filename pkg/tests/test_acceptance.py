"""One test per acceptance criterion, each against its time limit.

Every criterion is checked as literally stated. Where the stated claim is
false the test stays red and its message names a concrete counterexample.
"""

import time
from contextlib import contextmanager

from conftest import ACCEPTANCE
from oracle import brute_p_positions, oracle_grundy, parity_contract, positions_upto
from twystoff.analysis import verify
from twystoff.beatty import (
    ceil_over_phi,
    ceil_phi2,
    floor_phi,
    floor_phi2,
    wythoff_involution,
)
from twystoff.infinite import INF, SIX_INF_P_OPTION, InfiniteSolver, verify_infinite
from twystoff.position import options
from twystoff.solver import MemoTable, Outcome, Solver, load_memo, save_memo


@contextmanager
def criterion(num, title, limit):
    """Time the body; record and assert both correctness and the limit."""
    state = {"failures": []}
    start = time.perf_counter()
    try:
        yield state["failures"]
    finally:
        elapsed = time.perf_counter() - start
        fails = state["failures"]
        ok = not fails and elapsed < limit
        ACCEPTANCE.append((num, title, ok, elapsed, limit))
        print(f"criterion {num}: {'PASS' if ok else 'FAIL'} in {elapsed:.2f}s (limit {limit}s)")
    assert not fails, f"criterion {num}: {fails[:10]}"
    assert elapsed < limit, f"criterion {num}: {elapsed:.1f}s exceeds {limit}s"


def _report_failures(fails, rep):
    if not rep.passed:
        fails.extend((rep.suite, cx) for cx in rep.counterexamples[:10])


def test_01_option_set_fidelity():
    expected = {(3, 2, 2), (2, 2, 2), (1, 2, 2), (2, 2), (4, 2, 1), (4, 2), (4, 1, 1), (4,), (3, 1, 2)}
    with criterion(1, "option set of (4,2,2)", 1) as fails:
        got = options((4, 2, 2))
        if got != expected:
            fails.append(got ^ expected)


def test_02_oracle_equivalence():
    with criterion(2, "brute-force oracle agrees, length <= 4, total <= 14", 60) as fails:
        brute = brute_p_positions(4, 14)
        s = Solver()
        for pos, is_p in brute.items():
            if s.is_p(pos) != is_p:
                fails.append(pos)


def test_03_equal_and_near_palindromes():
    with criterion(3, "(a,a,a) P; (a,a+1,a) P for a >= 3, N for a in {1,2}", 30) as fails:
        s = Solver()
        fails += [(a, a, a) for a in range(26) if not s.is_p((a, a, a))]
        fails += [(a, a + 1, a) for a in range(3, 26) if not s.is_p((a, a + 1, a))]
        fails += [(a, a + 1, a) for a in (1, 2) if s.is_p((a, a + 1, a))]


def test_04_unique_c_and_bounds():
    with criterion(4, "unique c <= a+b+min(a,b)+1, and c < a+b for a > 0", 300) as fails:
        s = Solver()
        for a in range(41):
            for b in range(1, 41):
                top = a + b + min(a, b) + 1
                hits = [c for c in range(top + 1) if s.is_p((a, b, c))]
                if len(hits) != 1:
                    fails.append(("no unique c within bound", (a, b), hits))
                elif a > 0 and hits[0] >= a + b:
                    fails.append(("c >= a+b", (a, b, hits[0])))


def test_05_row_seven():
    with criterion(5, "row 7 exchanges 0<->4 and 5<->8", 10) as fails:
        s = Solver()
        got = {a: s.unique_c(a, 7) for a in (0, 4, 5, 8)}
        if got != {0: 4, 4: 0, 5: 8, 8: 5}:
            fails.append(got)


def test_06_a002251_column():
    with criterion(6, "zero column is the Wythoff involution; Beatty partition", 60) as fails:
        s = Solver()
        fails += [b for b in range(1, 61) if s.unique_c(0, b) != wythoff_involution(b)]
        limit = 10**5
        lower = [floor_phi(n) for n in range(1, limit)]
        upper = [floor_phi2(n) for n in range(1, limit)]
        covered = sorted(v for v in lower + upper if v <= limit)
        if covered != list(range(1, limit + 1)):
            fails.append("lower and upper Wythoff sequences do not partition")
        fails += [b for b in range(limit + 1) if wythoff_involution(wythoff_involution(b)) != b][:5]


def test_07_palindrome_bands():
    with criterion(7, "palindrome bands and non-palindrome range", 300) as fails:
        s = Solver()
        for a in range(1, 26):
            hi = ceil_phi2(a)
            fails += [("upper band", (a, b, a)) for b in range(hi + 1, hi + 26) if not s.is_p((a, b, a))]
            fails += [("lower band", (a, b, a)) for b in range(1, ceil_over_phi(a)) if not s.is_p((a, b, a))]
        rep = verify("palindrome_bands", 25, s, nonpal_bound=40)
        _report_failures(fails, rep)


def test_08_frozen():
    with criterion(8, "frozen outcomes differ only on (a,0,a); frozen c < a+b", 120) as fails:
        s = Solver()
        _report_failures(fails, verify("frozen_equivalence", 30, s))
        _report_failures(fails, verify("frozen_inequality", 30, s))


def test_09_heavy_handed():
    with criterion(9, "heavy-handed P sets coincide or a counterexample is listed", 120) as fails:
        rep = verify("heavy_handed_conjecture", 30, Solver())
        if not rep.passed and not rep.counterexamples:
            fails.append("mismatch reported without a counterexample")
        print(rep)


def test_10_four_stack():
    with criterion(10, "four-stack symmetric, (1,a,b,1) and smallest P positions", 120) as fails:
        s = Solver()
        _report_failures(fails, verify("four_stack_symmetric", 15, s))
        _report_failures(fails, verify("four_stack_1ab1", 15, s))


def test_11_s_mod3():
    with criterion(11, "S positions are P iff the sum is 0 mod 3; S closed", 60) as fails:
        _report_failures(fails, verify("s_mod3", 10, Solver()))


def test_12_grundy_uniqueness():
    with criterion(12, "unique last stack for each Grundy value", 60) as fails:
        s = Solver()
        prefixes = [(a,) for a in range(1, 11)] + [(a, b) for a in range(1, 11) for b in range(1, 11)]
        for p in prefixes:
            window = 2 * (sum(p) + 8) + 4
            sweep = [oracle_grundy(parity_contract(p + (y,))) for y in range(window + 1)]
            for g in range(9):
                x = s.unique_last_for_grundy(p, g)
                hits = [y for y, v in enumerate(sweep) if v == g]
                if hits != [x]:
                    fails.append((p, g, x, hits))


def test_13_infinite_suite():
    with criterion(13, "infinite-stack theorems and the decide table", 300) as fails:
        inf = InfiniteSolver(Solver())
        for suite, bound in (
            ("outer_infinities", 12),
            ("outer_corollary", 12),
            ("triple_infinity", 12),
            ("six_infinities", 10),
        ):
            _report_failures(fails, verify_infinite(suite, bound, inf))
        if inf.p_options((3, 2, INF, 1)) != [(2, 2, INF, 1)]:
            fails.append(("P options of (3,2,inf,1)", inf.p_options((3, 2, INF, 1))))
        six = inf.decide((INF,) * 6)
        if six.outcome != "N" or six.certificate != SIX_INF_P_OPTION:
            fails.append(("inf^6", six))
        table = {k: inf.decide((INF,) * k).outcome for k in (3, 4, 5, 6)}
        if table != {3: "P", 4: "N", 5: "N", 6: "N"}:
            fails.append(table)


def test_14_mirror():
    with criterion(14, "(gamma, inf, reverse gamma) is P for total <= 10", 60) as fails:
        inf = InfiniteSolver(Solver())
        for g in positions_upto(10, 10):
            if g and inf.diminished_sum_outcome(g, g[::-1]) is not Outcome.P:
                fails.append(g)


def _criterion_four_grid(s):
    for a in range(41):
        for b in range(1, 41):
            s.unique_c(a, b)


def test_15_persistence(tmp_path):
    with criterion(15, "memo round-trip is bit-exact; warm start beats cold", 60) as fails:
        t0 = time.perf_counter()
        cold = Solver(MemoTable())
        _criterion_four_grid(cold)
        cold_time = time.perf_counter() - t0
        first, second = tmp_path / "memo1.txt", tmp_path / "memo2.txt"
        save_memo(cold.memo, first)
        t0 = time.perf_counter()
        warm = Solver(load_memo(first))
        _criterion_four_grid(warm)
        warm_time = time.perf_counter() - t0
        if warm.memo != cold.memo:
            fails.append("reloaded table differs")
        save_memo(load_memo(first), second)
        if first.read_bytes() != second.read_bytes():
            fails.append("save/load/save is not bit-exact")
        if not warm_time < cold_time:
            fails.append(("warm not faster", warm_time, cold_time))
        print(f"cold {cold_time:.2f}s, warm (including load) {warm_time:.2f}s")
