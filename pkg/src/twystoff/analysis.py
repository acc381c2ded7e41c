"""Third-stack tables, the 1/2-position family S, and verification suites.

Every suite returns a :class:`VerificationReport`. Suites flagged as
conjectures report counterexamples as findings instead of failures.
"""

from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterator, Sequence

from .beatty import (
    ceil_over_phi,
    ceil_phi,
    ceil_phi2,
    floor_over_phi,
    is_lower_wythoff,
    is_upper_wythoff,
    is_wythoff_p,
    wythoff_involution,
)
from .position import FROZEN, HEAVY, STANDARD, Position, RuleSet, canonical_key, normalize, options
from .solver import Outcome, Solver, default_solver


class CellClass(str, Enum):
    PALINDROME = "palindrome"
    NON_PALINDROME = "nonpalindrome"
    WYTHOFF_PAIR = "wythoff"
    SUM_PAIR = "sumpair"


DEFAULT_PALETTE = {
    CellClass.PALINDROME: "#FFFFFF",
    CellClass.NON_PALINDROME: "#BBBBBB",
    CellClass.WYTHOFF_PAIR: "#4CAF50",
    CellClass.SUM_PAIR: "#FF9800",
}


def classify_cell(a: int, b: int, c: int) -> CellClass:
    if is_wythoff_p(a, b):
        return CellClass.WYTHOFF_PAIR
    if b >= a and is_wythoff_p(a, b - a):
        return CellClass.SUM_PAIR
    if c == a:
        return CellClass.PALINDROME
    return CellClass.NON_PALINDROME


@dataclass
class FTable:
    a_max: int
    b_max: int
    rules: RuleSet = STANDARD
    cells: dict[tuple[int, int], tuple[int, CellClass]] = field(default_factory=dict)

    def __getitem__(self, ab: tuple[int, int]) -> tuple[int, CellClass]:
        return self.cells[ab]

    def rows(self) -> Iterator[tuple[int, int, int, CellClass]]:
        for b in range(1, self.b_max + 1):
            for a in range(self.a_max + 1):
                c, cls = self.cells[a, b]
                yield a, b, c, cls

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["a", "b", "c", "class"])
        for a, b, c, cls in self.rows():
            w.writerow([a, b, c, cls.value])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, rules: RuleSet = STANDARD) -> FTable:
        reader = csv.DictReader(io.StringIO(text))
        if reader.fieldnames != ["a", "b", "c", "class"]:
            raise ValueError(f"unexpected CSV header {reader.fieldnames}")
        cells = {}
        for row in reader:
            cells[int(row["a"]), int(row["b"])] = (int(row["c"]), CellClass(row["class"]))
        a_max = max((a for a, _ in cells), default=0)
        b_max = max((b for _, b in cells), default=0)
        return cls(a_max, b_max, rules, cells)

    def to_text(self) -> str:
        """Rows are b (top = 1), columns are a; each entry is f(a, b)."""
        width = max(len(str(c)) for c, _ in self.cells.values()) if self.cells else 1
        lines = []
        for b in range(1, self.b_max + 1):
            vals = [str(self.cells[a, b][0]).rjust(width) for a in range(self.a_max + 1)]
            lines.append(f"{b:>4} | " + " ".join(vals))
        return "\n".join(lines) + "\n"

    def to_svg(self, cell: int = 18, palette: dict[CellClass, str] | None = None) -> str:
        colors = dict(DEFAULT_PALETTE)
        if palette:
            colors.update(palette)
        w = (self.a_max + 1) * cell
        h = self.b_max * cell
        out = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
            f'viewBox="0 0 {w} {h}" font-family="monospace" font-size="{cell * 0.5:.1f}">'
        ]
        for a, b, c, cls in self.rows():
            x, y = a * cell, (b - 1) * cell
            out.append(
                f'<rect x="{x}" y="{y}" width="{cell}" height="{cell}" '
                f'fill="{colors[cls]}" stroke="#888888" stroke-width="0.5"/>'
            )
            out.append(
                f'<text x="{x + cell / 2:.1f}" y="{y + cell * 0.68:.1f}" '
                f'text-anchor="middle">{c}</text>'
            )
        out.append("</svg>")
        return "\n".join(out) + "\n"


def build_f_table(a_max: int, b_max: int, rules: RuleSet = STANDARD, solver: Solver | None = None) -> FTable:
    """Tabulate ``f(a, b)``, the unique P-completing third stack."""
    if a_max < 0 or b_max < 1:
        raise ValueError("need a_max >= 0 and b_max >= 1")
    solver = solver or default_solver()
    rules = RuleSet.parse(rules)
    table = FTable(a_max, b_max, rules)
    for b in range(1, b_max + 1):
        for a in range(a_max + 1):
            c = solver.unique_c(a, b, rules)
            table.cells[a, b] = (c, classify_cell(a, b, c))
    return table


def is_in_s(pos: Sequence[int]) -> bool:
    """Entries in {1, 2} and every interior run of 1's has even length."""
    if any(v not in (1, 2) for v in pos):
        return False
    n = len(pos)
    i = 0
    while i < n:
        if pos[i] != 1:
            i += 1
            continue
        j = i
        while j < n and pos[j] == 1:
            j += 1
        if i > 0 and j < n and (j - i) % 2:
            return False
        i = j
    return True


def s_sum(pos: Sequence[int]) -> int:
    return sum(pos)


def s_positions(max_len: int) -> Iterator[Position]:
    yield ()
    for n in range(1, max_len + 1):
        for p in itertools.product((1, 2), repeat=n):
            if is_in_s(p):
                yield p


@dataclass
class VerificationReport:
    suite: str
    bounds: dict
    passed: bool
    counterexamples: list = field(default_factory=list)
    checked: int = 0
    conjecture: bool = False
    notes: list[str] = field(default_factory=list)

    @property
    def status(self) -> str:
        if self.passed:
            return "PASS"
        return "FINDING" if self.conjecture else "FAIL"

    def __str__(self) -> str:
        bounds = ", ".join(f"{k}={v}" for k, v in self.bounds.items())
        lines = [f"{self.suite} [{bounds}]: {self.status} ({self.checked} checks)"]
        for note in self.notes:
            lines.append(f"  note: {note}")
        for cx in self.counterexamples[:20]:
            lines.append(f"  counterexample: {cx}")
        if len(self.counterexamples) > 20:
            lines.append(f"  ... {len(self.counterexamples) - 20} more")
        return "\n".join(lines)


class _Check:
    """Accumulates checks for one suite."""

    def __init__(self, suite: str, bounds: dict, conjecture: bool = False) -> None:
        self.report = VerificationReport(suite, bounds, True, conjecture=conjecture)

    def __call__(self, ok: bool, witness) -> None:
        self.report.checked += 1
        if not ok:
            self.report.counterexamples.append(witness)

    def note(self, text: str) -> None:
        self.report.notes.append(text)

    def done(self) -> VerificationReport:
        self.report.passed = not self.report.counterexamples
        return self.report


def _suite_equal_triples(s: Solver, bound: int) -> VerificationReport:
    chk = _Check("equal_triples", {"bound": bound})
    for a in range(bound + 1):
        chk(s.is_p((a, a, a)), (a, a, a))
    return chk.done()


def _suite_near_palindromes(s: Solver, bound: int) -> VerificationReport:
    chk = _Check("near_palindromes", {"bound": bound})
    for a in range(3, bound + 1):
        chk(s.is_p((a, a + 1, a)), (a, a + 1, a))
    for a in (0, 1, 2):
        chk(not s.is_p((a, a + 1, a)), (a, a + 1, a))
    return chk.done()


def _suite_unique_c_bounds(s: Solver, bound: int) -> VerificationReport:
    chk = _Check("unique_c_bounds", {"bound": bound})
    chk.note("existence bound a+b+min(a,b)+1 applies for a > 0; a = 0 is Wythoff, window 2b")
    for a in range(bound + 1):
        for b in range(1, bound + 1):
            top = a + b + min(a, b) + 1 if a > 0 else 2 * b
            hits = [c for c in range(top + 1) if s.is_p((a, b, c))]
            chk(len(hits) == 1, ("P count", (a, b), hits))
            if a > 0 and hits:
                chk(hits[0] < a + b, ("c >= a+b", (a, b, hits[0])))
    return chk.done()


def _suite_nonpalindrome_order(s: Solver, bound: int) -> VerificationReport:
    chk = _Check("nonpalindrome_order", {"bound": bound})
    for a in range(bound + 1):
        for b in range(1, bound + 1):
            c = s.unique_c(a, b)
            if c != a and a < c:
                chk(a < b, (a, b, c))
    return chk.done()


def _suite_wythoff_triples_n(s: Solver, bound: int) -> VerificationReport:
    chk = _Check("wythoff_triples_N", {"bound": bound})
    for a in range(1, bound + 1):
        t = (a, ceil_phi(a), a)
        chk(not s.is_p(t), t)
        if is_lower_wythoff(a):
            t = (a, ceil_phi2(a), a)
            chk(not s.is_p(t), t)
        if is_upper_wythoff(a):
            t = (a, floor_over_phi(a), a)
            chk(not s.is_p(t), t)
    return chk.done()


def _suite_wythoff_triples_n_corrected(s: Solver, bound: int) -> VerificationReport:
    """N palindromes built from Wythoff pairs, with the ceil/floor fixed.

    For a lower number ``a``: ``(a, ceil(phi a), a)`` and ``(a, ceil(phi^2 a), a)``.
    For an upper number ``a``: ``(a, floor(phi a), a)`` and ``(a, floor(a/phi), a)``.
    """
    chk = _Check("wythoff_triples_N_corrected", {"bound": bound})
    for a in range(1, bound + 1):
        if is_lower_wythoff(a):
            mids = [ceil_phi(a), ceil_phi2(a)]
        else:
            mids = [ceil_phi(a) - 1, floor_over_phi(a)]
        for b in mids:
            chk(not s.is_p((a, b, a)), (a, b, a))
    return chk.done()


def _nonpalindrome_rows(s: Solver, a: int, margin: int) -> list[int]:
    """Every b (up to the upper band plus ``margin``) where f(a, b) != a."""
    top = ceil_phi2(a) + margin
    return [b for b in range(1, top + 1) if not s.is_p((a, b, a))]


def _suite_palindrome_bands(s: Solver, bound: int, nonpal_bound: int | None = None) -> VerificationReport:
    nonpal_bound = bound if nonpal_bound is None else nonpal_bound
    chk = _Check("palindrome_bands", {"bound": bound, "nonpal_bound": nonpal_bound})
    for a in range(1, bound + 1):
        hi = ceil_phi2(a)
        for b in range(hi + 1, hi + bound + 1):
            chk(s.is_p((a, b, a)), ("upper band not P", (a, b, a)))
        for b in range(1, ceil_over_phi(a)):
            chk(s.is_p((a, b, a)), ("lower band not P", (a, b, a)))
    for a in range(1, nonpal_bound + 1):
        lo, hi = ceil_over_phi(a), ceil_phi2(a)
        for b in _nonpalindrome_rows(s, a, nonpal_bound):
            chk(lo <= b <= hi, ("non-palindrome outside bounds", (a, b, s.unique_c(a, b))))
    # the Wythoff-derived N palindromes must sit on the band edges
    for a in range(1, nonpal_bound + 1):
        if is_lower_wythoff(a):
            chk(not s.is_p((a, ceil_phi2(a), a)), ("upper edge not sharp", a))
        if is_upper_wythoff(a):
            b = floor_over_phi(a)
            chk(b == ceil_over_phi(a) and not s.is_p((a, b, a)), ("lower edge witness off the edge", (a, b, a)))
    return chk.done()


def _suite_palindrome_bands_corrected(s: Solver, bound: int) -> VerificationReport:
    """Lower band in the form its proof establishes: ``a > ceil(phi*b)``.

    The edge witness ``(a, floor(a/phi), a)`` for upper Wythoff ``a`` then
    sits exactly on the boundary ``a == ceil(phi*b)``.
    """
    chk = _Check("palindrome_bands_corrected", {"bound": bound})
    for a in range(1, bound + 1):
        for b in range(1, a):
            if a > ceil_phi(b):
                chk(s.is_p((a, b, a)), ("lower band not P", (a, b, a)))
        hi = ceil_phi2(a)
        for b in _nonpalindrome_rows(s, a, bound):
            chk(a <= ceil_phi(b) and b <= hi, ("non-palindrome outside bounds", (a, b)))
        if is_lower_wythoff(a):
            chk(not s.is_p((a, hi, a)), ("upper edge not sharp", a))
        if is_upper_wythoff(a):
            b = floor_over_phi(a)
            chk(a == ceil_phi(b) and not s.is_p((a, b, a)), ("lower edge not sharp", (a, b, a)))
    return chk.done()


def _suite_frozen_equivalence(s: Solver, bound: int) -> VerificationReport:
    chk = _Check("frozen_equivalence", {"bound": bound})
    for a, b, c in itertools.product(range(bound + 1), repeat=3):
        std = s.is_p((a, b, c), STANDARD)
        frz = s.is_p((a, b, c), FROZEN)
        exceptional = b == 0 and a == c > 0
        if exceptional:
            chk(frz and not std, ("(a,0,a) not P-frozen/N-standard", (a, b, c)))
        else:
            chk(std == frz, (a, b, c))
    return chk.done()


def _suite_frozen_inequality(s: Solver, bound: int) -> VerificationReport:
    chk = _Check("frozen_inequality", {"bound": bound})
    for a in range(bound + 1):
        for b in range(1, bound + 1):
            top = a + b + min(a, b) + 1 if a > 0 else 2 * b
            for c in range(top + 1):
                if s.is_p((a, b, c), FROZEN):
                    chk(c < a + b, (a, b, c))
    return chk.done()


def _suite_heavy_handed(s: Solver, bound: int) -> VerificationReport:
    chk = _Check("heavy_handed_conjecture", {"bound": bound}, conjecture=True)
    for a, b, c in itertools.product(range(bound + 1), repeat=3):
        chk(s.is_p((a, b, c), STANDARD) == s.is_p((a, b, c), HEAVY), (a, b, c))
    chk.note("tie rule: when the outer stacks are equal both pair moves are allowed")
    return chk.done()


LISTED_SMALLEST_FOUR = [(1, 2, 2, 1), (2, 1, 1, 2), (1, 1, 2, 2), (1, 2, 1, 2), (1, 1, 3, 1)]


def smallest_four_stack_p(s: Solver) -> list[Position]:
    """Canonical four-stack P positions of the least total having five of them."""
    found: list[Position] = []
    total = 4
    while len(found) < 5:
        for p in itertools.product(range(1, total), repeat=4):
            if sum(p) == total and canonical_key(p) == p and s.is_p(p):
                found.append(p)
        total += 1
    return sorted(found)


def _suite_four_stack_symmetric(s: Solver, bound: int) -> VerificationReport:
    chk = _Check("four_stack_symmetric", {"bound": bound})
    for a in range(1, bound + 1):
        for b in range(1, bound + 1):
            expect = (a == 1 and b == 2) or (a > 1 and b == 1)
            chk(s.is_p((a, b, b, a)) == expect, (a, b, b, a))
    got = smallest_four_stack_p(s)
    want = sorted(canonical_key(p) for p in LISTED_SMALLEST_FOUR)
    chk(got == want, ("smallest four-stack P positions", got))
    return chk.done()


def _suite_four_stack_1ab1(s: Solver, bound: int) -> VerificationReport:
    chk = _Check("four_stack_1ab1", {"bound": bound})
    for a in range(1, bound + 1):
        for b in range(1, bound + 1):
            expect = (a == 2 and b == 2) or (a == 3 and b > 5)
            chk(s.is_p((1, a, b, 1)) == expect, (1, a, b, 1))
    return chk.done()


def _suite_four_stack_1ab1_corrected(s: Solver, bound: int) -> VerificationReport:
    """(1,a,b,1) is P iff a=b=2, {a,b}={1,3}, or one of a,b is 3 and the other exceeds 5."""
    chk = _Check("four_stack_1ab1_corrected", {"bound": bound})
    for a in range(1, bound + 1):
        for b in range(1, bound + 1):
            lo, hi = sorted((a, b))
            expect = (lo, hi) in ((2, 2), (1, 3)) or (3 in (a, b) and max(a, b) > 5 and min(a, b) == 3)
            chk(s.is_p((1, a, b, 1)) == expect, (1, a, b, 1))
    return chk.done()


def _suite_s_mod3(s: Solver, bound: int) -> VerificationReport:
    chk = _Check("s_mod3", {"bound": bound})
    for p in s_positions(bound):
        chk(s.is_p(p) == (s_sum(p) % 3 == 0), p)
        for q in options(p):
            chk(is_in_s(q), ("option leaves S", p, q))
    return chk.done()


def _suite_row_involution(s: Solver, bound: int) -> VerificationReport:
    chk = _Check("row_involution", {"bound": bound})
    for b in range(1, bound + 1):
        for a in range(bound + 1):
            c = s.unique_c(a, b)
            chk(s.unique_c(c, b) == a, (a, b, c))
    return chk.done()


def _suite_column_cofinite(s: Solver, bound: int) -> VerificationReport:
    chk = _Check("column_cofinite", {"bound": bound})
    for a in range(1, bound + 1):
        hi = ceil_phi2(a)
        for b in range(hi + 1, hi + bound + 1):
            chk(s.unique_c(a, b) == a, (a, b))
    return chk.done()


def _suite_a002251_column(s: Solver, bound: int) -> VerificationReport:
    chk = _Check("a002251_column", {"bound": bound})
    for b in range(1, bound + 1):
        chk(s.unique_c(0, b) == wythoff_involution(b), b)
    return chk.done()


SUITES: dict[str, tuple[Callable[..., VerificationReport], int]] = {
    "equal_triples": (_suite_equal_triples, 25),
    "near_palindromes": (_suite_near_palindromes, 25),
    "unique_c_bounds": (_suite_unique_c_bounds, 40),
    "nonpalindrome_order": (_suite_nonpalindrome_order, 40),
    "wythoff_triples_N": (_suite_wythoff_triples_n, 40),
    "wythoff_triples_N_corrected": (_suite_wythoff_triples_n_corrected, 40),
    "palindrome_bands": (_suite_palindrome_bands, 25),
    "palindrome_bands_corrected": (_suite_palindrome_bands_corrected, 40),
    "frozen_equivalence": (_suite_frozen_equivalence, 30),
    "frozen_inequality": (_suite_frozen_inequality, 30),
    "heavy_handed_conjecture": (_suite_heavy_handed, 30),
    "four_stack_symmetric": (_suite_four_stack_symmetric, 15),
    "four_stack_1ab1": (_suite_four_stack_1ab1, 15),
    "four_stack_1ab1_corrected": (_suite_four_stack_1ab1_corrected, 15),
    "s_mod3": (_suite_s_mod3, 10),
    "row_involution": (_suite_row_involution, 40),
    "column_cofinite": (_suite_column_cofinite, 25),
    "a002251_column": (_suite_a002251_column, 60),
}


def verify(suite: str, bound: int | None = None, solver: Solver | None = None, **extra) -> VerificationReport:
    try:
        fn, default = SUITES[suite]
    except KeyError:
        raise ValueError(f"unknown suite {suite!r}") from None
    return fn(solver or default_solver(), default if bound is None else bound, **extra)


@dataclass
class Conjecture2Report:
    a: int
    b_max: int
    c_max: int
    candidates: list[tuple[int, int]] = field(default_factory=list)
    p_sets: dict[int, list[int]] = field(default_factory=dict)
    message: str = ""

    def __str__(self) -> str:
        lines = [f"conjecture2 a={self.a} bmax={self.b_max} cmax={self.c_max}: {self.message}"]
        for b0, c0 in self.candidates:
            lines.append(f"  candidate b0={b0} c0={c0}: (a,b0,c,a) P for every c in [{c0},{self.c_max}]")
        return "\n".join(lines)


def explore_conjecture2(a: int, b_max: int, c_max: int, solver: Solver | None = None) -> Conjecture2Report:
    """Search the window for b0 whose P set {c : (a,b0,c,a) P} is a ray.

    Only windowed evidence; a candidate is not a proof.
    """
    if a < 1:
        raise ValueError("a must be positive")
    s = solver or default_solver()
    rep = Conjecture2Report(a, b_max, c_max)
    if b_max <= a + 1 or c_max <= a + 2:
        rep.message = "window too small"
        return rep
    for b in range(a + 1, b_max + 1):
        ps = [c for c in range(b + 1, c_max + 1) if s.is_p((a, b, c, a))]
        rep.p_sets[b] = ps
        if ps and ps == list(range(ps[0], c_max + 1)):
            rep.candidates.append((b, ps[0]))
    rep.message = f"{len(rep.candidates)} candidate(s)" if rep.candidates else "no candidate in window"
    return rep
