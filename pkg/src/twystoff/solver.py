"""Memoized P/N and Grundy solver.

Both searches run on an explicit work stack, so arbitrarily deep positions
never hit the interpreter's recursion limit. Results are stored under the
reversal-minimal key of a position, separately per rule set.
"""

from __future__ import annotations

import os
from enum import Enum
from pathlib import Path
from typing import Callable, Iterable, Sequence

from .position import (
    FROZEN,
    HEAVY,
    STANDARD,
    Position,
    RuleSet,
    canonical_key,
    normalize,
    options,
)


class Outcome(str, Enum):
    P = "P"
    N = "N"


class BoundViolation(RuntimeError):
    """A third stack was missing from, or escaped, its proven range."""


class SearchCapExceeded(RuntimeError):
    pass


class FormatError(ValueError):
    pass


MEMO_HEADER = "TWYSTOFF-MEMO v1"
MAX_SEARCH_CAP = 2**20


def mex(values: Iterable[int]) -> int:
    seen = set(values)
    g = 0
    while g in seen:
        g += 1
    return g


class MemoTable:
    """Outcome and Grundy caches keyed by (rule set, canonical position).

    Writes go through ``dict.setdefault`` so concurrent writers never
    overwrite an existing entry.
    """

    def __init__(self) -> None:
        self.outcomes: dict[RuleSet, dict[Position, Outcome]] = {r: {} for r in RuleSet}
        self.grundies: dict[RuleSet, dict[Position, int]] = {r: {} for r in RuleSet}

    def __len__(self) -> int:
        return sum(len(d) for d in self.outcomes.values())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MemoTable):
            return NotImplemented
        return self.outcomes == other.outcomes and self.grundies == other.grundies

    def insert(self, rules: RuleSet, key: Position, outcome: Outcome, grundy: int | None = None) -> Outcome:
        stored = self.outcomes[rules].setdefault(key, outcome)
        if grundy is not None:
            self.grundies[rules].setdefault(key, grundy)
        return stored

    def records(self) -> list[tuple[RuleSet, Position, Outcome, int | None]]:
        rows = []
        for rules in RuleSet:
            grundies = self.grundies[rules]
            for key, out in self.outcomes[rules].items():
                rows.append((rules, key, out, grundies.get(key)))
        rows.sort(key=lambda r: (r[0].value, len(r[1]), r[1]))
        return rows

    def clear(self) -> None:
        for r in RuleSet:
            self.outcomes[r].clear()
            self.grundies[r].clear()


def save_memo(table: MemoTable, destination: str | os.PathLike) -> None:
    """Write ``table`` as text: header, one record per line, END trailer."""
    rows = table.records()
    lines = [MEMO_HEADER]
    for rules, key, out, g in rows:
        stacks = ",".join(map(str, key))
        lines.append(f"{rules.value};{stacks};{out.value};{'-' if g is None else g}")
    lines.append(f"END {len(rows)}")
    path = Path(destination)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text("\n".join(lines) + "\n", encoding="ascii")
    os.replace(tmp, path)


def load_memo(source: str | os.PathLike) -> MemoTable:
    text = Path(source).read_text(encoding="ascii")
    lines = text.split("\n")
    if not lines or lines[0] != MEMO_HEADER:
        raise FormatError(f"missing or unsupported header in {source}")
    if lines[-1] == "":
        lines.pop()
    if len(lines) < 2 or not lines[-1].startswith("END "):
        raise FormatError(f"{source} is truncated (no END trailer)")
    body = lines[1:-1]
    try:
        expected = int(lines[-1][4:])
    except ValueError:
        raise FormatError(f"bad trailer {lines[-1]!r}") from None
    if expected != len(body):
        raise FormatError(f"{source} holds {len(body)} records, trailer says {expected}")
    table = MemoTable()
    for lineno, line in enumerate(body, start=2):
        parts = line.split(";")
        if len(parts) != 4:
            raise FormatError(f"line {lineno}: expected 4 fields")
        rules_s, stacks_s, out_s, g_s = parts
        try:
            rules = RuleSet(rules_s)
            key = tuple(int(v) for v in stacks_s.split(",")) if stacks_s else ()
            out = Outcome(out_s)
            g = None if g_s == "-" else int(g_s)
        except ValueError as exc:
            raise FormatError(f"line {lineno}: {exc}") from None
        if g is not None and (g == 0) != (out is Outcome.P):
            raise FormatError(f"line {lineno}: grundy {g} inconsistent with {out.value}")
        table.insert(rules, key, out, g)
    return table


def solve_outcomes(
    root: Position,
    children: Callable[[Position], Iterable[Position]],
    memo: dict[Position, Outcome],
) -> Outcome:
    """P/N of ``root`` where ``children`` yields canonical option keys.

    A node is N as soon as one child is known P, so already-cached P
    children are looked for before descending into unknown ones.
    """
    hit = memo.get(root)
    if hit is not None:
        return hit
    P, N = Outcome.P, Outcome.N
    stack: list[list] = [[root, None]]
    while stack:
        frame = stack[-1]
        key, pending = frame
        if pending is None:
            pending = []
            resolved = False
            for c in children(key):
                r = memo.get(c)
                if r is None:
                    pending.append(c)
                elif r is P:
                    resolved = True
                    break
            if resolved:
                memo.setdefault(key, N)
                stack.pop()
                continue
            # cheapest subgames first: pop() takes from the end
            pending.sort(key=sum, reverse=True)
            frame[1] = pending
        descended = False
        while pending:
            c = pending[-1]
            r = memo.get(c)
            if r is None:
                stack.append([c, None])
                descended = True
                break
            pending.pop()
            if r is P:
                memo.setdefault(key, N)
                stack.pop()
                descended = True
                break
        if not descended:
            memo.setdefault(key, P)
            stack.pop()
    return memo[root]


class Solver:
    """Exact solver for finite Twyst-off positions under any rule set."""

    def __init__(self, memo: MemoTable | None = None) -> None:
        self.memo = memo if memo is not None else MemoTable()

    def _children(self, rules: RuleSet) -> Callable[[Position], set[Position]]:
        def children(key: Position) -> set[Position]:
            return {canonical_key(o) for o in options(key, rules)}

        return children

    def outcome(self, pos: Sequence[int], rules: RuleSet = STANDARD) -> Outcome:
        rules = RuleSet.parse(rules)
        key = canonical_key(normalize(pos, rules))
        return solve_outcomes(key, self._children(rules), self.memo.outcomes[rules])

    def is_p(self, pos: Sequence[int], rules: RuleSet = STANDARD) -> bool:
        return self.outcome(pos, rules) is Outcome.P

    def grundy(self, pos: Sequence[int], rules: RuleSet = STANDARD) -> int:
        rules = RuleSet.parse(rules)
        root = canonical_key(normalize(pos, rules))
        table = self.memo.grundies[rules]
        if root in table:
            return table[root]
        children = self._children(rules)
        stack: list[list] = [[root, None]]
        while stack:
            frame = stack[-1]
            key = frame[0]
            if key in table:
                stack.pop()
                continue
            if frame[1] is None:
                frame[1] = list(children(key))
            missing = [c for c in frame[1] if c not in table]
            if missing:
                stack.extend([c, None] for c in missing)
                continue
            g = mex(table[c] for c in frame[1])
            table.setdefault(key, g)
            self.memo.outcomes[rules].setdefault(key, Outcome.P if g == 0 else Outcome.N)
            stack.pop()
        return table[root]

    def unique_c(self, a: int, b: int, rules: RuleSet = STANDARD) -> int:
        """The unique ``c`` making ``(a, b, c)`` a P position."""
        rules = RuleSet.parse(rules)
        if b <= 0 or a < 0:
            raise ValueError("unique_c needs a >= 0 and b > 0")
        # a = 0 is two-stack Wythoff, whose partner of b never exceeds 2b
        bound = a + b + min(a, b) + 1 if a > 0 else 2 * b
        for c in range(bound + 1):
            if self.outcome((a, b, c), rules) is Outcome.P:
                if a > 0 and rules in (STANDARD, FROZEN) and not c < a + b:
                    raise BoundViolation(f"({a},{b},{c}) is P but c >= a+b")
                return c
        raise BoundViolation(f"no P completion of ({a},{b},_) up to {bound}")

    def unique_last_for_grundy(
        self, prefix: Sequence[int], g: int, rules: RuleSet = STANDARD
    ) -> int:
        """The unique last stack giving ``prefix + (x,)`` Grundy value ``g``."""
        prefix = tuple(prefix)
        if not prefix or min(prefix) <= 0:
            raise ValueError("prefix must be nonempty with positive entries")
        if g < 0:
            raise ValueError("Grundy values are nonnegative")
        cap = sum(prefix) + min(prefix) + g + 2
        x = 0
        while True:
            while x <= cap:
                if self.grundy(prefix + (x,), rules) == g:
                    return x
                x += 1
            if cap >= MAX_SEARCH_CAP:
                raise SearchCapExceeded(f"no last stack for {prefix} with Grundy {g} below {cap}")
            cap = min(2 * cap, MAX_SEARCH_CAP)


_default = Solver()


def default_solver() -> Solver:
    return _default


def outcome(pos: Sequence[int], rules: RuleSet = STANDARD) -> Outcome:
    return _default.outcome(pos, rules)


def grundy(pos: Sequence[int], rules: RuleSet = STANDARD) -> int:
    return _default.grundy(pos, rules)


def unique_c(a: int, b: int, rules: RuleSet = STANDARD) -> int:
    return _default.unique_c(a, b, rules)


def unique_last_for_grundy(prefix: Sequence[int], g: int, rules: RuleSet = STANDARD) -> int:
    return _default.unique_last_for_grundy(prefix, g, rules)


__all__ = [
    "BoundViolation",
    "FormatError",
    "MemoTable",
    "Outcome",
    "SearchCapExceeded",
    "Solver",
    "default_solver",
    "grundy",
    "load_memo",
    "mex",
    "outcome",
    "save_memo",
    "solve_outcomes",
    "unique_c",
    "unique_last_for_grundy",
    "FROZEN",
    "HEAVY",
    "STANDARD",
]
