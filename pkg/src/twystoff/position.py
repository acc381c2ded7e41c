"""Positions, moves and option generation for Twyst-off.

A position is a plain tuple of stack sizes. Under the standard rules an
emptied interior stack disappears and its two neighbours merge
("contraction"); under the frozen rules empty stacks are only dropped from
the ends. The heavy-handed rules are a three-stack restriction of the
standard rules.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

Position = tuple[int, ...]

MAX_STACK = 2**64 - 1


class RuleSet(str, Enum):
    STANDARD = "standard"
    FROZEN = "frozen"
    HEAVY = "heavy"

    @classmethod
    def parse(cls, name: str | RuleSet) -> RuleSet:
        if isinstance(name, RuleSet):
            return name
        aliases = {"heavy-handed": "heavy", "heavyhanded": "heavy", "std": "standard"}
        key = aliases.get(name.lower(), name.lower())
        try:
            return cls(key)
        except ValueError:
            raise ValueError(f"unknown rule set {name!r}") from None


STANDARD = RuleSet.STANDARD
FROZEN = RuleSet.FROZEN
HEAVY = RuleSet.HEAVY


class MoveKind(str, Enum):
    LEFT = "L"
    RIGHT = "R"
    PAIR = "P"


class HeavyHandedUndefined(ValueError):
    """Heavy-handed rules were requested for a position longer than three."""


class IllegalMove(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Move:
    kind: MoveKind
    count: int
    index: int = 0

    def __str__(self) -> str:
        if self.kind is MoveKind.PAIR:
            return f"P {self.index} {self.count}"
        return f"{self.kind.value} {self.count}"

    @classmethod
    def parse(cls, text: str) -> Move:
        """Parse ``L k``, ``R k`` or ``P i k``."""
        parts = text.split()
        if not parts:
            raise ValueError("empty move")
        kind = parts[0].upper()
        try:
            nums = [int(p) for p in parts[1:]]
        except ValueError:
            raise ValueError(f"bad move {text!r}") from None
        if kind in ("L", "R") and len(nums) == 1:
            return cls(MoveKind(kind), nums[0])
        if kind == "P" and len(nums) == 2:
            return cls(MoveKind.PAIR, nums[1], nums[0])
        raise ValueError(f"bad move {text!r}")


def _strip(seq: list) -> list:
    lo, hi = 0, len(seq)
    while lo < hi and seq[lo] == 0:
        lo += 1
    while hi > lo and seq[hi - 1] == 0:
        hi -= 1
    return seq[lo:hi]


def contract(raw: Iterable) -> tuple:
    """Standard contraction: drop end zeros, merge across interior zeros.

    Works for any stack values supporting ``+`` (so it is shared with the
    infinite extension).
    """
    seq = _strip(list(raw))
    while True:
        try:
            i = seq.index(0)
        except ValueError:
            return tuple(seq)
        seq[i - 1 : i + 2] = [seq[i - 1] + seq[i + 1]]
        seq = _strip(seq)


def normalize(raw: Iterable[int], rules: RuleSet = STANDARD) -> Position:
    """Canonical form of a raw stack sequence under ``rules``."""
    if rules is FROZEN:
        return tuple(_strip(list(raw)))
    return contract(raw)


def canonical_key(pos: Sequence) -> tuple:
    """The lexicographically smaller of ``pos`` and its reversal."""
    pos = tuple(pos)
    rev = pos[::-1]
    return rev if rev < pos else pos


def _pair_allowed(pos: Position, rules: RuleSet) -> list[bool]:
    n = len(pos)
    if rules is not HEAVY or n <= 2:
        return [True] * max(n - 1, 0)
    if n > 3:
        raise HeavyHandedUndefined(f"heavy-handed rules need at most 3 stacks, got {n}")
    return [pos[0] >= pos[2], pos[2] >= pos[0]]


def legal_moves(pos: Position, rules: RuleSet = STANDARD) -> list[Move]:
    n = len(pos)
    allowed = _pair_allowed(pos, rules)
    if n == 0:
        return []
    moves = [Move(MoveKind.LEFT, k) for k in range(1, pos[0] + 1)]
    if n > 1:
        moves += [Move(MoveKind.RIGHT, k) for k in range(1, pos[-1] + 1)]
    for i in range(n - 1):
        if allowed[i]:
            m = min(pos[i], pos[i + 1])
            moves += [Move(MoveKind.PAIR, k, i) for k in range(1, m + 1)]
    return moves


def apply(pos: Position, move: Move, rules: RuleSet = STANDARD) -> Position:
    n = len(pos)
    stacks = list(pos)
    if move.count < 1 or n == 0:
        raise IllegalMove(f"{move} is not legal in {pos}")
    if move.kind is MoveKind.LEFT:
        targets = [0]
    elif move.kind is MoveKind.RIGHT:
        targets = [n - 1]
    else:
        i = move.index
        if not 0 <= i < n - 1 or not _pair_allowed(pos, rules)[i]:
            raise IllegalMove(f"{move} is not legal in {pos}")
        targets = [i, i + 1]
    for t in targets:
        if stacks[t] < move.count:
            raise IllegalMove(f"{move} is not legal in {pos}")
        stacks[t] -= move.count
    return normalize(stacks, rules)


def _standard_options(s: Position, pairs: Sequence[bool] | None = None) -> set[Position]:
    n = len(s)
    out: set[Position] = set()
    if n == 0:
        return out
    rest = s[1:]
    out.add(rest)
    out.update((v,) + rest for v in range(1, s[0]))
    if n > 1:
        init = s[:-1]
        out.add(init)
        out.update(init + (v,) for v in range(1, s[-1]))
    for i in range(n - 1):
        if pairs is not None and not pairs[i]:
            continue
        x, y = s[i], s[i + 1]
        head, tail = s[:i], s[i + 2 :]
        for k in range(1, min(x, y)):
            out.add(head + (x - k, y - k) + tail)
        if x == y:
            out.add(contract(head + (0, 0) + tail))
        elif x < y:
            out.add(contract(head + (0, y - x) + tail))
        else:
            out.add(contract(head + (x - y, 0) + tail))
    return out


def _frozen_options(s: Position) -> set[Position]:
    n = len(s)
    out: set[Position] = set()
    if n == 0:
        return out
    for v in range(s[0]):
        out.add(tuple(_strip([v, *s[1:]])))
    if n > 1:
        for v in range(s[-1]):
            out.add(tuple(_strip([*s[:-1], v])))
    for i in range(n - 1):
        x, y = s[i], s[i + 1]
        head, tail = s[:i], s[i + 2 :]
        for k in range(1, min(x, y) + 1):
            out.add(tuple(_strip([*head, x - k, y - k, *tail])))
    return out


def options(pos: Position, rules: RuleSet = STANDARD) -> set[Position]:
    """All positions reachable in one move, deduplicated."""
    if rules is FROZEN:
        return _frozen_options(pos)
    if rules is HEAVY:
        return _standard_options(pos, _pair_allowed(pos, rules))
    return _standard_options(pos)


_SPLIT = re.compile(r"[\s,]+")


def parse_position(text: str) -> Position:
    """Parse comma- or space-separated nonnegative integers.

    Parentheses are tolerated; the empty string is the terminal position.
    """
    body = text.strip().strip("()[]").strip()
    if not body:
        return ()
    values = []
    for tok in _SPLIT.split(body):
        if not tok:
            continue
        if not tok.isdigit():
            raise ValueError(f"bad stack size {tok!r} in {text!r}")
        v = int(tok)
        if v > MAX_STACK:
            raise ValueError(f"stack size {v} exceeds 64 bits")
        values.append(v)
    return tuple(values)


def format_position(pos: Sequence) -> str:
    return ",".join("inf" if v == float("inf") else str(v) for v in pos)
