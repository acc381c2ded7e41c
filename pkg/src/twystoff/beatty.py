"""Golden-ratio floors and ceilings in exact integer arithmetic.

``floor(n * phi) == (n + isqrt(5 * n * n)) // 2``; every other quantity here
is derived from that identity, so no float ever enters.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt


def _check(n: int) -> None:
    if n < 0:
        raise ValueError(f"expected a nonnegative integer, got {n}")


def floor_phi(n: int) -> int:
    _check(n)
    return (n + isqrt(5 * n * n)) // 2


def floor_phi2(n: int) -> int:
    return floor_phi(n) + n


def ceil_phi(a: int) -> int:
    # a * phi is irrational for a > 0
    return floor_phi(a) + 1 if a > 0 else 0


def ceil_phi2(a: int) -> int:
    return ceil_phi(a) + a


def floor_over_phi(b: int) -> int:
    """``floor(b / phi)``, using ``1/phi == phi - 1``."""
    return floor_phi(b) - b


def ceil_over_phi(a: int) -> int:
    return floor_over_phi(a) + 1 if a > 0 else 0


@dataclass(frozen=True)
class WythoffPair:
    n: int
    a: int
    b: int

    @classmethod
    def nth(cls, n: int) -> WythoffPair:
        a = floor_phi(n)
        return cls(n, a, a + n)


def is_wythoff_p(a: int, b: int) -> bool:
    """True iff ``(a, b)`` is a P position of Wythoff's game."""
    lo, hi = sorted((a, b))
    _check(lo)
    return floor_phi(hi - lo) == lo


def is_lower_wythoff(x: int) -> bool:
    return x > 0 and floor_phi(floor_over_phi(x) + 1) == x


def is_upper_wythoff(x: int) -> bool:
    return x > 0 and not is_lower_wythoff(x)


def wythoff_involution(b: int) -> int:
    """Swap each Wythoff number with its partner (OEIS A002251); 0 is fixed."""
    _check(b)
    if b == 0:
        return 0
    n = floor_over_phi(b) + 1
    if floor_phi(n) == b:
        return b + n
    return floor_over_phi(b)


def wythoff_pairs(limit: int) -> list[WythoffPair]:
    """All pairs whose lower member is at most ``limit``."""
    out = []
    n = 1
    while floor_phi(n) <= limit:
        out.append(WythoffPair.nth(n))
        n += 1
    return out
