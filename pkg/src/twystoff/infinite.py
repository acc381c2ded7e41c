"""Positions with infinite stacks.

An infinite end stack may drop to any finite size, an adjacent pair of
infinite stacks may drop to any equal finite sizes, and a finite stack next
to an infinite one may be reduced on its own. Contraction absorbs into
infinity.

Only shapes with an exact finite search or a reconstructed theorem are
decided; everything else is reported as undecided.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

from .analysis import VerificationReport, _Check, is_in_s, s_sum
from .beatty import is_wythoff_p
from .position import canonical_key, contract, format_position, normalize, options
from .solver import Outcome, Solver, default_solver, solve_outcomes

INF = math.inf

ExtPosition = tuple  # entries are ints or INF


class PatternClass(str, Enum):
    ALL_FINITE = "all-finite"
    END_INFINITY = "end-infinity"
    SINGLE_INTERIOR_INFINITY = "single-interior-infinity"
    DOUBLE_END_INFINITY = "double-end-infinity"
    ALL_INFINITY = "all-infinity"
    OTHER = "other"


class CapExceeded(RuntimeError):
    pass


class ClaimFailed(AssertionError):
    pass


SIX_INF_P_OPTION: ExtPosition = (INF, INF, 1, 1, INF, INF)


def ext_normalize(raw: Iterable) -> ExtPosition:
    return contract(raw)


def parse_ext_position(text: str) -> ExtPosition:
    body = text.strip().strip("()[]").strip()
    if not body:
        return ()
    out = []
    for tok in re.split(r"[\s,]+", body):
        if not tok:
            continue
        if tok.lower() in ("inf", "infinity", "∞", "oo"):
            out.append(INF)
        elif tok.isdigit():
            out.append(int(tok))
        else:
            raise ValueError(f"bad stack {tok!r} in {text!r}")
    return tuple(out)


def classify(pos: Sequence) -> PatternClass:
    inf_at = [i for i, v in enumerate(pos) if v == INF]
    n = len(pos)
    if not inf_at:
        return PatternClass.ALL_FINITE
    if len(inf_at) == n:
        return PatternClass.ALL_INFINITY
    if len(inf_at) == 1:
        i = inf_at[0]
        return PatternClass.END_INFINITY if i in (0, n - 1) else PatternClass.SINGLE_INTERIOR_INFINITY
    if inf_at == [0, n - 1]:
        return PatternClass.DOUBLE_END_INFINITY
    return PatternClass.OTHER


def has_unbounded_moves(pos: Sequence) -> bool:
    if not pos:
        return False
    if pos[0] == INF or pos[-1] == INF:
        return True
    return any(x == INF and y == INF for x, y in zip(pos, pos[1:]))


def ext_options(pos: Sequence, limit: int | None = None) -> set[ExtPosition]:
    """Options of an extended position.

    Moves that turn an infinite stack finite form unbounded families; they
    are generated with finite sizes ``0..limit`` and skipped when ``limit``
    is None.
    """
    pos = tuple(pos)
    n = len(pos)
    out: set[ExtPosition] = set()
    if n == 0:
        return out
    finite_vals = range(limit + 1) if limit is not None else range(0)
    for e in {0, n - 1}:
        x = pos[e]
        for v in finite_vals if x == INF else range(x):
            seq = list(pos)
            seq[e] = v
            out.add(ext_normalize(seq))
    for i in range(n - 1):
        x, y = pos[i], pos[i + 1]
        if x == INF and y == INF:
            pairs = [(t, t) for t in finite_vals]
        elif x == INF:
            pairs = [(INF, v) for v in range(y)]
        elif y == INF:
            pairs = [(v, INF) for v in range(x)]
        else:
            pairs = [(x - k, y - k) for k in range(1, min(x, y) + 1)]
        for nx, ny in pairs:
            out.add(ext_normalize(pos[:i] + (nx, ny) + pos[i + 2 :]))
    return out


@dataclass(frozen=True)
class Decision:
    outcome: str  # "P", "N" or "UNDECIDED"
    certificate: ExtPosition | None = None
    reason: str = ""

    def __str__(self) -> str:
        if self.outcome == "N":
            return f"N move-to: {format_position(self.certificate) or '()'}"
        if self.outcome == "UNDECIDED":
            return f"UNDECIDED {self.reason}"
        return "P"


_P = Decision("P")


def _undecided(reason: str) -> Decision:
    return Decision("UNDECIDED", reason=reason)


def _finite(seq: Sequence) -> tuple[int, ...]:
    if any(v == INF for v in seq) or not seq or min(seq) <= 0:
        raise ValueError(f"expected a nonempty canonical finite position, got {seq}")
    return tuple(int(v) for v in seq)


class InfiniteSolver:
    def __init__(self, solver: Solver | None = None, foreclosed_max_cap: int = 4096) -> None:
        self.solver = solver or default_solver()
        self.memo: dict[ExtPosition, Outcome] = {}
        self.foreclosed_max_cap = foreclosed_max_cap
        self._claims: set[int] = set()
        self._foreclosed: dict[tuple[int, ...], int] = {}

    # exact searches on the two one-infinity-shaped families

    def _shape_outcome(self, pos: ExtPosition, shape: PatternClass) -> Outcome:
        def children(key: ExtPosition) -> set[ExtPosition]:
            # options leaving the shape empty a component: they are
            # end-infinity positions (or a bare infinity) and always N
            return {canonical_key(o) for o in ext_options(key) if classify(o) is shape}

        return solve_outcomes(canonical_key(pos), children, self.memo)

    def diminished_sum_outcome(self, alpha: Sequence[int], beta: Sequence[int]) -> Outcome:
        """Outcome of ``(alpha, inf, beta)``; emptying a side loses."""
        pos = _finite(alpha) + (INF,) + _finite(beta)
        return self._shape_outcome(pos, PatternClass.SINGLE_INTERIOR_INFINITY)

    def modified_misere_outcome(self, alpha: Sequence[int]) -> Outcome:
        """Outcome of ``(inf, alpha, inf)``."""
        pos = (INF,) + _finite(alpha) + (INF,)
        return self._shape_outcome(pos, PatternClass.DOUBLE_END_INFINITY)

    def foreclosed_value(self, alpha: Sequence[int], cap: int | None = None) -> int:
        """Least ``b >= 1`` with ``(alpha, inf, b)`` a P position.

        ``alpha`` is read as the left component, its right end touching the
        infinite stack.
        """
        alpha = _finite(alpha)
        if alpha in self._foreclosed:
            return self._foreclosed[alpha]
        cap = cap or 3 * sum(alpha) + 4
        b = 1
        while True:
            while b <= cap:
                if self.diminished_sum_outcome(alpha, (b,)) is Outcome.P:
                    self._foreclosed[alpha] = b
                    return b
                b += 1
            if cap >= self.foreclosed_max_cap:
                raise CapExceeded(f"no foreclosed value for {alpha} up to {cap}")
            cap = min(2 * cap, self.foreclosed_max_cap)

    # reconstruction of the (a, inf, 1, 1, inf, a) claim

    @staticmethod
    def claim_position(a: int) -> ExtPosition:
        return ext_normalize((a, INF, 1, 1, INF, a))

    def claim_check(self, a: int) -> Outcome:
        """Establish ``(a, inf, 1, 1, inf, a)`` is P by refuting every option."""
        if a < 0:
            raise ValueError("a must be nonnegative")
        for t in range(a + 1):
            if t in self._claims:
                continue
            self._claim_step(t)
            self._claims.add(t)
        return Outcome.P

    def _claim_step(self, a: int) -> None:
        if a == 0:
            if self.modified_misere_outcome((1, 1)) is not Outcome.P:
                raise ClaimFailed("(inf,1,1,inf) is not P")
            return
        pos = self.claim_position(a)
        assert not has_unbounded_moves(pos)
        lowered = {canonical_key(ext_normalize((t, INF, 1, 1, INF, a))): t for t in range(a)}
        merged = canonical_key((a, INF, INF, a))
        for opt in ext_options(pos):
            key = canonical_key(opt)
            if key in lowered:
                t = lowered[key]
                cert = self.claim_position(t)
                if canonical_key(cert) not in {canonical_key(o) for o in ext_options(key)}:
                    raise ClaimFailed(f"{cert} is not an option of {opt}")
                if t not in self._claims:
                    raise ClaimFailed(f"claim for {t} not established before {a}")
            elif key == merged:
                b = 2 if a == 1 else 1
                cert = (a, b, b, a)
                if canonical_key(cert) not in {canonical_key(o) for o in ext_options(merged, limit=b)}:
                    raise ClaimFailed(f"{cert} is not an option of {merged}")
                if not self.solver.is_p(cert):
                    raise ClaimFailed(f"{cert} is not P")
            else:
                raise ClaimFailed(f"unexpected option {opt} of {pos}")

    # decisions

    def _p_certificate(self, pos: ExtPosition, shape: PatternClass) -> ExtPosition:
        cands = [o for o in ext_options(pos) if classify(o) is shape]
        cands = [o for o in cands if self._shape_outcome(o, shape) is Outcome.P]
        return min(cands)

    def _theorem_backed(self, pos: ExtPosition) -> Decision | None:
        key = canonical_key(pos)
        if key == canonical_key(SIX_INF_P_OPTION):
            return Decision("P", reason="six-infinity reconstruction")
        if len(pos) == 6 and pos[1] == pos[4] == INF and pos[2:4] == (1, 1) and pos[0] == pos[5] != INF:
            self.claim_check(pos[0])
            return _P
        return None

    def decide(self, pos: Sequence) -> Decision:
        pos = ext_normalize(pos)
        kind = classify(pos)
        if kind is PatternClass.ALL_FINITE:
            if self.solver.is_p(pos):
                return _P
            opts = [o for o in options(pos) if self.solver.is_p(o)]
            return Decision("N", min(opts))
        if kind is PatternClass.END_INFINITY:
            flip = pos[0] == INF
            oriented = pos[::-1] if flip else pos
            rest = oriented[:-1]
            x = self.solver.unique_last_for_grundy(rest, 0)
            cert = normalize(rest + (x,))
            return Decision("N", cert[::-1] if flip else cert)
        if kind in (PatternClass.SINGLE_INTERIOR_INFINITY, PatternClass.DOUBLE_END_INFINITY):
            if self._shape_outcome(pos, kind) is Outcome.P:
                return _P
            return Decision("N", self._p_certificate(pos, kind))
        if kind is PatternClass.ALL_INFINITY:
            k = len(pos)
            table = {1: (), 2: (), 4: (INF,) * 3, 5: (INF,) * 3, 6: SIX_INF_P_OPTION}
            if k == 3:
                return _P
            if k in table:
                return Decision("N", table[k])
            return _undecided("open problem")
        backed = self._theorem_backed(pos)
        if backed is not None:
            return backed
        return _undecided(f"no exact solver for pattern {format_position(pos)}")

    def p_options(self, pos: Sequence, limit: int | None = None) -> list[ExtPosition]:
        """Options of ``pos`` that ``decide`` classifies as P."""
        return sorted(o for o in ext_options(pos, limit) if self.decide(o).outcome == "P")

    def first_p_option(self, pos: Sequence, limit: int | None = None) -> ExtPosition | None:
        for o in sorted(ext_options(pos, limit)):
            if self.decide(o).outcome == "P":
                return o
        return None

    def explore_seven(self, budget: int) -> SevenReport:
        return explore_seven(budget, self)


@dataclass
class SevenReport:
    budget: int
    verdict: str = "UNDECIDED"
    candidates: list[ExtPosition] = field(default_factory=list)
    refuted: dict[ExtPosition, ExtPosition] = field(default_factory=dict)
    undecided: list[ExtPosition] = field(default_factory=list)
    examined: int = 0

    def __str__(self) -> str:
        lines = [
            f"seven infinities, budget {self.budget}: {self.verdict}",
            f"  options examined: {self.examined}",
            f"  P options found (N-certificates for inf^7): {len(self.candidates)}",
            f"  options refuted (N with certificate): {len(self.refuted)}",
            f"  options undecided: {len(self.undecided)}",
        ]
        for c in self.candidates:
            lines.append(f"  candidate: {format_position(c)}")
        for o, cert in sorted(self.refuted.items())[:20]:
            lines.append(f"  refuted: {format_position(o)} -> {format_position(cert)}")
        return "\n".join(lines)


def explore_seven(budget: int, inf_solver: InfiniteSolver | None = None) -> SevenReport:
    """Bounded hunt for a P option of seven infinite stacks.

    Infinite stacks are only reduced to sizes in ``1..budget``; reductions
    to 0 land on six or five infinities, both already known N. Each option
    is decided directly, or refuted by a P option of its own found within
    the same budget.
    """
    s = inf_solver or InfiniteSolver()
    rep = SevenReport(budget)
    root = (INF,) * 7
    if budget <= 0:
        return rep
    for opt in sorted(ext_options(root, budget)):
        if opt in ((INF,) * 6, (INF,) * 5):
            continue
        rep.examined += 1
        d = s.decide(opt)
        if d.outcome == "P":
            rep.candidates.append(opt)
            continue
        if d.outcome == "N":
            rep.refuted[opt] = d.certificate
            continue
        cert = s.first_p_option(opt, budget)
        if cert is not None:
            rep.refuted[opt] = cert
        else:
            rep.undecided.append(opt)
    if rep.candidates:
        rep.verdict = "N"
    return rep


# verification suites


def _suite_outer_infinities(s: InfiniteSolver, bound: int) -> VerificationReport:
    chk = _Check("outer_infinities", {"bound": bound})
    P = Outcome.P
    for a in range(1, bound + 1):
        chk((s.modified_misere_outcome((a,)) is P) == (a == 1), ("part 1", a))
        for b in range(1, bound + 1):
            expect = is_wythoff_p(a - 1, b - 1)
            chk((s.modified_misere_outcome((a, b)) is P) == expect, ("part 2", a, b))
            for c in range(1, bound + 1):
                expect = a == c > 1
                chk((s.modified_misere_outcome((a, b, c)) is P) == expect, ("part 3", a, b, c))
    return chk.done()


def _suite_outer_corollary(s: InfiniteSolver, bound: int) -> VerificationReport:
    chk = _Check("outer_corollary", {"bound": bound})
    P = Outcome.P
    for a in range(1, bound + 1):
        for b in range(1, bound + 1):
            e1 = (a == 2 and b > 2) or (b == 2 and a > 2)
            chk((s.modified_misere_outcome((1, a, b, 1)) is P) == e1, ("(inf,1,a,b,1,inf)", a, b))
            e2 = a == 2 and b >= 2
            chk((s.modified_misere_outcome((a, 1, b, 1)) is P) == e2, ("(inf,a,1,b,1,inf)", a, b))
            e3 = a == b > 1
            chk((s.modified_misere_outcome((a, 1, 1, b)) is P) == e3, ("(inf,a,1,1,b,inf)", a, b))
    return chk.done()


def _suite_triple_infinity(s: InfiniteSolver, bound: int) -> VerificationReport:
    chk = _Check("triple_infinity", {"bound": bound})
    root = (INF, INF, INF)
    opts = {canonical_key(o) for o in ext_options(root, bound)}
    for t in range(bound + 1):
        for mid in ((t, INF, INF), (t, t, INF)):
            m = ext_normalize(mid)
            chk(canonical_key(m) in opts, ("not an option of inf^3", mid))
            target = normalize((t, t, t))
            inner = {canonical_key(o) for o in ext_options(m, t)}
            chk(canonical_key(target) in inner and s.solver.is_p(target), ("no (t,t,t) reply", mid))
    # every option of inf^3 within the budget is one of those two families
    fams = {canonical_key(ext_normalize(f)) for t in range(bound + 1) for f in ((t, INF, INF), (t, t, INF))}
    chk(opts <= fams, ("unexpected inf^3 option", sorted(opts - fams)))
    return chk.done()


def _refute(s: InfiniteSolver, pos: ExtPosition, limit: int) -> ExtPosition | None:
    d = s.decide(pos)
    if d.outcome == "N":
        return d.certificate
    return s.first_p_option(pos, limit)


def _suite_six_infinities(s: InfiniteSolver, bound: int) -> VerificationReport:
    chk = _Check("six_infinities", {"bound": bound})
    four = (INF,) * 4
    d4 = s.decide(four)
    chk(d4.outcome == "N" and s.decide(d4.certificate).outcome == "P", ("inf^4 not N", d4))
    for a in range(bound + 1):
        try:
            s.claim_check(a)
            chk(True, a)
        except ClaimFailed as exc:
            chk(False, ("claim", a, str(exc)))
    # the three small reductions of a pair of infinite stacks
    for t, cert in ((0, (2, 2, 1, 1)), (1, (1, 1, 1, 1, 1, 1)), (2, (1, 1, 2, 2))):
        pos = ext_normalize((INF, INF, 1, 1, t, t))
        ok = canonical_key(cert) in {canonical_key(o) for o in ext_options(pos, 2)}
        chk(ok and s.solver.is_p(cert), ("small pair reduction", t, cert))
        chk(is_in_s(cert) and s_sum(cert) % 3 == 0, ("certificate outside S_3k", cert))
    # larger reductions answered by the foreclosed value of (t,t,1,1)
    for t in range(3, bound + 1):
        b = s.foreclosed_value((t, t, 1, 1))
        chk(s.diminished_sum_outcome((b,), (1, 1, t, t)) is Outcome.P, ("foreclosed reply", t, b))
    # and every option of (inf,inf,1,1,inf,inf) up to the budget is refuted
    limit = bound
    need = max([s.foreclosed_value((t, t, 1, 1)) for t in range(3, bound + 1)] + [limit])
    root = SIX_INF_P_OPTION
    for opt in sorted(ext_options(root, bound)):
        cert = _refute(s, opt, need)
        ok = cert is not None and canonical_key(cert) in {canonical_key(o) for o in ext_options(opt, need)}
        chk(ok and s.decide(cert).outcome == "P", ("option not refuted", opt))
    d6 = s.decide((INF,) * 6)
    chk(d6.outcome == "N" and d6.certificate == SIX_INF_P_OPTION, ("inf^6", d6))
    return chk.done()


def _compositions(total: int) -> Iterable[tuple[int, ...]]:
    if total == 0:
        return
    for mask in range(1 << (total - 1)):
        parts, run = [], 1
        for i in range(total - 1):
            if mask >> i & 1:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        yield tuple(parts)


def finite_positions(max_total: int) -> list[tuple[int, ...]]:
    return [p for t in range(1, max_total + 1) for p in _compositions(t)]


def _suite_foreclosed_iff(s: InfiniteSolver, bound: int) -> VerificationReport:
    chk = _Check("foreclosed_iff", {"bound": bound}, conjecture=True)
    comps = finite_positions(bound)
    fv = {p: s.foreclosed_value(p) for p in comps}
    for alpha in comps:
        for beta in comps:
            # beta sits right of the infinity, so compare with its mirror image
            same = fv[alpha] == fv[beta[::-1]]
            chk((s.diminished_sum_outcome(alpha, beta) is Outcome.P) == same, (alpha, beta))
    return chk.done()


def _suite_mirror(s: InfiniteSolver, bound: int) -> VerificationReport:
    chk = _Check("mirror", {"bound": bound})
    for g in finite_positions(bound):
        chk(s.diminished_sum_outcome(g, g[::-1]) is Outcome.P, g)
    return chk.done()


def _suite_end_infinity(s: InfiniteSolver, bound: int) -> VerificationReport:
    chk = _Check("end_infinity", {"bound": bound})
    for f in finite_positions(bound):
        for pos in (f + (INF,), (INF,) + f):
            d = s.decide(pos)
            ok = d.outcome == "N" and s.solver.is_p(d.certificate)
            reach = {canonical_key(o) for o in ext_options(pos, 2 * sum(f) + 2)}
            chk(ok and canonical_key(d.certificate) in reach, pos)
    return chk.done()


INFINITE_SUITES = {
    "outer_infinities": (_suite_outer_infinities, 12),
    "outer_corollary": (_suite_outer_corollary, 12),
    "six_infinities": (_suite_six_infinities, 10),
    "triple_infinity": (_suite_triple_infinity, 12),
    "foreclosed_iff": (_suite_foreclosed_iff, 8),
    "mirror": (_suite_mirror, 10),
    "end_infinity": (_suite_end_infinity, 8),
}


_default = InfiniteSolver()


def default_infinite_solver() -> InfiniteSolver:
    return _default


def verify_infinite(suite: str, bound: int | None = None, solver: InfiniteSolver | None = None) -> VerificationReport:
    try:
        fn, default = INFINITE_SUITES[suite]
    except KeyError:
        raise ValueError(f"unknown infinite suite {suite!r}") from None
    return fn(solver or _default, default if bound is None else bound)


def decide(pos: Sequence) -> Decision:
    return _default.decide(pos)


def diminished_sum_outcome(alpha: Sequence[int], beta: Sequence[int]) -> Outcome:
    return _default.diminished_sum_outcome(alpha, beta)


def modified_misere_outcome(alpha: Sequence[int]) -> Outcome:
    return _default.modified_misere_outcome(alpha)


def foreclosed_value(alpha: Sequence[int]) -> int:
    return _default.foreclosed_value(alpha)


def claim_check(a: int) -> Outcome:
    return _default.claim_check(a)
