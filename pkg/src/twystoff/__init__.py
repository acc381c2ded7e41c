"""Exact solver and verification toolkit for the stack game Twyst-off."""

from .beatty import floor_phi, is_wythoff_p, wythoff_involution
from .position import (
    FROZEN,
    HEAVY,
    STANDARD,
    Move,
    MoveKind,
    RuleSet,
    apply,
    canonical_key,
    legal_moves,
    normalize,
    options,
)
from .solver import MemoTable, Outcome, Solver, grundy, load_memo, outcome, save_memo, unique_c

__version__ = "0.1.0"
