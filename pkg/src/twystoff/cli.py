"""Command-line front end: ``twystoff <command> ...``.

Exit codes: 0 decided or passed, 1 verification failure, 2 usage error,
3 undecided.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence, TextIO

from . import analysis, infinite
from .position import (
    HeavyHandedUndefined,
    IllegalMove,
    Move,
    Position,
    RuleSet,
    apply,
    format_position,
    legal_moves,
    normalize,
    options,
    parse_position,
)
from .solver import FormatError, Outcome, Solver, load_memo, save_memo


class NoMoves(ValueError):
    pass


def engine_move(pos: Position, rules: RuleSet = RuleSet.STANDARD, solver: Solver | None = None) -> Move:
    """A move to the lexicographically least P option, else to the least option."""
    solver = solver or Solver()
    moves = legal_moves(pos, rules)
    if not moves:
        raise NoMoves(f"{pos} is terminal")
    results = [(apply(pos, m, rules), i) for i, m in enumerate(moves)]
    winning = [r for r in results if solver.is_p(r[0], rules)]
    _, best = min(winning or results)
    return moves[best]


def _fmt(pos) -> str:
    return f"({format_position(pos)})"


def _rules_arg(p: argparse.ArgumentParser) -> None:
    p.add_argument("--rules", default="standard", type=RuleSet.parse, help="standard | frozen | heavy")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="twystoff", description="Exact solver for Twyst-off.")
    parser.add_argument("--memo", metavar="FILE", help="load this memo file first and save it back afterwards")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, text in (("solve", "print P or N"), ("grundy", "print the Grundy value"), ("options", "list options")):
        p = sub.add_parser(name, help=text)
        p.add_argument("position")
        _rules_arg(p)

    p = sub.add_parser("table", help="tabulate the P-completing third stack")
    p.add_argument("--amax", type=int, required=True)
    p.add_argument("--bmax", type=int, required=True)
    p.add_argument("--format", choices=("csv", "svg", "txt"), default="csv")
    p.add_argument("--out")
    _rules_arg(p)

    p = sub.add_parser("verify", help="run a verification suite")
    names = sorted(analysis.SUITES) + sorted(infinite.INFINITE_SUITES)
    p.add_argument("--suite", required=True, choices=names)
    p.add_argument("--bound", type=int)

    p = sub.add_parser("infinite", help="decide a position with infinite stacks")
    p.add_argument("position")

    p = sub.add_parser("explore", help="bounded exploratory searches")
    esub = p.add_subparsers(dest="target", required=True)
    e = esub.add_parser("seven")
    e.add_argument("--budget", type=int, default=3)
    e = esub.add_parser("conjecture2")
    e.add_argument("--a", type=int, required=True)
    e.add_argument("--bmax", type=int, default=30)
    e.add_argument("--cmax", type=int, default=40)

    p = sub.add_parser("cache", help="persist or inspect the memo table")
    p.add_argument("action", choices=("save", "load"))
    p.add_argument("file")
    p.add_argument("--amax", type=int, default=0, help="warm the f-table region before saving")
    p.add_argument("--bmax", type=int, default=0)

    p = sub.add_parser("play", help="play against the engine in the terminal")
    p.add_argument("position")
    p.add_argument("--engine-first", action="store_true")
    _rules_arg(p)
    return parser


def play(pos: Position, rules: RuleSet, solver: Solver, engine_first: bool, stdin: TextIO, out: TextIO) -> int:
    human_turn = not engine_first
    pos = normalize(pos, rules)
    last = None
    print("moves: 'L k', 'R k', 'P i k' (pair i,i+1, 0-based); 'q' quits", file=out)
    while pos:
        print(f"position {_fmt(pos)}", file=out)
        if human_turn:
            print("your move> ", end="", file=out, flush=True)
            line = stdin.readline()
            if not line or line.strip().lower() in ("q", "quit"):
                print("bye", file=out)
                return 0
            try:
                move = Move.parse(line)
                pos = apply(pos, move, rules)
            except (ValueError, IllegalMove) as exc:
                print(f"illegal: {exc}", file=out)
                continue
            last = "you"
        else:
            move = engine_move(pos, rules, solver)
            pos = apply(pos, move, rules)
            print(f"engine plays {move} -> {_fmt(pos)}", file=out)
            last = "engine"
        human_turn = not human_turn
    print(f"position () - {'you win' if last == 'you' else 'engine wins' if last else 'no moves'}", file=out)
    return 0


def _run(args: argparse.Namespace, solver: Solver, stdin: TextIO, out: TextIO) -> int:
    cmd = args.command
    if cmd in ("solve", "grundy", "options"):
        pos = normalize(parse_position(args.position), args.rules)
        if cmd == "solve":
            print(solver.outcome(pos, args.rules).value, file=out)
        elif cmd == "grundy":
            print(solver.grundy(pos, args.rules), file=out)
        else:
            for o in sorted(options(pos, args.rules)):
                print(_fmt(o), file=out)
        return 0
    if cmd == "table":
        table = analysis.build_f_table(args.amax, args.bmax, args.rules, solver)
        text = {"csv": table.to_csv, "svg": table.to_svg, "txt": table.to_text}[args.format]()
        if args.out:
            Path(args.out).write_text(text)
        else:
            out.write(text)
        return 0
    if cmd == "verify":
        if args.suite in analysis.SUITES:
            rep = analysis.verify(args.suite, args.bound, solver)
        else:
            rep = infinite.verify_infinite(args.suite, args.bound, infinite.InfiniteSolver(solver))
        print(rep, file=out)
        return 0 if rep.passed or rep.conjecture else 1
    if cmd == "infinite":
        d = infinite.InfiniteSolver(solver).decide(infinite.parse_ext_position(args.position))
        print(d, file=out)
        return 3 if d.outcome == "UNDECIDED" else 0
    if cmd == "explore":
        if args.target == "seven":
            print(infinite.explore_seven(args.budget, infinite.InfiniteSolver(solver)), file=out)
        else:
            print(analysis.explore_conjecture2(args.a, args.bmax, args.cmax, solver), file=out)
        return 0
    if cmd == "cache":
        if args.action == "save":
            if args.amax >= 0 and args.bmax >= 1:
                analysis.build_f_table(args.amax, args.bmax, solver=solver)
            save_memo(solver.memo, args.file)
            print(f"saved {len(solver.memo)} entries to {args.file}", file=out)
        else:
            table = load_memo(args.file)
            print(f"loaded {len(table)} entries from {args.file}", file=out)
        return 0
    if cmd == "play":
        return play(parse_position(args.position), args.rules, solver, args.engine_first, stdin, out)
    raise AssertionError(cmd)


def main(argv: Sequence[str] | None = None, stdin: TextIO | None = None, stdout: TextIO | None = None) -> int:
    stdin = stdin or sys.stdin
    out = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    solver = Solver()
    memo_path = Path(args.memo) if args.memo else None
    try:
        if memo_path and memo_path.exists():
            solver = Solver(load_memo(memo_path))
        status = _run(args, solver, stdin, out)
    except (ValueError, HeavyHandedUndefined, FormatError, OSError) as exc:
        print(f"twystoff: error: {exc}", file=sys.stderr)
        return 2
    if memo_path:
        save_memo(solver.memo, memo_path)
    return status


if __name__ == "__main__":
    sys.exit(main())
