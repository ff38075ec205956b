"""Command-line frontend.

Commands::

    vertexnim solve FILE [--method auto|theorem|oracle] [--witness]
    vertexnim check --orientation D|U [--ruleset R] [--convention C]
                    --max-vertices K --max-weight W
                    (--exhaustive | --samples N --seed S) [...]
    vertexnim adjacent-nim W1 W2 ... Wn
    vertexnim explore-circuits --n-min A --n-max B --max-weight W [--min-ones 1]
    vertexnim serve --port P [--static DIR] [--state-file PATH]

Exit codes: 0 ok, 1 usage or parse error, 2 check found mismatches,
3 oracle budget exceeded.
"""

from __future__ import annotations

import argparse
import itertools
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, TextIO

from .errors import (
    BudgetExceededError,
    ParseError,
    TheoremOutOfScopeError,
    VertexNimError,
)
from .graphs import build_graph
from .instance_io import parse_instance, serialize
from .oracle import DEFAULT_BUDGET, Envelope, Memo, OracleBudget, enumerate_instances, oracle_solve
from .outcome import Outcome
from .rules import Convention, Position, Ruleset, make_position
from .solver import _theorem_outcome, resolve_outcome, solve, winning_move

#: Memo entries kept before the check sweep recycles its cache.
_MEMO_CAP = 2_000_000


@dataclass
class CheckResult:
    """Outcome of a theorem-versus-oracle sweep."""

    tested: int = 0
    mismatched: int = 0
    skipped: int = 0
    mismatches: list[tuple[Position, Outcome, Outcome | None]] = field(default_factory=list)
    mismatch_files: list[Path] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.mismatched == 0


def _envelope_budget(env: Envelope) -> OracleBudget:
    return OracleBudget(
        max_total_weight=env.max_vertices * env.max_weight,
        max_vertices=env.max_vertices,
    )


def run_check(
    env: Envelope,
    budget: OracleBudget | None = None,
    mismatch_dir: Path | None = None,
    out: TextIO | None = None,
) -> CheckResult:
    """Compare the closed-form solvers against the oracle over an envelope.

    Instances the dispatcher cannot route to a theorem are skipped (they
    have nothing to cross-check).  Mismatches are written as reproduction
    files when ``mismatch_dir`` is given.  Raises
    :class:`BudgetExceededError` when the envelope's worst case exceeds the
    oracle budget.
    """
    budget = budget or DEFAULT_BUDGET
    worst = _envelope_budget(env)
    if (
        worst.max_total_weight > budget.max_total_weight
        or worst.max_vertices > budget.max_vertices
    ):
        raise BudgetExceededError(
            f"envelope needs budget (total weight {worst.max_total_weight}, "
            f"{worst.max_vertices} vertices); configured budget allows "
            f"({budget.max_total_weight}, {budget.max_vertices})"
        )
    result = CheckResult()
    memo = Memo()
    for pos in enumerate_instances(env):
        try:
            got, method = _theorem_outcome(pos)
        except TheoremOutOfScopeError:
            result.skipped += 1
            continue
        expected = oracle_solve(pos, budget=budget, memo=memo)
        result.tested += 1
        if got != expected:
            result.mismatched += 1
            result.mismatches.append((pos, expected, got))
            if mismatch_dir is not None:
                mismatch_dir.mkdir(parents=True, exist_ok=True)
                path = mismatch_dir / f"mismatch-{result.mismatched:04d}.game"
                path.write_text(
                    serialize(pos)
                    + f"# oracle says {expected.value}, solver said {got.value}\n"
                )
                result.mismatch_files.append(path)
        if len(memo.table) > _MEMO_CAP:
            memo.clear()
    if out is not None:
        out.write(
            f"tested {result.tested} mismatched {result.mismatched} "
            f"skipped {result.skipped}\n"
        )
        for path in result.mismatch_files:
            out.write(f"mismatch file: {path}\n")
    return result


def explore_circuits(
    n_min: int,
    n_max: int,
    max_weight: int,
    min_ones: int = 1,
    budget: OracleBudget | None = None,
) -> Iterator[tuple[int, tuple[int, ...], str, Outcome]]:
    """Oracle outcomes for circuits that contain weight-1 vertices.

    These instances sit outside every closed form; the stream makes them
    easy to eyeball for patterns.  Yields (size, weights, start, outcome).
    """
    budget = budget or DEFAULT_BUDGET
    memo = Memo()
    for n in range(max(3, n_min), n_max + 1):
        ids = [chr(ord("a") + i) for i in range(n)]
        arcs = [(ids[i], ids[(i + 1) % n]) for i in range(n)]
        for weights in itertools.product(range(1, max_weight + 1), repeat=n):
            if sum(1 for w in weights if w == 1) < min_ones:
                continue
            g = build_graph("directed", list(zip(ids, weights)), arcs)
            for start in ids:
                pos = make_position(g, start, Ruleset.VERTEXNIM)
                outcome = oracle_solve(pos, budget=budget, memo=memo)
                yield n, weights, start, outcome


# -- commands ---------------------------------------------------------------


def _cmd_solve(args: argparse.Namespace) -> int:
    try:
        text = Path(args.file).read_text()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    pos = parse_instance(text)
    if args.method == "oracle":
        outcome: Outcome | None = oracle_solve(pos)
        method = "oracle-fallback"
        witness = winning_move(pos) if args.witness and outcome is Outcome.N else None
    elif args.method == "theorem":
        from .rules import TerminalStatus, terminal_status

        if terminal_status(pos) is not TerminalStatus.NONTERMINAL:
            outcome, method = resolve_outcome(pos)
        else:
            try:
                outcome, method = _theorem_outcome(pos)
            except TheoremOutOfScopeError:
                outcome, method = None, "open-problem"
        witness = None
        if args.witness and outcome is Outcome.N:
            witness = winning_move(pos)
    else:
        report = solve(pos)
        outcome, method, witness = report.outcome, report.method, report.witness
        if not args.witness:
            witness = None
    print(outcome.value if outcome is not None else "open-problem")
    print(f"method: {method}")
    if witness is not None:
        dest = "end" if witness.destination is None else witness.destination
        print(f"witness: reduce {pos.current} to {witness.reduce_to}, go {dest}")
    return 0


def _cmd_check(args: argparse.Namespace) -> int:
    orientation = {"D": "directed", "U": "undirected"}[args.orientation]
    loop_policy = args.loops
    if loop_policy is None:
        loop_policy = "all" if orientation == "directed" else "free"
    env = Envelope(
        orientation,
        ruleset=Ruleset(args.ruleset),
        convention=Convention(args.convention),
        max_vertices=args.max_vertices,
        max_weight=args.max_weight,
        loop_policy=loop_policy,
        samples=None if args.exhaustive else args.samples,
        seed=args.seed,
    )
    result = run_check(
        env,
        mismatch_dir=Path(args.mismatch_dir),
        out=sys.stdout,
    )
    return 0 if result.ok else 2


def _cmd_adjacent_nim(args: argparse.Namespace) -> int:
    from .solver import solve_adjacent_nim

    print(solve_adjacent_nim(args.weights).value)
    return 0


def _cmd_explore(args: argparse.Namespace) -> int:
    print("n,weights,start,outcome")
    for n, weights, start, outcome in explore_circuits(
        args.n_min, args.n_max, args.max_weight, args.min_ones
    ):
        joined = "-".join(map(str, weights))
        print(f"{n},{joined},{start},{outcome.value}")
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    from .service import run_server

    run_server(port=args.port, static_dir=args.static, state_file=args.state_file)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vertexnim",
        description="Solve, verify and play Nim variants on weighted graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve an instance file")
    p_solve.add_argument("file")
    p_solve.add_argument("--method", choices=["auto", "theorem", "oracle"], default="auto")
    p_solve.add_argument("--witness", action="store_true")
    p_solve.set_defaults(func=_cmd_solve)

    p_check = sub.add_parser("check", help="cross-validate solvers against the oracle")
    p_check.add_argument("--orientation", choices=["D", "U"], required=True)
    p_check.add_argument("--ruleset", choices=["vertexnim", "stockman"], default="vertexnim")
    p_check.add_argument("--convention", choices=["normal", "misere"], default="normal")
    p_check.add_argument("--max-vertices", type=int, required=True)
    p_check.add_argument("--max-weight", type=int, required=True)
    group = p_check.add_mutually_exclusive_group(required=True)
    group.add_argument("--exhaustive", action="store_true")
    group.add_argument("--samples", type=int)
    p_check.add_argument("--seed", type=int, default=0)
    p_check.add_argument("--loops", choices=["free", "all", "none"])
    p_check.add_argument("--mismatch-dir", default="mismatches")
    p_check.set_defaults(func=_cmd_check)

    p_nim = sub.add_parser("adjacent-nim", help="circuit formula on a weight list")
    p_nim.add_argument("weights", type=int, nargs="+")
    p_nim.set_defaults(func=_cmd_adjacent_nim)

    p_explore = sub.add_parser(
        "explore-circuits", help="oracle table for circuits with weight-1 vertices"
    )
    p_explore.add_argument("--n-min", type=int, required=True)
    p_explore.add_argument("--n-max", type=int, required=True)
    p_explore.add_argument("--max-weight", type=int, required=True)
    p_explore.add_argument("--min-ones", type=int, default=1)
    p_explore.set_defaults(func=_cmd_explore)

    p_serve = sub.add_parser("serve", help="run the play service")
    p_serve.add_argument("--port", type=int, required=True)
    p_serve.add_argument("--static", default=None)
    p_serve.add_argument("--state-file", default=None)
    p_serve.set_defaults(func=_cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except VertexNimError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
