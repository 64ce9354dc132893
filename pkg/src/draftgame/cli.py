"""Command-line front door.

Subcommands::

    solve      exact score of an instance or saved position
    oracle     brute-force ground truth (guarded sizes), optional cross-check
    generate   random instance files, general or one-trick-pony
    reduce     compile a quantified formula into a hardness instance
    verify     run the self-check suites
    bench      timing and node-count measurements
    play       line-mode draft against the engine
    serve      run the HTTP session service

Exit codes: 0 = YES / ok, 1 = NO (threshold not met, failed check),
2 = error (bad input, exhausted guard).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from . import checks, oracle, otp, reduction, solver
from .core import Agent, Instance, Player, Position, assignment_value, final_score
from .errors import DraftGameError, NodeBudgetExceededError
from .serialize import (
    agent_to_dict,
    instance_to_dict,
    parse_document,
    serialize_instance,
    serialize_position,
)

EXIT_YES = 0
EXIT_NO = 1
EXIT_ERROR = 2


@dataclass(frozen=True)
class CliConfig:
    """Shared knobs every subcommand sees."""

    subcommand: str
    path: str | None
    seed: int
    budget: int | None
    fmt: str
    verbose: bool


class _CliError(Exception):
    """Bad invocation or input; message goes to stderr, exit code 2."""


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    file = Path(path)
    if not file.exists():
        raise _CliError(f"no such file: {path}")
    return file.read_text()


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _fmt_agent(agent: Agent) -> str:
    return f"{agent.id} ({', '.join(str(v) for v in agent.eff)})"


def _print_report(report: dict, fmt: str, order: list[str]) -> None:
    if fmt == "json":
        print(json.dumps(report, indent=2, sort_keys=True))
        return
    for key in order:
        if key in report:
            print(f"{key.replace('_', ' ')}: {report[key]}")


# -- solve ---------------------------------------------------------------------


def _dispatch_method(position: Position, at_start: bool, args) -> str:
    instance = position.instance
    if args.no_prune or args.pv or not at_start or not otp.is_otp_instance(instance):
        return "general"
    if instance.tasks == 2:
        return "linear"
    if instance.tasks <= otp.MAX_XP_TASKS:
        return "one-trick search"
    return "general"


def cmd_solve(config: CliConfig, args) -> int:
    doc = parse_document(_read_text(config.path))
    if isinstance(doc, Position):
        position, at_start = doc, False
    else:
        position, at_start = doc.start_position(), True
    instance = position.instance

    method = _dispatch_method(position, at_start, args)
    report: dict = {"agents": instance.n, "tasks": instance.tasks, "method": method}
    if method == "linear":
        report["note"] = "routed to the linear two-task algorithm"
        score = otp.solve_two_task_otp(instance)
        best = otp.two_task_best_opening(instance)
    elif method == "one-trick search":
        report["note"] = "routed to the one-efficiency-per-agent search"
        result = otp.xp_search(instance)
        score, best = result.score, result.best_move
        report["visited_states"] = result.visited_states
    else:
        base = solver.SolveOptions.no_pruning if args.no_prune else solver.SolveOptions
        options = base(node_budget=config.budget, compute_pv=args.pv)
        try:
            solved = solver.solve(position, options)
        except NodeBudgetExceededError as exc:
            return _solve_out_of_budget(config, args, instance, exc)
        score, best = solved.score, solved.best_move
        if args.pv:
            report["pv"] = " ".join(solved.pv)
        stats = solved.stats
        report["nodes"] = stats.nodes
        if config.verbose:
            report["memo_hits"] = stats.memo_hits
            report["filter_hits"] = (
                f"dominating {stats.dominating_agent_hits}, pair {stats.dominating_pair_hits},"
                f" two-task {stats.two_task_hits}, pareto {stats.pareto_hits}"
            )

    report["score"] = score
    if best is not None:
        agent = instance.agent(best)
        report["best"] = agent_to_dict(agent) if config.fmt == "json" else _fmt_agent(agent)
    threshold = args.threshold if args.threshold is not None else instance.threshold
    code = EXIT_YES
    if threshold is not None:
        met = score >= threshold
        report["threshold"] = threshold
        report["meets_threshold"] = "YES" if met else "NO"
        code = EXIT_YES if met else EXIT_NO
    _print_report(
        report,
        config.fmt,
        ["agents", "tasks", "method", "note", "score", "best", "pv",
         "nodes", "memo_hits", "filter_hits", "visited_states",
         "threshold", "meets_threshold"],
    )
    return code


def _solve_out_of_budget(config: CliConfig, args, instance: Instance,
                         exc: NodeBudgetExceededError) -> int:
    """The budget ran out; answer the threshold question if the bounds settle it."""
    threshold = args.threshold if args.threshold is not None else instance.threshold
    report: dict = {
        "nodes": exc.nodes,
        "score_bounds": f"[{exc.lower}, {exc.upper}]",
    }
    if threshold is not None and exc.lower >= threshold:
        report.update(threshold=threshold, meets_threshold="YES",
                      note="budget exhausted; lower bound already meets the threshold")
        code = EXIT_YES
    elif threshold is not None and exc.upper < threshold:
        report.update(threshold=threshold, meets_threshold="NO",
                      note="budget exhausted; upper bound already falls short")
        code = EXIT_NO
    else:
        report["note"] = "node budget exhausted before the score was settled"
        code = EXIT_ERROR
    _print_report(report, config.fmt,
                  ["note", "nodes", "score_bounds", "threshold", "meets_threshold"])
    return code


# -- oracle ----------------------------------------------------------------------


def cmd_oracle(config: CliConfig, args) -> int:
    doc = parse_document(_read_text(config.path))
    position = doc if isinstance(doc, Position) else doc.start_position()
    score = oracle.brute_force_position_score(position)
    report: dict = {"score": score, "method": "brute force"}
    code = EXIT_YES
    if args.check:
        fast = solver.solve(position).score
        report["solver_score"] = fast
        report["agreement"] = "YES" if fast == score else "NO"
        if fast != score:
            code = EXIT_NO
    _print_report(report, config.fmt, ["method", "score", "solver_score", "agreement"])
    return code


# -- generate --------------------------------------------------------------------


def cmd_generate(config: CliConfig, args) -> int:
    maker = oracle.random_otp_instance if args.otp else oracle.random_instance
    instance = maker(args.agents, args.tasks, args.max_eff, config.seed)
    if args.threshold is not None:
        instance = Instance(instance.tasks, instance.agents, args.threshold)
    _write_text(args.output, serialize_instance(instance))
    return EXIT_YES


# -- reduce ----------------------------------------------------------------------


def cmd_reduce(config: CliConfig, args) -> int:
    formula = reduction.parse_qdimacs(_read_text(config.path))
    if not args.no_normalize:
        formula = reduction.normalize_qbf(formula)
    gadget = reduction.build_draft_instance(formula)
    _write_text(args.output, serialize_instance(gadget.instance))
    if args.map is not None:
        naming = {
            "threshold": str(gadget.threshold),
            "tasks": gadget.task_index,
            "agents": gadget.agent_index,
            "chain_values": {k: str(v) for k, v in gadget.efficiency_table.items()},
        }
        _write_text(args.map, json.dumps(naming, indent=2, sort_keys=True) + "\n")
    if config.verbose:
        print(
            f"compiled {formula.pairs} variable pairs, {formula.clause_count} clauses"
            f" -> {gadget.instance.n} agents, {gadget.instance.tasks} tasks",
            file=sys.stderr,
        )
    return EXIT_YES


# -- verify ----------------------------------------------------------------------


def cmd_verify(config: CliConfig, args) -> int:
    names = [args.suite] if args.suite else None
    started = time.perf_counter()
    results = checks.run_suites(names, config.seed)
    if config.fmt == "json":
        print(json.dumps([r.__dict__ for r in results], indent=2))
    else:
        for r in results:
            mark = "ok  " if r.passed else "FAIL"
            print(f"{mark} [{r.suite}] {r.name} - {r.detail} ({r.elapsed:.1f}s)")
        failures = sum(not r.passed for r in results)
        verdict = "all passed" if failures == 0 else f"{failures} FAILED"
        print(
            f"{len(results)} checks, {verdict}, seed {config.seed}"
            f" ({time.perf_counter() - started:.1f}s)"
        )
    return EXIT_YES if all(r.passed for r in results) else EXIT_NO


# -- bench -----------------------------------------------------------------------


def cmd_bench(config: CliConfig, args) -> int:
    sizes = [int(s) for s in args.sizes.split(",")]
    if args.subject == "otp":
        rows = []
        for tasks in (2, 3):
            for n in sizes:
                instance = oracle.random_otp_instance(n, tasks, 10, config.seed)
                start = time.perf_counter()
                result = otp.xp_search(instance)
                rows.append({
                    "tasks": tasks, "agents": n,
                    "states": result.visited_states,
                    "seconds": round(time.perf_counter() - start, 4),
                })
        slopes = checks.measure_xp_growth(tuple(sizes), (2, 3), config.seed)
        if config.fmt == "json":
            print(json.dumps({"rows": rows, "slopes": {str(t): s for t, s in slopes.items()}},
                             indent=2))
        else:
            for row in rows:
                print(f"t={row['tasks']} n={row['agents']:>4} "
                      f"states={row['states']:>9} {row['seconds']:.3f}s")
            for t, slope in slopes.items():
                print(f"runtime slope at t={t}: {slope:.2f}")
        return EXIT_YES

    # subject == "solver": filters on vs off over the shared corpus
    rows = []
    for i, instance in enumerate(checks.sample_corpus(config.seed)):
        pruned = solver.solve_instance(instance)
        plain = solver.solve_instance(instance, solver.SolveOptions.no_pruning())
        rows.append({
            "instance": i, "agents": instance.n, "tasks": instance.tasks,
            "score": pruned.score,
            "nodes_pruned": pruned.stats.nodes, "nodes_plain": plain.stats.nodes,
        })
    if config.fmt == "json":
        print(json.dumps(rows, indent=2))
    else:
        for row in rows:
            ratio = row["nodes_plain"] / max(row["nodes_pruned"], 1)
            print(f"#{row['instance']:>2} n={row['agents']} t={row['tasks']} "
                  f"score={row['score']:>3} nodes {row['nodes_pruned']:>6} vs "
                  f"{row['nodes_plain']:>8} plain ({ratio:.1f}x)")
    return EXIT_YES


# -- play ------------------------------------------------------------------------


def _provisional(position: Position) -> str:
    inst = position.instance
    a = assignment_value([inst.agent(i) for i in position.picked_a], inst.tasks)
    b = assignment_value([inst.agent(i) for i in position.picked_b], inst.tasks)
    return f"provisional {a} - {b} = {a - b}"


def _engine_reply(position: Position, budget: int | None) -> str:
    try:
        best = solver.solve(position, solver.SolveOptions(node_budget=budget)).best_move
    except NodeBudgetExceededError:
        print("(node budget exhausted; finishing the exact search)")
        best = solver.solve(position).best_move
    return best


def _print_board(position: Position) -> None:
    inst = position.instance
    owner = {i: "A" for i in position.picked_a}
    owner.update({i: "B" for i in position.picked_b})
    for agent in inst.agents:
        tag = owner.get(agent.id, "-")
        print(f"  {tag}  {_fmt_agent(agent)}")


def cmd_play(config: CliConfig, args) -> int:
    doc = parse_document(_read_text(config.path))
    position = doc if isinstance(doc, Position) else doc.start_position()
    human = Player.ALICE if args.side == "alice" else Player.BOB
    print(f"you are {human.value}; enter an agent id, or 'hint', 'board', 'quit'")
    _print_board(position)

    while not position.is_terminal:
        if position.to_move is not human:
            pick = _engine_reply(position, config.budget)
            position = position.apply_move(pick)
            print(f"engine picks {_fmt_agent(position.instance.agent(pick))}")
            print(_provisional(position))
            continue
        try:
            line = input(f"{human.value}> ").strip()
        except EOFError:
            line = "quit"
        if line == "quit":
            save = args.save or "draftgame-saved-position.json"
            Path(save).write_text(serialize_position(position))
            print(f"position saved to {save}")
            return EXIT_YES
        if line == "board":
            _print_board(position)
            continue
        if line == "hint":
            evals = solver.evaluate_moves(position)
            reverse = position.to_move is Player.ALICE
            ranked = sorted(
                evals.values(),
                key=lambda e: e.value if e.exact else sum(e.bounds) / 2,
                reverse=reverse,
            )
            for entry in ranked:
                agent = position.instance.agent(entry.agent_id)
                shown = entry.value if entry.exact else f"in {list(entry.bounds)}"
                print(f"  {_fmt_agent(agent)} -> {shown}")
            continue
        try:
            position = position.apply_move(line)
        except DraftGameError as exc:
            print(f"illegal pick: {exc}")
            continue
        print(_provisional(position))

    inst = position.instance
    score = final_score(
        (inst.agent(i) for i in position.picked_a),
        (inst.agent(i) for i in position.picked_b),
        inst.tasks,
    )
    print(f"final score {score}")
    return EXIT_YES


# -- serve -----------------------------------------------------------------------


def cmd_serve(config: CliConfig, args) -> int:
    import os
    import tempfile

    import uvicorn

    from .service import create_app

    if args.no_snapshots:
        snapshots = None
    elif args.snapshots is not None:
        snapshots = Path(args.snapshots)
    else:
        snapshots = Path(tempfile.mkdtemp(prefix="draftgame-sessions-"))
    if snapshots is not None:
        print(f"session snapshots in {snapshots}", file=sys.stderr)
    static = Path(args.static) if args.static else Path("frontend/dist")
    if static.is_dir():
        print(f"serving UI from {static}", file=sys.stderr)
    port = args.port if args.port is not None else int(os.environ.get("DRAFTGAME_PORT", "8080"))
    uvicorn.run(
        create_app(snapshot_dir=snapshots, static_dir=static),
        host=args.host,
        port=port,
    )
    return EXIT_YES


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="draftgame",
        description="Exact solvers, generators and checkers for the draft game.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p: argparse.ArgumentParser, path: bool = True) -> None:
        if path:
            p.add_argument("path", help="instance or position file ('-' for stdin)")
        p.add_argument("--seed", type=int, default=1)
        p.add_argument("--budget", type=int, default=None,
                       help="node budget for the general search")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("-v", "--verbose", action="store_true")

    p = sub.add_parser("solve", help="exact score and best pick")
    common(p)
    p.add_argument("--threshold", type=int, default=None,
                   help="exit 0 iff the score reaches this value")
    p.add_argument("--pv", action="store_true", help="print a full optimal line")
    p.add_argument("--no-prune", action="store_true",
                   help="plain reference search: no filters, windows or memo")
    p.set_defaults(handler=cmd_solve)

    p = sub.add_parser("oracle", help="brute-force ground truth (guarded sizes)")
    common(p)
    p.add_argument("--check", action="store_true", help="also run the solver and compare")
    p.set_defaults(handler=cmd_oracle)

    p = sub.add_parser("generate", help="write a random instance file")
    common(p, path=False)
    p.add_argument("--agents", type=int, default=6)
    p.add_argument("--tasks", type=int, default=2)
    p.add_argument("--max-eff", type=int, default=10)
    p.add_argument("--otp", action="store_true",
                   help="at most one nonzero efficiency per agent")
    p.add_argument("--threshold", type=int, default=None)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(handler=cmd_generate)

    p = sub.add_parser("reduce", help="compile a QDIMACS prefix game into an instance")
    common(p)
    p.add_argument("--no-normalize", action="store_true",
                   help="require twice-positive-once-negative input as is")
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--map", default=None, help="write the naming tables here")
    p.set_defaults(handler=cmd_reduce)

    p = sub.add_parser("verify", help="run the self-check suites")
    common(p, path=False)
    p.add_argument("--suite", choices=sorted(checks.SUITES), default=None)
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("bench", help="timing and node-count measurements")
    common(p, path=False)
    p.add_argument("subject", choices=("otp", "solver"))
    p.add_argument("--sizes", default="20,40,80,160")
    p.set_defaults(handler=cmd_bench)

    p = sub.add_parser("play", help="line-mode draft against the engine")
    common(p)
    p.add_argument("--side", choices=("alice", "bob"), default="alice")
    p.add_argument("--save", default=None, help="where 'quit' stores the position")
    p.set_defaults(handler=cmd_play)

    p = sub.add_parser("serve", help="run the HTTP session service")
    common(p, path=False)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=None,
                   help="default: DRAFTGAME_PORT or 8080")
    p.add_argument("--snapshots", default=None, help="session snapshot directory")
    p.add_argument("--no-snapshots", action="store_true")
    p.add_argument("--static", default=None,
                   help="UI asset directory (default: frontend/dist when present)")
    p.set_defaults(handler=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    config = CliConfig(
        subcommand=args.subcommand,
        path=getattr(args, "path", None),
        seed=args.seed,
        budget=args.budget,
        fmt=args.format,
        verbose=args.verbose,
    )
    try:
        return args.handler(config, args)
    except (_CliError, DraftGameError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
