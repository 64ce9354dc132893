"""Verification suites behind the ``verify`` subcommand.

Each suite re-checks the promises its module makes: random batteries
cross-validated against the brute-force oracle, score-bound and zero-mean
properties, soundness of every move filter, the forced-order replay of
generated hardness instances, and the state-count guarantee of the
one-trick-pony search.  Every battery is deterministic per seed, so a
reported failure can be replayed exactly.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from typing import Callable

from . import oracle, otp, reduction, solver
from .core import Agent, Instance, final_score, score_upper_bound
from .errors import DraftGameError


class CheckFailure(Exception):
    """A verified property does not hold; the message says where."""


def _ensure(condition: bool, message: str) -> None:
    if not condition:
        raise CheckFailure(message)


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    passed: bool
    detail: str
    elapsed: float


class _Suite:
    """Collects named checks, timing each and turning failures into results."""

    def __init__(self, name: str, seed: int):
        self.name = name
        self.seed = seed
        self.results: list[CheckResult] = []

    def check(self, name: str, body: Callable[[], str]) -> None:
        start = time.perf_counter()
        try:
            detail, passed = body(), True
        except (CheckFailure, DraftGameError) as exc:
            detail, passed = str(exc), False
        self.results.append(
            CheckResult(self.name, name, passed, detail, time.perf_counter() - start)
        )


# -- shared fixtures -----------------------------------------------------------

# Two small instances with known exact scores, used across the suites.  The
# two-task one has a unique optimal line X, Y, Z ending with Alice's pair
# valued 8; the three-task one is solved only by opening with the agent that
# maximises none of the tasks.
EXAMPLE_TWO_TASKS = Instance(2, (Agent("X", (4, 7)), Agent("Y", (5, 5)), Agent("Z", (0, 4))))
EXAMPLE_TWO_TASKS_SCORE = 3
EXAMPLE_THREE_TASKS = Instance(
    3,
    (
        Agent("X1", (5, 0, 0)),
        Agent("X2", (0, 5, 0)),
        Agent("X3", (0, 0, 5)),
        Agent("X4", (4, 4, 4)),
        Agent("X5", (0, 3, 3)),
        Agent("X6", (3, 0, 0)),
    ),
)
EXAMPLE_THREE_TASKS_SCORE = 2

# The node-count cut demanded of the full filter stack on the three-task
# example, relative to the plain unpruned walk.
PRUNING_RATIO_TARGET = 5.0


def _checked_solve(instance: Instance, options: solver.SolveOptions | None = None) -> int:
    """Solve and enforce the score bounds 0 <= sc <= max single efficiency."""
    sc = solver.solve_instance(instance, options).score
    upper = score_upper_bound(instance)
    _ensure(0 <= sc <= upper, f"score {sc} outside [0, {upper}] for {instance!r}")
    return sc


def _checked_brute(instance: Instance) -> int:
    sc = oracle.brute_force_score(instance)
    upper = score_upper_bound(instance)
    _ensure(0 <= sc <= upper, f"brute-force score {sc} outside [0, {upper}]")
    return sc


def sample_corpus(seed: int, mixed: int = 30, one_trick: int = 10) -> list[Instance]:
    """The shared small-instance corpus: both known examples plus random pools."""
    rng = random.Random(seed)
    corpus = [EXAMPLE_TWO_TASKS, EXAMPLE_THREE_TASKS]
    for _ in range(mixed):
        corpus.append(
            oracle.random_instance(rng.randint(0, 7), rng.randint(1, 3), 10, rng.randrange(10**9))
        )
    for _ in range(one_trick):
        corpus.append(
            oracle.random_otp_instance(rng.randint(0, 8), 2, 10, rng.randrange(10**9))
        )
    return corpus


# -- solver suite --------------------------------------------------------------


def _solver_known_two_tasks() -> str:
    result = solver.solve_instance(EXAMPLE_TWO_TASKS, solver.SolveOptions(compute_pv=True))
    _ensure(result.score == EXAMPLE_TWO_TASKS_SCORE, f"score {result.score}, expected 3")
    _ensure(result.pv == ("X", "Y", "Z"), f"principal variation {result.pv}")
    evals = solver.evaluate_moves(EXAMPLE_TWO_TASKS.start_position())
    best = [a for a, e in evals.items() if e.value == result.score]
    _ensure(best == ["X"], f"optimal openings {best}, expected only X")
    return "score 3 via the unique line X > Y > Z"


def _solver_known_three_tasks() -> str:
    sc = _checked_solve(EXAMPLE_THREE_TASKS)
    _ensure(sc == EXAMPLE_THREE_TASKS_SCORE, f"score {sc}, expected 2")
    _ensure(_checked_brute(EXAMPLE_THREE_TASKS) == sc, "oracle disagrees")
    evals = solver.evaluate_moves(EXAMPLE_THREE_TASKS.start_position())
    best = [a for a, e in evals.items() if e.value == sc]
    _ensure(best == ["X4"], f"optimal openings {best}, expected only X4")
    return "score 2, (4,4,4) the only optimal opening, oracle agrees"


def _solver_filters_individually_off(seed: int) -> Callable[[], str]:
    def body() -> str:
        corpus = sample_corpus(seed)
        variants = {
            "alpha_beta": solver.SolveOptions(alpha_beta=False),
            "dominating_agent": solver.SolveOptions(dominating_agent=False),
            "dominating_pair": solver.SolveOptions(dominating_pair=False),
            "two_task": solver.SolveOptions(two_task=False),
            "pareto": solver.SolveOptions(pareto=False),
            "memoize": solver.SolveOptions(memoize=False),
        }
        for inst in corpus:
            reference = _checked_solve(inst)
            for label, options in variants.items():
                got = _checked_solve(inst, options)
                _ensure(
                    got == reference,
                    f"disabling {label} changed the score {reference} -> {got} on {inst!r}",
                )
        return f"{len(variants)} single-off variants x {len(corpus)} instances, seed {seed}"

    return body


def _solver_pruning_ratio() -> str:
    pruned = solver.solve_instance(EXAMPLE_THREE_TASKS).stats.nodes
    plain = solver.solve_instance(EXAMPLE_THREE_TASKS, solver.SolveOptions.no_pruning()).stats.nodes
    ratio = plain / pruned
    _ensure(
        ratio >= PRUNING_RATIO_TARGET,
        f"node ratio {ratio:.1f}x below the {PRUNING_RATIO_TARGET}x target",
    )
    return f"node ratio {ratio:.1f}x ({plain} plain vs {pruned} pruned)"


def run_solver_suite(seed: int) -> list[CheckResult]:
    suite = _Suite("solver", seed)
    suite.check("known two-task instance solved exactly", _solver_known_two_tasks)
    suite.check("known three-task instance solved exactly", _solver_known_three_tasks)
    suite.check(
        "disabling any one filter never changes a score",
        _solver_filters_individually_off(seed),
    )
    suite.check("full filter stack cuts the node count", _solver_pruning_ratio)
    return suite.results


# -- otp suite -------------------------------------------------------------------


def _otp_two_task_battery(seed: int, count: int) -> Callable[[], str]:
    def body() -> str:
        rng = random.Random(seed)
        for case in range(count):
            inst = oracle.random_otp_instance(rng.randint(0, 10), 2, 10, rng.randrange(10**9))
            linear = otp.solve_two_task_otp(inst)
            stepped = otp.solve_otp_xp(inst)
            brute = _checked_brute(inst)
            _ensure(
                linear == stepped == brute,
                f"case {case}: linear {linear}, search {stepped}, oracle {brute} on {inst!r}",
            )
        return f"{count} two-task pools, linear == search == oracle, seed {seed}"

    return body


def _otp_multi_task_battery(seed: int, count: int) -> Callable[[], str]:
    def body() -> str:
        rng = random.Random(seed)
        for case in range(count):
            tasks = rng.randint(1, 3)
            inst = oracle.random_otp_instance(rng.randint(0, 9), tasks, 10, rng.randrange(10**9))
            stepped = otp.solve_otp_xp(inst)
            brute = _checked_brute(inst)
            _ensure(stepped == brute, f"case {case}: search {stepped} vs oracle {brute} on {inst!r}")
        return f"{count} pools with 1-3 tasks, search == oracle, seed {seed}"

    return body


def _otp_state_bound(seed: int) -> Callable[[], str]:
    def body() -> str:
        rng = random.Random(seed)
        worst = 0.0
        cases = [(rng.randint(0, 12), rng.randint(1, 4)) for _ in range(40)]
        cases += [(30, 2), (40, 2), (30, 3), (20, 4)]
        for n, tasks in cases:
            inst = oracle.random_otp_instance(n, tasks, 10, rng.randrange(10**9))
            result = otp.xp_search(inst)
            _ensure(
                result.visited_states <= result.state_bound,
                f"{result.visited_states} states visited, bound {result.state_bound} "
                f"(n={n}, tasks={tasks})",
            )
            if result.state_bound:
                worst = max(worst, result.visited_states / result.state_bound)
        return f"{len(cases)} pools, worst visited/bound {worst:.2f}"

    return body


def _otp_best_openings(seed: int, count: int) -> Callable[[], str]:
    def body() -> str:
        rng = random.Random(seed)
        for case in range(count):
            tasks = rng.randint(1, 3)
            inst = oracle.random_otp_instance(rng.randint(1, 8), tasks, 10, rng.randrange(10**9))
            result = otp.xp_search(inst)
            _ensure(result.best_move is not None, f"case {case}: no move on nonempty pool")
            child = inst.start_position().apply_move(result.best_move)
            value = oracle.brute_force_position_score(child)
            _ensure(
                value == result.score,
                f"case {case}: opening {result.best_move} reaches {value}, claimed {result.score}",
            )
            if tasks == 2:
                opening = otp.two_task_best_opening(inst)
                child = inst.start_position().apply_move(opening)
                value = oracle.brute_force_position_score(child)
                _ensure(
                    value == result.score,
                    f"case {case}: linear opening {opening} reaches {value}, "
                    f"expected {result.score}",
                )
        return f"{count} best openings replayed against the oracle, seed {seed}"

    return body


def measure_xp_growth(sizes: tuple[int, ...] = (20, 40, 80, 160),
                      tasks: tuple[int, ...] = (2, 3),
                      seed: int = 1) -> dict[int, float]:
    """Log-log slope of xp_search runtime against pool size, per task count."""
    slopes: dict[int, float] = {}
    for t in tasks:
        points = []
        for n in sizes:
            inst = oracle.random_otp_instance(n, t, 10, seed)
            start = time.perf_counter()
            otp.xp_search(inst)
            points.append((math.log(n), math.log(time.perf_counter() - start)))
        mean_x = sum(x for x, _ in points) / len(points)
        mean_y = sum(y for _, y in points) / len(points)
        slope = sum((x - mean_x) * (y - mean_y) for x, y in points) / sum(
            (x - mean_x) ** 2 for x, _ in points
        )
        slopes[t] = slope
    return slopes


def _otp_growth(seed: int) -> Callable[[], str]:
    def body() -> str:
        slopes = measure_xp_growth(seed=seed)
        for t, slope in slopes.items():
            _ensure(
                abs(slope - t) <= 0.5,
                f"runtime slope {slope:.2f} for {t} tasks, expected {t} +- 0.5",
            )
        shown = ", ".join(f"{slope:.2f} at t={t}" for t, slope in slopes.items())
        return f"log-log runtime slopes {shown} over n in 20..160"

    return body


def run_otp_suite(seed: int) -> list[CheckResult]:
    suite = _Suite("otp", seed)
    suite.check(
        "two-task pools: linear, search and oracle agree",
        _otp_two_task_battery(seed, 500),
    )
    suite.check(
        "multi-task pools: search and oracle agree",
        _otp_multi_task_battery(seed, 150),
    )
    suite.check("visited states stay within the bound", _otp_state_bound(seed))
    suite.check("recommended openings are optimal", _otp_best_openings(seed, 60))
    suite.check("runtime grows polynomially with pool size", _otp_growth(seed))
    return suite.results


# -- oracle suite ----------------------------------------------------------------


def _oracle_cross_validation(seed: int, count: int) -> Callable[[], str]:
    def body() -> str:
        rng = random.Random(seed)
        instances = [EXAMPLE_TWO_TASKS, EXAMPLE_THREE_TASKS]
        for _ in range(count):
            instances.append(
                oracle.random_instance(rng.randint(0, 8), rng.randint(1, 3), 10, rng.randrange(10**9))
            )
        for inst in instances:
            fast = _checked_solve(inst)
            slow = _checked_brute(inst)
            _ensure(fast == slow, f"solver {fast} vs oracle {slow} on {inst!r}")
        return f"{len(instances)} instances, solver == oracle, seed {seed}"

    return body


def _oracle_zero_mean(seed: int, count: int) -> Callable[[], str]:
    def body() -> str:
        rng = random.Random(seed)
        for case in range(count):
            inst = oracle.random_instance(rng.randint(1, 4), rng.randint(1, 2), 10, rng.randrange(10**9))
            doubled = oracle.game_sum([inst, inst])
            sc = oracle.brute_force_score(doubled)
            _ensure(sc == 0, f"case {case}: doubled pool scores {sc}, expected 0")
            _ensure(
                oracle.mean_estimate(inst, 2) == 0,
                f"case {case}: two-copy mean is not 0",
            )
        return f"{count} doubled pools all score exactly 0, seed {seed}"

    return body


def _oracle_pairing_playouts(seed: int, count: int) -> Callable[[], str]:
    def body() -> str:
        rng = random.Random(seed)
        for case in range(count):
            inst = oracle.random_instance(rng.randint(1, 4), rng.randint(1, 2), 10, rng.randrange(10**9))
            doubled, table = oracle.mirror_pairing(inst, 2)
            position = doubled.start_position()
            while not position.is_terminal:
                pick = rng.choice(position.free).id
                position = position.apply_move(pick)
                position = position.apply_move(oracle.pairing_bob_move(position, pick, table))
            a = [doubled.agent(i) for i in position.picked_a]
            b = [doubled.agent(i) for i in position.picked_b]
            sc = final_score(a, b, doubled.tasks)
            _ensure(sc == 0, f"case {case}: playout ended at {sc}, expected exactly 0")
        return f"{count} random playouts against the pairing strategy all end at 0, seed {seed}"

    return body


def _oracle_single_copy_mean(seed: int) -> Callable[[], str]:
    def body() -> str:
        rng = random.Random(seed)
        for case in range(20):
            inst = oracle.random_instance(rng.randint(0, 6), rng.randint(1, 3), 10, rng.randrange(10**9))
            _ensure(
                oracle.mean_estimate(inst, 1) == oracle.brute_force_score(inst),
                f"case {case}: one-copy mean differs from the plain score",
            )
        return "20 instances, one-copy mean equals the plain score"

    return body


def run_oracle_suite(seed: int) -> list[CheckResult]:
    suite = _Suite("oracle", seed)
    suite.check(
        "solver matches brute force on random pools",
        _oracle_cross_validation(seed, 200),
    )
    suite.check("doubled pools have zero mean", _oracle_zero_mean(seed, 50))
    suite.check(
        "pairing strategy holds every playout at zero",
        _oracle_pairing_playouts(seed, 50),
    )
    suite.check("one-copy mean reproduces the score", _oracle_single_copy_mean(seed))
    return suite.results


# -- reduction suite --------------------------------------------------------------

# Node allowance per generated instance; the corpus needs ~25k nodes each.
CORPUS_NODE_BUDGET = 2_000_000


def _reduction_corpus_equivalence() -> str:
    formulas = reduction.qbf_corpus()
    options = solver.SolveOptions(node_budget=CORPUS_NODE_BUDGET)
    worst_nodes = 0
    for formula in formulas:
        gadget = reduction.build_draft_instance(formula)
        result = solver.solve_instance(gadget.instance, options)
        worst_nodes = max(worst_nodes, result.stats.nodes)
        satisfier_wins = reduction.qbf_game_winner(formula) is reduction.QbfPlayer.SATISFIER
        _ensure(
            (result.score >= gadget.threshold) == satisfier_wins,
            f"{formula}: score {result.score} vs threshold {gadget.threshold}, "
            f"winner {'satisfier' if satisfier_wins else 'falsifier'}",
        )
    return f"{len(formulas)} formulas, score >= threshold iff satisfier wins, max {worst_nodes} nodes"


def _reduction_forced_order() -> str:
    formulas = reduction.qbf_corpus()
    picks = [formulas[0], formulas[len(formulas) // 2], formulas[-1]]
    picks.append(reduction.QbfFormula(0, ()))
    plies = 0
    for formula in picks:
        report = reduction.verify_forced_order(reduction.build_draft_instance(formula))
        _ensure(
            report.ok,
            f"{formula}: forced order breaks at {report.first_failure}",
        )
        plies += len(report.plies)
    return f"{len(picks)} gadgets replayed, all {plies} scripted plies forced"


def _reduction_normalization() -> str:
    for formula in reduction.qbf_corpus():
        before = reduction.qbf_game_winner(formula)
        after = reduction.qbf_game_winner(reduction.normalize_qbf(formula))
        _ensure(before is after, f"{formula}: winner changed by normalization")
    return "normalization preserves the game winner on the whole corpus"


def run_reduction_suite(seed: int) -> list[CheckResult]:
    suite = _Suite("reduction", seed)
    suite.check(
        "generated instances decide the formula game",
        _reduction_corpus_equivalence,
    )
    suite.check("setup plies forced, pair steps detected", _reduction_forced_order)
    suite.check("normalization preserves winners", _reduction_normalization)
    return suite.results


# -- entry point -------------------------------------------------------------------

SUITES: dict[str, Callable[[int], list[CheckResult]]] = {
    "solver": run_solver_suite,
    "otp": run_otp_suite,
    "oracle": run_oracle_suite,
    "reduction": run_reduction_suite,
}


def run_suites(names: list[str] | None = None, seed: int = 1) -> list[CheckResult]:
    """Run the named suites (all of them by default) and collect results."""
    chosen = names or list(SUITES)
    unknown = [n for n in chosen if n not in SUITES]
    if unknown:
        raise ValueError(f"unknown suites {unknown}; available: {sorted(SUITES)}")
    results: list[CheckResult] = []
    for name in chosen:
        results.extend(SUITES[name](seed))
    return results
