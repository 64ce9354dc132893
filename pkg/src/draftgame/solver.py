"""Exact game solver: memoised minimax with dominance-based move filtering.

The search works on index bitmasks.  States that differ only by swapping
identical agents share one memo entry, keyed by per-duplicate-group counts.
Four value-preserving move filters cut the branching before search:

* a *dominating agent* is so far ahead of the rest of the pool that picking
  it first is optimal for whoever moves;
* a *dominating pair* is a pair where, once either element is taken by
  either player, the other element dominates — optimal play spends the next
  two picks on the pair;
* with exactly two tasks, some per-task maximum of the free pool is always
  an optimal pick;
* agents componentwise-dominated by another free agent never need to be
  picked first.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .core import (
    Agent,
    Player,
    Position,
    assignment_value,
    duplicate_groups,
    static_bounds,
)
from .errors import NodeBudgetExceededError, PreconditionError

_NEG_INF = float("-inf")
_POS_INF = float("inf")


@dataclass(frozen=True)
class SolveOptions:
    """Search switches.  Everything defaults to the fast exact configuration."""

    alpha_beta: bool = True
    dominating_agent: bool = True
    dominating_pair: bool = True
    two_task: bool = True
    pareto: bool = True
    memoize: bool = True
    node_budget: int | None = None
    compute_pv: bool = False

    @classmethod
    def no_pruning(cls, **kwargs) -> "SolveOptions":
        """The plain reference walk: no filters, no windows, no memo."""
        return cls(
            alpha_beta=False,
            dominating_agent=False,
            dominating_pair=False,
            two_task=False,
            pareto=False,
            memoize=False,
            **kwargs,
        )


@dataclass
class SearchStats:
    nodes: int = 0
    memo_hits: int = 0
    dominating_agent_hits: int = 0
    dominating_pair_hits: int = 0
    two_task_hits: int = 0
    pareto_hits: int = 0


@dataclass(frozen=True)
class SolveResult:
    score: int
    best_move: str | None
    pv: tuple[str, ...] | None
    stats: SearchStats


@dataclass(frozen=True)
class MoveEvaluation:
    agent_id: str
    value: int | None
    bounds: tuple[int, int] | None = None

    @property
    def exact(self) -> bool:
        return self.value is not None


class _Flag(enum.Enum):
    EXACT = 0
    LOWER = 1
    UPPER = 2


class _BudgetHit(Exception):
    pass


# -- move filters over plain index lists --------------------------------------


def _best_per_task(effs, tasks: int, picked: list[int]) -> list[int]:
    best = [0] * tasks
    for i in picked:
        eff = effs[i]
        for t in range(tasks):
            if eff[t] > best[t]:
                best[t] = eff[t]
    return best


def _dominates_here(eff, floor, need) -> bool:
    """eff beats the filtered pool: some task improves one side by >= need."""
    return any(eff[t] - floor[t] >= need for t in range(len(floor)))


def _find_dominating(effs, maxeffs, tasks, free, a_best, b_best):
    total = sum(maxeffs[i] for i in free)
    floor = [min(a, b) for a, b in zip(a_best, b_best)]
    for i in free:
        if _dominates_here(effs[i], floor, 2 * (total - maxeffs[i])):
            return i
    return None


def _find_pair(effs, maxeffs, tasks, free, a_best, b_best):
    total = sum(maxeffs[i] for i in free)
    m = len(free)
    for xi in range(m):
        x = free[xi]
        for yi in range(xi + 1, m):
            y = free[yi]
            need = 2 * (total - maxeffs[x] - maxeffs[y])
            if maxeffs[x] < need or maxeffs[y] < need:
                continue
            if all(
                _dominates_here(
                    effs[kept],
                    [
                        min(max(a_best[t], effs[removed][t]), b_best[t])
                        if side == 0
                        else min(a_best[t], max(b_best[t], effs[removed][t]))
                        for t in range(tasks)
                    ],
                    need,
                )
                for removed, kept in ((x, y), (y, x))
                for side in (0, 1)
            ):
                return x, y
    return None


def _two_task(effs, free):
    picks = []
    for t in (0, 1):
        best = max(free, key=lambda i: (effs[i][t], -i))
        if best not in picks:
            picks.append(best)
    return sorted(picks)


def _pareto(effs, free):
    kept = []
    for i in free:
        dominated = False
        for j in free:
            if i == j:
                continue
            ei, ej = effs[i], effs[j]
            if all(a <= b for a, b in zip(ei, ej)) and (ei != ej or j < i):
                dominated = True
                break
        if not dominated:
            kept.append(i)
    return kept


# -- public filter operations --------------------------------------------------


def _position_parts(position: Position):
    inst = position.instance
    effs = [a.eff for a in inst.agents]
    maxeffs = [a.max_eff for a in inst.agents]
    index = {a.id: i for i, a in enumerate(inst.agents)}
    free = sorted(index[a.id] for a in position.free)
    a_idx = [index[i] for i in position.picked_a]
    b_idx = [index[i] for i in position.picked_b]
    return inst, effs, maxeffs, free, a_idx, b_idx


def find_dominating_agent(position: Position) -> Agent | None:
    """A free agent whose single pick is optimal for whoever moves next."""
    inst, effs, maxeffs, free, a_idx, b_idx = _position_parts(position)
    a_best = _best_per_task(effs, inst.tasks, a_idx)
    b_best = _best_per_task(effs, inst.tasks, b_idx)
    i = _find_dominating(effs, maxeffs, inst.tasks, free, a_best, b_best)
    return inst.agents[i] if i is not None else None


def dominating_agents(position: Position) -> tuple[Agent, ...]:
    """Every free agent that passes the single-pick dominance test."""
    inst, effs, maxeffs, free, a_idx, b_idx = _position_parts(position)
    a_best = _best_per_task(effs, inst.tasks, a_idx)
    b_best = _best_per_task(effs, inst.tasks, b_idx)
    total = sum(maxeffs[i] for i in free)
    floor = [min(a, b) for a, b in zip(a_best, b_best)]
    return tuple(
        inst.agents[i]
        for i in free
        if _dominates_here(effs[i], floor, 2 * (total - maxeffs[i]))
    )


def find_dominating_pair(position: Position) -> tuple[Agent, Agent] | None:
    """A free pair that optimal play spends the next two picks on.

    Sufficient test: however one element is removed and granted to either
    player, the other element dominates the rest of the pool.
    """
    inst, effs, maxeffs, free, a_idx, b_idx = _position_parts(position)
    a_best = _best_per_task(effs, inst.tasks, a_idx)
    b_best = _best_per_task(effs, inst.tasks, b_idx)
    pair = _find_pair(effs, maxeffs, inst.tasks, free, a_best, b_best)
    if pair is None:
        return None
    return inst.agents[pair[0]], inst.agents[pair[1]]


def two_task_candidates(position: Position) -> tuple[Agent, ...]:
    """On two-task instances, the per-task maxima; one of them is optimal."""
    inst, effs, _, free, _, _ = _position_parts(position)
    if inst.tasks != 2:
        raise PreconditionError("two-task candidates need exactly two tasks")
    if not free:
        return ()
    return tuple(inst.agents[i] for i in _two_task(effs, free))


def pareto_candidates(position: Position) -> tuple[Agent, ...]:
    """Componentwise-maximal free agents, one per identical class."""
    inst, effs, _, free, _, _ = _position_parts(position)
    return tuple(inst.agents[i] for i in _pareto(effs, free))


# -- the search itself ---------------------------------------------------------


class _Search:
    def __init__(self, position: Position, options: SolveOptions):
        inst = position.instance
        self.tasks = inst.tasks
        self.agents = inst.agents
        self.effs = [a.eff for a in inst.agents]
        self.maxeffs = [a.max_eff for a in inst.agents]
        self.n = inst.n
        index = {a.id: i for i, a in enumerate(inst.agents)}
        self.root_rem = 0
        for a in position.free:
            self.root_rem |= 1 << index[a.id]
        self.root_a = sum(1 << index[i] for i in position.picked_a)
        self.root_b = sum(1 << index[i] for i in position.picked_b)
        self.group_masks = [
            sum(1 << i for i in group) for group in duplicate_groups(inst.agents)
        ]
        self.options = options
        self.budget = options.node_budget
        self.stats = SearchStats()
        self.root_progress: int | None = None
        self.tt: dict = {}
        self.leaf_cache: dict[int, int] = {}

    def _indices(self, mask: int) -> list[int]:
        return [i for i in range(self.n) if mask >> i & 1]

    def _key(self, rem: int, a_mask: int, alice: bool):
        return (
            alice,
            tuple(
                ((rem & g).bit_count(), (a_mask & g).bit_count())
                for g in self.group_masks
            ),
        )

    def _side_value(self, mask: int) -> int:
        cached = self.leaf_cache.get(mask)
        if cached is None:
            side = [self.agents[i] for i in self._indices(mask)]
            cached = assignment_value(side, self.tasks)
            self.leaf_cache[mask] = cached
        return cached

    def _b_mask(self, rem: int, a_mask: int) -> int:
        return (self.root_rem | self.root_a | self.root_b) & ~rem & ~a_mask

    def candidates(self, rem: int, a_mask: int) -> list[int]:
        opts = self.options
        free = self._indices(rem)
        a_best = b_best = None
        if opts.dominating_agent or opts.dominating_pair:
            a_best = _best_per_task(self.effs, self.tasks, self._indices(a_mask))
            b_best = _best_per_task(
                self.effs, self.tasks, self._indices(self._b_mask(rem, a_mask))
            )
        if opts.dominating_agent:
            i = _find_dominating(self.effs, self.maxeffs, self.tasks, free, a_best, b_best)
            if i is not None:
                self.stats.dominating_agent_hits += 1
                return [i]
        if opts.dominating_pair and len(free) > 1:
            pair = _find_pair(self.effs, self.maxeffs, self.tasks, free, a_best, b_best)
            if pair is not None:
                self.stats.dominating_pair_hits += 1
                return list(pair)
        picks = free
        if opts.two_task and self.tasks == 2:
            picks = _two_task(self.effs, picks)
            if len(picks) < len(free):
                self.stats.two_task_hits += 1
        if opts.pareto:
            narrowed = _pareto(self.effs, picks)
            if len(narrowed) < len(picks):
                self.stats.pareto_hits += 1
            picks = narrowed
        # Strongest agents first: good early windows for the cutoffs.
        return sorted(picks, key=lambda i: (-self.maxeffs[i], i))

    def search(self, rem: int, a_mask: int, alice: bool, alpha, beta):
        self.stats.nodes += 1
        if self.budget is not None and self.stats.nodes > self.budget:
            raise _BudgetHit
        if rem == 0:
            return self._side_value(a_mask) - self._side_value(self._b_mask(rem, a_mask))
        key = self._key(rem, a_mask, alice) if self.options.memoize else None
        entry = self.tt.get(key) if key is not None else None
        if entry is not None:
            flag, value = entry
            if flag is _Flag.EXACT:
                self.stats.memo_hits += 1
                return value
            if self.options.alpha_beta:
                if flag is _Flag.LOWER:
                    if value >= beta:
                        self.stats.memo_hits += 1
                        return value
                    alpha = max(alpha, value)
                else:
                    if value <= alpha:
                        self.stats.memo_hits += 1
                        return value
                    beta = min(beta, value)
        use_ab = self.options.alpha_beta
        alpha0, beta0 = alpha, beta
        best = None
        for i in self.candidates(rem, a_mask):
            bit = 1 << i
            child_a = a_mask | bit if alice else a_mask
            value = self.search(rem & ~bit, child_a, not alice, alpha, beta)
            if best is None or (value > best if alice else value < best):
                best = value
            if use_ab:
                if alice:
                    alpha = max(alpha, best)
                else:
                    beta = min(beta, best)
                if alpha >= beta:
                    break
        if key is not None:
            flag = _Flag.EXACT
            if use_ab and best <= alpha0:
                flag = _Flag.UPPER
            elif use_ab and best >= beta0:
                flag = _Flag.LOWER
            self.tt[key] = (flag, best)
        return best

    def pick_at(self, rem: int, a_mask: int, alice: bool) -> tuple[int, int | None]:
        """Exact value and lowest-indexed optimal candidate at a state."""
        if rem == 0:
            return (
                self._side_value(a_mask) - self._side_value(self._b_mask(rem, a_mask)),
                None,
            )
        self.root_progress = None
        best = None
        best_move = None
        for i in sorted(self.candidates(rem, a_mask)):
            bit = 1 << i
            child_a = a_mask | bit if alice else a_mask
            value = self.search(rem & ~bit, child_a, not alice, _NEG_INF, _POS_INF)
            if best is None or (value > best if alice else value < best):
                best = value
                best_move = i
            self.root_progress = best
        return best, best_move


def solve(position: Position, options: SolveOptions | None = None) -> SolveResult:
    """Exact score and an optimal first pick for the player to move.

    Ties between optimal picks go to the lowest agent index among the
    filtered candidates.  Raises :class:`NodeBudgetExceededError` carrying
    sound score bounds when a node budget runs out; every fully evaluated
    root move tightens those bounds.
    """
    opts = options or SolveOptions()
    search = _Search(position, opts)
    alice = position.to_move is Player.ALICE
    try:
        score, move = search.pick_at(search.root_rem, search.root_a, alice)
    except _BudgetHit:
        lo, hi = static_bounds(position)
        progress = search.root_progress
        if progress is not None:
            if alice:
                lo = max(lo, progress)
            else:
                hi = min(hi, progress)
        raise NodeBudgetExceededError(lo, hi, search.stats.nodes) from None
    pv = None
    if opts.compute_pv:
        search.budget = None  # the value is known; finishing the line is cheap
        line = []
        rem, a_mask, turn = search.root_rem, search.root_a, alice
        step = move
        while step is not None:
            line.append(search.agents[step].id)
            bit = 1 << step
            if turn:
                a_mask |= bit
            rem &= ~bit
            turn = not turn
            _, step = search.pick_at(rem, a_mask, turn)
        pv = tuple(line)
    return SolveResult(
        score=score,
        best_move=search.agents[move].id if move is not None else None,
        pv=pv,
        stats=search.stats,
    )


def solve_instance(instance, options: SolveOptions | None = None) -> SolveResult:
    return solve(instance.start_position(), options)


def evaluate_moves(
    position: Position, options: SolveOptions | None = None
) -> dict[str, MoveEvaluation]:
    """Exact child value for every free agent (no move filtering).

    When a node budget runs out mid-way, the remaining agents get sound
    static bound intervals instead of exact values.
    """
    opts = options or SolveOptions()
    search = _Search(position, opts)
    alice = position.to_move is Player.ALICE
    out: dict[str, MoveEvaluation] = {}
    exhausted = False
    for agent in position.free:
        i = position.instance.index_of(agent.id)
        bit = 1 << i
        child_a = search.root_a | bit if alice else search.root_a
        if not exhausted:
            try:
                value = search.search(
                    search.root_rem & ~bit, child_a, not alice, _NEG_INF, _POS_INF
                )
                out[agent.id] = MoveEvaluation(agent.id, value)
                continue
            except _BudgetHit:
                exhausted = True
        lo, hi = static_bounds(position.apply_move(agent.id))
        out[agent.id] = MoveEvaluation(agent.id, None, (lo, hi))
    return out
