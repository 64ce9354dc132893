"""Fast exact algorithms for one-task pools.

An instance is a one-task pool (every agent has at most one nonzero
efficiency) when each agent is only ever useful for a single task.  Optimal
play then has two special properties that these algorithms exploit:

* there is always an optimal pick that is the best remaining agent of its
  task, so play inside a task runs down its sorted efficiency list;
* once both players own an agent of some task, the rest of that task's
  agents can be dropped without changing the optimal score.

With two tasks the whole game collapses to a linear backward recurrence.
With more tasks, a dynamic program over reduced task states solves the game
in roughly n^t steps.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Agent, Instance, Player, Position
from .errors import GuardExceededError, PreconditionError

MAX_XP_TASKS = 6

_UNTOUCHED, _OPEN_A, _OPEN_B, _CLOSED_A, _CLOSED_B = range(5)


def is_otp_instance(instance: Instance) -> bool:
    """True when every agent has at most one nonzero efficiency."""
    return all(sum(1 for v in a.eff if v) <= 1 for a in instance.agents)


@dataclass(frozen=True)
class OtpGrouping:
    """Per-task efficiency lists, sorted descending, with agent backrefs."""

    tasks: int
    per_task: tuple[tuple[tuple[int, str], ...], ...]
    zero_agents: tuple[str, ...]

    def effs(self, task: int) -> list[int]:
        return [eff for eff, _ in self.per_task[task]]


def group_by_task(instance: Instance) -> OtpGrouping:
    if not is_otp_instance(instance):
        raise PreconditionError("instance has an agent useful for several tasks")
    buckets: list[list[tuple[int, str]]] = [[] for _ in range(instance.tasks)]
    zeros = []
    for i, agent in enumerate(instance.agents):
        task = next((t for t, v in enumerate(agent.eff) if v), None)
        if task is None:
            zeros.append(agent.id)
        else:
            buckets[task].append((-agent.eff[task], i, agent.eff[task], agent.id))
    per_task = tuple(
        tuple((eff, agent_id) for _, _, eff, agent_id in sorted(bucket))
        for bucket in buckets
    )
    return OtpGrouping(instance.tasks, per_task, tuple(zeros))


# -- two tasks: linear recurrence ---------------------------------------------


def _open_value(x: list[int], y: list[int]) -> int:
    """Game value when the opener takes the best of list ``x`` first.

    Both lists are padded with zero agents to a common length m; padding
    never changes the optimal score.  B(i) is the value seen before the
    second player's i-th turn, A(i) before the opener's i-th turn, working
    backwards from B(m) = x1 - y1.
    """
    m = max(len(x), len(y), 1)
    x = list(x) + [0] * (m - len(x))
    y = list(y) + [0] * (m - len(y))
    if m == 1:
        return x[0] - y[0]
    b = x[0] - y[0]  # B(m)
    for i in range(m, 1, -1):
        a = max(x[0] - x[i - 1] + y[i - 1] - y[0], b)  # A(i)
        if i == 2:
            b = min(x[0] - x[1] + y[0] - y[1], a)  # B(1), second player may also
        else:  # answer inside the opener's own task
            b = min(x[0] - x[i - 1] + y[i - 2] - y[0], a)  # B(i-1)
    return b


def solve_two_task_otp(instance: Instance) -> int:
    """Exact score of a two-task one-task-pool game, in linear time."""
    if instance.tasks != 2:
        raise PreconditionError("the linear algorithm needs exactly two tasks")
    grouping = group_by_task(instance)
    x, y = grouping.effs(0), grouping.effs(1)
    return max(_open_value(x, y), _open_value(y, x))


def two_task_best_opening(instance: Instance) -> str | None:
    """Agent id of an optimal opening pick, when any agent exists."""
    grouping = group_by_task(instance)
    x, y = grouping.effs(0), grouping.effs(1)
    if not instance.agents:
        return None
    vx, vy = _open_value(x, y), _open_value(y, x)
    if x and (vx >= vy or not y):
        return grouping.per_task[0][0][1]
    if y:
        return grouping.per_task[1][0][1]
    return instance.agents[0].id  # only zero agents left: any pick works


# -- any fixed number of tasks: reduced-position dynamic program ---------------


@dataclass(frozen=True)
class XpResult:
    score: int
    best_move: str | None
    visited_states: int
    state_bound: int


def _task_codes(size: int) -> list[tuple[int, int, int]]:
    """All (picks so far, status, counter) summaries of one task's play.

    Within a task, optimal play only ever takes the best remaining agent, so
    a status and one counter capture everything: *untouched*; *open* for the
    one player who has picked in it, with the count of agents still left; or
    *closed*, recording the 1-based rank of the agent the second player got
    there (0 when the owner exhausted the task alone).  Sorted so that
    summaries with more picks come first, which lets the table below fill in
    one forward pass.  A task of n agents has 4n - 1 summaries.
    """
    codes = [(0, _UNTOUCHED, size)]
    for q in range(1, size):
        codes.append((size - q, _OPEN_A, q))
        codes.append((size - q, _OPEN_B, q))
    codes.append((size, _CLOSED_A, 0))
    codes.append((size, _CLOSED_B, 0))
    for q in range(2, size + 1):
        codes.append((q, _CLOSED_A, q))
        codes.append((q, _CLOSED_B, q))
    codes.sort(key=lambda c: -c[0])
    return codes


def xp_search(instance: Instance, max_tasks: int = MAX_XP_TASKS) -> XpResult:
    """Solve a one-task pool by a table over reduced positions.

    A reduced position is who moves next plus one summary per task (see
    _task_codes).  A task closes when the other player answers in it or its
    owner takes its last agent, and the game ends once every task is closed;
    the final score is read off the closed records, since per task the owner
    holds its best agent and the second player holds the recorded one.  The
    table holds both to-move variants of every summary combination - at most
    2 * prod(4 * n_j) entries, each filled from entries one pick deeper - so
    run time and memory grow like n^t for a fixed task count t.
    """
    if instance.tasks > max_tasks:
        raise GuardExceededError(
            f"reduced-state search handles at most {max_tasks} tasks, got {instance.tasks}"
        )
    grouping = group_by_task(instance)
    # Tasks without useful agents never see a pick; leave them out.
    lists = [
        (task, [eff for eff, _ in entries])
        for task, entries in enumerate(grouping.per_task)
        if entries
    ]
    xs = [effs for _, effs in lists]
    sizes = [len(effs) for effs in xs]
    t = len(xs)
    bound = 2
    for size in sizes:
        bound *= 4 * size
    if t == 0:
        only_zeros = instance.agents[0].id if instance.agents else None
        return XpResult(0, only_zeros, 2, bound)

    # Mixed-radix layout: task j's summary is a digit; children of a position
    # differ in one digit by one pick, so they sit at smaller flat indices.
    radix = [len(_task_codes(size)) for size in sizes]
    strides = [0] * t
    acc = 1
    for j in range(t - 1, -1, -1):
        strides[j] = acc
        acc *= radix[j]
    total = acc

    # Per task and summary: flat-index step down to the position after a pick
    # by Alice / Bob (None once closed), and the closed score contribution.
    steps: list[list[tuple[int | None, int | None, int]]] = []
    for j in range(t):
        size = sizes[j]
        codes = _task_codes(size)
        rank = {(kind, q): r for r, (_, kind, q) in enumerate(codes)}
        stride = strides[j]
        top = xs[j][0]
        table = []
        for r, (_, kind, q) in enumerate(codes):
            if kind == _UNTOUCHED:
                a_child = (_OPEN_A, size - 1) if size > 1 else (_CLOSED_A, 0)
                b_child = (_OPEN_B, size - 1) if size > 1 else (_CLOSED_B, 0)
            elif kind == _OPEN_A:
                a_child = (_OPEN_A, q - 1) if q > 1 else (_CLOSED_A, 0)
                b_child = (_CLOSED_A, size - q + 1)
            elif kind == _OPEN_B:
                b_child = (_OPEN_B, q - 1) if q > 1 else (_CLOSED_B, 0)
                a_child = (_CLOSED_B, size - q + 1)
            else:
                second = xs[j][q - 1] if q else 0
                gap = top - second if kind == _CLOSED_A else second - top
                table.append((None, None, gap))
                continue
            table.append(
                ((r - rank[a_child]) * stride, (r - rank[b_child]) * stride, 0)
            )
        steps.append(table)

    # value with Alice / Bob to move, filled children-first.
    val_a = [0] * total
    val_b = [0] * total
    digits = [0] * t
    current = [steps[j][0] for j in range(t)]
    for idx in range(total):
        best_a = best_b = None
        for j in range(t):
            down_a, down_b, _ = current[j]
            if down_a is None:
                continue
            v = val_b[idx - down_a]
            if best_a is None or v > best_a:
                best_a = v
            v = val_a[idx - down_b]
            if best_b is None or v < best_b:
                best_b = v
        if best_a is None:
            ended = sum(part[2] for part in current)
            val_a[idx] = ended
            val_b[idx] = ended
        else:
            val_a[idx] = best_a
            val_b[idx] = best_b
        # Odometer step to the next summary combination.
        for j in range(t - 1, -1, -1):
            digit = digits[j] + 1
            if digit < radix[j]:
                digits[j] = digit
                current[j] = steps[j][digit]
                break
            digits[j] = 0
            current[j] = steps[j][0]

    root = total - 1  # every task untouched, the only position with no picks
    best_move = None
    best_child = None
    for j in range(t):
        down_a = steps[j][radix[j] - 1][0]
        v = val_b[root - down_a]
        if best_child is None or v > best_child:
            best_child = v
            best_move = grouping.per_task[lists[j][0]][0][1]
    return XpResult(
        score=val_a[root],
        best_move=best_move,
        visited_states=2 * total,
        state_bound=bound,
    )


def solve_otp_xp(instance: Instance, max_tasks: int = MAX_XP_TASKS) -> int:
    """Exact score of a one-task-pool game with few tasks."""
    return xp_search(instance, max_tasks).score


# -- closed-task cleanup --------------------------------------------------------


def reduce_same_task(position: Position) -> Position:
    """Drop free agents of tasks where both players already picked.

    Sound on one-task pools: such agents would never be assigned, so the
    optimal score is unchanged.  Returns a position over a smaller instance.
    """
    inst = position.instance
    if not is_otp_instance(inst):
        raise PreconditionError("same-task reduction applies to one-task pools")

    def nonzero_task(agent: Agent) -> int | None:
        return next((t for t, v in enumerate(agent.eff) if v), None)

    owned_a = {nonzero_task(inst.agent(i)) for i in position.picked_a}
    owned_b = {nonzero_task(inst.agent(i)) for i in position.picked_b}
    closed = (owned_a & owned_b) - {None}
    picked = position.picked_a | position.picked_b
    kept = tuple(
        a
        for a in inst.agents
        if a.id in picked or nonzero_task(a) not in closed
    )
    reduced = Instance(inst.tasks, kept, inst.threshold)
    return Position(reduced, position.picked_a, position.picked_b, position.to_move)
