"""Reference implementations used to check the fast code paths.

Everything in here favours obviousness over speed: the game tree is searched
without any pruning, and leaf values are found by enumerating injective
task->agent maps directly instead of going through the matching kernel.
Keeping these routes separate is the point — a bug would have to appear in
two unrelated implementations to slip through the comparison tests.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .core import Agent, Instance, Player, Position
from .errors import GuardExceededError, InvalidPositionError, PreconditionError

MAX_BRUTE_AGENTS = 12
MAX_BRUTE_TASKS = 4


def enumerate_assignment_value(effs: Sequence[Sequence[int]], tasks: int) -> int:
    """Best total over all injective task->agent maps, by exhaustion."""
    best = 0
    used = [False] * len(effs)

    def go(task: int, total: int) -> None:
        nonlocal best
        if task == tasks:
            best = max(best, total)
            return
        go(task + 1, total)  # leave this task unassigned
        for i, eff in enumerate(effs):
            if not used[i]:
                used[i] = True
                go(task + 1, total + eff[task])
                used[i] = False

    go(0, 0)
    return best


def brute_force_score(instance: Instance) -> int:
    """Optimal score by plain alternating exhaustion from the start."""
    return brute_force_position_score(instance.start_position())


def brute_force_position_score(position: Position) -> int:
    inst = position.instance
    if inst.n > MAX_BRUTE_AGENTS:
        raise GuardExceededError(
            f"brute force handles at most {MAX_BRUTE_AGENTS} agents, got {inst.n}"
        )
    if inst.tasks > MAX_BRUTE_TASKS:
        raise GuardExceededError(
            f"brute force handles at most {MAX_BRUTE_TASKS} tasks, got {inst.tasks}"
        )
    effs = [a.eff for a in inst.agents]
    index = {a.id: i for i, a in enumerate(inst.agents)}
    full = (1 << inst.n) - 1
    a0 = sum(1 << index[i] for i in position.picked_a)
    b0 = sum(1 << index[i] for i in position.picked_b)
    memo: dict[tuple[int, int, bool], int] = {}

    def side_value(mask: int) -> int:
        side = [effs[i] for i in range(inst.n) if mask >> i & 1]
        return enumerate_assignment_value(side, inst.tasks)

    def go(a_mask: int, b_mask: int, alice: bool) -> int:
        free = full & ~a_mask & ~b_mask
        if free == 0:
            return side_value(a_mask) - side_value(b_mask)
        key = (a_mask, b_mask, alice)
        if key in memo:
            return memo[key]
        values = []
        for i in range(inst.n):
            if free >> i & 1:
                if alice:
                    values.append(go(a_mask | 1 << i, b_mask, False))
                else:
                    values.append(go(a_mask, b_mask | 1 << i, True))
        result = max(values) if alice else min(values)
        memo[key] = result
        return result

    return go(a0, b0, position.to_move is Player.ALICE)


def game_sum(parts: Sequence[Instance]) -> Instance:
    """Concatenate instances along the task axis into one pool.

    Each part's agents keep their efficiencies on their own block of tasks
    and are zero everywhere else; ids get a per-part prefix so they stay
    unique.
    """
    if not parts:
        raise PreconditionError("game_sum needs at least one instance")
    total_tasks = sum(p.tasks for p in parts)
    agents = []
    offset = 0
    for k, part in enumerate(parts):
        for agent in part.agents:
            eff = [0] * total_tasks
            eff[offset : offset + part.tasks] = agent.eff
            agents.append(Agent(f"g{k}:{agent.id}", tuple(eff)))
        offset += part.tasks
    return Instance(total_tasks, tuple(agents))


@dataclass(frozen=True)
class PairingTable:
    """An involution over agent ids: every agent has exactly one partner."""

    partner: dict[str, str]

    def __post_init__(self):
        for agent, other in self.partner.items():
            if other == agent or self.partner.get(other) != agent:
                raise PreconditionError(f"pairing is not an involution at {agent!r}")


def mirror_pairing(original: Instance, copies: int) -> tuple[Instance, PairingTable]:
    """Sum of an even number of copies plus the copy-k/copy-k+1 pairing."""
    if copies < 2 or copies % 2:
        raise PreconditionError("mirror pairing needs an even number of copies")
    summed = game_sum([original] * copies)
    partner: dict[str, str] = {}
    for k in range(0, copies, 2):
        for agent in original.agents:
            left, right = f"g{k}:{agent.id}", f"g{k + 1}:{agent.id}"
            partner[left] = right
            partner[right] = left
    return summed, PairingTable(partner)


def pairing_bob_move(position: Position, last_pick: str, table: PairingTable) -> str:
    """Bob's mirror reply: the partner of whatever Alice just took."""
    if position.to_move is not Player.BOB:
        raise PreconditionError("mirror reply is defined on Bob's turn")
    if last_pick not in position.picked_a:
        raise PreconditionError(f"{last_pick!r} is not among Alice's picks")
    reply = table.partner.get(last_pick)
    if reply is None:
        raise PreconditionError(f"no partner recorded for {last_pick!r}")
    if reply in position.picked_a or reply in position.picked_b:
        raise InvalidPositionError(f"partner {reply!r} was already picked")
    return reply


def random_instance(n: int, tasks: int, max_eff: int = 10, seed: int = 0) -> Instance:
    """Uniform efficiencies in [0, max_eff]; deterministic in the seed."""
    if n < 0 or tasks < 1 or max_eff < 0:
        raise PreconditionError("need n >= 0, tasks >= 1, max_eff >= 0")
    rng = random.Random(seed)
    agents = tuple(
        Agent(f"a{i}", tuple(rng.randint(0, max_eff) for _ in range(tasks)))
        for i in range(n)
    )
    return Instance(tasks, agents)


def random_otp_instance(n: int, tasks: int, max_eff: int = 10, seed: int = 0) -> Instance:
    """Random instance where each agent has at most one nonzero efficiency."""
    if n < 0 or tasks < 1 or max_eff < 0:
        raise PreconditionError("need n >= 0, tasks >= 1, max_eff >= 0")
    rng = random.Random(seed)
    agents = []
    for i in range(n):
        eff = [0] * tasks
        eff[rng.randrange(tasks)] = rng.randint(0, max_eff)
        agents.append(Agent(f"a{i}", tuple(eff)))
    return Instance(tasks, tuple(agents))


def mean_estimate(instance: Instance, copies: int) -> Fraction:
    """Optimal score of ``copies`` disjoint copies, divided by ``copies``.

    Exact rational arithmetic; the brute-force guards apply to the summed
    game, so this only works for small inputs.
    """
    if copies < 1:
        raise PreconditionError("copies must be positive")
    summed = game_sum([instance] * copies)
    return Fraction(brute_force_score(summed), copies)
