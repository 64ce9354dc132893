"""Game model: agents, instances, positions, and the score function.

An instance is a pool of agents, each a vector of nonnegative integer
efficiencies over ``tasks`` tasks.  Two players, Alice and Bob, alternately
pick agents (Alice first) until none remain.  Each side then solves its own
max-weight injective task->agent assignment over the agents it picked, and
the score of the play is Alice's assignment value minus Bob's.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import InvalidInstanceError, InvalidPositionError
from .matching import max_weight_assignment


class Player(str, enum.Enum):
    ALICE = "alice"
    BOB = "bob"

    @property
    def opponent(self) -> "Player":
        return Player.BOB if self is Player.ALICE else Player.ALICE


@dataclass(frozen=True)
class Agent:
    """An agent with one nonnegative integer efficiency per task."""

    id: str
    eff: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "eff", tuple(self.eff))
        for value in self.eff:
            if not isinstance(value, int) or isinstance(value, bool):
                raise InvalidInstanceError(
                    f"agent {self.id!r}: efficiencies must be integers, got {value!r}"
                )
            if value < 0:
                raise InvalidInstanceError(
                    f"agent {self.id!r}: efficiencies must be nonnegative, got {value}"
                )

    @property
    def max_eff(self) -> int:
        return max(self.eff, default=0)


@dataclass(frozen=True)
class Instance:
    """A draft-game instance: a task count and an ordered pool of agents."""

    tasks: int
    agents: tuple[Agent, ...]
    threshold: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "agents", tuple(self.agents))
        if not isinstance(self.tasks, int) or self.tasks < 1:
            raise InvalidInstanceError(f"tasks must be a positive integer, got {self.tasks!r}")
        seen: set[str] = set()
        for agent in self.agents:
            if len(agent.eff) != self.tasks:
                raise InvalidInstanceError(
                    f"agent {agent.id!r} has {len(agent.eff)} efficiencies, "
                    f"instance has {self.tasks} tasks"
                )
            if agent.id in seen:
                raise InvalidInstanceError(f"duplicate agent id {agent.id!r}")
            seen.add(agent.id)

    @property
    def n(self) -> int:
        return len(self.agents)

    def agent(self, agent_id: str) -> Agent:
        for a in self.agents:
            if a.id == agent_id:
                return a
        raise InvalidInstanceError(f"unknown agent id {agent_id!r}")

    def index_of(self, agent_id: str) -> int:
        for i, a in enumerate(self.agents):
            if a.id == agent_id:
                return i
        raise InvalidInstanceError(f"unknown agent id {agent_id!r}")

    def start_position(self, to_move: Player = Player.ALICE) -> "Position":
        return Position(self, frozenset(), frozenset(), to_move)


@dataclass(frozen=True)
class Position:
    """A mid-game state: who picked what so far and whose turn it is.

    Pick counts must be consistent with alternation from some starting
    player: the side that is ahead by one pick is never also the side to
    move, and nobody is ever ahead by two.
    """

    instance: Instance
    picked_a: frozenset[str]
    picked_b: frozenset[str]
    to_move: Player

    def __post_init__(self):
        object.__setattr__(self, "picked_a", frozenset(self.picked_a))
        object.__setattr__(self, "picked_b", frozenset(self.picked_b))
        ids = {a.id for a in self.instance.agents}
        for picked, label in ((self.picked_a, "picked_a"), (self.picked_b, "picked_b")):
            unknown = picked - ids
            if unknown:
                raise InvalidPositionError(f"{label} contains unknown agents {sorted(unknown)}")
        overlap = self.picked_a & self.picked_b
        if overlap:
            raise InvalidPositionError(f"agents picked by both players: {sorted(overlap)}")
        diff = len(self.picked_a) - len(self.picked_b)
        if diff not in (-1, 0, 1):
            raise InvalidPositionError(f"pick counts differ by {diff}; play alternates")
        if diff == 1 and self.to_move is not Player.BOB:
            raise InvalidPositionError("Alice is a pick ahead, so Bob must be to move")
        if diff == -1 and self.to_move is not Player.ALICE:
            raise InvalidPositionError("Bob is a pick ahead, so Alice must be to move")

    @property
    def free(self) -> tuple[Agent, ...]:
        taken = self.picked_a | self.picked_b
        return tuple(a for a in self.instance.agents if a.id not in taken)

    @property
    def is_terminal(self) -> bool:
        return len(self.picked_a) + len(self.picked_b) == self.instance.n

    def picked(self, player: Player) -> frozenset[str]:
        return self.picked_a if player is Player.ALICE else self.picked_b

    def apply_move(self, agent_id: str) -> "Position":
        taken = self.picked_a | self.picked_b
        if agent_id in taken:
            raise InvalidPositionError(f"agent {agent_id!r} was already picked")
        self.instance.agent(agent_id)  # raises on unknown id
        if self.to_move is Player.ALICE:
            return Position(
                self.instance, self.picked_a | {agent_id}, self.picked_b, Player.BOB
            )
        return Position(
            self.instance, self.picked_a, self.picked_b | {agent_id}, Player.ALICE
        )


def assignment_value(agents: Iterable[Agent], tasks: int) -> int:
    """Value of the best injective task->agent assignment for one side."""
    value, _ = best_assignment(agents, tasks)
    return value


def best_assignment(agents: Iterable[Agent], tasks: int) -> tuple[int, dict[int, str]]:
    """Like :func:`assignment_value` but also returns task -> agent id."""
    pool = list(agents)
    if tasks < 1:
        raise InvalidInstanceError(f"tasks must be a positive integer, got {tasks!r}")
    for agent in pool:
        if len(agent.eff) != tasks:
            raise InvalidInstanceError(
                f"agent {agent.id!r} has {len(agent.eff)} efficiencies, expected {tasks}"
            )
    if not pool:
        return 0, {}
    weights = [[agent.eff[task] for agent in pool] for task in range(tasks)]
    value, cols = max_weight_assignment(weights)
    chosen = {task: pool[col].id for task, col in enumerate(cols) if col >= 0}
    return value, chosen


def final_score(picked_a: Iterable[Agent], picked_b: Iterable[Agent], tasks: int) -> int:
    """Alice's assignment value minus Bob's for two disjoint picked sets."""
    a = list(picked_a)
    b = list(picked_b)
    ids_a = {x.id for x in a}
    for agent in b:
        if agent.id in ids_a:
            raise InvalidInstanceError(f"agent {agent.id!r} appears on both sides")
    return assignment_value(a, tasks) - assignment_value(b, tasks)


def position_score(position: Position) -> int:
    """Final score of a terminal position."""
    if not position.is_terminal:
        raise InvalidPositionError("position still has free agents")
    inst = position.instance
    return final_score(
        (inst.agent(i) for i in position.picked_a),
        (inst.agent(i) for i in position.picked_b),
        inst.tasks,
    )


def score_upper_bound(instance: Instance) -> int:
    """Largest single efficiency in the pool.

    The optimal score of a full game from the start lies between 0 and this
    bound: going first can never hurt, and Bob can always hold Alice's lead
    to at most one agent's best entry.
    """
    return max((a.max_eff for a in instance.agents), default=0)


def static_bounds(position: Position) -> tuple[int, int]:
    """Sound score bounds for any position, ignoring whose turn it is.

    Alice can never do better than winning every free agent, nor worse than
    losing all of them.
    """
    inst = position.instance
    a = [inst.agent(i) for i in position.picked_a]
    b = [inst.agent(i) for i in position.picked_b]
    free = list(position.free)
    hi = assignment_value(a + free, inst.tasks) - assignment_value(b, inst.tasks)
    lo = assignment_value(a, inst.tasks) - assignment_value(b + free, inst.tasks)
    return lo, hi


# -- duplicate-agent grouping (shared by solver memoisation) -----------------

def duplicate_groups(agents: Sequence[Agent]) -> list[list[int]]:
    """Indices of agents grouped by identical efficiency vectors."""
    by_eff: dict[tuple[int, ...], list[int]] = {}
    for i, agent in enumerate(agents):
        by_eff.setdefault(agent.eff, []).append(i)
    return sorted(by_eff.values())
