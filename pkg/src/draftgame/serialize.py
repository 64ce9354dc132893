"""Instance and position files.

The on-disk shape is JSON::

    {"tasks": 2,
     "agents": [{"id": "x1", "eff": [4, 7]}, ...],
     "threshold": 3}

``eff`` holds JSON numbers.  Agents may instead carry ``eff_str``, a list of
decimal strings, which survives values too large for double-precision JSON
readers.  Entries may be rationals ("3/4", "0.25", or non-integral numbers):
the whole file is then rescaled by the least common denominator, so scores
come out in the rescaled units.

Position files extend the schema with ``picked_a``, ``picked_b`` and
``to_move``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import lcm
from typing import Any

from .core import Agent, Instance, Player, Position
from .errors import DraftGameError, InstanceParseError

_JSON_SAFE_INT = 2**53  # largest magnitude a double-based JSON reader keeps exact


def _as_fraction(value: Any, location: str) -> Fraction:
    if isinstance(value, bool):
        raise InstanceParseError("efficiency must be a number, got a boolean", location)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        # Use the decimal text of the float, not its binary expansion.
        return Fraction(repr(value))
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise InstanceParseError(f"cannot read {value!r} as a number", location) from None
    raise InstanceParseError(f"cannot read {value!r} as a number", location)


def _agent_fractions(entry: Any, location: str) -> tuple[str, list[Fraction]]:
    if not isinstance(entry, dict):
        raise InstanceParseError("agent entry must be an object", location)
    agent_id = entry.get("id")
    if not isinstance(agent_id, str) or not agent_id:
        raise InstanceParseError("agent needs a non-empty string 'id'", location)
    has_eff = "eff" in entry
    has_eff_str = "eff_str" in entry
    if has_eff == has_eff_str:
        raise InstanceParseError(
            "agent needs exactly one of 'eff' or 'eff_str'", location
        )
    key = "eff" if has_eff else "eff_str"
    raw = entry[key]
    if not isinstance(raw, list):
        raise InstanceParseError(f"'{key}' must be a list", f"{location}.{key}")
    values = []
    for i, value in enumerate(raw):
        spot = f"{location}.{key}[{i}]"
        if has_eff_str and not isinstance(value, str):
            raise InstanceParseError("'eff_str' entries must be strings", spot)
        frac = _as_fraction(value, spot)
        if frac < 0:
            raise InstanceParseError("efficiencies must be nonnegative", spot)
        values.append(frac)
    return agent_id, values


def parse_instance_dict(data: Any) -> Instance:
    if not isinstance(data, dict):
        raise InstanceParseError("top level must be an object")
    tasks = data.get("tasks")
    if not isinstance(tasks, int) or isinstance(tasks, bool) or tasks < 1:
        raise InstanceParseError("'tasks' must be a positive integer", "tasks")
    raw_agents = data.get("agents")
    if not isinstance(raw_agents, list):
        raise InstanceParseError("'agents' must be a list", "agents")

    parsed: list[tuple[str, list[Fraction]]] = []
    for i, entry in enumerate(raw_agents):
        agent_id, values = _agent_fractions(entry, f"agents[{i}]")
        if len(values) != tasks:
            raise InstanceParseError(
                f"agent {agent_id!r} has {len(values)} efficiencies, expected {tasks}",
                f"agents[{i}]",
            )
        parsed.append((agent_id, values))

    threshold_frac: Fraction | None = None
    if data.get("threshold") is not None:
        threshold_frac = _as_fraction(data["threshold"], "threshold")

    scale = lcm(
        *(frac.denominator for _, values in parsed for frac in values),
        threshold_frac.denominator if threshold_frac is not None else 1,
    )
    agents = tuple(
        Agent(agent_id, tuple(int(frac * scale) for frac in values))
        for agent_id, values in parsed
    )
    threshold = int(threshold_frac * scale) if threshold_frac is not None else None
    try:
        return Instance(tasks, agents, threshold)
    except DraftGameError as exc:
        raise InstanceParseError(str(exc)) from exc


def parse_position_dict(data: Any) -> Position:
    instance = parse_instance_dict(data)
    if not isinstance(data, dict):  # pragma: no cover - parse_instance_dict raised
        raise InstanceParseError("top level must be an object")

    def id_list(key: str) -> frozenset[str]:
        raw = data.get(key, [])
        if not isinstance(raw, list) or not all(isinstance(x, str) for x in raw):
            raise InstanceParseError(f"'{key}' must be a list of agent ids", key)
        if len(set(raw)) != len(raw):
            raise InstanceParseError(f"'{key}' repeats an agent id", key)
        return frozenset(raw)

    picked_a = id_list("picked_a")
    picked_b = id_list("picked_b")
    raw_to_move = data.get("to_move")
    if raw_to_move is None:
        # Alternation from an Alice start pins the turn unless counts tie.
        to_move = Player.BOB if len(picked_a) > len(picked_b) else Player.ALICE
    elif raw_to_move in (Player.ALICE.value, Player.BOB.value):
        to_move = Player(raw_to_move)
    else:
        raise InstanceParseError("'to_move' must be \"alice\" or \"bob\"", "to_move")
    try:
        return Position(instance, picked_a, picked_b, to_move)
    except DraftGameError as exc:
        raise InstanceParseError(str(exc)) from exc


def parse_instance(text: str) -> Instance:
    return parse_instance_dict(_load(text))


def parse_position(text: str) -> Position:
    return parse_position_dict(_load(text))


def parse_document(text: str) -> Instance | Position:
    """Parse a file as a position when it has pick fields, else as an instance."""
    data = _load(text)
    if is_position_dict(data):
        return parse_position_dict(data)
    return parse_instance_dict(data)


def _load(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceParseError(f"not valid JSON: {exc}") from exc


def is_position_dict(data: Any) -> bool:
    return isinstance(data, dict) and any(
        key in data for key in ("picked_a", "picked_b", "to_move")
    )


def agent_to_dict(agent: Agent) -> dict:
    if all(v < _JSON_SAFE_INT for v in agent.eff):
        return {"id": agent.id, "eff": list(agent.eff)}
    return {"id": agent.id, "eff_str": [str(v) for v in agent.eff]}


def instance_to_dict(instance: Instance) -> dict:
    agents = [agent_to_dict(agent) for agent in instance.agents]
    data: dict = {"tasks": instance.tasks, "agents": agents}
    if instance.threshold is not None:
        data["threshold"] = instance.threshold
    return data


def position_to_dict(position: Position) -> dict:
    data = instance_to_dict(position.instance)
    data["picked_a"] = sorted(position.picked_a)
    data["picked_b"] = sorted(position.picked_b)
    data["to_move"] = position.to_move.value
    return data


def serialize_instance(instance: Instance) -> str:
    return json.dumps(instance_to_dict(instance), sort_keys=True, indent=2) + "\n"


def serialize_position(position: Position) -> str:
    return json.dumps(position_to_dict(position), sort_keys=True, indent=2) + "\n"
