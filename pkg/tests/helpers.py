"""Shared strategies and fixtures for the test suite."""

from __future__ import annotations

from hypothesis import strategies as st

from draftgame import Agent, Instance

# The two known instances used throughout: the first has score 3 with the
# unique line X, Y, Z; the second has score 2 and is solved only by opening
# with the agent that maximizes none of the tasks.
EX1 = Instance(2, (Agent("X", (4, 7)), Agent("Y", (5, 5)), Agent("Z", (0, 4))))
EX1_SCORE = 3
EX2 = Instance(
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
EX2_SCORE = 2


@st.composite
def instances(draw, max_agents: int = 6, max_tasks: int = 3, max_eff: int = 8):
    tasks = draw(st.integers(1, max_tasks))
    n = draw(st.integers(0, max_agents))
    effs = draw(
        st.lists(
            st.lists(st.integers(0, max_eff), min_size=tasks, max_size=tasks),
            min_size=n,
            max_size=n,
        )
    )
    return Instance(tasks, tuple(Agent(f"a{i}", tuple(e)) for i, e in enumerate(effs)))


@st.composite
def otp_instances(draw, max_agents: int = 8, max_tasks: int = 3, max_eff: int = 9,
                  min_tasks: int = 1):
    tasks = draw(st.integers(min_tasks, max_tasks))
    n = draw(st.integers(0, max_agents))
    agents = []
    for i in range(n):
        eff = [0] * tasks
        eff[draw(st.integers(0, tasks - 1))] = draw(st.integers(0, max_eff))
        agents.append(Agent(f"a{i}", tuple(eff)))
    return Instance(tasks, tuple(agents))
