import pytest
from hypothesis import given, settings

from draftgame import (
    Agent,
    GuardExceededError,
    Instance,
    MAX_XP_TASKS,
    PreconditionError,
    brute_force_position_score,
    brute_force_score,
    is_otp_instance,
    solve_otp_xp,
    solve_two_task_otp,
    two_task_best_opening,
    xp_search,
)

from helpers import EX1, otp_instances


def otp2(*effs):
    """Two-task pool from per-agent (value, task) pairs."""
    agents = []
    for i, (value, task) in enumerate(effs):
        eff = [0, 0]
        eff[task] = value
        agents.append(Agent(f"a{i}", tuple(eff)))
    return Instance(2, tuple(agents))


class TestShape:
    def test_one_nonzero_entry_qualifies(self):
        assert is_otp_instance(otp2((5, 0), (3, 1)))

    def test_two_nonzero_entries_do_not(self):
        assert not is_otp_instance(EX1)

    def test_zero_agents_qualify(self):
        assert is_otp_instance(Instance(2, (Agent("z", (0, 0)),)))


class TestTwoTaskLinear:
    def test_single_task_duel(self):
        # Alice takes the 5, Bob the 3.
        assert solve_two_task_otp(otp2((5, 0), (3, 0))) == 2

    def test_one_task_trio_wastes_the_third_agent(self):
        # Alice 9, Bob 4, Alice 1; only one of Alice's agents fits the task.
        assert solve_two_task_otp(otp2((9, 0), (4, 0), (1, 0))) == 5

    def test_denial_beats_greed(self):
        # Bob must take the 4 on the busy task, not his own best entry.
        assert solve_two_task_otp(otp2((9, 0), (4, 0), (1, 1))) == 6

    def test_two_tasks_interleave(self):
        inst = otp2((6, 0), (5, 0), (4, 1), (3, 1))
        assert solve_two_task_otp(inst) == brute_force_score(inst)

    def test_empty_pool(self):
        assert solve_two_task_otp(Instance(2, ())) == 0

    def test_requires_two_tasks(self):
        with pytest.raises(PreconditionError):
            solve_two_task_otp(Instance(3, ()))

    def test_opening_pick_reaches_the_score(self):
        inst = otp2((6, 0), (5, 0), (4, 1), (3, 1))
        opening = two_task_best_opening(inst)
        child = inst.start_position().apply_move(opening)
        assert brute_force_position_score(child) == solve_two_task_otp(inst)

    @given(otp_instances(max_tasks=2, max_agents=8))
    @settings(max_examples=80, deadline=None)
    def test_matches_brute_force(self, instance):
        if instance.tasks != 2:
            instance = Instance(2, tuple(Agent(a.id, (a.eff[0], 0)) for a in instance.agents))
        assert solve_two_task_otp(instance) == brute_force_score(instance)


class TestXpSearch:
    @given(otp_instances())
    @settings(max_examples=60, deadline=None)
    def test_matches_brute_force(self, instance):
        assert solve_otp_xp(instance) == brute_force_score(instance)

    @given(otp_instances(min_tasks=2, max_tasks=2))
    @settings(max_examples=40, deadline=None)
    def test_agrees_with_the_linear_method(self, instance):
        assert solve_otp_xp(instance) == solve_two_task_otp(instance)

    @given(otp_instances(max_agents=6))
    @settings(max_examples=40, deadline=None)
    def test_best_move_reaches_the_score(self, instance):
        result = xp_search(instance)
        if instance.n == 0:
            assert result.score == 0
            return
        child = instance.start_position().apply_move(result.best_move)
        assert brute_force_position_score(child) == result.score

    @given(otp_instances())
    @settings(max_examples=40, deadline=None)
    def test_visited_states_within_bound(self, instance):
        result = xp_search(instance)
        assert result.visited_states <= result.state_bound

    def test_bound_formula(self):
        # Three tasks holding 2, 3 and 1 agents: bound 2 * 8 * 12 * 4.
        agents = [Agent(f"a{i}", tuple(3 if t == task else 0 for t in range(3)))
                  for i, task in enumerate((0, 0, 1, 1, 1, 2))]
        result = xp_search(Instance(3, tuple(agents)))
        assert result.state_bound == 2 * 8 * 12 * 4

    def test_task_order_is_irrelevant(self):
        inst = otp2((6, 0), (5, 1), (4, 1), (2, 0))
        swapped = Instance(2, tuple(Agent(a.id, (a.eff[1], a.eff[0])) for a in inst.agents))
        assert solve_otp_xp(inst) == solve_otp_xp(swapped)

    def test_rejects_non_otp_pool(self):
        with pytest.raises(PreconditionError):
            xp_search(EX1)

    def test_task_guard(self):
        wide = Instance(MAX_XP_TASKS + 1, ())
        with pytest.raises(GuardExceededError):
            xp_search(wide)

    def test_guard_can_be_raised(self):
        wide = Instance(MAX_XP_TASKS + 1, ())
        assert xp_search(wide, max_tasks=MAX_XP_TASKS + 1).score == 0

    def test_handles_large_pools(self):
        from draftgame import random_otp_instance

        inst = random_otp_instance(120, 2, 10, 3)
        result = xp_search(inst)
        assert result.visited_states <= result.state_bound
        assert 0 <= result.score <= 10
