from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from draftgame import (
    Agent,
    GuardExceededError,
    Instance,
    brute_force_score,
    final_score,
    game_sum,
    mean_estimate,
    mirror_pairing,
    pairing_bob_move,
    random_instance,
    random_otp_instance,
)
from draftgame.oracle import MAX_BRUTE_AGENTS, MAX_BRUTE_TASKS

from helpers import EX1, EX1_SCORE, EX2, EX2_SCORE, instances


class TestBruteForce:
    def test_known_instances(self):
        assert brute_force_score(EX1) == EX1_SCORE
        assert brute_force_score(EX2) == EX2_SCORE

    def test_single_agent_takes_its_best_entry(self):
        assert brute_force_score(Instance(3, (Agent("a", (2, 9, 1)),))) == 9

    def test_empty(self):
        assert brute_force_score(Instance(1, ())) == 0

    def test_agent_guard(self):
        crowd = Instance(1, tuple(Agent(f"a{i}", (1,)) for i in range(MAX_BRUTE_AGENTS + 1)))
        with pytest.raises(GuardExceededError):
            brute_force_score(crowd)

    def test_task_guard(self):
        wide = Instance(MAX_BRUTE_TASKS + 1, ())
        with pytest.raises(GuardExceededError):
            brute_force_score(wide)


class TestGameSum:
    def test_concatenates_task_axes(self):
        doubled = game_sum([EX1, EX1])
        assert doubled.tasks == 4
        assert doubled.n == 6
        # the first copy's agents are zero on the second copy's tasks
        first = next(a for a in doubled.agents if a.id.endswith(":X"))
        assert first.eff[:2] == (4, 7) or first.eff[2:] == (4, 7)
        assert first.eff.count(0) >= 2

    def test_sum_with_empty_is_isomorphic(self):
        summed = game_sum([EX1, Instance(1, ())])
        assert summed.n == EX1.n
        assert brute_force_score(summed) == EX1_SCORE

    @given(instances(max_agents=4, max_tasks=2, max_eff=6))
    @settings(max_examples=50, deadline=None)
    def test_doubled_games_score_zero(self, instance):
        if instance.n == 0:
            return
        assert brute_force_score(game_sum([instance, instance])) == 0


class TestPairing:
    def test_table_is_an_involution_over_twin_copies(self):
        doubled, table = mirror_pairing(EX1, 2)
        for agent_id, partner in table.partner.items():
            assert table.partner[partner] == agent_id
            assert partner != agent_id
            # twin copies carry the same values on their own task blocks
            assert agent_id.split(":", 1)[1] == partner.split(":", 1)[1]
            mine = sorted(v for v in doubled.agent(agent_id).eff if v)
            theirs = sorted(v for v in doubled.agent(partner).eff if v)
            assert mine == theirs

    def test_bob_mirrors_alices_pick(self):
        doubled, table = mirror_pairing(EX1, 2)
        position = doubled.start_position()
        first = position.free[0].id
        position = position.apply_move(first)
        reply = pairing_bob_move(position, first, table)
        assert reply == table.partner[first]

    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=25, deadline=None)
    def test_playouts_end_at_exactly_zero(self, seed):
        import random

        rng = random.Random(seed)
        base = random_instance(rng.randint(1, 4), rng.randint(1, 2), 10, seed)
        doubled, table = mirror_pairing(base, 2)
        position = doubled.start_position()
        while not position.is_terminal:
            pick = rng.choice(position.free).id
            position = position.apply_move(pick)
            position = position.apply_move(pairing_bob_move(position, pick, table))
        score = final_score(
            (doubled.agent(i) for i in position.picked_a),
            (doubled.agent(i) for i in position.picked_b),
            doubled.tasks,
        )
        assert score == 0


class TestGenerators:
    def test_deterministic_per_seed(self):
        assert random_instance(6, 3, 10, 42) == random_instance(6, 3, 10, 42)
        assert random_instance(6, 3, 10, 42) != random_instance(6, 3, 10, 43)

    def test_otp_variant_is_otp(self):
        from draftgame import is_otp_instance

        for seed in range(20):
            assert is_otp_instance(random_otp_instance(8, 3, 10, seed))

    def test_zero_agents(self):
        assert random_instance(0, 2, 10, 1).n == 0

    def test_efficiencies_within_range(self):
        inst = random_instance(30, 3, 7, 9)
        assert all(0 <= v <= 7 for a in inst.agents for v in a.eff)


class TestMean:
    def test_two_copies_of_known_instance(self):
        assert mean_estimate(EX1, 2) == 0

    def test_one_copy_is_the_plain_score(self):
        assert mean_estimate(EX1, 1) == Fraction(EX1_SCORE)

    def test_returns_exact_rationals(self):
        value = mean_estimate(Instance(1, (Agent("a", (3,)),)), 1)
        assert isinstance(value, Fraction)

    def test_guard(self):
        with pytest.raises(GuardExceededError):
            mean_estimate(EX2, 3)  # 18 agents blow the brute-force guard
