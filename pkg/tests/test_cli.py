import io
import json

import pytest
from helpers import EX1, EX2

from draftgame import (
    Agent,
    Instance,
    Position,
    is_otp_instance,
    parse_document,
    parse_instance,
    serialize_instance,
    serialize_position,
)
from draftgame.cli import EXIT_ERROR, EXIT_NO, EXIT_YES, main

QDIMACS_FALSIFIER = "p cnf 2 3\ne 1 0\na 2 0\n1 2 0\n1 -2 0\n-1 2 0\n"

OTP2 = Instance(2, (Agent("A", (7, 0)), Agent("B", (0, 6)),
                    Agent("C", (5, 0)), Agent("D", (0, 2))))
OTP3 = Instance(3, (Agent("A", (7, 0, 0)), Agent("B", (0, 6, 0)),
                    Agent("C", (0, 0, 5)), Agent("D", (2, 0, 0))))


@pytest.fixture
def ex1_file(tmp_path):
    path = tmp_path / "ex1.json"
    path.write_text(serialize_instance(EX1))
    return str(path)


@pytest.fixture
def ex2_file(tmp_path):
    path = tmp_path / "ex2.json"
    path.write_text(serialize_instance(EX2))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSolve:
    def test_text_report(self, capsys, ex1_file):
        code, out, _ = run(capsys, "solve", ex1_file)
        assert code == EXIT_YES
        assert "method: general" in out
        assert "score: 3" in out
        assert "best: X (4, 7)" in out

    def test_json_report(self, capsys, ex1_file):
        code, out, _ = run(capsys, "solve", ex1_file, "--format", "json")
        assert code == EXIT_YES
        report = json.loads(out)
        assert report["score"] == 3
        assert report["best"] == {"id": "X", "eff": [4, 7]}

    def test_principal_variation(self, capsys, ex1_file):
        code, out, _ = run(capsys, "solve", ex1_file, "--pv")
        assert code == EXIT_YES
        assert "pv: X Y Z" in out

    def test_threshold_met(self, capsys, ex1_file):
        code, out, _ = run(capsys, "solve", ex1_file, "--threshold", "3")
        assert code == EXIT_YES
        assert "meets threshold: YES" in out

    def test_threshold_missed(self, capsys, ex1_file):
        code, out, _ = run(capsys, "solve", ex1_file, "--threshold", "4")
        assert code == EXIT_NO
        assert "meets threshold: NO" in out

    def test_embedded_threshold_used_without_the_flag(self, capsys, tmp_path):
        strict = Instance(EX1.tasks, EX1.agents, threshold=4)
        path = tmp_path / "strict.json"
        path.write_text(serialize_instance(strict))
        code, out, _ = run(capsys, "solve", str(path))
        assert code == EXIT_NO
        assert "threshold: 4" in out

    def test_two_task_otp_routed_to_linear(self, capsys, tmp_path):
        path = tmp_path / "otp2.json"
        path.write_text(serialize_instance(OTP2))
        code, out, _ = run(capsys, "solve", str(path))
        assert code == EXIT_YES
        assert "method: linear" in out
        assert "routed to the linear two-task algorithm" in out

    def test_three_task_otp_routed_to_search(self, capsys, tmp_path):
        path = tmp_path / "otp3.json"
        path.write_text(serialize_instance(OTP3))
        code, out, _ = run(capsys, "solve", str(path))
        assert code == EXIT_YES
        assert "method: one-trick search" in out
        assert "visited states:" in out

    def test_no_prune_forces_the_general_search(self, capsys, tmp_path):
        path = tmp_path / "otp2.json"
        path.write_text(serialize_instance(OTP2))
        _, routed, _ = run(capsys, "solve", str(path))
        code, plain, _ = run(capsys, "solve", str(path), "--no-prune")
        assert code == EXIT_YES
        assert "method: general" in plain
        score = next(l for l in routed.splitlines() if l.startswith("score:"))
        assert score in plain.splitlines()

    def test_position_file_goes_to_the_general_search(self, capsys, tmp_path):
        position = EX1.start_position().apply_move("X")
        path = tmp_path / "mid.json"
        path.write_text(serialize_position(position))
        code, out, _ = run(capsys, "solve", str(path))
        assert code == EXIT_YES
        assert "method: general" in out
        assert "score: 3" in out

    def test_reads_stdin(self, capsys, monkeypatch):
        monkeypatch.setattr("sys.stdin", io.StringIO(serialize_instance(EX1)))
        code, out, _ = run(capsys, "solve", "-")
        assert code == EXIT_YES
        assert "score: 3" in out

    def test_budget_exhaustion_without_threshold(self, capsys, ex2_file):
        code, out, _ = run(capsys, "solve", ex2_file, "--budget", "5")
        assert code == EXIT_ERROR
        assert "node budget exhausted" in out
        assert "score bounds: [" in out

    def test_budget_exhaustion_with_decidable_threshold(self, capsys, ex2_file):
        _, out, _ = run(capsys, "solve", ex2_file, "--budget", "5")
        lo, hi = json.loads(out.split("score bounds: ")[1].splitlines()[0])
        code, out, _ = run(capsys, "solve", ex2_file, "--budget", "5",
                           "--threshold", str(lo))
        assert code == EXIT_YES
        assert "lower bound already meets the threshold" in out
        code, out, _ = run(capsys, "solve", ex2_file, "--budget", "5",
                           "--threshold", str(hi + 1))
        assert code == EXIT_NO
        assert "upper bound already falls short" in out

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "solve", "no-such-file.json")
        assert code == EXIT_ERROR
        assert "error: no such file" in err

    def test_malformed_file(self, capsys, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        code, _, err = run(capsys, "solve", str(path))
        assert code == EXIT_ERROR
        assert err.startswith("error:")


class TestOracle:
    def test_score(self, capsys, ex1_file):
        code, out, _ = run(capsys, "oracle", ex1_file)
        assert code == EXIT_YES
        assert "score: 3" in out

    def test_check_against_the_solver(self, capsys, ex2_file):
        code, out, _ = run(capsys, "oracle", ex2_file, "--check")
        assert code == EXIT_YES
        assert "agreement: YES" in out


class TestGenerate:
    def test_written_file_solves(self, capsys, tmp_path):
        path = tmp_path / "random.json"
        code, _, _ = run(capsys, "generate", "--agents", "5", "--tasks", "2",
                         "-o", str(path), "--seed", "7")
        assert code == EXIT_YES
        instance = parse_instance(path.read_text())
        assert instance.n == 5 and instance.tasks == 2
        code, out, _ = run(capsys, "solve", str(path))
        assert code == EXIT_YES and "score:" in out

    def test_one_trick_flag(self, capsys, tmp_path):
        path = tmp_path / "otp.json"
        run(capsys, "generate", "--otp", "--agents", "8", "-o", str(path))
        assert is_otp_instance(parse_instance(path.read_text()))

    def test_seed_makes_it_reproducible(self, capsys, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        run(capsys, "generate", "--seed", "3", "-o", str(a))
        run(capsys, "generate", "--seed", "3", "-o", str(b))
        assert a.read_text() == b.read_text()

    def test_threshold_is_embedded(self, capsys, tmp_path):
        path = tmp_path / "thr.json"
        run(capsys, "generate", "--threshold", "2", "-o", str(path))
        assert parse_instance(path.read_text()).threshold == 2


class TestReduce:
    def test_compiled_instance_answers_the_game(self, capsys, tmp_path):
        src = tmp_path / "f.qdimacs"
        src.write_text(QDIMACS_FALSIFIER)
        out_file = tmp_path / "gadget.json"
        map_file = tmp_path / "gadget.map.json"
        code, _, err = run(capsys, "reduce", str(src), "-o", str(out_file),
                           "--map", str(map_file), "-v")
        assert code == EXIT_YES
        assert "compiled 1 variable pairs, 3 clauses -> 24 agents, 11 tasks" in err

        naming = json.loads(map_file.read_text())
        assert naming["chain_values"]["alpha"] == str(5**17)
        assert naming["threshold"] == str(5**17 - 5**16)
        assert len(naming["agents"]) == 24 and len(naming["tasks"]) == 11

        # Falsifier wins this formula, so the embedded threshold is missed.
        code, out, _ = run(capsys, "solve", str(out_file))
        assert code == EXIT_NO
        assert "meets threshold: NO" in out

    def test_rejects_unnormalizable_input(self, capsys, tmp_path):
        src = tmp_path / "f.qdimacs"
        src.write_text("p cnf 2 1\ne 1 0\na 2 0\n1 2 0\n")
        code, _, err = run(capsys, "reduce", str(src))
        assert code == EXIT_ERROR
        assert err.startswith("error:")


class TestVerify:
    def test_single_suite(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "solver")
        assert code == EXIT_YES
        lines = [l for l in out.splitlines() if l.startswith(("ok", "FAIL"))]
        assert lines and all(l.startswith("ok") for l in lines)
        assert "all passed" in out


class TestBench:
    def test_one_trick_growth_table(self, capsys):
        code, out, _ = run(capsys, "bench", "otp", "--sizes", "6,12")
        assert code == EXIT_YES
        assert "states=" in out
        assert "runtime slope at t=2" in out


class TestPlay:
    def feed(self, monkeypatch, lines):
        it = iter(lines)
        monkeypatch.setattr("builtins.input", lambda prompt="": next(it))

    def test_full_game_with_hint_and_illegal_pick(self, capsys, monkeypatch, ex1_file):
        self.feed(monkeypatch, ["hint", "NOPE", "X", "Z"])
        code, out, _ = run(capsys, "play", ex1_file)
        assert code == EXIT_YES
        assert "X (4, 7) -> 3" in out
        assert "illegal pick:" in out
        assert "engine picks Y (5, 5)" in out
        assert "final score 3" in out

    def test_quit_saves_a_loadable_position(self, capsys, monkeypatch, ex1_file, tmp_path):
        save = tmp_path / "saved.json"
        self.feed(monkeypatch, ["X", "quit"])
        code, out, _ = run(capsys, "play", ex1_file, "--save", str(save))
        assert code == EXIT_YES
        assert f"position saved to {save}" in out
        position = parse_document(save.read_text())
        assert isinstance(position, Position)
        assert position.picked_a == {"X"}
        assert position.picked_b == {"Y"}

    def test_engine_opens_when_human_is_bob(self, capsys, monkeypatch, ex1_file, tmp_path):
        self.feed(monkeypatch, ["quit"])
        code, out, _ = run(capsys, "play", ex1_file, "--side", "bob",
                           "--save", str(tmp_path / "s.json"))
        assert code == EXIT_YES
        assert out.index("engine picks X (4, 7)") < out.index("position saved")
