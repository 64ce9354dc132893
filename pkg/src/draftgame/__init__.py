"""Exact solvers, generators and a live-draft service for the draft game.

Two players alternately pick agents from a shared pool; each then assigns
its agents to tasks, one agent per task, and the score is the first
player's assignment value minus the second's.  This package computes that
score exactly: a pruned minimax solver for general pools, specialized fast
algorithms for pools whose agents have at most one nonzero efficiency, a
compiler from quantified Boolean formulas into hard instances, a
brute-force oracle for cross-checking, a command-line front end and an
HTTP session service for live drafts.
"""

from .core import (
    Agent,
    Instance,
    Player,
    Position,
    assignment_value,
    best_assignment,
    final_score,
    position_score,
    score_upper_bound,
    static_bounds,
)
from .errors import (
    DraftGameError,
    GuardExceededError,
    InstanceParseError,
    InvalidInstanceError,
    InvalidPositionError,
    NodeBudgetExceededError,
    PreconditionError,
    QbfError,
)
from .oracle import (
    brute_force_position_score,
    brute_force_score,
    game_sum,
    mean_estimate,
    mirror_pairing,
    pairing_bob_move,
    random_instance,
    random_otp_instance,
)
from .otp import (
    MAX_XP_TASKS,
    is_otp_instance,
    solve_otp_xp,
    solve_two_task_otp,
    two_task_best_opening,
    xp_search,
)
from .reduction import (
    QbfFormula,
    QbfPlayer,
    build_draft_instance,
    normalize_qbf,
    parse_qdimacs,
    qbf_corpus,
    qbf_game_winner,
    verify_forced_order,
)
from .serialize import (
    parse_document,
    parse_instance,
    parse_position,
    serialize_instance,
    serialize_position,
)
from .solver import (
    MoveEvaluation,
    SolveOptions,
    SolveResult,
    evaluate_moves,
    solve,
    solve_instance,
)

__version__ = "0.1.0"

__all__ = [
    "Agent",
    "DraftGameError",
    "GuardExceededError",
    "Instance",
    "InstanceParseError",
    "InvalidInstanceError",
    "InvalidPositionError",
    "MAX_XP_TASKS",
    "MoveEvaluation",
    "NodeBudgetExceededError",
    "Player",
    "Position",
    "PreconditionError",
    "QbfError",
    "QbfFormula",
    "QbfPlayer",
    "SolveOptions",
    "SolveResult",
    "assignment_value",
    "best_assignment",
    "brute_force_position_score",
    "brute_force_score",
    "build_draft_instance",
    "evaluate_moves",
    "final_score",
    "game_sum",
    "is_otp_instance",
    "mean_estimate",
    "mirror_pairing",
    "normalize_qbf",
    "pairing_bob_move",
    "parse_document",
    "parse_instance",
    "parse_position",
    "parse_qdimacs",
    "position_score",
    "qbf_corpus",
    "qbf_game_winner",
    "random_instance",
    "random_otp_instance",
    "score_upper_bound",
    "serialize_instance",
    "serialize_position",
    "solve",
    "solve_instance",
    "solve_otp_xp",
    "solve_two_task_otp",
    "static_bounds",
    "two_task_best_opening",
    "verify_forced_order",
    "xp_search",
]
