"""Hardness-instance generation from quantified boolean formulas.

The source problem is a two-player prefix game on a CNF matrix: for each
variable pair, Satisfier sets x_i and Falsifier answers by setting y_i, and
Satisfier wins when every clause ends up containing a true literal.  With each
variable occurring exactly three times (twice positively, once negatively
after normalization) the game compiles into a draft instance built from three
kinds of gadgets: a setup gadget banking one point per clause task for Bob, a
seven-agent choice gadget per x_i for Alice, and a nine-agent choice gadget
per y_i for Bob.  All headline efficiencies walk down a power-of-5 chain, so
dominance forces optimal play through the gadgets in a fixed order, and the
built instance's optimal score reaches the threshold s = alpha - beta exactly
when Satisfier wins the source game.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum

from .core import Agent, Instance, Player
from .errors import GuardExceededError, QbfError
from .solver import dominating_agents, find_dominating_pair

MAX_QBF_PAIRS = 6
_CHAIN_RATIO = 5


@dataclass(frozen=True)
class Literal:
    """One signed occurrence of a variable.

    Kind "x" marks a variable set by Satisfier, kind "y" one set by
    Falsifier; `index` is the 1-based pair number.
    """

    kind: str
    index: int
    positive: bool = True

    def __post_init__(self) -> None:
        if self.kind not in ("x", "y"):
            raise QbfError(f"literal kind must be 'x' or 'y', got {self.kind!r}")
        if not isinstance(self.index, int) or isinstance(self.index, bool):
            raise QbfError(f"literal index must be an integer, got {self.index!r}")
        if self.index < 1:
            raise QbfError(f"literal index must be positive, got {self.index}")

    @property
    def var(self) -> tuple[str, int]:
        return self.kind, self.index

    def negated(self) -> "Literal":
        return Literal(self.kind, self.index, not self.positive)

    def __str__(self) -> str:
        return ("" if self.positive else "~") + f"{self.kind}{self.index}"


@dataclass(frozen=True)
class QbfFormula:
    """A prefix-game formula with `pairs` variable pairs and a CNF matrix.

    Play order is x_1, y_1, ..., x_pairs, y_pairs with Satisfier choosing the
    x values and Falsifier the y values.  Clauses hold at most three literals
    each; an empty clause is allowed and is simply never satisfied.
    """

    pairs: int
    clauses: tuple[tuple[Literal, ...], ...]

    def __post_init__(self) -> None:
        if not isinstance(self.pairs, int) or isinstance(self.pairs, bool):
            raise QbfError(f"pair count must be an integer, got {self.pairs!r}")
        if self.pairs < 0:
            raise QbfError(f"pair count must be nonnegative, got {self.pairs}")
        for c, clause in enumerate(self.clauses, 1):
            if len(clause) > 3:
                raise QbfError(f"clause {c} holds {len(clause)} literals, at most 3 allowed")
            for lit in clause:
                if lit.index > self.pairs:
                    raise QbfError(
                        f"clause {c} uses {lit} but only {self.pairs} pairs are quantified"
                    )

    @property
    def clause_count(self) -> int:
        return len(self.clauses)

    def variables(self) -> list[tuple[str, int]]:
        """All quantified variables in play order: x1, y1, x2, y2, ..."""
        out = []
        for i in range(1, self.pairs + 1):
            out.append(("x", i))
            out.append(("y", i))
        return out

    def __str__(self) -> str:
        matrix = " & ".join(
            "(" + " | ".join(str(lit) for lit in clause) + ")" for clause in self.clauses
        )
        return f"[{self.pairs} pairs] {matrix or '(empty)'}"


class QbfPlayer(str, Enum):
    SATISFIER = "satisfier"
    FALSIFIER = "falsifier"


def occurrence_counts(formula: QbfFormula) -> dict[tuple[str, int], tuple[int, int]]:
    """Per variable, its (positive, negative) occurrence counts in the matrix."""
    counts = {var: (0, 0) for var in formula.variables()}
    for clause in formula.clauses:
        for lit in clause:
            pos, neg = counts[lit.var]
            counts[lit.var] = (pos + 1, neg) if lit.positive else (pos, neg + 1)
    return counts


def qbf_game_winner(formula: QbfFormula, max_pairs: int = MAX_QBF_PAIRS) -> QbfPlayer:
    """Exact winner of the prefix game, by exhaustive alternating search.

    Satisfier sets x_1, Falsifier answers with y_1, and so on down the
    prefix; at the end Satisfier wins when every clause holds a true literal.
    """
    if formula.pairs > max_pairs:
        raise GuardExceededError(
            f"exhaustive play handles at most {max_pairs} variable pairs, got {formula.pairs}"
        )
    order = formula.variables()
    assignment: dict[tuple[str, int], bool] = {}

    def satisfied() -> bool:
        return all(
            any(assignment[lit.var] == lit.positive for lit in clause)
            for clause in formula.clauses
        )

    def play(turn: int) -> bool:
        if turn == len(order):
            return satisfied()
        var = order[turn]
        outcomes = []
        for value in (True, False):
            assignment[var] = value
            outcomes.append(play(turn + 1))
        return any(outcomes) if var[0] == "x" else all(outcomes)

    return QbfPlayer.SATISFIER if play(0) else QbfPlayer.FALSIFIER


# -- normal form ----------------------------------------------------------------


def normalize_qbf(formula: QbfFormula) -> QbfFormula:
    """Rewrite the matrix so every surviving variable is twice-positive, once-negative.

    Requires every variable to occur exactly three times.  A variable whose
    three occurrences all share one sign gets fixed at the value its owner
    prefers: a Satisfier variable satisfies and thereby deletes the clauses
    holding it, a Falsifier variable merely loses its literals (possibly
    emptying a clause).  Fixing cascades.  Surviving variables seen once
    positively and twice negatively are flipped - renaming a variable to its
    own negation, which preserves the game.  Pairs whose two variables both
    lost every occurrence are dropped and the rest renumbered.
    """
    counts = occurrence_counts(formula)
    for (kind, index), (pos, neg) in counts.items():
        if pos + neg != 3:
            raise QbfError(
                f"{kind}{index} occurs {pos + neg} times; normalization needs exactly 3"
            )
    clauses = [list(clause) for clause in formula.clauses]

    def live_counts() -> dict[tuple[str, int], tuple[int, int]]:
        out = {var: (0, 0) for var in formula.variables()}
        for clause in clauses:
            for lit in clause:
                pos, neg = out[lit.var]
                out[lit.var] = (pos + 1, neg) if lit.positive else (pos, neg + 1)
        return out

    while True:
        counts = live_counts()
        pure = next(
            (
                (var, pos > 0)
                for var, (pos, neg) in counts.items()
                if pos + neg > 0 and (pos == 0 or neg == 0)
            ),
            None,
        )
        if pure is None:
            break
        var, sign = pure
        if var[0] == "x":
            # Satisfier fixes it favorably: every clause holding it is satisfied.
            clauses = [
                clause
                for clause in clauses
                if not any(lit.var == var and lit.positive == sign for lit in clause)
            ]
        else:
            # Falsifier fixes it the other way: its literals just disappear.
            clauses = [[lit for lit in clause if lit.var != var] for clause in clauses]

    counts = live_counts()
    flip = set()
    for (kind, index), (pos, neg) in counts.items():
        if (pos, neg) == (1, 2):
            flip.add((kind, index))
        elif (pos, neg) not in ((2, 1), (0, 0)):
            raise QbfError(
                f"{kind}{index} ends with {pos} positive and {neg} negative occurrences;"
                " cannot reach the twice-positive-once-negative form"
            )

    kept_pairs = []
    for i in range(1, formula.pairs + 1):
        x_gone = counts[("x", i)] == (0, 0)
        y_gone = counts[("y", i)] == (0, 0)
        if x_gone and y_gone:
            continue
        if x_gone or y_gone:
            kind = "x" if x_gone else "y"
            raise QbfError(
                f"{kind}{i} lost all its occurrences during simplification;"
                " the exists/forall pair structure cannot be preserved"
            )
        kept_pairs.append(i)
    renumber = {old: new for new, old in enumerate(kept_pairs, 1)}

    rebuilt = tuple(
        tuple(
            Literal(
                lit.kind,
                renumber[lit.index],
                not lit.positive if lit.var in flip else lit.positive,
            )
            for lit in clause
        )
        for clause in clauses
    )
    return QbfFormula(len(kept_pairs), rebuilt)


# -- gadget construction ----------------------------------------------------------


@dataclass(frozen=True)
class GadgetInstance:
    """A compiled hardness instance plus its naming maps.

    `threshold` is the score Alice can force exactly when Satisfier wins the
    source game.  `task_index` and `agent_index` map the symbolic gadget
    names to task columns and agent positions; `efficiency_table` holds the
    realized value of every chain symbol (consecutive ratio 5).
    """

    instance: Instance
    threshold: int
    task_index: dict[str, int]
    agent_index: dict[str, int]
    efficiency_table: dict[str, int]


def _clause_roles(formula: QbfFormula) -> dict[tuple[str, int], tuple[int, int, int]]:
    """Per variable, the clause numbers (j, k, l) hosting its occurrences.

    j and k are the clauses of the two positive literals in clause order, l
    the clause of the single negative literal.  Errors unless every variable
    shows the normalized twice-positive-once-negative pattern.
    """
    roles = {}
    for var in formula.variables():
        pos_hosts = []
        neg_hosts = []
        for c, clause in enumerate(formula.clauses, 1):
            for lit in clause:
                if lit.var == var:
                    (pos_hosts if lit.positive else neg_hosts).append(c)
        if len(pos_hosts) != 2 or len(neg_hosts) != 1:
            kind, index = var
            raise QbfError(
                f"{kind}{index} occurs {len(pos_hosts)} times positively and"
                f" {len(neg_hosts)} negatively; the builder needs the normalized"
                " twice-positive-once-negative form"
            )
        roles[var] = (pos_hosts[0], pos_hosts[1], neg_hosts[0])
    return roles


def build_draft_instance(formula: QbfFormula) -> GadgetInstance:
    """Compile a normalized formula into a draft instance with a threshold.

    Setup gadget: tasks A and B with agents A1 (alpha in A) and B1 (beta in
    B), plus one clause task S_j per clause with agents Gamma_j (gamma_j in A)
    and Gamma_j' (gamma_j' in B and 1 in S_j) - Bob's forced Gamma' picks bank
    him one point per clause task.  Per pair i, Alice's choice gadget mirrors
    setting x_i with agents over tasks U_i/~U_i whose 1-entries sit in the
    clauses x_i can satisfy, and Bob's choice gadget mirrors y_i over tasks
    V_i/~V_i/W_i/~W_i likewise.  Headline efficiencies walk down one
    power-of-5 chain ending a factor 5 above 1, which makes every pick
    dominance-forced in gadget order.  The threshold is s = alpha - beta.
    """
    roles = _clause_roles(formula)
    n, m = formula.pairs, formula.clause_count

    symbols = ["alpha", "beta"]
    for j in range(1, m + 1):
        symbols += [f"gamma{j}", f"gamma{j}'"]
    for i in range(1, n + 1):
        symbols += [
            f"a{i}", f"b{i}", f"c{i}", f"tA{i}",
            f"d{i}", f"e{i}", f"tB{i}", f"f{i}", f"g{i}",
        ]
    eff = {name: _CHAIN_RATIO ** (len(symbols) - k) for k, name in enumerate(symbols)}

    task_names = ["A", "B"] + [f"S{j}" for j in range(1, m + 1)]
    for i in range(1, n + 1):
        task_names += [f"U{i}", f"~U{i}", f"V{i}", f"~V{i}", f"W{i}", f"~W{i}"]
    col = {name: c for c, name in enumerate(task_names)}
    tasks = len(task_names)

    agents: list[Agent] = []

    def put(name: str, *entries: tuple[str, int]) -> None:
        row = [0] * tasks
        for task, value in entries:
            row[col[task]] = value
        agents.append(Agent(name, tuple(row)))

    put("A1", ("A", eff["alpha"]))
    put("B1", ("B", eff["beta"]))
    for j in range(1, m + 1):
        put(f"Gamma{j}", ("A", eff[f"gamma{j}"]))
        put(f"Gamma{j}'", ("B", eff[f"gamma{j}'"]), (f"S{j}", 1))
    for i in range(1, n + 1):
        j, k, l = roles[("x", i)]
        put(f"X{i}", (f"U{i}", eff[f"a{i}"]))
        put(f"~X{i}", (f"~U{i}", eff[f"a{i}"]))
        put(f"X{i}.1", (f"U{i}", eff[f"b{i}"]), (f"S{j}", 1))
        put(f"~X{i}.1", (f"~U{i}", eff[f"b{i}"]), (f"S{l}", 1))
        put(f"X{i}.2", (f"U{i}", eff[f"c{i}"]), (f"S{k}", 1))
        put(f"~X{i}.2", (f"~U{i}", eff[f"c{i}"]))
        put(f"TA{i}", ("A", eff[f"tA{i}"]))
        j, k, l = roles[("y", i)]
        put(f"Y{i}", (f"V{i}", eff[f"d{i}"]))
        put(f"~Y{i}", (f"~V{i}", eff[f"d{i}"]))
        put(f"Y{i}'", (f"W{i}", eff[f"e{i}"]))
        put(f"~Y{i}'", (f"~W{i}", eff[f"e{i}"]))
        put(f"TB{i}", ("B", eff[f"tB{i}"]))
        put(f"Y{i}.1", (f"V{i}", eff[f"f{i}"]), (f"S{j}", 1))
        put(f"~Y{i}.1", (f"~V{i}", eff[f"f{i}"]), (f"S{l}", 1))
        put(f"Y{i}.2", (f"W{i}", eff[f"g{i}"]), (f"S{k}", 1))
        put(f"~Y{i}.2", (f"~W{i}", eff[f"g{i}"]), (f"S{l}", 1))

    s = eff["alpha"] - eff["beta"]
    instance = Instance(tasks, tuple(agents), threshold=s)
    return GadgetInstance(
        instance=instance,
        threshold=s,
        task_index=col,
        agent_index={agent.id: p for p, agent in enumerate(agents)},
        efficiency_table=eff,
    )


# -- forced-order verification -----------------------------------------------------


@dataclass(frozen=True)
class PlyCheck:
    """One ply of the replay: what the detectors found vs the intended pick."""

    step: str
    mover: Player
    expected: tuple[str, ...]
    found: tuple[str, ...]
    forced: bool


@dataclass(frozen=True)
class ForcedOrderReport:
    plies: tuple[PlyCheck, ...]
    setup_forced: bool
    pairs_detected: bool
    first_failure: str | None

    @property
    def ok(self) -> bool:
        return self.setup_forced and self.pairs_detected


def _forced_script(gadget: GadgetInstance) -> list[tuple[str, str, tuple[str, ...]]]:
    """(step label, check kind, agent ids) plies of the intended pick order."""
    m = sum(1 for name in gadget.task_index if name.startswith("S"))
    n = sum(1 for name in gadget.agent_index if name.startswith("TA"))
    script: list[tuple[str, str, tuple[str, ...]]] = [
        ("A", "agent", ("A1",)),
        ("B", "agent", ("B1",)),
    ]
    for j in range(1, m + 1):
        script.append((f"C.{j}.1", "agent", (f"Gamma{j}",)))
        script.append((f"C.{j}.2", "agent", (f"Gamma{j}'",)))
    for i in range(1, n + 1):
        blocks = [
            (1, (f"X{i}", f"~X{i}")),
            (3, (f"X{i}.1", f"~X{i}.1")),
            (5, (f"X{i}.2", f"~X{i}.2")),
            (8, (f"Y{i}", f"~Y{i}")),
            (10, (f"Y{i}'", f"~Y{i}'")),
            (13, (f"Y{i}.1", f"~Y{i}.1")),
            (15, (f"Y{i}.2", f"~Y{i}.2")),
        ]
        plies = {7: (f"D.{i}.7", "agent", (f"TA{i}",)), 12: (f"D.{i}.12", "agent", (f"TB{i}",))}
        for first, pair in blocks:
            plies[first] = (f"D.{i}.{first}", "pair", pair)
            plies[first + 1] = (f"D.{i}.{first + 1}", "partner", pair)
        script += [plies[step] for step in range(1, 17)]
    return script


def verify_forced_order(gadget: GadgetInstance) -> ForcedOrderReport:
    """Replay the intended pick order, checking the dominance detectors force it.

    Through the setup plies (steps A, B and C) the scripted agent must be the
    unique dominating agent.  Inside the choice gadgets every two-pick block
    must open with its scripted pair detected as a dominating pair, after
    which the partner must become the unique dominating agent.  Report-only:
    the replay always follows the script, recording where forcing fails.
    """
    position = gadget.instance.start_position()
    plies: list[PlyCheck] = []
    setup_forced = True
    pairs_detected = True
    first_failure = None
    for step, kind, names in _forced_script(gadget):
        if kind == "agent":
            expected = names
            found = tuple(agent.id for agent in dominating_agents(position))
            forced = found == expected
            pick = names[0]
        elif kind == "pair":
            expected = names
            pair = find_dominating_pair(position)
            found = tuple(agent.id for agent in pair) if pair else ()
            forced = set(found) == set(expected)
            pick = names[0]
        else:
            # The pair ply above picked the first element; its partner must
            # now be the unique dominating agent.
            expected = (names[1],)
            found = tuple(agent.id for agent in dominating_agents(position))
            forced = found == expected
            pick = names[1]
        plies.append(PlyCheck(step, position.to_move, expected, found, forced))
        if not forced:
            if first_failure is None:
                first_failure = step
            if step.startswith("D."):
                pairs_detected = False
            else:
                setup_forced = False
        position = position.apply_move(pick)
    return ForcedOrderReport(tuple(plies), setup_forced, pairs_detected, first_failure)


# -- desk-scale corpus --------------------------------------------------------------


def qbf_corpus(max_clauses: int = 3) -> tuple[QbfFormula, ...]:
    """Every normalized one-pair formula with at most `max_clauses` clauses.

    The single pair contributes the literal multiset {x1, x1, ~x1, y1, y1,
    ~y1}; the corpus enumerates every way of packing it into nonempty clauses
    of at most three literals, deduplicated up to clause order.  Duplicate
    literals inside a clause and tautological clauses are kept: they satisfy
    the occurrence constraints, so they are legitimate inputs.
    """
    pool = [
        Literal("x", 1), Literal("x", 1), Literal("x", 1, False),
        Literal("y", 1), Literal("y", 1), Literal("y", 1, False),
    ]

    def key(lit: Literal) -> tuple[str, int, bool]:
        return lit.kind, lit.index, lit.positive

    seen = set()
    out = []
    for m in range(2, max_clauses + 1):
        for slots in itertools.product(range(m), repeat=len(pool)):
            sizes = [slots.count(c) for c in range(m)]
            if any(size == 0 or size > 3 for size in sizes):
                continue
            clauses = tuple(
                tuple(sorted((lit for lit, slot in zip(pool, slots) if slot == c), key=key))
                for c in range(m)
            )
            canon = tuple(sorted(clauses, key=lambda cl: [key(lit) for lit in cl]))
            if canon in seen:
                continue
            seen.add(canon)
            out.append(QbfFormula(1, canon))
    return tuple(out)


# -- text input ----------------------------------------------------------------------


def parse_qdimacs(text: str) -> QbfFormula:
    """Parse prefix-game input in QDIMACS-style text.

    Expected shape: optional comment lines starting with "c", one header
    "p cnf <variables> <clauses>", quantifier lines "e ... 0" / "a ... 0"
    whose variables together list 1..2n in order (odd numbers are Satisfier's
    x variables, even numbers Falsifier's y), then one clause per line as
    signed variables ending in 0.
    """
    header = None
    prefix: list[tuple[str, int]] = []
    rows: list[list[int]] = []

    def numbers(parts: list[str], lineno: int) -> list[int]:
        try:
            nums = [int(p) for p in parts]
        except ValueError:
            raise QbfError(f"line {lineno}: expected integers, got {' '.join(parts)!r}")
        if not nums or nums[-1] != 0:
            raise QbfError(f"line {lineno}: line must end with 0")
        return nums[:-1]

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if header is not None:
                raise QbfError(f"line {lineno}: duplicate header")
            if len(parts) != 4 or parts[1] != "cnf":
                raise QbfError(f"line {lineno}: header must read 'p cnf <variables> <clauses>'")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise QbfError(f"line {lineno}: header counts must be integers")
        elif parts[0] in ("e", "a"):
            if rows:
                raise QbfError(f"line {lineno}: quantifier lines must precede clauses")
            for v in numbers(parts[1:], lineno):
                prefix.append((parts[0], v))
        else:
            rows.append(numbers(parts, lineno))

    if header is None:
        raise QbfError("missing 'p cnf' header")
    nvars, nclauses = header
    if nvars % 2 != 0:
        raise QbfError(f"{nvars} variables cannot form exists/forall pairs")
    if len(prefix) != nvars:
        raise QbfError(f"prefix quantifies {len(prefix)} variables, header promises {nvars}")
    for spot, (quant, v) in enumerate(prefix, 1):
        if v != spot:
            raise QbfError(f"prefix must list variables 1..{nvars} in order, found {v}")
        want = "e" if spot % 2 == 1 else "a"
        if quant != want:
            raise QbfError(
                f"variable {v} sits under '{quant}' but strict alternation demands '{want}'"
            )
    if len(rows) != nclauses:
        raise QbfError(f"header promises {nclauses} clauses, found {len(rows)}")

    clauses = []
    for row in rows:
        lits = []
        for num in row:
            v = abs(num)
            if v < 1 or v > nvars:
                raise QbfError(f"clause mentions variable {v}, outside 1..{nvars}")
            lits.append(Literal("x" if v % 2 == 1 else "y", (v + 1) // 2, num > 0))
        clauses.append(tuple(lits))
    return QbfFormula(nvars // 2, tuple(clauses))
