"""HTTP session service for live drafts.

A session holds one game between a human and the engine.  The human side
submits picks; the engine answers with an exact reply, either immediately
or - under the ``budgeted`` policy when the position is too big for the
synchronous node budget - in a background thread while the session reports
``engine_thinking`` and the client polls.

Sessions live in memory, guarded by one lock each, with a JSON snapshot
written after every mutation when a snapshot directory is configured.
Hints and what-if queries are read-only against the immutable position.
"""

from __future__ import annotations

import json
import threading
import uuid
from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal

from fastapi import FastAPI
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from . import solver
from .core import Instance, Player, Position, assignment_value, position_score
from .errors import DraftGameError, NodeBudgetExceededError
from .serialize import agent_to_dict, parse_instance_dict, position_to_dict

AWAITING = "awaiting_human"
THINKING = "engine_thinking"
FINISHED = "finished"

# Synchronous engine allowance under the budgeted policy; bigger searches
# escalate to a background thread.
DEFAULT_SYNC_BUDGET = 50_000


class ServiceError(Exception):
    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code


# -- request / response models ---------------------------------------------------


class CreateSessionRequest(BaseModel):
    instance: dict | None = None
    instance_id: str | None = None
    human_side: Literal["alice", "bob"] = "alice"
    policy: Literal["exact", "budgeted"] = "exact"


class MoveRequest(BaseModel):
    agent: str


class AgentView(BaseModel):
    id: str
    eff: list[int] | None = None
    eff_str: list[str] | None = None
    owner: Literal["alice", "bob"] | None = None


class MoveView(BaseModel):
    agent: str
    side: Literal["alice", "bob"]
    actor: Literal["human", "engine"]


class ProvisionalView(BaseModel):
    alice: int
    bob: int
    score: int


class SessionView(BaseModel):
    id: str
    status: str
    human_side: Literal["alice", "bob"]
    engine_policy: Literal["exact", "budgeted"]
    tasks: int
    to_move: Literal["alice", "bob"] | None
    agents: list[AgentView]
    move_log: list[MoveView]
    provisional: ProvisionalView
    final: int | None


class ExchangeView(BaseModel):
    session: SessionView
    picks: list[MoveView]


class HintEntry(BaseModel):
    agent: str
    value: int | None
    bounds: tuple[int, int] | None
    badges: list[str]


class HintsView(BaseModel):
    session_id: str
    to_move: Literal["alice", "bob"]
    hints: list[HintEntry]


class WhatIfView(BaseModel):
    agent: str
    score: int


class InstanceCreated(BaseModel):
    instance_id: str
    agents: int
    tasks: int


class HealthView(BaseModel):
    status: str


# -- session state -----------------------------------------------------------------


@dataclass
class Session:
    id: str
    position: Position
    human_side: Player
    engine_policy: str
    move_log: list[MoveView] = field(default_factory=list)
    status: str = AWAITING
    final: int | None = None
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)


class SessionManager:
    """All live sessions plus the uploaded-instance registry."""

    def __init__(self, snapshot_dir: Path | None = None,
                 sync_budget: int = DEFAULT_SYNC_BUDGET):
        self.snapshot_dir = snapshot_dir
        self.sync_budget = sync_budget
        self._sessions: dict[str, Session] = {}
        self._instances: dict[str, Instance] = {}
        self._registry_lock = threading.Lock()
        if snapshot_dir is not None:
            snapshot_dir.mkdir(parents=True, exist_ok=True)

    # -- registry ------------------------------------------------------------

    def register_instance(self, data: dict) -> tuple[str, Instance]:
        try:
            instance = parse_instance_dict(data)
        except DraftGameError as exc:
            raise ServiceError(400, "invalid_instance", str(exc)) from exc
        token = uuid.uuid4().hex
        with self._registry_lock:
            self._instances[token] = instance
        return token, instance

    def _resolve_instance(self, request: CreateSessionRequest) -> Instance:
        if (request.instance is None) == (request.instance_id is None):
            raise ServiceError(
                400, "invalid_instance", "provide exactly one of instance, instance_id"
            )
        if request.instance_id is not None:
            with self._registry_lock:
                instance = self._instances.get(request.instance_id)
            if instance is None:
                raise ServiceError(404, "unknown_instance", request.instance_id)
            return instance
        try:
            return parse_instance_dict(request.instance)
        except DraftGameError as exc:
            raise ServiceError(400, "invalid_instance", str(exc)) from exc

    # -- lifecycle -----------------------------------------------------------

    def create(self, request: CreateSessionRequest) -> Session:
        instance = self._resolve_instance(request)
        session = Session(
            id=uuid.uuid4().hex,
            position=instance.start_position(),
            human_side=Player(request.human_side),
            engine_policy=request.policy,
        )
        with self._registry_lock:
            self._sessions[session.id] = session
        with session.lock:
            self._settle(session)
            if session.status == AWAITING and session.position.to_move is not session.human_side:
                self._engine_turn(session)
            self._snapshot(session)
        return session

    def get(self, session_id: str) -> Session:
        with self._registry_lock:
            session = self._sessions.get(session_id)
        if session is None:
            raise ServiceError(404, "unknown_session", session_id)
        return session

    def submit(self, session_id: str, agent_id: str) -> tuple[Session, list[MoveView]]:
        session = self.get(session_id)
        with session.lock:
            if session.status == FINISHED:
                raise ServiceError(409, "finished", "the draft is over")
            if session.status == THINKING:
                raise ServiceError(409, "engine_thinking", "engine reply still pending")
            free = {a.id for a in session.position.free}
            if agent_id not in {a.id for a in session.position.instance.agents}:
                raise ServiceError(404, "unknown_agent", agent_id)
            if agent_id not in free:
                raise ServiceError(409, "conflict", f"agent {agent_id!r} was already picked")
            picks = [self._apply(session, agent_id, "human")]
            if session.status == AWAITING:
                reply = self._engine_turn(session)
                if reply is not None:
                    picks.append(reply)
            self._snapshot(session)
        return session, picks

    # -- read-only queries -----------------------------------------------------

    def hints(self, session_id: str) -> HintsView:
        session = self.get(session_id)
        position = self._queryable_position(session)
        options = None
        if session.engine_policy == "budgeted":
            options = solver.SolveOptions(node_budget=self.sync_budget)
        evaluations = solver.evaluate_moves(position, options)
        badges: dict[str, list[str]] = {a.id: [] for a in position.free}
        for agent in solver.dominating_agents(position):
            badges[agent.id].append("dominating")
        pair = solver.find_dominating_pair(position)
        if pair is not None:
            for agent in pair:
                badges[agent.id].append("pair")
        free = position.free
        for agent in free:
            if any(
                other.id != agent.id
                and all(x <= y for x, y in zip(agent.eff, other.eff))
                and any(x < y for x, y in zip(agent.eff, other.eff))
                for other in free
            ):
                badges[agent.id].append("dominated")
        entries = [
            HintEntry(
                agent=agent.id,
                value=evaluations[agent.id].value,
                bounds=evaluations[agent.id].bounds,
                badges=badges[agent.id],
            )
            for agent in free
        ]
        return HintsView(
            session_id=session.id, to_move=position.to_move.value, hints=entries
        )

    def what_if(self, session_id: str, agent_id: str) -> WhatIfView:
        session = self.get(session_id)
        position = self._queryable_position(session)
        if agent_id not in {a.id for a in position.instance.agents}:
            raise ServiceError(404, "unknown_agent", agent_id)
        if agent_id not in {a.id for a in position.free}:
            raise ServiceError(409, "conflict", f"agent {agent_id!r} was already picked")
        score = solver.solve(position.apply_move(agent_id)).score
        return WhatIfView(agent=agent_id, score=score)

    def _queryable_position(self, session: Session) -> Position:
        with session.lock:
            if session.status == FINISHED:
                raise ServiceError(409, "finished", "the draft is over")
            if session.status == THINKING:
                raise ServiceError(409, "engine_thinking", "engine reply still pending")
            return session.position

    # -- engine ----------------------------------------------------------------

    def _engine_turn(self, session: Session) -> MoveView | None:
        """Pick for the engine; caller holds the session lock."""
        position = session.position
        if session.engine_policy == "budgeted":
            try:
                options = solver.SolveOptions(node_budget=self.sync_budget)
                move = solver.solve(position, options).best_move
            except NodeBudgetExceededError:
                session.status = THINKING
                worker = threading.Thread(
                    target=self._engine_async, args=(session, position), daemon=True
                )
                worker.start()
                return None
        else:
            move = solver.solve(position).best_move
        return self._apply(session, move, "engine")

    def _engine_async(self, session: Session, position: Position) -> None:
        move = solver.solve(position).best_move
        with session.lock:
            if session.status == THINKING and session.position is position:
                self._apply(session, move, "engine")
                self._snapshot(session)

    def _apply(self, session: Session, agent_id: str, actor: str) -> MoveView:
        side = session.position.to_move
        session.position = session.position.apply_move(agent_id)
        view = MoveView(agent=agent_id, side=side.value, actor=actor)
        session.move_log.append(view)
        self._settle(session)
        return view

    def _settle(self, session: Session) -> None:
        if session.position.is_terminal:
            session.status = FINISHED
            session.final = position_score(session.position)
        else:
            session.status = AWAITING

    def _snapshot(self, session: Session) -> None:
        if self.snapshot_dir is None:
            return
        record = {
            "id": session.id,
            "status": session.status,
            "human_side": session.human_side.value,
            "engine_policy": session.engine_policy,
            "move_log": [m.model_dump() for m in session.move_log],
            "final": session.final,
            "position": position_to_dict(session.position),
        }
        path = self.snapshot_dir / f"{session.id}.json"
        path.write_text(json.dumps(record, indent=2, sort_keys=True) + "\n")

    # -- views -------------------------------------------------------------------

    def view(self, session: Session) -> SessionView:
        with session.lock:
            return self._view_locked(session)

    def _view_locked(self, session: Session) -> SessionView:
        position = session.position
        inst = position.instance
        owners: dict[str, str] = {i: "alice" for i in position.picked_a}
        owners.update({i: "bob" for i in position.picked_b})
        agents = [
            AgentView(**agent_to_dict(agent), owner=owners.get(agent.id))
            for agent in inst.agents
        ]
        alice = assignment_value([inst.agent(i) for i in position.picked_a], inst.tasks)
        bob = assignment_value([inst.agent(i) for i in position.picked_b], inst.tasks)
        return SessionView(
            id=session.id,
            status=session.status,
            human_side=session.human_side.value,
            engine_policy=session.engine_policy,
            tasks=inst.tasks,
            to_move=None if session.status == FINISHED else position.to_move.value,
            agents=agents,
            move_log=list(session.move_log),
            provisional=ProvisionalView(alice=alice, bob=bob, score=alice - bob),
            final=session.final,
        )


# -- application --------------------------------------------------------------------


def create_app(snapshot_dir: Path | None = None,
               sync_budget: int = DEFAULT_SYNC_BUDGET,
               static_dir: Path | None = None) -> FastAPI:
    manager = SessionManager(snapshot_dir, sync_budget)
    app = FastAPI(title="draftgame service")
    app.state.manager = manager

    @app.exception_handler(ServiceError)
    def service_error(_, exc: ServiceError):
        return JSONResponse(
            status_code=exc.status,
            content={"error": {"code": exc.code, "message": str(exc)}},
        )

    @app.exception_handler(RequestValidationError)
    def validation_error(_, exc: RequestValidationError):
        return JSONResponse(
            status_code=422,
            content={"error": {"code": "validation", "message": str(exc.errors())}},
        )

    @app.exception_handler(DraftGameError)
    def domain_error(_, exc: DraftGameError):
        return JSONResponse(
            status_code=400,
            content={"error": {"code": "bad_request", "message": str(exc)}},
        )

    @app.get("/healthz", response_model=HealthView)
    def healthz():
        return HealthView(status="ok")

    @app.post("/instances", response_model=InstanceCreated)
    def create_instance(payload: dict):
        token, instance = manager.register_instance(payload)
        return InstanceCreated(instance_id=token, agents=instance.n, tasks=instance.tasks)

    @app.post("/sessions", response_model=SessionView)
    def create_session(request: CreateSessionRequest):
        return manager.view(manager.create(request))

    @app.get("/sessions/{session_id}", response_model=SessionView)
    def get_session(session_id: str):
        return manager.view(manager.get(session_id))

    @app.post("/sessions/{session_id}/moves", response_model=ExchangeView)
    def submit_move(session_id: str, request: MoveRequest):
        session, picks = manager.submit(session_id, request.agent)
        return ExchangeView(session=manager.view(session), picks=picks)

    @app.get("/sessions/{session_id}/hints", response_model=HintsView)
    def get_hints(session_id: str):
        return manager.hints(session_id)

    @app.get("/sessions/{session_id}/whatif", response_model=WhatIfView)
    def what_if(session_id: str, agent: str):
        return manager.what_if(session_id, agent)

    if static_dir is not None and static_dir.is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
