"""Session-scoped HTTP API: create games, submit human moves, request
engine moves.  Sessions live in memory, with optional JSON snapshots on
mutation (a lab tool, not a durable store).

The engine prefers a certified strategy for its role and the session's
graph family, demonstrating the constructive play; otherwise it asks the
exact solver for a best response.
"""

from __future__ import annotations

import itertools
import json
import logging
import os
import threading
from dataclasses import dataclass, field

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from . import graphs as G
from .game import GameStatus, Player, Position, reduce as reduce_sets, status, transcript
from .solver import BudgetExhausted, Solver, SolverConfig, find_double_trap_move, immediate_threats
from .strategies import (DeferredWindowStaller, PairingPlan, Strategy,
                         bipartite_circulant_strategy, eta_strategies,
                         omega_strategies, pairing_strategy, partition_strategy,
                         verify_pairing_plan)


class CreateGame(BaseModel):
    graph: dict | None = None            # json-edges object
    generator: str | None = None         # family name from the catalog
    params: list[int] = []
    human_role: str = "dominator"
    first: str = "dominator"


class MoveBody(BaseModel):
    vertex: int


@dataclass
class Session:
    sid: str
    graph: G.Graph
    position: Position
    human: Player
    family: tuple | None
    solver: Solver
    strategy: Strategy | None
    first: Player
    lock: threading.Lock = field(default_factory=threading.Lock)
    last_engine_move: int | None = None

    @property
    def engine(self) -> Player:
        return self.human.other()


def _gp1_plan(g: G.Graph, n: int) -> PairingPlan:
    pairs = [tuple(sorted((g.vertex(f"u{i}"), g.vertex(f"v{i - 1}"))))
             for i in range(1, n)]
    pairs.append(tuple(sorted((g.vertex("u0"), g.vertex(f"v{n - 1}")))))
    return PairingPlan(pairs=tuple(sorted(pairs)))


def pick_strategy(family: tuple | None, g: G.Graph, role: Player) -> Strategy | None:
    """Certified strategy for the engine's role on this family, if any."""
    if family is None:
        return None
    kind, params = family[0], family[1:]
    try:
        if role is Player.DOMINATOR:
            if kind == "gp" and params[1] == 1:
                plan = _gp1_plan(g, params[0])
                if verify_pairing_plan(g, plan):
                    return pairing_strategy(plan)
            if kind == "necklace-diamond":
                parts = [list(range(4 * i, 4 * i + 4)) for i in range(params[0])]
                return partition_strategy(g, parts)
            if kind == "circulant":
                return bipartite_circulant_strategy(params[0])
        else:
            if kind == "eta":
                return eta_strategies()["staller"]
            if kind == "omega":
                return omega_strategies(params[0])["staller"]
            if kind == "gp" and params[1] == 2 and params[0] >= 9:
                return DeferredWindowStaller(g)
    except (ValueError, KeyError):
        return None
    return None


def create_app(snapshot_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="mbtd session service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],  # local lab tool; the UI runs on another port
        allow_methods=["*"],
        allow_headers=["*"],
    )
    sessions: dict[str, Session] = {}
    counter = itertools.count(1)
    snapshot_dir = snapshot_dir or os.environ.get("MBTD_SNAPSHOT_DIR")

    def _snapshot(s: Session) -> None:
        if not snapshot_dir:
            return
        os.makedirs(snapshot_dir, exist_ok=True)
        with open(os.path.join(snapshot_dir, f"{s.sid}.json"), "w") as fh:
            fh.write(transcript(s.position, s.first))

    def _get(sid: str) -> Session:
        s = sessions.get(sid)
        if s is None:
            raise HTTPException(404, f"unknown session {sid!r}")
        return s

    def _state(s: Session) -> dict:
        p = s.position
        st = status(p)
        live = reduce_sets(p)
        threats = immediate_threats(p)
        trap = None
        if st is GameStatus.ONGOING and p.to_move is Player.STALLER:
            trap = find_double_trap_move(p)
        winning_set = None
        dominating_set = None
        if st is GameStatus.STALLER_WON:
            from .game import winning_sets as _ws
            system = _ws(p.graph)
            for elems, watchers in zip(system.sets, system.watchers):
                if elems and all(p.owners[v] is Player.STALLER for v in elems):
                    winning_set = {"isolated": list(watchers), "vertices": sorted(elems)}
                    break
        if st is GameStatus.DOMINATOR_WON:
            dominating_set = sorted(v for v, o in enumerate(p.owners)
                                    if o is Player.DOMINATOR)
        return {
            "session_id": s.sid,
            "graph": json.loads(G.to_json_edges(p.graph)),
            "owners": [o.value if o else None for o in p.owners],
            "to_move": p.to_move.value if st is GameStatus.ONGOING else None,
            "status": st.value,
            "human_role": s.human.value,
            "engine_role": s.engine.value,
            "legal_moves": p.legal_moves(),
            "moves": [{"player": pl.value, "vertex": v} for pl, v in p.history],
            "live_sets": [sorted(x) for x in live.sets],
            "annotations": {
                "one_move_completions": sorted(threats.staller_wins_now),
                "forced_blocks": sorted(threats.dominator_forced),
                "double_trap_move": trap,
                "last_engine_move": s.last_engine_move,
            },
            "completed_neighborhood": winning_set,
            "dominating_set": dominating_set,
            "family": list(s.family) if s.family else None,
        }

    @app.get("/generators")
    def generators():
        return {"families": G.GENERATOR_CATALOG}

    @app.post("/games")
    def create_game(body: CreateGame):
        if (body.graph is None) == (body.generator is None):
            raise HTTPException(400, "provide exactly one of graph, generator")
        family = None
        if body.generator is not None:
            try:
                g = G.generate(body.generator, *body.params)
            except (G.GraphError, TypeError) as exc:
                raise HTTPException(400, f"bad generator request: {exc}")
            family = (body.generator, *body.params)
        else:
            try:
                g = G.from_json_edges(json.dumps(body.graph))
            except G.GraphError as exc:
                raise HTTPException(400, f"bad graph: {exc}")
        try:
            human = Player(body.human_role)
            first = Player(body.first)
        except ValueError as exc:
            raise HTTPException(400, str(exc))
        sid = f"g{next(counter)}"
        budget = os.environ.get("MBTD_NODE_BUDGET")
        cfg = SolverConfig(node_budget=int(budget)) if budget else SolverConfig()
        s = Session(
            sid=sid,
            graph=g,
            position=Position.initial(g, first),
            human=human,
            family=family,
            solver=Solver(g, cfg),
            strategy=pick_strategy(family, g, human.other()),
            first=first,
        )
        sessions[sid] = s
        _snapshot(s)
        return {"session_id": sid, "state": _state(s)}

    @app.get("/games/{sid}")
    def get_state(sid: str):
        return _state(_get(sid))

    @app.post("/games/{sid}/moves")
    def human_move(sid: str, body: MoveBody):
        s = _get(sid)
        with s.lock:
            p = s.position
            if status(p) is not GameStatus.ONGOING:
                raise HTTPException(409, "game is over")
            if p.to_move is not s.human:
                raise HTTPException(409, "not your turn")
            v = body.vertex
            if not (0 <= v < s.graph.n) or not p.is_free(v):
                raise HTTPException(
                    400,
                    detail={"error": f"illegal move {v}", "legal_moves": p.legal_moves()},
                )
            s.position = p.apply_move(v)
            _snapshot(s)
            return _state(s)

    @app.post("/games/{sid}/engine-move")
    def engine_move(sid: str):
        s = _get(sid)
        with s.lock:
            p = s.position
            if status(p) is not GameStatus.ONGOING:
                raise HTTPException(409, "game is over")
            if p.to_move is not s.engine:
                raise HTTPException(409, "engine is not to move")
            v = None
            if s.strategy is not None:
                try:
                    cand = s.strategy.next_move(p)
                    if p.is_free(cand):
                        v = cand
                except Exception:
                    logging.getLogger(__name__).warning(
                        "strategy %s failed on %r; engine falls back to search",
                        s.strategy.name, p, exc_info=True)
                    v = None
            if v is None:
                try:
                    res = s.solver.solve(p)
                except BudgetExhausted:
                    raise HTTPException(503, "solver budget exhausted")
                if res.unknown:
                    raise HTTPException(503, "solver budget exhausted")
                v = res.best_move
            s.position = p.apply_move(v)
            s.last_engine_move = v
            _snapshot(s)
            return {"move": v, "state": _state(s)}

    return app


app = create_app()
