"""Game semantics for the Maker-Breaker total domination game.

Staller (Maker) tries to claim the full open neighborhood of some vertex;
Dominator (Breaker) wins if he ends up owning at least one vertex in every
open neighborhood, i.e. a total dominating set.  Positions are value-like:
applying a move returns a new position.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass

from .graphs import Graph, from_json_edges, to_json_edges


class Player(str, enum.Enum):
    DOMINATOR = "dominator"
    STALLER = "staller"

    def other(self) -> "Player":
        return Player.STALLER if self is Player.DOMINATOR else Player.DOMINATOR


class GameStatus(enum.Enum):
    ONGOING = "ongoing"
    DOMINATOR_WON = "dominator_won"
    STALLER_WON = "staller_won"


class IllegalMove(ValueError):
    pass


class Position:
    """Per-vertex ownership plus side to move.

    Positions normally arise from alternating play, but mid-game setups may
    be constructed directly; only ownership disjointness is enforced then.
    """

    __slots__ = ("graph", "owners", "to_move", "history", "_dmask", "_smask")

    def __init__(self, graph: Graph, owners, to_move: Player, history=()):
        self.graph = graph
        self.owners: tuple[Player | None, ...] = tuple(owners)
        if len(self.owners) != graph.n:
            raise ValueError("owners length must equal vertex count")
        self.to_move = to_move
        self.history: tuple[tuple[Player, int], ...] = tuple(history)
        d = s = 0
        for v, o in enumerate(self.owners):
            if o is Player.DOMINATOR:
                d |= 1 << v
            elif o is Player.STALLER:
                s |= 1 << v
        self._dmask = d
        self._smask = s

    @staticmethod
    def initial(graph: Graph, first: Player) -> "Position":
        return Position(graph, (None,) * graph.n, first)

    @staticmethod
    def setup(graph: Graph, dominator=(), staller=(), to_move: Player = Player.STALLER) -> "Position":
        """Mid-game position from explicit ownership sets."""
        dset, sset = set(dominator), set(staller)
        if dset & sset:
            raise ValueError(f"vertices owned by both players: {sorted(dset & sset)}")
        owners: list[Player | None] = [None] * graph.n
        for v in dset:
            owners[v] = Player.DOMINATOR
        for v in sset:
            owners[v] = Player.STALLER
        return Position(graph, owners, to_move)

    # -- masks -------------------------------------------------------------

    @property
    def dominator_mask(self) -> int:
        return self._dmask

    @property
    def staller_mask(self) -> int:
        return self._smask

    def claimed(self, player: Player) -> frozenset[int]:
        mask = self._dmask if player is Player.DOMINATOR else self._smask
        return frozenset(_bits(mask))

    def is_free(self, v: int) -> bool:
        return self.owners[v] is None

    def free_vertices(self) -> list[int]:
        return [v for v, o in enumerate(self.owners) if o is None]

    # -- play --------------------------------------------------------------

    def legal_moves(self) -> list[int]:
        if status(self) is not GameStatus.ONGOING:
            return []
        return self.free_vertices()

    def apply_move(self, v: int) -> "Position":
        if status(self) is not GameStatus.ONGOING:
            raise IllegalMove("game is over")
        if not (0 <= v < self.graph.n):
            raise IllegalMove(f"vertex {v} out of range")
        if self.owners[v] is not None:
            raise IllegalMove(f"vertex {v} already claimed")
        owners = list(self.owners)
        owners[v] = self.to_move
        return Position(
            self.graph,
            owners,
            self.to_move.other(),
            self.history + ((self.to_move, v),),
        )

    def moves_of(self, player: Player) -> list[int]:
        return [v for p, v in self.history if p is player]

    def __repr__(self):
        d = sorted(_bits(self._dmask))
        s = sorted(_bits(self._smask))
        return f"Position(D={d}, S={s}, to_move={self.to_move.value})"


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class WinningSetSystem:
    """Family of open neighborhoods, deduplicated.  ``watchers[i]`` records
    which vertices' neighborhoods collapsed into entry ``i`` (display only).
    """

    n: int
    sets: tuple[frozenset[int], ...]
    watchers: tuple[tuple[int, ...], ...]

    def live_indices(self, p: Position) -> list[int]:
        dm = p.dominator_mask
        return [i for i, m in enumerate(self._masks()) if not m & dm]

    def needed(self, p: Position, i: int) -> frozenset[int]:
        return frozenset(v for v in self.sets[i] if p.owners[v] is None)

    def _masks(self) -> tuple[int, ...]:
        masks = []
        for s in self.sets:
            m = 0
            for v in s:
                m |= 1 << v
            masks.append(m)
        return tuple(masks)

    def masks(self) -> tuple[int, ...]:
        return self._masks()


def winning_sets(g: Graph) -> WinningSetSystem:
    """One set per vertex: its open neighborhood.  A vertex with no
    neighbors contributes an empty set, which Staller wins instantly."""
    grouped: dict[frozenset[int], list[int]] = {}
    for v in range(g.n):
        grouped.setdefault(frozenset(g.adjacency[v]), []).append(v)
    items = sorted(grouped.items(), key=lambda kv: sorted(kv[0]))
    return WinningSetSystem(
        n=g.n,
        sets=tuple(s for s, _ in items),
        watchers=tuple(tuple(ws) for _, ws in items),
    )


def status(p: Position, w: WinningSetSystem | None = None) -> GameStatus:
    """Early-terminating status: Staller has won as soon as some open
    neighborhood is fully hers; Dominator as soon as every one is hit."""
    if w is None:
        w = _system_for(p.graph)
    dm, sm = p.dominator_mask, p.staller_mask
    all_hit = True
    for m in w.masks():
        if m & dm:
            continue
        all_hit = False
        if m & ~sm == 0:  # every element claimed by Staller (or set empty)
            return GameStatus.STALLER_WON
    if all_hit:
        return GameStatus.DOMINATOR_WON
    if not any(o is None for o in p.owners):
        raise AssertionError("full board with neither win condition; engine bug")
    return GameStatus.ONGOING


_SYSTEM_CACHE: dict[Graph, WinningSetSystem] = {}


def _system_for(g: Graph) -> WinningSetSystem:
    w = _SYSTEM_CACHE.get(g)
    if w is None:
        w = winning_sets(g)
        if len(_SYSTEM_CACHE) > 256:
            _SYSTEM_CACHE.clear()
        _SYSTEM_CACHE[g] = w
    return w


def reduce(p: Position, w: WinningSetSystem | None = None) -> WinningSetSystem:
    """Residual system: drop sets hit by Dominator, shrink the rest to their
    still-free elements, and re-deduplicate.  Preserves the game value."""
    if w is None:
        w = _system_for(p.graph)
    dm, sm = p.dominator_mask, p.staller_mask
    grouped: dict[frozenset[int], list[int]] = {}
    for s, watchers in zip(w.sets, w.watchers):
        m = 0
        for v in s:
            m |= 1 << v
        if m & dm:
            continue
        needed = frozenset(v for v in s if not (sm >> v) & 1)
        grouped.setdefault(needed, []).extend(watchers)
    items = sorted(grouped.items(), key=lambda kv: sorted(kv[0]))
    return WinningSetSystem(
        n=w.n,
        sets=tuple(s for s, _ in items),
        watchers=tuple(tuple(sorted(ws)) for _, ws in items),
    )


# ---------------------------------------------------------------------------
# outcome classification
# ---------------------------------------------------------------------------

class OutcomeClass(str, enum.Enum):
    D = "D"  # Dominator wins regardless of who starts
    S = "S"  # Staller wins regardless of who starts
    N = "N"  # the first player wins


@dataclass(frozen=True)
class OutcomeReport:
    d_game_winner: Player | None
    s_game_winner: Player | None

    @property
    def outcome(self) -> OutcomeClass | None:
        d, s = self.d_game_winner, self.s_game_winner
        if d is None or s is None:
            return None
        if d is Player.DOMINATOR and s is Player.DOMINATOR:
            return OutcomeClass.D
        if d is Player.STALLER and s is Player.STALLER:
            return OutcomeClass.S
        if d is Player.DOMINATOR and s is Player.STALLER:
            return OutcomeClass.N
        raise AssertionError(
            "second player won both games, contradicting first-move advantage"
        )


def classify_outcome(g: Graph, solver) -> OutcomeReport:
    """Solve both the Dominator-first and Staller-first games.

    ``solver`` must expose ``solve(position) -> result`` with a ``winner``
    attribute that is None when the budget ran out; an exhausted budget
    yields an explicitly unknown report, never a guess.
    """
    rd = solver.solve(Position.initial(g, Player.DOMINATOR))
    rs = solver.solve(Position.initial(g, Player.STALLER))
    report = OutcomeReport(d_game_winner=rd.winner, s_game_winner=rs.winner)
    report.outcome  # force the contradiction check
    return report


# ---------------------------------------------------------------------------
# transcripts
# ---------------------------------------------------------------------------

def transcript(p: Position, first: Player | None = None) -> str:
    """JSON transcript of a finished or in-progress game."""
    if first is None:
        first = p.history[0][0] if p.history else p.to_move
    obj = {
        "graph": json.loads(to_json_edges(p.graph)),
        "first": first.value,
        "moves": [{"player": pl.value, "vertex": v} for pl, v in p.history],
        "status": status(p).value,
    }
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def replay_transcript(text: str) -> Position:
    """Rebuild a position from a transcript, validating move legality."""
    obj = json.loads(text)
    g = from_json_edges(json.dumps(obj["graph"]))
    p = Position.initial(g, Player(obj["first"]))
    for mv in obj["moves"]:
        player = Player(mv["player"])
        if player is not p.to_move:
            raise IllegalMove(f"move out of turn: {mv}")
        p = p.apply_move(int(mv["vertex"]))
    declared = obj.get("status")
    if declared is not None and GameStatus(declared) is not status(p):
        raise IllegalMove(f"transcript status {declared!r} does not match replay")
    return p
