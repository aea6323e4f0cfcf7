"""Exact game-value computation by memoized alternating search.

The search state is the residual family of winning sets (each reduced to
its still-free elements), encoded as bitmasks.  States are canonicalized
by sorting the sets and renaming elements in first-occurrence order, so
transpositions and most board symmetries share table entries.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .game import GameStatus, Player, Position, WinningSetSystem, status, winning_sets
from .graphs import Graph


class BudgetExhausted(Exception):
    """Internal signal; surfaces as an unknown-winner result."""


@dataclass
class SolverConfig:
    memo_capacity: int = 4_000_000
    node_budget: int | None = None
    time_budget: float | None = None
    hit_set_removal: bool = True      # restrict moves to vertices inside live sets
    dominated_move: bool = True       # skip moves whose set membership another move covers
    threat_extension: bool = True     # resolve forced blocks without branching
    potential_cutoff: bool = True     # weight-function early Dominator win (sound)
    root_parallelism: bool = False

    def __post_init__(self):
        if self.memo_capacity <= 0:
            raise ValueError("memo_capacity must be positive")
        if self.node_budget is not None and self.node_budget <= 0:
            raise ValueError("node_budget must be positive")
        if self.time_budget is not None and self.time_budget <= 0:
            raise ValueError("time_budget must be positive")


@dataclass(frozen=True)
class SolveResult:
    winner: Player | None          # None = budget exhausted, explicitly unknown
    best_move: int | None
    nodes: int
    principal_line: tuple[int, ...]
    from_cache: bool
    stats: dict = field(default_factory=dict, compare=False)

    @property
    def unknown(self) -> bool:
        return self.winner is None


def canonical_key(setmasks, staller_to_move: bool) -> tuple:
    """Transposition key: sets sorted, elements renamed by first occurrence."""
    perm: dict[int, int] = {}
    nxt = 0
    out = []
    for m in sorted(setmasks):
        mm = 0
        b = m
        while b:
            low = b & -b
            i = low.bit_length() - 1
            j = perm.get(i)
            if j is None:
                perm[i] = j = nxt
                nxt += 1
            mm |= 1 << j
            b ^= low
        out.append(mm)
    out.sort()
    return (tuple(out), staller_to_move)


def _normalize(setmasks) -> tuple[int, ...]:
    """Sorted minimal antichain: duplicates and supersets dropped.

    A fully claimed superset always contains a fully claimed subset, so the
    game value only depends on the minimal sets.
    """
    by_size = sorted(set(setmasks), key=lambda m: (m.bit_count(), m))
    kept: list[int] = []
    for m in by_size:
        if not any(k & m == k for k in kept):
            kept.append(m)
    kept.sort()
    return tuple(kept)


class Solver:
    """Exact solver bound to one graph (or explicit winning-set family).

    The transposition table persists across calls, so solving many related
    positions of one graph is cheap.  Concurrent use is tolerated: the table
    is value-deterministic, so racing writes are benign.
    """

    def __init__(self, source: Graph | WinningSetSystem, config: SolverConfig | None = None):
        if isinstance(source, Graph):
            self.graph: Graph | None = source
            self.system = winning_sets(source)
        else:
            self.graph = None
            self.system = source
        self.config = config or SolverConfig()
        self.memo: dict[tuple, bool] = {}
        self.nodes = 0
        self.memo_hits = 0
        self._deadline: float | None = None
        self._node_limit: int | None = None
        self._base_masks = self.system.masks()

    # -- public API ----------------------------------------------------------

    def solve(self, p: Position) -> SolveResult:
        """Exact winner under optimal play from ``p``.

        Deterministic: the reported best move is the lowest-id winning move
        when the mover wins; otherwise the forced block if one exists, else
        the lowest-id candidate.
        """
        t0 = time.monotonic()
        start_nodes = self.nodes
        st = status(p, self.system)
        if st is not GameStatus.ONGOING:
            winner = Player.DOMINATOR if st is GameStatus.DOMINATOR_WON else Player.STALLER
            return SolveResult(winner, None, 0, (), False, self._stats(t0, start_nodes))
        sets, freemask = self._residual(p)
        staller = p.to_move is Player.STALLER
        key = canonical_key(sets, staller)
        from_cache = key in self.memo
        self._arm_budget()
        try:
            staller_wins = self._search(sets, staller, freemask)
        except BudgetExhausted:
            return SolveResult(None, None, self.nodes - start_nodes, (), from_cache,
                               self._stats(t0, start_nodes))
        finally:
            self._disarm_budget()
        winner = Player.STALLER if staller_wins else Player.DOMINATOR
        best = self._choose_move(p, sets, freemask, winner)
        line = self._principal_line(p, winner)
        return SolveResult(winner, best, self.nodes - start_nodes, line, from_cache,
                           self._stats(t0, start_nodes))

    def winner(self, p: Position) -> Player | None:
        """Winner only; skips move extraction and line reconstruction."""
        st = status(p, self.system)
        if st is GameStatus.DOMINATOR_WON:
            return Player.DOMINATOR
        if st is GameStatus.STALLER_WON:
            return Player.STALLER
        sets, freemask = self._residual(p)
        self._arm_budget()
        try:
            won = self._search(sets, p.to_move is Player.STALLER, freemask)
        except BudgetExhausted:
            return None
        finally:
            self._disarm_budget()
        return Player.STALLER if won else Player.DOMINATOR

    def solve_family(self, setmasks, staller_to_move: bool, freemask: int | None = None) -> Player:
        """Winner of the bare Maker-Breaker game on an explicit set family."""
        sets = _normalize(setmasks)
        if any(m == 0 for m in sets):
            return Player.STALLER
        if not sets:
            return Player.DOMINATOR
        if freemask is None:
            fm = 0
            for m in sets:
                fm |= m
        else:
            fm = freemask
        self._arm_budget()
        try:
            won = self._search(sets, staller_to_move, fm)
        finally:
            self._disarm_budget()
        return Player.STALLER if won else Player.DOMINATOR

    # -- residual construction ------------------------------------------------

    def _residual(self, p: Position) -> tuple[tuple[int, ...], int]:
        dm, sm = p.dominator_mask, p.staller_mask
        claimed = dm | sm
        freemask = ((1 << self.system.n) - 1) & ~claimed
        live = []
        for m in self._base_masks:
            if m & dm:
                continue
            live.append(m & ~sm)
        return _normalize(live), freemask

    # -- budget ----------------------------------------------------------------

    def _arm_budget(self):
        cfg = self.config
        self._node_limit = None if cfg.node_budget is None else self.nodes + cfg.node_budget
        self._deadline = None if cfg.time_budget is None else time.monotonic() + cfg.time_budget

    def _disarm_budget(self):
        self._node_limit = None
        self._deadline = None

    def _stats(self, t0: float, start_nodes: int) -> dict:
        return {
            "nodes": self.nodes - start_nodes,
            "memo_hits": self.memo_hits,
            "memo_size": len(self.memo),
            "elapsed": time.monotonic() - t0,
        }

    # -- core search -------------------------------------------------------------

    def _search(self, sets: tuple[int, ...], staller: bool, freemask: int) -> bool:
        """True iff Staller (Maker) wins the residual game with ``staller`` to move."""
        self.nodes += 1
        if self._node_limit is not None and self.nodes > self._node_limit:
            raise BudgetExhausted
        if self._deadline is not None and not self.nodes % 2048 and time.monotonic() > self._deadline:
            raise BudgetExhausted
        if not sets:
            return False
        cfg = self.config

        if cfg.threat_extension:
            single_bits = 0
            for m in sets:
                if not m & (m - 1):
                    single_bits |= m
            if single_bits:
                if staller:
                    return True
                if single_bits & (single_bits - 1):
                    return True  # two disjoint forced blocks: a sprung double trap
                sets = tuple(m for m in sets if not m & single_bits)
                if not sets:
                    return False
                freemask &= ~single_bits
                staller = True

        if cfg.potential_cutoff and staller:
            # weight-function argument: too little mass left for Maker
            pot = 0.0
            for m in sets:
                pot += 0.5 ** m.bit_count()
                if pot >= 0.5:
                    break
            if pot < 0.5:
                return False

        key = canonical_key(sets, staller)
        hit = self.memo.get(key)
        if hit is not None:
            self.memo_hits += 1
            return hit

        union = 0
        for m in sets:
            union |= m
        cand_mask = union if cfg.hit_set_removal else freemask
        cand = []
        b = cand_mask
        while b:
            low = b & -b
            cand.append(low.bit_length() - 1)
            b ^= low

        member: dict[int, int] = {}
        for idx, m in enumerate(sets):
            mm = m
            while mm:
                low = mm & -mm
                v = low.bit_length() - 1
                member[v] = member.get(v, 0) | (1 << idx)
                mm ^= low

        if cfg.dominated_move and len(cand) > 1:
            kept = []
            for x in cand:
                mx = member.get(x, 0)
                dominated = False
                for y in cand:
                    if y == x:
                        continue
                    my = member.get(y, 0)
                    if mx & ~my == 0 and (mx != my or y < x):
                        dominated = True
                        break
                if not dominated:
                    kept.append(x)
            cand = kept

        sizes = [m.bit_count() for m in sets]

        def urgency(v: int) -> tuple:
            mm = member.get(v, 0)
            if not mm:
                return (99, 0, v)
            best = 99
            count = 0
            while mm:
                low = mm & -mm
                i = low.bit_length() - 1
                if sizes[i] < best:
                    best = sizes[i]
                count += 1
                mm ^= low
            return (best, -count, v)

        cand.sort(key=urgency)

        if staller:
            result = False
            for v in cand:
                bit = 1 << v
                win = False
                child = []
                for m in sets:
                    if m & bit:
                        m2 = m & ~bit
                        if not m2:
                            win = True
                            break
                        child.append(m2)
                    else:
                        child.append(m)
                if win or self._search(_normalize(child), False, freemask & ~bit):
                    result = True
                    break
        else:
            result = True
            for v in cand:
                bit = 1 << v
                child = tuple(m for m in sets if not m & bit)
                if not child or not self._search(child, True, freemask & ~bit):
                    result = False
                    break

        if len(self.memo) < self.config.memo_capacity:
            self.memo[key] = result
        return result

    # -- move extraction --------------------------------------------------------

    def _child_value(self, sets, staller: bool, freemask: int, v: int) -> bool | None:
        """Staller-wins value after the mover claims v; None if v completes a set
        (immediate Staller win) is impossible -- empty child means Dominator won."""
        bit = 1 << v
        if staller:
            child = []
            for m in sets:
                if m & bit:
                    m2 = m & ~bit
                    if not m2:
                        return True
                    child.append(m2)
                else:
                    child.append(m)
            return self._search(_normalize(child), False, freemask & ~bit)
        child = tuple(m for m in sets if not m & bit)
        if not child:
            return False
        return self._search(child, True, freemask & ~bit)

    def _candidates(self, p: Position, sets, freemask: int) -> list[int]:
        if self.config.hit_set_removal:
            union = 0
            for m in sets:
                union |= m
            mask = union
        else:
            mask = freemask
        out = []
        b = mask
        while b:
            low = b & -b
            out.append(low.bit_length() - 1)
            b ^= low
        return out

    def _choose_move(self, p: Position, sets, freemask: int, winner: Player) -> int:
        """Lowest-id winning move for the winner, scanning every free vertex
        (a move outside all live sets can still win when the position is won
        without tempo); for the loser, the forced block when one exists,
        else the lowest-id free vertex."""
        staller = p.to_move is Player.STALLER
        free = p.free_vertices()
        if p.to_move is winner:
            want = staller
            for v in free:
                if self._child_value(sets, staller, freemask, v) == want:
                    return v
            raise AssertionError("winner has no winning move; search inconsistency")
        if p.to_move is Player.DOMINATOR:
            singles = sorted(m.bit_length() - 1 for m in sets if not m & (m - 1))
            if singles:
                return singles[0]
        return free[0]

    def _principal_line(self, p: Position, winner: Player) -> tuple[int, ...]:
        line = []
        cur = p
        while status(cur, self.system) is GameStatus.ONGOING:
            sets, freemask = self._residual(cur)
            v = self._choose_move(cur, sets, freemask, winner)
            line.append(v)
            cur = cur.apply_move(v)
        final = status(cur, self.system)
        expect = GameStatus.STALLER_WON if winner is Player.STALLER else GameStatus.DOMINATOR_WON
        if final is not expect:
            raise AssertionError("principal line does not realize the computed winner")
        return tuple(line)

    # -- root parallel variant -----------------------------------------------

    def solve_parallel(self, p: Position) -> SolveResult:
        """Root children evaluated concurrently; same winner and move as solve()."""
        if not self.config.root_parallelism:
            return self.solve(p)
        st = status(p, self.system)
        if st is not GameStatus.ONGOING:
            return self.solve(p)
        sets, freemask = self._residual(p)
        staller = p.to_move is Player.STALLER
        cand = self._candidates(p, sets, freemask)
        self._arm_budget()
        try:
            with ThreadPoolExecutor(max_workers=min(8, max(1, len(cand)))) as pool:
                values = list(pool.map(
                    lambda v: self._child_value(sets, staller, freemask, v), cand))
        finally:
            self._disarm_budget()
        mover_wins = any(val == staller for val in values)
        staller_wins = staller if mover_wins else not staller
        winner = Player.STALLER if staller_wins else Player.DOMINATOR
        best = self._choose_move(p, sets, freemask, winner)
        line = self._principal_line(p, winner)
        return SolveResult(winner, best, self.nodes, line, False, {"parallel": True})


# ---------------------------------------------------------------------------
# convenience entry points and threat utilities
# ---------------------------------------------------------------------------

_SHARED: dict[tuple, Solver] = {}


def shared_solver(g: Graph, config: SolverConfig | None = None) -> Solver:
    """Per-graph solver with a persistent transposition table."""
    key = (g, repr(config))
    s = _SHARED.get(key)
    if s is None:
        if len(_SHARED) > 64:
            _SHARED.clear()
        s = Solver(g, config)
        _SHARED[key] = s
    return s


def solve(p: Position, config: SolverConfig | None = None) -> SolveResult:
    return shared_solver(p.graph, config).solve(p)


def best_response(p: Position, config: SolverConfig | None = None) -> int:
    """A move realizing the position's value for the side to move."""
    res = solve(p, config)
    if res.unknown:
        raise BudgetExhausted("solver budget exhausted while choosing a response")
    if res.best_move is None:
        raise ValueError("position is not ongoing")
    return res.best_move


@dataclass(frozen=True)
class ThreatReport:
    staller_wins_now: frozenset[int]
    dominator_forced: frozenset[int]


def immediate_threats(p: Position) -> ThreatReport:
    """One-move threats: vertices that complete some live winning set.

    When Staller is to move these win outright; when Dominator is to move
    each is the unique block of its set, and two disjoint blocks mean a
    sprung double trap.
    """
    solver = shared_solver(p.graph)
    sets, _ = solver._residual(p)
    singles = frozenset(m.bit_length() - 1 for m in sets if m and not m & (m - 1))
    return ThreatReport(staller_wins_now=singles, dominator_forced=singles)


def find_double_trap_move(p: Position) -> int | None:
    """Lowest-id Staller move creating two one-move threats with distinct
    blocks, which no single Dominator reply can parry.  Moves that already
    complete a set are wins, not traps, and are skipped."""
    if p.to_move is not Player.STALLER:
        raise ValueError("double-trap search applies when Staller is to move")
    solver = shared_solver(p.graph)
    sets, _ = solver._residual(p)
    for v in p.free_vertices():
        bit = 1 << v
        completes = False
        bits_seen = 0
        for m in sets:
            m2 = m & ~bit
            if m & bit and not m2:
                completes = True
                break
            if m2 and not m2 & (m2 - 1):
                bits_seen |= m2
        if completes:
            continue
        if bits_seen & (bits_seen - 1):
            return v
    return None
