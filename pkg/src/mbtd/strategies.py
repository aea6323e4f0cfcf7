"""Constructive strategies: pairing plans, the partition combinator,
family-specific Dominator play, and scripted Staller attacks on gadgets.

Scripted strategies are finite decision tables keyed by the opponent's
replies.  Every Staller script checks for a one-move completion first, so
"forces d = x" steps need no explicit punishment branch: a Dominator who
ignores a forced block loses to the completion check on the next turn.
Replies outside a script's table fall back to the exact solver and are
counted, so table gaps are visible rather than silent.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations

from .gadgets import GadgetEmbedding, gadget_graph, window_family_masks
from .game import Player, Position, winning_sets
from .graphs import Graph, generate_bipartite_circulant, generate_eta, generate_omega
from .solver import Solver, best_response, immediate_threats

log = logging.getLogger(__name__)


class Strategy:
    """Behavioral interface: ``next_move(position) -> vertex``.

    ``memo_key`` must capture any state beyond ownership that influences
    future moves (validation harnesses memoize on it); None means the
    strategy is a pure function of ownership and side to move.
    """

    role: Player = Player.DOMINATOR
    name: str = "strategy"
    applicability: str = ""

    def __init__(self):
        self.fallback_count = 0

    def next_move(self, p: Position) -> int:
        raise NotImplementedError

    def memo_key(self, p: Position):
        return None

    def _fallback(self, p: Position) -> int:
        self.fallback_count += 1
        log.warning("%s: reply outside script table at %r; using solver", self.name, p)
        return best_response(p)


def _lowest_free(p: Position, among=None) -> int | None:
    pool = p.free_vertices() if among is None else [v for v in among if p.is_free(v)]
    return min(pool) if pool else None


def _singleton_completions(p: Position) -> list[int]:
    return sorted(immediate_threats(p).staller_wins_now)


# ---------------------------------------------------------------------------
# pairing plans
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PairingPlan:
    pairs: tuple[tuple[int, int], ...]

    def partner(self, v: int) -> int | None:
        for a, b in self.pairs:
            if v == a:
                return b
            if v == b:
                return a
        return None

    def members(self) -> frozenset[int]:
        return frozenset(v for pair in self.pairs for v in pair)

    def coverage(self, g: Graph) -> dict[frozenset[int], tuple[int, int]]:
        """Winning set -> a pair contained in it (first pair in plan order)."""
        out = {}
        for s in winning_sets(g).sets:
            for a, b in self.pairs:
                if a in s and b in s:
                    out[s] = (a, b)
                    break
        return out


def verify_pairing_plan(g: Graph, plan: PairingPlan) -> bool:
    """Pairs pairwise disjoint and every open neighborhood contains one."""
    seen: set[int] = set()
    for a, b in plan.pairs:
        if a == b or a in seen or b in seen:
            return False
        if not (0 <= a < g.n and 0 <= b < g.n):
            return False
        seen.update((a, b))
    cover = plan.coverage(g)
    return all(s in cover for s in winning_sets(g).sets)


def find_pairing_plan(g: Graph) -> PairingPlan | None:
    """Exhaustive backtracking over candidate pairs; None is definitive."""
    sets = sorted(winning_sets(g).sets, key=lambda s: (len(s), sorted(s)))
    if any(len(s) < 2 for s in sets):
        return None  # a set smaller than a pair can never contain one

    chosen: list[tuple[int, int]] = []
    used: set[int] = set()

    def covered(s) -> bool:
        return any(a in s and b in s for a, b in chosen)

    def solve_from() -> bool:
        pending = [s for s in sets if not covered(s)]
        if not pending:
            return True
        def options(s):
            return [pr for pr in combinations(sorted(s), 2)
                    if pr[0] not in used and pr[1] not in used]
        s = min(pending, key=lambda s: (len(options(s)), sorted(s)))
        for a, b in options(s):
            chosen.append((a, b))
            used.update((a, b))
            if solve_from():
                return True
            chosen.pop()
            used.difference_update((a, b))
        return False

    if solve_from():
        return PairingPlan(pairs=tuple(sorted(tuple(sorted(pr)) for pr in chosen)))
    return None


class PairingStrategy(Strategy):
    """Second-player Dominator play from a verified pairing plan: whenever
    Staller owns one vertex of a pair and the partner is free, take it."""

    role = Player.DOMINATOR

    def __init__(self, plan: PairingPlan, name: str = "pairing"):
        super().__init__()
        self.plan = plan
        self.name = name

    def next_move(self, p: Position) -> int:
        broken = []
        for a, b in self.plan.pairs:
            oa, ob = p.owners[a], p.owners[b]
            if oa is Player.STALLER and ob is None:
                broken.append(b)
            elif ob is Player.STALLER and oa is None:
                broken.append(a)
        if broken:
            return min(broken)
        members = self.plan.members()
        if not p.moves_of(Player.STALLER):
            outside = _lowest_free(p, set(range(p.graph.n)) - members)
            if outside is not None:
                return outside
            return _lowest_free(p)
        free_member = _lowest_free(p, members)
        if free_member is not None:
            return free_member
        return _lowest_free(p)


def pairing_strategy(plan: PairingPlan) -> PairingStrategy:
    return PairingStrategy(plan)


def partition_strategy(g: Graph, parts, sub_plans=None) -> PairingStrategy:
    """Dominator strategy from a partition into parts whose induced
    subgraphs each carry a pairing certificate.

    With ``sub_plans`` omitted, each part's plan is found by exhaustive
    search; a part without one fails certification.  The per-part pairs are
    translated into one global plan: a pair inside an induced neighborhood
    sits inside the full neighborhood too, so the union plan is valid and
    responses stay inside the part Staller played in.
    """
    all_vs = sorted(v for part in parts for v in part)
    if all_vs != list(range(g.n)):
        raise ValueError("parts must partition the vertex set")
    global_pairs: list[tuple[int, int]] = []
    for i, part in enumerate(parts):
        part = sorted(part)
        sub = g.induced(part)
        if sub_plans is not None:
            plan = sub_plans[i]
        else:
            plan = find_pairing_plan(sub)
        if plan is None:
            raise ValueError(f"part {i} has no pairing certificate; cannot combine")
        for a, b in plan.pairs:
            global_pairs.append(tuple(sorted((part[a], part[b]))))
    plan = PairingPlan(pairs=tuple(sorted(global_pairs)))
    if not verify_pairing_plan(g, plan):
        raise ValueError("combined pairing plan failed verification against the host")
    s = PairingStrategy(plan, name="partition")
    s.applicability = f"partition into {len(list(parts))} certified parts"
    return s


# ---------------------------------------------------------------------------
# cubic bipartite circulant strategy
# ---------------------------------------------------------------------------

class BipartiteCirculantStrategy(Strategy):
    """Dominator play on the circulant family: answer a claimed common
    neighbor of a split pair with the other common neighbor, otherwise take
    the index-1 (then index+1) neighbor of Staller's move, then any free
    vertex next to an owned one, then any free vertex."""

    role = Player.DOMINATOR

    def __init__(self, m: int):
        super().__init__()
        self.m = m
        self.graph = generate_bipartite_circulant(m)
        self.name = f"circulant-m{m}"
        self.applicability = f"bipartite circulant m={m}"

    def _u(self, i: int) -> int:
        return i % self.m

    def _v(self, i: int) -> int:
        return self.m + (i % self.m)

    def next_move(self, p: Position) -> int:
        forced = _singleton_completions(p)
        if forced:
            return forced[0]
        smoves = p.moves_of(Player.STALLER)
        if not smoves:
            return _lowest_free(p)
        w = smoves[-1]
        m = self.m
        # consecutive same-side pairs with their two common neighbors
        pairs = []
        for k in range(m):
            pairs.append(((self._u(k - 1), self._u(k)), (self._v(k), self._v(k + 1))))
        for k in range(m):
            pairs.append(((self._v(k - 1), self._v(k)), (self._u(k - 2), self._u(k - 1))))
        for (x, y), commons in pairs:
            if w not in commons:
                continue
            ox, oy = p.owners[x], p.owners[y]
            if {ox, oy} == {Player.DOMINATOR, Player.STALLER}:
                other = commons[0] if commons[1] == w else commons[1]
                if p.is_free(other):
                    return other
        side_u = w < m
        idx = w if side_u else w - m
        mk = self._u if side_u else self._v
        for cand in (mk(idx - 1), mk(idx + 1)):
            if p.is_free(cand):
                return cand
        owned = p.claimed(Player.DOMINATOR)
        near = [v for v in p.free_vertices()
                if any(nb in owned for nb in self.graph.adjacency[v])]
        if near:
            return min(near)
        return _lowest_free(p)

    def memo_key(self, p: Position):
        smoves = p.moves_of(Player.STALLER)
        return smoves[-1] if smoves else None


def bipartite_circulant_strategy(m: int) -> BipartiteCirculantStrategy:
    return BipartiteCirculantStrategy(m)


# ---------------------------------------------------------------------------
# triangular prism strategy (second player)
# ---------------------------------------------------------------------------

class PrismStrategy(Strategy):
    """Second-player Dominator play on the triangular prism GP(3,1):
    open in the triangle opposite Staller's move, avoiding her neighbor;
    afterwards block forced threats and grab full covers."""

    role = Player.DOMINATOR
    name = "prism"
    applicability = "gp(3,1), Dominator second"

    def next_move(self, p: Position) -> int:
        g = p.graph
        forced = _singleton_completions(p)
        if forced:
            return forced[0]
        smoves = p.moves_of(Player.STALLER)
        if len(smoves) == 1 and not p.moves_of(Player.DOMINATOR):
            s1 = smoves[0]
            n = g.n // 2
            opposite = range(n, 2 * n) if s1 < n else range(n)
            cand = [v for v in opposite if p.is_free(v) and not g.has_edge(v, s1)]
            if cand:
                return min(cand)
        # a vertex hitting every live set wins on the spot; else hit the most
        w = winning_sets(g)
        dm = p.dominator_mask
        live = [mask for mask in w.masks() if not mask & dm]
        best_v, best_hits = None, -1
        for v in p.free_vertices():
            hits = sum(1 for mask in live if (mask >> v) & 1)
            if hits == len(live):
                return v
            if hits > best_hits:
                best_v, best_hits = v, hits
        return best_v if best_v is not None else _lowest_free(p)


def prism_strategy() -> PrismStrategy:
    return PrismStrategy()


# ---------------------------------------------------------------------------
# scripted Staller gadget attacks
# ---------------------------------------------------------------------------

OUTSIDE = "<outside>"


class ScriptedStaller(Strategy):
    """Runs a reply-keyed decision table inside an embedded gadget.

    Move priority: complete a winning set now if possible; otherwise play
    the script; otherwise fall back to the solver (counted and logged).
    ``preset`` marks template vertices assumed claimed before the script
    starts (e.g. an opener the table conditions on), excluded from replies.
    """

    role = Player.STALLER

    def __init__(self, embedding: GadgetEmbedding, script, name: str):
        super().__init__()
        self.embedding = embedding
        self.map = embedding.map()
        self.inv = {v: t for t, v in self.map.items()}
        self.script = script
        self.name = name

    def _template_history(self, p: Position):
        own = [self.inv.get(v, OUTSIDE) for pl, v in p.history if pl is Player.STALLER]
        replies = [self.inv.get(v, OUTSIDE) for pl, v in p.history if pl is Player.DOMINATOR]
        return replies, own

    def next_move(self, p: Position) -> int:
        wins = _singleton_completions(p)
        if wins:
            return wins[0]
        replies, own = self._template_history(p)
        label = self.script(replies, own)
        if label is not None:
            v = self.map.get(label)
            if v is not None and p.is_free(v):
                return v
        return self._fallback(p)

    def memo_key(self, p: Position):
        replies, own = self._template_history(p)
        return (tuple(replies), tuple(own))


def _aligned(replies, own):
    """Replies to the script's own moves: moves the opponent made before the
    script started (e.g. a game-opening claim) are stripped."""
    pre = len(replies) - len(own)
    return replies[pre:] if pre > 0 else replies


def _g1_script(replies, own):
    replies = _aligned(replies, own)
    if not own:
        return "v2"
    if len(own) == 1:
        r1 = replies[0] if replies else OUTSIDE
        if r1 in ("u1", "u3", "v1"):
            return "v3"
        return "u3"  # double trap on u1-v1 territory
    if len(own) == 2 and own[1] == "v3":
        r1 = replies[0]
        return {"u1": "v1", "u3": "u2", "v1": "u1"}.get(r1)
    return None


def _g2_script(replies, own):
    return ["u2", "v2", "v1"][len(own)] if len(own) < 3 else None


def _g3_script(replies, own):
    replies = _aligned(replies, own)
    if not own:
        return "z1"
    if len(own) == 1 and replies and replies[0] == "u3":
        return "z3"
    return None


def _g4_script(replies, own):
    replies = _aligned(replies, own)
    if not own:
        return "y1"
    if len(own) == 1:
        r1 = replies[0] if replies else OUTSIDE
        return "u1" if r1 in ("y2", "y3", "y4") else "y3"
    if len(own) == 2 and own[1] == "u1":
        return "z1"
    if len(own) == 3 and own[2] == "z1":
        if len(replies) > 2 and replies[2] == "u2":
            return "z3"
    return None


def _three_claws_script(replies, own):
    replies = _aligned(replies, own)
    if not own:
        return "t3"
    r1 = replies[0] if replies else OUTSIDE
    mirror = r1 in ("x4", "y4", "z4", "t4")
    side = "2" if mirror else "4"
    touched = r1[0] if r1 != OUTSIDE and r1[0] in "xyz" else None
    rails = [r for r in "zyx" if r != touched][:2]
    if len(own) == 1:
        return rails[0] + side
    if len(own) == 2:
        return rails[1] + side
    return None


_SCRIPTS = {
    "G1": _g1_script,
    "G2": _g2_script,
    "G3": _g3_script,
    "G4": _g4_script,
    "three-claws": _three_claws_script,
}


class WindowSolverStrategy(Strategy):
    """Staller play inside an embedded window gadget, driven by the solver
    on the restricted winning-set family that survives embedding."""

    role = Player.STALLER

    def __init__(self, embedding: GadgetEmbedding):
        super().__init__()
        self.embedding = embedding
        self.template = gadget_graph(embedding.gadget)
        self.name = f"window-{embedding.gadget}"
        m = embedding.map()
        self.to_host = [m[self.template.label_of(t)] for t in range(self.template.n)]
        self.solver = Solver(Graph(self.template.n, self.template.edges()))
        self.base_family = window_family_masks(self.template)

    def _local_state(self, p: Position):
        dmask = smask = 0
        for t, hv in enumerate(self.to_host):
            o = p.owners[hv]
            if o is Player.DOMINATOR:
                dmask |= 1 << t
            elif o is Player.STALLER:
                smask |= 1 << t
        return dmask, smask

    def next_move(self, p: Position) -> int:
        wins = _singleton_completions(p)
        if wins:
            return wins[0]
        dmask, smask = self._local_state(p)
        free = ((1 << self.template.n) - 1) & ~(dmask | smask)
        live = [m & ~smask for m in self.base_family if not m & dmask]
        if self.solver.solve_family(live, True, free) is not Player.STALLER:
            return self._fallback(p)
        for t in range(self.template.n):
            bit = 1 << t
            if not free & bit:
                continue
            child = []
            done = False
            for m in live:
                m2 = m & ~bit
                if m & bit and not m2:
                    done = True
                    break
                child.append(m2 if m & bit else m)
            if done or self.solver.solve_family(child, False, free & ~bit) is Player.STALLER:
                return self.to_host[t]
        return self._fallback(p)

    def memo_key(self, p: Position):
        return None  # pure function of ownership


class DeferredWindowStaller(Strategy):
    """Staller play on GP(n,2), n >= 9: once the opponent's first move is
    known, pin a window embedding that avoids it and play the restricted
    game; solver fallback if no window fits."""

    role = Player.STALLER

    def __init__(self, host: Graph):
        super().__init__()
        self.host = host
        self.name = "gp-window-staller"
        self.applicability = "gp(n,2) with n >= 9"
        self._inner: WindowSolverStrategy | None = None

    def next_move(self, p: Position) -> int:
        if self._inner is None:
            from .gadgets import find_gadget
            emb = find_gadget(self.host, p, kinds=("tau",))
            if emb is None:
                return self._fallback(p)
            self._inner = WindowSolverStrategy(emb)
        return self._inner.next_move(p)

    def memo_key(self, p: Position):
        first = next((v for pl, v in p.history if pl is Player.DOMINATOR), None)
        return first


def staller_gadget_strategy(embedding: GadgetEmbedding) -> Strategy:
    """Scripted Staller attack for an embedded gadget with all vertices free
    (the twin-triangle gadget assumes its u0 slot is Dominator's or free)."""
    kind = embedding.gadget
    if kind == "tau":
        return WindowSolverStrategy(embedding)
    if kind == "eta":
        return ScriptedStaller(embedding, _eta_staller_script(generate_eta()),
                               name="eta-staller")
    if kind.startswith("omega@"):
        m = int(kind.split("@", 1)[1])
        return ScriptedStaller(embedding, _omega_staller_script(m),
                               name=f"omega{m}-staller")
    if kind not in _SCRIPTS:
        raise KeyError(f"no scripted attack for gadget {kind!r}")
    return ScriptedStaller(embedding, _SCRIPTS[kind], name=f"script-{kind}")


def identity_embedding(kind: str) -> GadgetEmbedding:
    t = gadget_graph(kind)
    return GadgetEmbedding(
        gadget=kind,
        mapping=tuple(sorted((t.label_of(v), v) for v in range(t.n))),
        free_snapshot=frozenset(range(t.n)),
    )


# ---------------------------------------------------------------------------
# table-driven Dominator play (used by the composite-graph strategies)
# ---------------------------------------------------------------------------

@dataclass
class RegionTable:
    """On Staller's first claim among ``keys``: answer with a vertex and
    activate extra pairs; optionally watch a set whose invasion demands one
    vertex из a response pool, or post an unconditional claim-one-of task."""
    keys: tuple[str, ...]
    response: dict[str, str]
    pairs: dict[str, tuple[tuple[str, str], ...]]
    watch: dict[str, tuple[tuple[str, ...], tuple[str, ...]]] = field(default_factory=dict)
    task: dict[str, tuple[str, ...]] = field(default_factory=dict)


class TableDominator(Strategy):
    """Dominator strategy assembled from static pairs plus region tables.

    Move priority: block a forced threat, honor a pending region response,
    serve watch/task obligations, repair a broken pair, then fall back to a
    free pair member (lowest id) or the lowest free vertex.
    """

    role = Player.DOMINATOR

    def __init__(self, graph: Graph, opening: str | None, static_pairs, tables,
                 name: str):
        super().__init__()
        self.graph = graph
        self.name = name
        self.opening = opening
        self.static_pairs = tuple(static_pairs)
        self.tables = tuple(tables)

    def _vid(self, label: str) -> int:
        return self.graph.vertex(label)

    def _fired(self, p: Position, table: RegionTable) -> str | None:
        for pl, v in p.history:
            if pl is Player.STALLER:
                lbl = self.graph.label_of(v)
                if lbl in table.keys:
                    return lbl
        key_ids = [self._vid(k) for k in table.keys]
        claimed = [self.graph.label_of(v) for v in sorted(key_ids)
                   if p.owners[v] is Player.STALLER]
        return claimed[0] if claimed else None

    def active_pairs(self, p: Position) -> list[tuple[str, str]]:
        pairs = list(self.static_pairs)
        for table in self.tables:
            case = self._fired(p, table)
            if case is not None:
                pairs.extend(table.pairs.get(case, ()))
        return pairs

    def next_move(self, p: Position) -> int:
        forced = _singleton_completions(p)
        if forced:
            return forced[0]
        if self.opening is not None and not p.history:
            return self._vid(self.opening)
        # pending region responses and invaded watch sets
        for table in self.tables:
            case = self._fired(p, table)
            if case is None:
                continue
            resp = table.response.get(case)
            if resp is not None:
                rv = self._vid(resp)
                if p.owners[rv] is None:
                    return rv
            watch = table.watch.get(case)
            if watch is not None:
                triggers, pool = watch
                pool_ids = [self._vid(x) for x in pool]
                if any(p.owners[self._vid(t)] is Player.STALLER for t in triggers) \
                        and not any(p.owners[x] is Player.DOMINATOR for x in pool_ids):
                    pick = _lowest_free(p, pool_ids)
                    if pick is not None:
                        return pick
        # broken pairs before deferred tasks: a pair repair is a same-turn
        # obligation, a task's endgame is caught by the forced-block rule
        broken = []
        for a, b in self.active_pairs(p):
            va, vb = self._vid(a), self._vid(b)
            if p.owners[va] is Player.STALLER and p.owners[vb] is None:
                broken.append(vb)
            elif p.owners[vb] is Player.STALLER and p.owners[va] is None:
                broken.append(va)
        if broken:
            return min(broken)
        for table in self.tables:
            case = self._fired(p, table)
            task = table.task.get(case) if case is not None else None
            if task is not None:
                ids = [self._vid(x) for x in task]
                if not any(p.owners[x] is Player.DOMINATOR for x in ids):
                    pick = _lowest_free(p, ids)
                    if pick is not None:
                        return pick
        members = [self._vid(x) for pr in self.active_pairs(p) for x in pr]
        pick = _lowest_free(p, members)
        if pick is not None:
            return pick
        return _lowest_free(p)

    def memo_key(self, p: Position):
        return tuple(self._fired(p, t) for t in self.tables)


# ---------------------------------------------------------------------------
# strategies for the composite graphs
# ---------------------------------------------------------------------------

def _eta_swap(label: str) -> str:
    # the graph's mirror symmetry: y<->w, k<->m, h1<->h3
    table = {"h1": "h3", "h3": "h1"}
    if label in table:
        return table[label]
    if label[0] in "ywkm":
        flip = {"y": "w", "w": "y", "k": "m", "m": "k"}
        return flip[label[0]] + label[1:]
    return label


def _eta_dominator(opening: str) -> TableDominator:
    if opening not in ("h1", "h3"):
        raise ValueError("winning openings are the diamond tips h1 and h3")
    s = _eta_swap if opening == "h3" else (lambda x: x)

    def sp(pairs):
        return tuple((s(a), s(b)) for a, b in pairs)

    yk = RegionTable(
        keys=tuple(s(k) for k in ("y1", "y2", "y3", "k1", "k3")),
        response={s("y1"): s("k1"), s("y2"): s("y1"), s("y3"): s("y1"),
                  s("k1"): s("k3"), s("k3"): s("k1")},
        pairs={s("y1"): sp((("y2", "k3"),)),
               s("y2"): sp((("k1", "k3"),)),
               s("y3"): sp((("k1", "k3"),)),
               s("k1"): sp((("y1", "y3"),)),
               s("k3"): sp((("y1", "y2"),))},
    )
    hwm = RegionTable(
        keys=tuple(s(k) for k in ("h3", "w1", "w2", "w3", "m1", "m3")),
        response={s("h3"): s("w1"), s("w1"): s("m1"), s("w2"): s("m3"),
                  s("w3"): s("m1"), s("m1"): s("m3"), s("m3"): s("m1")},
        pairs={s("h3"): sp((("w2", "w3"), ("m1", "m3"))),
               s("w1"): sp((("w2", "m3"), ("w3", "h3"))),
               s("w2"): sp((("w1", "m1"), ("w3", "h3"))),
               s("w3"): sp((("w2", "h3"), ("w1", "m3"))),
               s("m1"): sp((("w1", "w3"), ("w2", "h3"))),
               s("m3"): sp((("w1", "w2"), ("w3", "h3")))},
    )
    static = sp((("h2", "h4"), ("m2", "m4"), ("k2", "k4")))
    d = TableDominator(generate_eta(), opening, static, (yk, hwm),
                       name=f"eta-dominator-{opening}")
    d.applicability = f"18-vertex composite, Dominator first with {opening}"
    return d


def _eta_staller_script(graph: Graph):
    g4_side_wm = {"u1": "w3", "u2": "w1", "u3": "w2",
                  "y1": "h3", "y2": "h2", "y3": "h1", "y4": "h4",
                  "z1": "m1", "z2": "m2", "z3": "m3", "z4": "m4"}
    g4_side_yk = {"u1": "y3", "u2": "y1", "u3": "y2",
                  "y1": "h1", "y2": "h2", "y3": "h3", "y4": "h4",
                  "z1": "k1", "z2": "k2", "z3": "k3", "z4": "k4"}
    yk_labels = {"y1", "y2", "y3", "k1", "k2", "k3", "k4"}
    k_rest = ("k2", "k3", "k4")

    def script(replies, own):
        is_d_game = len(replies) > len(own)
        d1 = replies[0] if is_d_game else None
        if d1 is not None and d1 not in ("h2", "h4"):
            # wrong-opening punishment happens on the side the opener missed
            side = g4_side_wm if d1 in yk_labels else g4_side_yk
            inv = {v: k for k, v in side.items()}
            sub_replies = [inv.get(r, OUTSIDE) for r in replies[1:]]
            sub_own = [inv.get(o, OUTSIDE) for o in own]
            out = _g4_script(sub_replies, sub_own)
            return side.get(out) if out is not None else None
        # main line (second player vs h2/h4, or moving first)
        if not own:
            return "k1"
        offset = 1 if is_d_game else 0
        r = lambda i: replies[i + offset] if len(replies) > i + offset else None
        if len(own) == 1:
            return "y3" if r(0) in k_rest else "k3"
        if own[1] == "k3":
            return None
        steps = ["k1", "y3", "h1", "h3", "w1"]
        if len(own) < 5:
            return steps[len(own)]
        if len(own) == 5:
            r5 = r(4)
            if r5 == "w2":
                return "m1"
            if r5 == "w3":
                return "m3"
            if r5 == "m3":
                return "w3"
            return "w2"
        if len(own) == 6:
            r6 = r(5)
            if own[5] == "m1" and r6 == "w3":
                return "m3"
            if own[5] == "m3" and r6 == "w2":
                return "m1"
        return None

    return script


def eta_strategies() -> dict:
    """Dominator-first strategies for both winning openings, plus the
    scripted Staller for the second-player and wrong-opening games."""
    g = generate_eta()
    emb = GadgetEmbedding(
        gadget="eta",
        mapping=tuple(sorted((g.label_of(v), v) for v in range(g.n))),
        free_snapshot=frozenset(range(g.n)),
    )
    staller = staller_gadget_strategy(emb)
    staller.applicability = "18-vertex composite, Staller"
    return {
        "dominator_first": _eta_dominator("h1"),
        "dominator_first_h3": _eta_dominator("h3"),
        "staller": staller,
    }


def _omega_dominator(chain_len: int) -> TableDominator:
    g = generate_omega(chain_len)
    static = [("a2", "a3"), ("h2", "h4")]
    for d in range(1, chain_len + 1):
        static.append((f"z1@D{d}", f"z3@D{d}"))
        static.append((f"z2@D{d}", f"z4@D{d}"))
    bh = RegionTable(
        keys=("b1", "b2", "b3", "h1", "h3"),
        response={"b1": "h1", "b2": "h1", "b3": "h3", "h1": "h3", "h3": "h1"},
        pairs={k: () for k in ("b1", "b2", "b3", "h1", "h3")},
        watch={
            "b1": (("b2", "b3", "h3"), ("b2", "h3")),
            "b2": (("b1", "h3", "b3"), ("b1", "h3")),
            "b3": (("b1", "h1", "b2"), ("b1", "h1")),
        },
        task={
            "h1": ("b1", "b3"),
            "h3": ("b1", "b2"),
        },
    )
    d = TableDominator(g, "a1", static, (bh,), name=f"omega{chain_len}-dominator")
    d.applicability = f"omega chain {chain_len}, Dominator first with a1"
    return d


def _omega_staller_script(chain_len: int):
    d1_names = tuple(f"z{j}@D1" for j in range(1, 5))
    h_rest = ("h2", "h3", "h4")
    last = chain_len

    def script(replies, own):
        is_d_game = len(replies) > len(own)
        d1 = replies[0] if is_d_game else None
        if d1 is None:
            # moving first: diamond trap on H, then wind through B to A
            if not own:
                return "h1"
            if len(own) == 1:
                return "b1" if replies[0] in h_rest else "h3"
            if own[1] == "h3":
                return None
            if len(own) == 2:
                return "z1@D1"
            if len(own) == 3:
                return "a3" if replies[2] in ("z2@D1", "z3@D1", "z4@D1") else "z3@D1"
            return None
        # punishing a first move on the chain next to A
        if d1 not in d1_names:
            return None
        r = lambda i: replies[i + 1] if len(replies) > i + 1 else None
        if not own:
            return "b1"
        if len(own) == 1:
            r1 = r(0)
            if r1 in ("h1", "h2", "h4"):
                return "b2"
            if r1 == "h3":
                return "b3"
            if r1 == "b3":
                return "h3"
            return "h1"
        if own[1] in ("h1", "h3"):
            hit = "b3" if own[1] == "h1" else "b2"
            if r(1) == hit:
                return "h3" if own[1] == "h1" else "h1"
            return None
        if own[1] in ("b2", "b3"):
            if len(own) == 2:
                return "a1"
            if len(own) == 3:
                if chain_len > 1:
                    return f"z3@D{last}"
                if d1 == "z3@D1":
                    return "a3"
                return "a2"
            if len(own) == 4 and own[3] == f"z3@D{last}" and r(3) == "a2":
                return f"z1@D{last}"
        return None

    return script


def omega_strategies(chain_len: int) -> dict:
    g = generate_omega(chain_len)
    emb = GadgetEmbedding(
        gadget=f"omega@{chain_len}",
        mapping=tuple(sorted((g.label_of(v), v) for v in range(g.n))),
        free_snapshot=frozenset(range(g.n)),
    )
    staller = staller_gadget_strategy(emb)
    staller.applicability = f"omega chain {chain_len}, Staller"
    return {
        "dominator_first": _omega_dominator(chain_len),
        "staller": staller,
    }
