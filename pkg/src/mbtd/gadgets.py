"""Gadget templates, subgraph embedding search, and the window-gadget
reconstruction for GP(n,2).

A gadget is a small labeled graph that certifies a Staller win when all of
its image vertices are still free in a cubic host: every vertex the scripts
threaten has full degree inside the template, so its host neighborhood is
exactly the template one and the scripted traps carry over.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .game import Player, Position
from .graphs import Graph, generate_gp
from .solver import Solver, SolverConfig

GADGET_ORDER = ("G1", "G4", "three-claws", "tau")


def _graph_from_names(names, edges_by_name) -> Graph:
    ix = {n: i for i, n in enumerate(names)}
    edges = [(ix[a], ix[b]) for a, b in edges_by_name]
    return Graph(len(names), edges, {i: n for i, n in enumerate(names)})


def gadget_graph(kind: str) -> Graph:
    """Template graph for the named gadget (labels address the script roles)."""
    if kind == "G1":
        # two triangles joined by two rungs, one stem hanging off each
        names = ("u0", "u1", "u2", "u3", "v0", "v1", "v2", "v3")
        edges = [
            ("u1", "u2"), ("u2", "u3"), ("u3", "u1"),
            ("v1", "v2"), ("v2", "v3"), ("v3", "v1"),
            ("u0", "u1"), ("v0", "v1"), ("u2", "v2"), ("u3", "v3"),
        ]
        return _graph_from_names(names, edges)
    if kind == "G2":
        # chain of four triangles with one outward stub
        names = ("x1", "x2", "x3", "u1", "u2", "u3", "v1", "v2", "v3",
                 "z1", "z2", "z3", "v")
        edges = [
            ("x1", "x2"), ("x2", "x3"), ("x3", "x1"),
            ("u1", "u2"), ("u2", "u3"), ("u3", "u1"),
            ("v1", "v2"), ("v2", "v3"), ("v3", "v1"),
            ("z1", "z2"), ("z2", "z3"), ("z3", "z1"),
            ("v3", "v"), ("u1", "x1"), ("u2", "v2"), ("u3", "z3"),
        ]
        return _graph_from_names(names, edges)
    if kind == "G3":
        # triangle attached to a diamond tip
        names = ("u1", "u2", "u3", "z1", "z2", "z3", "z4")
        edges = [
            ("u1", "u2"), ("u2", "u3"), ("u3", "u1"),
            ("z1", "z2"), ("z2", "z3"), ("z3", "z4"), ("z4", "z1"), ("z2", "z4"),
            ("u2", "z1"),
        ]
        return _graph_from_names(names, edges)
    if kind == "G4":
        # triangle with a diamond hanging off each of two corners
        names = ("u1", "u2", "u3", "y1", "y2", "y3", "y4", "z1", "z2", "z3", "z4")
        edges = [
            ("u1", "u2"), ("u2", "u3"), ("u3", "u1"),
            ("y1", "y2"), ("y2", "y3"), ("y3", "y4"), ("y4", "y1"), ("y2", "y4"),
            ("z1", "z2"), ("z2", "z3"), ("z3", "z4"), ("z4", "z1"), ("z2", "z4"),
            ("u2", "y1"), ("u3", "z1"),
        ]
        return _graph_from_names(names, edges)
    if kind == "three-claws":
        # three consecutive claws joined by three parallel rails
        names = []
        for i in (2, 3, 4):
            names.extend((f"x{i}", f"y{i}", f"z{i}", f"t{i}"))
        edges = []
        for i in (2, 3, 4):
            edges.extend(((f"t{i}", f"x{i}"), (f"t{i}", f"y{i}"), (f"t{i}", f"z{i}")))
        for i in (3, 4):
            for rail in "xyz":
                edges.append((f"{rail}{i - 1}", f"{rail}{i}"))
        return _graph_from_names(tuple(names), edges)
    if kind == "H1":
        # double-trap demonstration graph: claiming v1 threatens both
        # neighborhoods N(v2) and N(v3) at once
        names = ("v0", "v1", "v2", "v3", "u", "v")
        edges = [
            ("v0", "v1"), ("v1", "v2"), ("v1", "v3"), ("v2", "v3"),
            ("v2", "u"), ("v3", "v"),
            ("u", "v0"), ("v", "v0"), ("u", "v"),
        ]
        return _graph_from_names(names, edges)
    if kind == "tau":
        return extract_tau()
    if kind == "eta":
        from .graphs import generate_eta
        return generate_eta()
    if kind.startswith("omega@"):
        from .graphs import generate_omega
        return generate_omega(int(kind.split("@", 1)[1]))
    raise KeyError(f"unknown gadget kind {kind!r}")


@dataclass(frozen=True)
class GadgetEmbedding:
    gadget: str
    mapping: tuple[tuple[str, int], ...]   # template label -> host vertex
    free_snapshot: frozenset[int]

    def map(self) -> dict[str, int]:
        return dict(self.mapping)

    def image(self) -> frozenset[int]:
        return frozenset(v for _, v in self.mapping)

    def check(self, host: Graph, p: Position | None = None) -> bool:
        template = gadget_graph(self.gadget)
        m = self.map()
        if len(set(m.values())) != template.n:
            return False
        for a, b in template.edges():
            la, lb = template.label_of(a), template.label_of(b)
            if not host.has_edge(m[la], m[lb]):
                return False
        if p is not None and any(not p.is_free(v) for v in self.image()):
            return False
        return True


def find_embedding(template: Graph, host: Graph, free_mask: int | None = None) -> dict[str, int] | None:
    """First injective edge-preserving map of the template into the host,
    restricted to free host vertices.  Deterministic backtracking order."""
    tn = template.n
    if tn > host.n:
        return None
    # search order: start at the highest-degree vertex, then grow along edges
    start = max(range(tn), key=lambda v: (template.degree(v), -v))
    order = [start]
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = None
        for v in order:
            for w in template.adjacency[v]:
                if w not in seen:
                    nxt = w
                    break
            if nxt is not None:
                break
        if nxt is None:
            rest = [v for v in range(tn) if v not in seen]
            order.extend(rest)
            break
        seen.add(nxt)
        order.append(nxt)
        frontier = [nxt]

    host_ok = [True] * host.n
    if free_mask is not None:
        for v in range(host.n):
            host_ok[v] = bool((free_mask >> v) & 1)

    assign: dict[int, int] = {}
    used = [False] * host.n

    def place(i: int) -> bool:
        if i == len(order):
            return True
        t = order[i]
        tdeg = template.degree(t)
        mapped_nbrs = [assign[w] for w in template.adjacency[t] if w in assign]
        if mapped_nbrs:
            cand = [v for v in host.adjacency[mapped_nbrs[0]]
                    if host_ok[v] and not used[v] and host.degree(v) >= tdeg]
        else:
            cand = [v for v in range(host.n)
                    if host_ok[v] and not used[v] and host.degree(v) >= tdeg]
        for v in cand:
            if any(not host.has_edge(v, hv) for hv in mapped_nbrs):
                continue
            assign[t] = v
            used[v] = True
            if place(i + 1):
                return True
            del assign[t]
            used[v] = False
        return False

    if not place(0):
        return None
    return {template.label_of(t) or str(t): v for t, v in assign.items()}


def find_gadget(g: Graph, p: Position, kinds=GADGET_ORDER) -> GadgetEmbedding | None:
    """Search the host for a gadget whose vertices are all still free.

    Sound as a Staller-win certificate on cubic hosts: every scripted
    threat vertex has full degree inside the template.
    """
    free_mask = 0
    for v in p.free_vertices():
        free_mask |= 1 << v
    for kind in kinds:
        template = gadget_graph(kind)
        found = find_embedding(template, g, free_mask)
        if found is not None:
            return GadgetEmbedding(
                gadget=kind,
                mapping=tuple(sorted(found.items())),
                free_snapshot=frozenset(found.values()),
            )
    return None


# ---------------------------------------------------------------------------
# window gadget for GP(n,2): reconstructed by certified search
# ---------------------------------------------------------------------------

_TAU_CACHE: Graph | None = None


def _window_graph(present: set[tuple[str, int]]) -> Graph:
    """Graph on window slots (layer, offset): outer path, spokes, inner
    distance-2 edges.  Offsets never wrap, so the same window embeds in
    GP(n,2) for every n exceeding the span."""
    verts = sorted(present, key=lambda lo: (lo[1], lo[0]))
    ix = {lo: i for i, lo in enumerate(verts)}
    edges = []
    for (layer, off) in verts:
        if layer == "u":
            if ("u", off + 1) in ix:
                edges.append((ix[("u", off)], ix[("u", off + 1)]))
            if ("v", off) in ix:
                edges.append((ix[("u", off)], ix[("v", off)]))
        else:
            if ("v", off + 2) in ix:
                edges.append((ix[("v", off)], ix[("v", off + 2)]))
    labels = {i: f"{layer}{off}" for (layer, off), i in ix.items()}
    return Graph(len(verts), edges, labels)


def window_family_masks(template: Graph) -> list[int]:
    """Winning sets that survive embedding: neighborhoods of template
    vertices whose degree is already 3 (their host neighborhoods coincide)."""
    masks = []
    for v in range(template.n):
        if template.degree(v) == 3:
            m = 0
            for w in template.adjacency[v]:
                m |= 1 << w
            masks.append(m)
    return masks


def _certifies_staller_first_win(template: Graph) -> bool:
    family = window_family_masks(template)
    solver = Solver(Graph(template.n, template.edges()), SolverConfig())
    board = (1 << template.n) - 1
    return solver.solve_family(family, staller_to_move=True, freemask=board) is Player.STALLER


def extract_tau() -> Graph:
    """Reconstruct the 15-vertex GP(n,2) window gadget by certified search.

    Enumerates order-15 induced subgraphs of GP(9,2) that fit an 8-column
    window (the shift-invariance condition), and returns the first whose
    restricted game is a certified Staller-first win with all vertices free.
    """
    global _TAU_CACHE
    if _TAU_CACHE is not None:
        return _TAU_CACHE
    data = _load_frozen_tau()
    if data is not None:
        _TAU_CACHE = data
        return data
    found = _search_tau()
    _TAU_CACHE = found
    return found


def _search_tau() -> Graph:
    n = 9
    host = generate_gp(n, 2)
    for c in range(n):
        removed_col = {host.vertex(f"u{c}"), host.vertex(f"v{c}")}
        for x in range(host.n):
            if x in removed_col:
                continue
            keep = [v for v in range(host.n) if v not in removed_col and v != x]
            present = set()
            for v in keep:
                name = host.label_of(v)
                layer, idx = name[0], int(name[1:])
                off = (idx - c - 1) % n
                present.add((layer, off))
            template = _window_graph(present)
            if not _is_connected(template):
                continue
            if _certifies_staller_first_win(template):
                return template
    raise RuntimeError(
        "window-gadget search failed on GP(9,2); the reconstruction premise is wrong"
    )


def _is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in g.adjacency[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.n


def _load_frozen_tau() -> Graph | None:
    try:
        text = resources.files("mbtd").joinpath("data/tau.json").read_text()
    except (FileNotFoundError, ModuleNotFoundError, OSError):
        return None
    obj = json.loads(text)
    g = Graph(obj["n"], obj["edges"], {int(k): v for k, v in obj["labels"].items()})
    return g


def freeze_tau(path) -> Graph:
    """Run the search and write the frozen template plus its certificate."""
    template = _search_tau()
    cert = {
        "first": "staller",
        "winner": "staller",
        "family_rule": "neighborhoods of template vertices of degree 3",
        "verified": _certifies_staller_first_win(template),
    }
    obj = {
        "n": template.n,
        "edges": [[u, v] for u, v in sorted(template.edges())],
        "labels": {str(v): t for v, t in (template.labels or ())},
        "certificate": cert,
    }
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=1, sort_keys=True)
    return template


def tau_certificate_ok(template: Graph | None = None) -> bool:
    """Re-verify the stored certificate: Staller wins the window game
    moving first with every slot free."""
    t = template or extract_tau()
    return _certifies_staller_first_win(t)
