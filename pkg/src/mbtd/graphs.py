"""Graph model, family generators, and structural classification.

Everything downstream (game engine, solver, strategies) works on the
immutable :class:`Graph` defined here.  Vertices are ``0..n-1``; generators
attach string labels (``"u3"``, ``"z1@D2"``) so scripted strategies and
tests can address vertices by role instead of raw index.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations


class GraphError(ValueError):
    """Invalid graph data (self-loop, duplicate edge, bad index)."""


class FormatError(GraphError):
    """Unparseable graph text."""


class Graph:
    """Simple undirected graph with sorted adjacency lists.

    Immutable by convention: all fields are tuples and must not be mutated.
    Equality and hashing cover vertex count, adjacency, and labels, so
    graphs can key caches.
    """

    __slots__ = ("n", "adjacency", "labels", "_hash", "_nbr_masks", "_label_to_vertex")

    def __init__(self, n: int, edges, labels: dict[int, str] | None = None):
        if n < 0:
            raise GraphError("vertex count must be nonnegative")
        seen = set()
        adj: list[list[int]] = [[] for _ in range(n)]
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u},{v}) out of range for n={n}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GraphError(f"duplicate edge ({u},{v})")
            seen.add(key)
            adj[u].append(v)
            adj[v].append(u)
        self.n = n
        self.adjacency: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in adj)
        if labels:
            for v in labels:
                if not (0 <= int(v) < n):
                    raise GraphError(f"label for unknown vertex {v}")
            self.labels: tuple[tuple[int, str], ...] | None = tuple(
                sorted((int(v), str(t)) for v, t in labels.items())
            )
        else:
            self.labels = None
        self._hash = None
        self._nbr_masks = None
        self._label_to_vertex = None

    # -- basic accessors ---------------------------------------------------

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def neighbor_masks(self) -> tuple[int, ...]:
        """Per-vertex neighborhood bitmasks (cached)."""
        if self._nbr_masks is None:
            masks = []
            for nbrs in self.adjacency:
                m = 0
                for w in nbrs:
                    m |= 1 << w
                masks.append(m)
            self._nbr_masks = tuple(masks)
        return self._nbr_masks

    # -- labels ------------------------------------------------------------

    def label_map(self) -> dict[int, str]:
        return dict(self.labels) if self.labels else {}

    def label_of(self, v: int) -> str | None:
        return self.label_map().get(v)

    def vertex(self, label: str) -> int:
        """Vertex id carrying the given label."""
        if self._label_to_vertex is None:
            self._label_to_vertex = {t: v for v, t in (self.labels or ())}
        try:
            return self._label_to_vertex[label]
        except KeyError:
            raise KeyError(f"no vertex labeled {label!r}") from None

    def vertices(self, *names: str) -> list[int]:
        return [self.vertex(x) for x in names]

    # -- dunder ------------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self.adjacency == other.adjacency
            and self.labels == other.labels
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.adjacency, self.labels))
        return self._hash

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.edge_count()})"

    def induced(self, vertices) -> "Graph":
        """Induced subgraph; vertices are renumbered by sorted order."""
        vs = sorted(set(vertices))
        idx = {v: i for i, v in enumerate(vs)}
        edges = [(idx[u], idx[v]) for u, v in self.edges() if u in idx and v in idx]
        labels = {idx[v]: t for v, t in (self.labels or ()) if v in idx}
        return Graph(len(vs), edges, labels or None)

    def relabeled(self, perm: dict[int, int] | list[int]) -> "Graph":
        """Graph with vertex v renamed perm[v]; labels follow their vertex."""
        p = perm if isinstance(perm, dict) else {i: perm[i] for i in range(self.n)}
        edges = [(p[u], p[v]) for u, v in self.edges()]
        labels = {p[v]: t for v, t in (self.labels or ())}
        return Graph(self.n, edges, labels or None)


# ---------------------------------------------------------------------------
# serialization: json-edges and graph6
# ---------------------------------------------------------------------------

def to_json_edges(g: Graph) -> str:
    """Canonical json-edges text: edges sorted lexicographically, byte-stable."""
    obj: dict = {
        "n": g.n,
        "edges": [[u, v] for u, v in sorted(g.edges())],
    }
    if g.labels:
        obj["labels"] = {str(v): t for v, t in g.labels}
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def from_json_edges(text: str) -> Graph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict) or "n" not in obj or "edges" not in obj:
        raise FormatError("json-edges object needs 'n' and 'edges'")
    labels = None
    if obj.get("labels"):
        try:
            labels = {int(k): str(v) for k, v in obj["labels"].items()}
        except (TypeError, ValueError) as exc:
            raise FormatError("labels must map vertex ids to strings") from exc
    try:
        return Graph(int(obj["n"]), obj["edges"], labels)
    except (TypeError, IndexError) as exc:
        raise FormatError(f"bad edge list: {exc}") from exc


def to_graph6(g: Graph) -> str:
    """Standard graph6 encoding, supported up to 62 vertices."""
    if g.n > 62:
        raise FormatError("graph6 output supported only up to 62 vertices")
    bits = []
    for j in range(1, g.n):
        for i in range(j):
            bits.append(1 if g.has_edge(i, j) else 0)
    while len(bits) % 6:
        bits.append(0)
    out = [chr(g.n + 63)]
    for i in range(0, len(bits), 6):
        val = 0
        for b in bits[i : i + 6]:
            val = (val << 1) | b
        out.append(chr(val + 63))
    return "".join(out)


def from_graph6(text: str) -> Graph:
    s = text.strip()
    if not s:
        raise FormatError("empty graph6 string")
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<") :]
    n = ord(s[0]) - 63
    if not (0 <= n <= 62):
        raise FormatError("graph6 input supported only up to 62 vertices")
    need = (n * (n - 1) // 2 + 5) // 6
    body = s[1:]
    if len(body) != need:
        raise FormatError(f"graph6 body has {len(body)} bytes, expected {need}")
    bits = []
    for ch in body:
        val = ord(ch) - 63
        if not (0 <= val < 64):
            raise FormatError(f"byte {ch!r} outside graph6 range")
        bits.extend((val >> k) & 1 for k in range(5, -1, -1))
    edges = []
    pos = 0
    for j in range(1, n):
        for i in range(j):
            if bits[pos]:
                edges.append((i, j))
            pos += 1
    return Graph(n, edges)


def parse_graph(text: str, fmt: str = "json-edges") -> Graph:
    if fmt == "json-edges":
        return from_json_edges(text)
    if fmt == "graph6":
        return from_graph6(text)
    raise FormatError(f"unknown graph format {fmt!r}")


def serialize(g: Graph, fmt: str = "json-edges") -> str:
    if fmt == "json-edges":
        return to_json_edges(g)
    if fmt == "graph6":
        return to_graph6(g)
    raise FormatError(f"unknown graph format {fmt!r}")


# ---------------------------------------------------------------------------
# family generators
# ---------------------------------------------------------------------------

def complete_graph(n: int) -> Graph:
    return Graph(n, list(combinations(range(n), 2)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with the center at vertex 0."""
    g = Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)],
              {0: "c", **{i: f"l{i}" for i in range(1, leaves + 1)}})
    return g


def generate_gp(n: int, k: int) -> Graph:
    """Generalized Petersen graph GP(n,k): outer cycle u_i, spokes u_iv_i,
    inner edges v_iv_{i+k}.

    Requires 1 <= k < n/2 so the inner edges never collide.
    """
    if n < 3 or k < 1 or 2 * k >= n:
        raise GraphError(f"GP({n},{k}) outside supported range (n>=3, 1<=k<n/2)")
    edges = []
    for i in range(n):
        edges.append((i, (i + 1) % n))          # outer u_i u_{i+1}
        edges.append((i, n + i))                # spoke u_i v_i
        edges.append((n + i, n + (i + k) % n))  # inner v_i v_{i+k}
    labels = {i: f"u{i}" for i in range(n)}
    labels.update({n + i: f"v{i}" for i in range(n)})
    return Graph(2 * n, edges, labels)


def _diamond_edges(base: int) -> list[tuple[int, int]]:
    """Diamond on base..base+3 as (z1,z2,z3,z4); z1z3 is the missing edge."""
    z1, z2, z3, z4 = base, base + 1, base + 2, base + 3
    return [(z1, z2), (z2, z3), (z3, z4), (z4, z1), (z2, z4)]


def generate_necklace(kind: str, count: int) -> Graph:
    """Cyclic chain of diamonds or claws, closed into a connected cubic graph.

    kind="diamond": diamonds linked tip to tip (z3 of one to z1 of the next).
    kind="claw": claw centers t_i; for count=2 the leaves are cross-linked
    (x1x2, y1y2, z1z2, x1y2, y1z2, z1x2); for count>=3 the leaves run in
    three parallel cycles x_i x_{i+1}, y_i y_{i+1}, z_i z_{i+1}.
    """
    if kind == "diamond":
        if count < 2:
            raise GraphError("diamond necklace needs count >= 2")
        edges: list[tuple[int, int]] = []
        labels: dict[int, str] = {}
        for d in range(count):
            base = 4 * d
            edges.extend(_diamond_edges(base))
            for off, name in enumerate(("z1", "z2", "z3", "z4")):
                labels[base + off] = f"{name}@D{d + 1}"
        for d in range(count):
            tip_out = 4 * d + 2                     # z3 of diamond d
            tip_in = 4 * ((d + 1) % count)          # z1 of diamond d+1
            edges.append((tip_out, tip_in))
        return Graph(4 * count, edges, labels)

    if kind == "claw":
        if count < 2:
            raise GraphError("claw necklace needs count >= 2")
        # claw i occupies 4i..4i+3 as x, y, z, t (t = center)
        edges = []
        labels = {}
        for c in range(count):
            base = 4 * c
            x, y, z, t = base, base + 1, base + 2, base + 3
            edges.extend([(t, x), (t, y), (t, z)])
            labels.update({x: f"x{c + 1}", y: f"y{c + 1}", z: f"z{c + 1}", t: f"t{c + 1}"})
        if count == 2:
            x1, y1, z1 = 0, 1, 2
            x2, y2, z2 = 4, 5, 6
            edges.extend([(x1, x2), (y1, y2), (z1, z2), (x1, y2), (y1, z2), (z1, x2)])
        else:
            for c in range(count):
                nxt = (c + 1) % count
                for off in range(3):  # x, y, z rails
                    edges.append((4 * c + off, 4 * nxt + off))
        return Graph(4 * count, edges, labels)

    raise GraphError(f"unknown necklace kind {kind!r}")


def truncate(g: Graph) -> Graph:
    """Replace every vertex of a cubic graph by a triangle; original edges
    join the matching triangle corners.  Output is cubic on 3n vertices and
    carries a triangle-factor by construction."""
    if any(g.degree(v) != 3 for v in range(g.n)):
        raise GraphError("truncation requires a cubic graph")
    # corner (v, j) = vertex 3v+j handles the j-th incident edge of v
    edges = []
    for v in range(g.n):
        base = 3 * v
        edges.extend([(base, base + 1), (base + 1, base + 2), (base, base + 2)])
    for u, v in g.edges():
        ju = g.adjacency[u].index(v)
        jv = g.adjacency[v].index(u)
        edges.append((3 * u + ju, 3 * v + jv))
    labels = {3 * v + j: f"t{v}.{j}" for v in range(g.n) for j in range(3)}
    return Graph(3 * g.n, edges, labels)


def generate_bipartite_circulant(m: int) -> Graph:
    """Cubic bipartite graph on parts u_0..u_{m-1} / v_0..v_{m-1} with
    u_i adjacent to v_i, v_{i+1}, v_{i+2} (indices mod m)."""
    if m < 3:
        raise GraphError("bipartite circulant needs m >= 3")
    edges = []
    for i in range(m):
        for off in range(3):
            edges.append((i, m + (i + off) % m))
    labels = {i: f"u{i}" for i in range(m)}
    labels.update({m + i: f"v{i}" for i in range(m)})
    return Graph(2 * m, edges, labels)


def generate_eta() -> Graph:
    """Cubic 18-vertex graph: central diamond H, triangles Y and W hanging
    off its tips, and diamonds K and M capping the triangles.

    Labels: h1..h4 (tips h1,h3), y1..y3, k1..k4, w1..w3, m1..m4.
    Edges between parts: h1y1, h3w1, y2k1, y3k3, w2m1, w3m3.
    """
    names = (
        "h1", "h2", "h3", "h4",
        "y1", "y2", "y3",
        "k1", "k2", "k3", "k4",
        "w1", "w2", "w3",
        "m1", "m2", "m3", "m4",
    )
    ix = {name: i for i, name in enumerate(names)}
    edges_by_name = [
        # diamond H (missing edge h1h3)
        ("h1", "h2"), ("h2", "h3"), ("h3", "h4"), ("h4", "h1"), ("h2", "h4"),
        # triangles
        ("y1", "y2"), ("y2", "y3"), ("y3", "y1"),
        ("w1", "w2"), ("w2", "w3"), ("w3", "w1"),
        # diamonds K and M (missing edges k1k3, m1m3)
        ("k1", "k2"), ("k2", "k3"), ("k3", "k4"), ("k4", "k1"), ("k2", "k4"),
        ("m1", "m2"), ("m2", "m3"), ("m3", "m4"), ("m4", "m1"), ("m2", "m4"),
        # connections
        ("h1", "y1"), ("h3", "w1"),
        ("y2", "k1"), ("y3", "k3"),
        ("w2", "m1"), ("w3", "m3"),
    ]
    edges = [(ix[a], ix[b]) for a, b in edges_by_name]
    return Graph(18, edges, {i: name for i, name in enumerate(names)})


def generate_omega(chain_len: int) -> Graph:
    """Cubic graph on 10+4m vertices: triangles A and B, diamond H hanging
    off B, and a chain of m diamonds D1..Dm running from a2 back to a3.

    Labels: a1..a3, b1..b3, h1..h4, and z1..z4@Di per chain diamond.
    """
    if chain_len < 1:
        raise GraphError("diamond chain needs at least one diamond")
    names = ["a1", "a2", "a3", "b1", "b2", "b3", "h1", "h2", "h3", "h4"]
    for d in range(chain_len):
        names.extend(f"z{j}@D{d + 1}" for j in range(1, 5))
    ix = {name: i for i, name in enumerate(names)}
    edges_by_name = [
        ("a1", "a2"), ("a2", "a3"), ("a3", "a1"),
        ("b1", "b2"), ("b2", "b3"), ("b3", "b1"),
        ("h1", "h2"), ("h2", "h3"), ("h3", "h4"), ("h4", "h1"), ("h2", "h4"),
        ("a1", "b1"), ("b2", "h1"), ("b3", "h3"),
    ]
    for d in range(1, chain_len + 1):
        edges_by_name.extend([
            (f"z1@D{d}", f"z2@D{d}"), (f"z2@D{d}", f"z3@D{d}"),
            (f"z3@D{d}", f"z4@D{d}"), (f"z4@D{d}", f"z1@D{d}"),
            (f"z2@D{d}", f"z4@D{d}"),
        ])
    edges_by_name.append(("a2", "z1@D1"))
    for d in range(1, chain_len):
        edges_by_name.append((f"z3@D{d}", f"z1@D{d + 1}"))
    edges_by_name.append((f"z3@D{chain_len}", "a3"))
    edges = [(ix[a], ix[b]) for a, b in edges_by_name]
    return Graph(10 + 4 * chain_len, edges, {i: n for i, n in enumerate(names)})


GENERATOR_CATALOG = {
    "gp": {"params": ["n", "k"], "description": "generalized Petersen graph GP(n,k)"},
    "necklace-diamond": {"params": ["count"], "description": "cyclic chain of diamonds"},
    "necklace-claw": {"params": ["count"], "description": "cyclic chain of claws"},
    "circulant": {"params": ["m"], "description": "cubic bipartite circulant on 2m vertices"},
    "eta": {"params": [], "description": "18-vertex diamond/triangle composite"},
    "omega": {"params": ["chain_len"], "description": "two triangles, a diamond, and a diamond chain"},
    "truncated": {"params": ["base", "n", "k"], "description": "truncation of gp/complete base graph"},
    "cycle": {"params": ["n"], "description": "cycle C_n"},
    "complete": {"params": ["n"], "description": "complete graph K_n"},
    "star": {"params": ["leaves"], "description": "star K_{1,leaves}"},
}


def generate(family: str, *params: int) -> Graph:
    """Dispatch a generator by family name (CLI and service entry point)."""
    if family == "gp":
        return generate_gp(*params)
    if family == "necklace-diamond":
        return generate_necklace("diamond", *params)
    if family == "necklace-claw":
        return generate_necklace("claw", *params)
    if family == "circulant":
        return generate_bipartite_circulant(*params)
    if family == "eta":
        return generate_eta()
    if family == "omega":
        return generate_omega(*params)
    if family == "truncated":
        # truncated complete n | truncated gp n k, params arrive as ints after base
        raise GraphError("use truncate() with an explicit base graph")
    if family == "cycle":
        return cycle_graph(*params)
    if family == "complete":
        return complete_graph(*params)
    if family == "star":
        return star_graph(*params)
    raise GraphError(f"unknown family {family!r}")


# ---------------------------------------------------------------------------
# validation and structure
# ---------------------------------------------------------------------------

def validate(g: Graph) -> dict:
    """Exact cubic / connected / bipartite flags."""
    cubic = g.n > 0 and all(g.degree(v) == 3 for v in range(g.n))
    connected = True
    if g.n > 0:
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in g.adjacency[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        connected = len(seen) == g.n
    color: dict[int, int] = {}
    bipartite = True
    for s in range(g.n):
        if s in color:
            continue
        color[s] = 0
        queue = [s]
        while queue and bipartite:
            v = queue.pop()
            for w in g.adjacency[v]:
                if w not in color:
                    color[w] = color[v] ^ 1
                    queue.append(w)
                elif color[w] == color[v]:
                    bipartite = False
                    break
    return {"cubic": cubic, "connected": connected, "bipartite": bipartite}


def enumerate_triangles(g: Graph) -> list[tuple[int, int, int]]:
    """All induced K3, including those sitting inside diamonds."""
    out = []
    for u in range(g.n):
        for v, w in combinations(g.adjacency[u], 2):
            if u < v < w and g.has_edge(v, w):
                out.append((u, v, w))
    return sorted(out)


def enumerate_diamonds(g: Graph) -> list[tuple[int, int, int, int]]:
    """All induced K4-minus-an-edge 4-sets, sorted."""
    out = set()
    for u, v in g.edges():
        common = [w for w in g.adjacency[u] if w in g.adjacency[v]]
        for a, b in combinations(common, 2):
            if not g.has_edge(a, b):
                # u,v are the adjacent centers; a,b the nonadjacent tips
                out.add(tuple(sorted((u, v, a, b))))
    return sorted(out)


class StructureError(GraphError):
    """Vertex-type relations failed; input is outside the classifiable class."""


@dataclass(frozen=True)
class StructureReport:
    triangles: tuple[tuple[int, int, int], ...]
    diamonds: tuple[tuple[int, int, int, int], ...]
    t1: int
    t2: int
    t3: int
    k1: int
    k2: int


def classify_structure(g: Graph) -> StructureReport:
    """Count vertices lying in two / one / zero triangles and list the
    triangle and diamond substructures.

    Triangles contained in a diamond are excluded from the ``triangles``
    list (the diamond owns them); the t-counts use raw triangle membership.
    Raises :class:`StructureError` if the counts violate t1 = 2*k1 and
    t2 = t1 + 3*k2, which happens exactly when some component is K4-like.
    """
    flags = validate(g)
    if not flags["cubic"] or g.n < 6:
        raise GraphError("structure classification expects a cubic graph on >= 6 vertices")
    raw = enumerate_triangles(g)
    diamonds = enumerate_diamonds(g)
    diamond_sets = [set(d) for d in diamonds]
    membership = [0] * g.n
    for tri in raw:
        for v in tri:
            membership[v] += 1
    if any(c > 2 for c in membership):
        raise StructureError("a vertex lies in more than two triangles (K4-like component)")
    t1 = sum(1 for c in membership if c == 2)
    t2 = sum(1 for c in membership if c == 1)
    t3 = sum(1 for c in membership if c == 0)
    if t1 % 2 or (t2 - t1) % 3 or (t2 - t1) < 0 or t1 + t2 + t3 != g.n:
        raise StructureError(
            f"triangle-type counts t1={t1}, t2={t2}, t3={t3} violate the cubic relations"
        )
    pure = tuple(t for t in raw if not any(set(t) <= d for d in diamond_sets))
    return StructureReport(
        triangles=pure,
        diamonds=tuple(diamonds),
        t1=t1,
        t2=t2,
        t3=t3,
        k1=t1 // 2,
        k2=(t2 - t1) // 3,
    )


# ---------------------------------------------------------------------------
# H-factor detection (diamond / triangle / claw) via exact cover
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FactorCertificate:
    kind: str
    parts: tuple[tuple[int, ...], ...]

    def validate(self, g: Graph) -> bool:
        seen: set[int] = set()
        for part in self.parts:
            if seen & set(part):
                return False
            seen.update(part)
            if not _induces_kind(g, part, self.kind):
                return False
        return seen == set(range(g.n))


def _induces_kind(g: Graph, part: tuple[int, ...], kind: str) -> bool:
    sub = set(part)
    inside = [(u, v) for u, v in g.edges() if u in sub and v in sub]
    if kind == "triangle":
        return len(part) == 3 and len(inside) == 3
    if kind == "diamond":
        if len(part) != 4 or len(inside) != 5:
            return False
        degs = sorted(sum(1 for e in inside if v in e) for v in part)
        return degs == [2, 2, 3, 3]
    if kind == "claw":
        if len(part) != 4 or len(inside) != 3:
            return False
        degs = sorted(sum(1 for e in inside if v in e) for v in part)
        return degs == [1, 1, 1, 3]
    raise GraphError(f"unknown factor kind {kind!r}")


def _candidate_parts(g: Graph, kind: str) -> list[tuple[int, ...]]:
    if kind == "triangle":
        return enumerate_triangles(g)
    if kind == "diamond":
        return enumerate_diamonds(g)
    if kind == "claw":
        out = []
        for c in range(g.n):
            if g.degree(c) < 3:
                continue
            for trio in combinations(g.adjacency[c], 3):
                if not any(g.has_edge(a, b) for a, b in combinations(trio, 2)):
                    out.append(tuple(sorted((c,) + trio)))
        return sorted(set(out))
    raise GraphError(f"unknown factor kind {kind!r}")


def find_factor(g: Graph, kind: str) -> FactorCertificate | None:
    """Exhaustive exact-cover search for a spanning set of disjoint parts,
    each inducing the requested shape.  Definitive at the sizes this
    library targets (<= ~30 vertices)."""
    size = {"triangle": 3, "diamond": 4, "claw": 4}[kind]
    if g.n == 0 or g.n % size:
        return None
    candidates = _candidate_parts(g, kind)
    by_vertex: dict[int, list[tuple[int, ...]]] = {v: [] for v in range(g.n)}
    for part in candidates:
        for v in part:
            by_vertex[v].append(part)

    chosen: list[tuple[int, ...]] = []
    used: set[int] = set()

    def place() -> bool:
        free = [v for v in range(g.n) if v not in used]
        if not free:
            return True
        pivot = min(free, key=lambda v: sum(1 for p in by_vertex[v] if used.isdisjoint(p)))
        for part in by_vertex[pivot]:
            if used.isdisjoint(part):
                used.update(part)
                chosen.append(part)
                if place():
                    return True
                chosen.pop()
                used.difference_update(part)
        return False

    if place():
        return FactorCertificate(kind=kind, parts=tuple(sorted(chosen)))
    return None
