#!/usr/bin/env python3
"""Tour of the graph families and the structure reports they produce."""

from mbtd import (classify_structure, find_factor, generate_bipartite_circulant,
                  generate_eta, generate_gp, generate_necklace, to_graph6,
                  truncate, complete_graph, validate)

print("== generalized Petersen graphs ==")
for n, k in ((5, 2), (9, 2), (7, 1)):
    g = generate_gp(n, k)
    print(f"GP({n},{k}): {g.n} vertices, {g.edge_count()} edges, {validate(g)}")
print("GP(5,2) as graph6:", to_graph6(generate_gp(5, 2)))

print("\n== necklaces and factors ==")
for kind, count in (("diamond", 3), ("claw", 2), ("claw", 4)):
    g = generate_necklace(kind, count)
    cert = find_factor(g, kind)
    print(f"{kind}-necklace({count}): {g.n} vertices, "
          f"{kind}-factor parts = {len(cert.parts) if cert else None}")

print("\n== truncation always produces a triangle factor ==")
t = truncate(complete_graph(4))
print(f"truncated K4: {t.n} vertices; triangle factor:",
      find_factor(t, "triangle") is not None)

print("\n== vertex-type counts (two / one / zero triangles) ==")
for name, g in (("truncated K4", t),
                ("diamond-necklace(2)", generate_necklace("diamond", 2)),
                ("GP(5,2)", generate_gp(5, 2)),
                ("eta", generate_eta()),
                ("circulant m=5", generate_bipartite_circulant(5))):
    r = classify_structure(g)
    print(f"{name:22s} t1={r.t1:2d} t2={r.t2:2d} t3={r.t3:2d} "
          f"(k1={r.k1}, k2={r.k2}; {len(r.triangles)} triangles, "
          f"{len(r.diamonds)} diamonds)")
