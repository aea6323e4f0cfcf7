#!/usr/bin/env python3
"""Exact outcome classification across the studied families, with stats."""

import time

from mbtd import (Player, Position, Solver, classify_outcome, complete_graph,
                  cycle_graph, generate_bipartite_circulant, generate_gp,
                  generate_necklace, generate_omega, truncate)

rows = [
    ("C4", cycle_graph(4)),
    ("K5", complete_graph(5)),
    ("GP(5,2)", generate_gp(5, 2)),
    ("GP(7,1)", generate_gp(7, 1)),
    ("GP(8,2)", generate_gp(8, 2)),
    ("diamond-necklace(3)", generate_necklace("diamond", 3)),
    ("claw-necklace(3)", generate_necklace("claw", 3)),
    ("circulant m=7", generate_bipartite_circulant(7)),
    ("truncated K4", truncate(complete_graph(4))),
    ("omega(1)", generate_omega(1)),
]

print(f"{'graph':22s} {'class':5s} {'nodes':>8s} {'time':>7s}")
for name, g in rows:
    solver = Solver(g)
    t0 = time.monotonic()
    rep = classify_outcome(g, solver)
    print(f"{name:22s} {rep.outcome.value:5s} {solver.nodes:8d} "
          f"{time.monotonic() - t0:6.2f}s")

print("\nomega(1) is N: the first player wins. Winning and losing first moves:")
g = generate_omega(1)
solver = Solver(g)
for v in range(g.n):
    w = solver.winner(Position.initial(g, Player.DOMINATOR).apply_move(v))
    print(f"  d1 = {g.label_of(v):6s} -> {w.value} wins")
