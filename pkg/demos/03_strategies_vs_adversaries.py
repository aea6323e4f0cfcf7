#!/usr/bin/env python3
"""Constructive strategies beating exhaustive adversaries.

Each strategy is played against every possible opposing line (memoized);
"lines" counts the terminal positions the adversary reached.
"""

from mbtd import (PairingPlan, Player, bipartite_circulant_strategy, eta_strategies,
                  generate_eta, generate_gp, generate_necklace, omega_strategies,
                  generate_omega, pairing_strategy, partition_strategy,
                  validate_strategy, verify_pairing_plan)


def gp1_plan(n):
    g = generate_gp(n, 1)
    pairs = [tuple(sorted((g.vertex(f"u{i}"), g.vertex(f"v{i - 1}"))))
             for i in range(1, n)]
    pairs.append(tuple(sorted((g.vertex("u0"), g.vertex(f"v{n - 1}")))))
    return g, PairingPlan(tuple(sorted(pairs)))


print("== pairing strategy on the prism family GP(n,1) ==")
for n in (5, 7, 9):
    g, plan = gp1_plan(n)
    assert verify_pairing_plan(g, plan)
    run = validate_strategy(pairing_strategy(plan), g, Player.STALLER)
    print(f"GP({n},1): every-set-contains-a-pair certificate holds; "
          f"exhaustive Staller beaten over {run.lines} lines -> {run.passed}")

print("\n== partition strategy: each diamond is a little fortress ==")
g = generate_necklace("diamond", 4)
parts = [list(range(4 * i, 4 * i + 4)) for i in range(4)]
run = validate_strategy(partition_strategy(g, parts), g, Player.STALLER)
print(f"diamond-necklace(4): {run.lines} adversary lines -> {run.passed}")

print("\n== circulant response strategy ==")
s = bipartite_circulant_strategy(6)
run = validate_strategy(s, s.graph, Player.STALLER)
print(f"circulant m=6: {run.lines} adversary lines -> {run.passed}")

print("\n== the 18-vertex composite: solver-infeasible openings, table-driven play ==")
g = generate_eta()
for key, opening in (("dominator_first", "h1"), ("dominator_first_h3", "h3")):
    run = validate_strategy(eta_strategies()[key], g, Player.DOMINATOR)
    print(f"Dominator opens {opening}: beats exhaustive Staller "
          f"({run.lines} lines) -> {run.passed}")
run = validate_strategy(eta_strategies()["staller"], g, Player.STALLER)
print(f"Staller moving first: scripted attack wins ({run.lines} lines) -> {run.passed}")

print("\n== omega: one good opening, the chain diamonds are poison ==")
g = generate_omega(2)
run = validate_strategy(omega_strategies(2)["dominator_first"], g, Player.DOMINATOR)
print(f"omega(2) opening a1: {run.lines} lines -> {run.passed}")
