import itertools
import random

import pytest

from mbtd.game import GameStatus, Player, Position, status
from mbtd.gadgets import gadget_graph
from mbtd.graphs import (Graph, complete_graph, cycle_graph, generate_bipartite_circulant,
                         generate_gp, generate_necklace, generate_omega, star_graph,
                         truncate)
from mbtd.solver import (Solver, SolverConfig, SolveResult, canonical_key,
                         find_double_trap_move, immediate_threats)

from oracles import naive_minimax

SMALL_FIXTURES = [
    ("C4", cycle_graph(4)),
    ("K1", complete_graph(1)),
    ("K4", complete_graph(4)),
    ("K5", complete_graph(5)),
    ("K1,3", star_graph(3)),
    ("C5", cycle_graph(5)),
    ("C6", cycle_graph(6)),
    ("prism", generate_gp(3, 1)),
    ("K3,3", generate_bipartite_circulant(3)),
    ("gp(4,1)", generate_gp(4, 1)),
    ("diamonds-2", generate_necklace("diamond", 2)),
    ("claws-2", generate_necklace("claw", 2)),
    ("circulant-4", generate_bipartite_circulant(4)),
    ("C9", cycle_graph(9)),
]

MID_FIXTURES = SMALL_FIXTURES + [
    ("gp(5,2)", generate_gp(5, 2)),
    ("gp(5,1)", generate_gp(5, 1)),
    ("gp(6,1)", generate_gp(6, 1)),
    ("gp(6,2)", generate_gp(6, 2)),
    ("circulant-5", generate_bipartite_circulant(5)),
    ("diamonds-3", generate_necklace("diamond", 3)),
    ("claws-3", generate_necklace("claw", 3)),
    ("truncated-K4", truncate(complete_graph(4))),
]


def test_solver_agrees_with_naive_oracle_both_first_players():
    for name, g in SMALL_FIXTURES:
        solver = Solver(g)
        for first in (Player.DOMINATOR, Player.STALLER):
            expect = naive_minimax(g, to_move=first)
            got = solver.winner(Position.initial(g, first))
            assert got is expect, f"{name} first={first.value}"


def test_solver_agrees_with_oracle_on_random_midgame_positions():
    rng = random.Random(42)
    for name, g in [("C6", cycle_graph(6)), ("prism", generate_gp(3, 1)),
                    ("gp(4,1)", generate_gp(4, 1))]:
        solver = Solver(g)
        for _ in range(40):
            owners = [None] * g.n
            moves = rng.randrange(0, g.n - 1)
            order = rng.sample(range(g.n), moves)
            for i, v in enumerate(order):
                owners[v] = Player.DOMINATOR if i % 2 == 0 else Player.STALLER
            to_move = Player.DOMINATOR if moves % 2 == 0 else Player.STALLER
            p = Position(g, owners, to_move)
            if status(p) is not GameStatus.ONGOING:
                continue
            assert solver.winner(p) is naive_minimax(g, owners, to_move), name


def test_known_outcomes():
    assert Solver(cycle_graph(4)).winner(
        Position.initial(cycle_graph(4), Player.DOMINATOR)) is Player.DOMINATOR
    g52 = generate_gp(5, 2)
    assert Solver(g52).winner(Position.initial(g52, Player.DOMINATOR)) is Player.STALLER
    prism = generate_gp(3, 1)
    assert Solver(prism).winner(Position.initial(prism, Player.STALLER)) is Player.DOMINATOR


def test_relabeling_invariance():
    rng = random.Random(99)
    for name, g in [("gp(5,2)", generate_gp(5, 2)), ("diamonds-2", generate_necklace("diamond", 2)),
                    ("claws-3", generate_necklace("claw", 3))]:
        base = Solver(g).winner(Position.initial(g, Player.DOMINATOR))
        for _ in range(20):
            perm = list(range(g.n))
            rng.shuffle(perm)
            h = Graph(g.n, [(perm[u], perm[v]) for u, v in g.edges()])
            assert Solver(h).winner(Position.initial(h, Player.DOMINATOR)) is base, name


@pytest.mark.slow
def test_pruning_toggles_do_not_change_winners():
    toggles = ("hit_set_removal", "dominated_move", "threat_extension", "potential_cutoff")
    for name, g in MID_FIXTURES:
        reference = {}
        for first in (Player.DOMINATOR, Player.STALLER):
            reference[first] = Solver(g).winner(Position.initial(g, first))
        for toggle in toggles:
            cfg = SolverConfig(**{toggle: False})
            solver = Solver(g, cfg)
            for first in (Player.DOMINATOR, Player.STALLER):
                got = solver.winner(Position.initial(g, first))
                assert got is reference[first], f"{name} without {toggle}"


def test_all_pruning_off_matches_oracle():
    cfg = SolverConfig(hit_set_removal=False, dominated_move=False,
                       threat_extension=False, potential_cutoff=False)
    for name, g in [("C6", cycle_graph(6)), ("K1,3", star_graph(3)),
                    ("prism", generate_gp(3, 1))]:
        for first in (Player.DOMINATOR, Player.STALLER):
            got = Solver(g, cfg).winner(Position.initial(g, first))
            assert got is naive_minimax(g, to_move=first), name


def test_staller_monotone_in_granted_vertices():
    rng = random.Random(5)
    for name, g in [("C6", cycle_graph(6)), ("gp(4,1)", generate_gp(4, 1))]:
        solver = Solver(g)
        for _ in range(60):
            owners = [None] * g.n
            order = rng.sample(range(g.n), rng.randrange(0, g.n - 2))
            for i, v in enumerate(order):
                owners[v] = Player.DOMINATOR if i % 2 == 0 else Player.STALLER
            p = Position(g, owners, Player.STALLER)
            if status(p) is not GameStatus.ONGOING:
                continue
            if solver.winner(p) is not Player.STALLER:
                continue
            free = p.free_vertices()
            if not free:
                continue
            x = rng.choice(free)
            granted = list(owners)
            granted[x] = Player.STALLER
            p2 = Position(g, granted, Player.STALLER)
            if status(p2) is GameStatus.ONGOING:
                assert solver.winner(p2) is Player.STALLER, name
            else:
                assert status(p2) is GameStatus.STALLER_WON, name


def test_canonical_key_renames_by_first_occurrence():
    key1 = canonical_key((0b110, 0b011), True)
    key2 = canonical_key((0b1100, 0b0110), True)  # same shape, shifted ids
    assert key1 == key2
    assert canonical_key((0b110,), True) != canonical_key((0b110,), False)


def test_equal_canonical_keys_imply_equal_values():
    rng = random.Random(21)
    seen: dict[tuple, tuple] = {}
    for name, g in [("C6", cycle_graph(6)), ("prism", generate_gp(3, 1))]:
        solver = Solver(g)
        for _ in range(150):
            owners = [None] * g.n
            order = rng.sample(range(g.n), rng.randrange(0, g.n))
            for i, v in enumerate(order):
                owners[v] = Player.DOMINATOR if i % 2 == 0 else Player.STALLER
            for to_move in (Player.DOMINATOR, Player.STALLER):
                p = Position(g, owners, to_move)
                if status(p) is not GameStatus.ONGOING:
                    continue
                sets, _ = solver._residual(p)
                key = canonical_key(sets, to_move is Player.STALLER)
                val = solver.winner(p)
                if key in seen:
                    assert seen[key][0] is val, (name, seen[key][1])
                else:
                    seen[key] = (val, (name, owners[:], to_move))


def test_solve_result_contract():
    g = cycle_graph(4)
    res = Solver(g).solve(Position.initial(g, Player.DOMINATOR))
    assert res.winner is Player.DOMINATOR
    assert res.best_move == 0  # lowest-id winning move
    assert not res.from_cache
    # principal line replays to the declared winner
    p = Position.initial(g, Player.DOMINATOR)
    for v in res.principal_line:
        p = p.apply_move(v)
    assert status(p) is GameStatus.DOMINATOR_WON
    res2 = Solver(g).solve(Position.initial(g, Player.DOMINATOR))
    assert res2.winner is res.winner and res2.best_move == res.best_move


def test_solver_determinism_across_runs():
    g = generate_gp(5, 2)
    a = Solver(g).solve(Position.initial(g, Player.DOMINATOR))
    b = Solver(g).solve(Position.initial(g, Player.DOMINATOR))
    assert (a.winner, a.best_move, a.principal_line) == (b.winner, b.best_move, b.principal_line)


def test_lowest_id_winning_move_even_with_pruning():
    # brute-force the set of winning first moves and compare
    g = generate_necklace("diamond", 2)
    solver = Solver(g)
    p = Position.initial(g, Player.DOMINATOR)
    res = solver.solve(p)
    winning = [v for v in p.free_vertices()
               if solver.winner(p.apply_move(v)) is res.winner]
    assert res.best_move == min(winning)


def test_lowest_winning_move_may_sit_outside_all_live_sets():
    # P4 fully dominated plus a necklace where Dominator wins even moving
    # second: every move wins, so the answer is the lowest free vertex,
    # which lies in no live set
    neck = generate_necklace("diamond", 2)
    edges = [(0, 1), (1, 2), (2, 3)]
    edges += [(u + 4, v + 4) for u, v in neck.edges()]
    g = Graph(12, edges)
    p = Position.setup(g, dominator={1, 2, 5, 9}, to_move=Player.DOMINATOR)
    solver = Solver(g)
    res = solver.solve(p)
    assert res.winner is Player.DOMINATOR
    # vertex 0 is free, outside every live set, and still a winning move
    sets, _ = solver._residual(p)
    live_union = set()
    for m in sets:
        while m:
            low = m & -m
            live_union.add(low.bit_length() - 1)
            m ^= low
    assert 0 not in live_union
    assert res.best_move == 0


def test_budget_exhaustion_yields_unknown():
    g = generate_gp(6, 2)
    res = Solver(g, SolverConfig(node_budget=5)).solve(Position.initial(g, Player.DOMINATOR))
    assert res.unknown and res.winner is None and res.best_move is None


def test_forced_block_reported_for_lost_positions():
    # twin-triangle gadget: after the scripted exchange the only non-losing
    # reply is the stem guard, and a lost Dominator still blocks it
    g = gadget_graph("G1")
    u0, u1, v0, v2, v3 = g.vertices("u0", "u1", "v0", "v2", "v3")
    p = Position.setup(g, dominator={u0, u1}, staller={v2, v3},
                       to_move=Player.DOMINATOR)
    solver = Solver(g)
    res = solver.solve(p)
    assert res.winner is Player.STALLER
    assert res.best_move == v0


def test_immediate_threats_h1_pattern():
    g = gadget_graph("H1")
    v0, v1, v2, v3, u, v = g.vertices("v0", "v1", "v2", "v3", "u", "v")
    p = Position.setup(g, dominator={v0}, staller={v1, v2, v3},
                       to_move=Player.DOMINATOR)
    th = immediate_threats(p)
    assert th.dominator_forced == {u, v}
    assert th.staller_wins_now == {u, v}


def test_immediate_threats_empty_on_fresh_board():
    p = Position.initial(generate_gp(5, 2), Player.STALLER)
    th = immediate_threats(p)
    assert not th.staller_wins_now and not th.dominator_forced


def test_double_trap_h1():
    g = gadget_graph("H1")
    v0, v1 = g.vertices("v0", "v1")
    v2, v3 = g.vertices("v2", "v3")
    p = Position.setup(g, dominator={v0}, staller={v2, v3}, to_move=Player.STALLER)
    assert find_double_trap_move(p) == v1


def test_double_trap_on_embedded_diamond():
    g = generate_necklace("diamond", 2)
    z1 = g.vertex("z1@D1")
    z3 = g.vertex("z3@D1")
    p = Position.setup(g, staller={z1}, to_move=Player.STALLER)
    assert find_double_trap_move(p) == z3
    # and the detected move is indeed a winning one
    assert Solver(g).winner(p) is Player.STALLER


def test_double_trap_none_on_fresh_petersen():
    g = generate_gp(5, 2)
    assert find_double_trap_move(Position.initial(g, Player.STALLER)) is None


def test_double_trap_implies_staller_win():
    rng = random.Random(17)
    for g in (generate_necklace("diamond", 2), gadget_graph("G4")):
        solver = Solver(g)
        for _ in range(80):
            owners = [None] * g.n
            order = rng.sample(range(g.n), rng.randrange(0, g.n - 1))
            for i, v in enumerate(order):
                owners[v] = Player.STALLER if i % 2 == 0 else Player.DOMINATOR
            p = Position(g, owners, Player.STALLER)
            if status(p) is not GameStatus.ONGOING:
                continue
            mv = find_double_trap_move(p)
            if mv is not None:
                assert solver.winner(p) is Player.STALLER


def test_solve_family_direct():
    s = Solver(cycle_graph(4))
    assert s.solve_family((0b1,), True) is Player.STALLER       # singleton, maker first
    assert s.solve_family((0b11,), True) is Player.DOMINATOR    # breaker blocks the pair
    assert s.solve_family((0b11,), False) is Player.DOMINATOR
    # two disjoint singletons: breaker to move can only block one
    assert s.solve_family((0b01, 0b10), False) is Player.STALLER
    assert s.solve_family((), True) is Player.DOMINATOR
    assert s.solve_family((0,), True) is Player.STALLER


def test_root_parallel_matches_single_threaded():
    g = generate_gp(6, 2)
    single = Solver(g).solve(Position.initial(g, Player.DOMINATOR))
    par = Solver(g, SolverConfig(root_parallelism=True)).solve_parallel(
        Position.initial(g, Player.DOMINATOR))
    assert (par.winner, par.best_move) == (single.winner, single.best_move)


def test_stats_payload():
    g = generate_gp(5, 2)
    res = Solver(g).solve(Position.initial(g, Player.DOMINATOR))
    assert {"nodes", "memo_hits", "memo_size", "elapsed"} <= set(res.stats)
