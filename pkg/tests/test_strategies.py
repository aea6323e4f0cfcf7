import pytest

from mbtd.gadgets import GadgetEmbedding, find_gadget, gadget_graph
from mbtd.game import GameStatus, Player, Position, status
from mbtd.graphs import (Graph, cycle_graph, generate_bipartite_circulant,
                         generate_eta, generate_gp, generate_necklace,
                         generate_omega, star_graph)
from mbtd.strategies import (PairingPlan, bipartite_circulant_strategy,
                             eta_strategies, find_pairing_plan, identity_embedding,
                             omega_strategies, pairing_strategy, partition_strategy,
                             prism_strategy, staller_gadget_strategy,
                             verify_pairing_plan)
from mbtd.verify import validate_strategy


def gp1_plan(n: int) -> tuple[Graph, PairingPlan]:
    """Ring pairing for the prism family: (u_i, v_{i-1}) plus the wrap pair."""
    g = generate_gp(n, 1)
    pairs = [tuple(sorted((g.vertex(f"u{i}"), g.vertex(f"v{i - 1}"))))
             for i in range(1, n)]
    pairs.append(tuple(sorted((g.vertex("u0"), g.vertex(f"v{n - 1}")))))
    return g, PairingPlan(pairs=tuple(sorted(pairs)))


# -- pairing plans -----------------------------------------------------------

def test_diamond_tips_and_centers_pairing_verifies():
    g = generate_necklace("diamond", 2)
    pairs = []
    for d in (1, 2):
        pairs.append(tuple(sorted((g.vertex(f"z1@D{d}"), g.vertex(f"z3@D{d}")))))
        pairs.append(tuple(sorted((g.vertex(f"z2@D{d}"), g.vertex(f"z4@D{d}")))))
    assert verify_pairing_plan(g, PairingPlan(tuple(sorted(pairs))))


def test_gp71_ring_pairing_verifies():
    g, plan = gp1_plan(7)
    assert verify_pairing_plan(g, plan)


def test_no_pairing_plan_on_gp52():
    assert find_pairing_plan(generate_gp(5, 2)) is None


def test_verify_rejects_overlapping_or_noncovering():
    g = cycle_graph(4)
    assert not verify_pairing_plan(g, PairingPlan(((0, 1), (1, 2))))
    assert not verify_pairing_plan(g, PairingPlan(((0, 2),)))
    assert verify_pairing_plan(g, PairingPlan(((0, 2), (1, 3))))


def test_find_pairing_plan_c4_and_star():
    assert find_pairing_plan(cycle_graph(4)) == PairingPlan(((0, 2), (1, 3)))
    assert find_pairing_plan(star_graph(3)) is None


def test_find_pairing_plan_diamond_necklace():
    g = generate_necklace("diamond", 2)
    plan = find_pairing_plan(g)
    assert plan is not None and len(plan.pairs) == 4
    assert verify_pairing_plan(g, plan)


# -- pairing strategy behavior ------------------------------------------------

def test_pairing_strategy_answers_partner():
    g, plan = gp1_plan(7)
    strat = pairing_strategy(plan)
    u3, v2 = g.vertex("u3"), g.vertex("v2")
    p = Position.initial(g, Player.STALLER).apply_move(u3)
    assert strat.next_move(p) == v2


def test_pairing_strategy_fallback_prefers_free_pair_members():
    g = cycle_graph(6)
    plan = PairingPlan(((1, 3),))  # deliberately partial plan
    strat = pairing_strategy(plan)
    p = Position.initial(g, Player.STALLER).apply_move(0)
    assert strat.next_move(p) == 1  # lowest free pair member
    # first-move case of a Dominator-first game: prefer outside the pairs
    p2 = Position.initial(g, Player.DOMINATOR)
    assert strat.next_move(p2) == 0


@pytest.mark.parametrize("n", range(3, 10))
def test_pairing_strategy_beats_exhaustive_staller_on_prisms(n):
    g, plan = gp1_plan(n)
    assert verify_pairing_plan(g, plan)
    run = validate_strategy(pairing_strategy(plan), g, Player.STALLER)
    assert run.passed, run.losing_line


def test_pairing_strategy_never_loses_vs_solver_on_gp51():
    g, plan = gp1_plan(5)
    run = validate_strategy(pairing_strategy(plan), g, Player.STALLER,
                            adversary="solver_best")
    assert run.passed


# -- partition strategy --------------------------------------------------------

def test_partition_strategy_diamond_necklaces():
    for d in (2, 3, 4):
        g = generate_necklace("diamond", d)
        parts = [list(range(4 * i, 4 * i + 4)) for i in range(d)]
        run = validate_strategy(partition_strategy(g, parts), g, Player.STALLER)
        assert run.passed, (d, run.losing_line)


def test_partition_strategy_two_claws_c4_parts():
    g = generate_necklace("claw", 2)
    parts = [[g.vertex(x) for x in ("x1", "t1", "y1", "y2")],
             [g.vertex(x) for x in ("z1", "z2", "t2", "x2")]]
    run = validate_strategy(partition_strategy(g, parts), g, Player.STALLER)
    assert run.passed


def test_partition_strategy_gp41_c4_parts():
    g = generate_gp(4, 1)
    parts = [[g.vertex(x) for x in ("u0", "u1", "v0", "v1")],
             [g.vertex(x) for x in ("u2", "u3", "v2", "v3")]]
    run = validate_strategy(partition_strategy(g, parts), g, Player.STALLER,
                            adversary="solver_best")
    assert run.passed


def test_partition_strategy_requires_certificates():
    g = generate_gp(5, 2)
    with pytest.raises(ValueError):
        partition_strategy(g, [list(range(5)), list(range(5, 10))])


# -- circulant strategy ---------------------------------------------------------

def test_circulant_opening_reply():
    strat = bipartite_circulant_strategy(5)
    g = strat.graph
    p = Position.initial(g, Player.STALLER).apply_move(g.vertex("u2"))
    assert g.label_of(strat.next_move(p)) == "u1"


@pytest.mark.parametrize("m", (3, 4, 5, 6))
def test_circulant_strategy_beats_exhaustive_staller(m):
    strat = bipartite_circulant_strategy(m)
    run = validate_strategy(strat, strat.graph, Player.STALLER)
    assert run.passed, run.losing_line


def test_circulant_strategy_survives_random_lines():
    strat = bipartite_circulant_strategy(6)
    run = validate_strategy(strat, strat.graph, Player.STALLER,
                            adversary="random", seed=2024, count=1000)
    assert run.passed


# -- prism strategy ---------------------------------------------------------------

def test_prism_strategy_opposite_triangle_opening():
    g = generate_gp(3, 1)
    strat = prism_strategy()
    p = Position.initial(g, Player.STALLER).apply_move(g.vertex("u0"))
    reply = strat.next_move(p)
    assert reply in (g.vertex("v1"), g.vertex("v2"))
    assert not g.has_edge(reply, g.vertex("u0"))


def test_prism_strategy_beats_exhaustive_staller():
    g = generate_gp(3, 1)
    run = validate_strategy(prism_strategy(), g, Player.STALLER)
    assert run.passed, run.losing_line


# -- scripted gadget attacks -------------------------------------------------------

def test_g1_script_wins_standalone_both_starts():
    g = gadget_graph("G1")
    start = Position.setup(g, dominator={g.vertex("u0")}, to_move=Player.STALLER)
    st = staller_gadget_strategy(identity_embedding("G1"))
    assert validate_strategy(st, g, Player.STALLER, start=start).passed
    st2 = staller_gadget_strategy(identity_embedding("G1"))
    assert validate_strategy(st2, g, Player.STALLER).passed


def _cubic_double_host(kind: str, twin_stubs: list[str],
                       extra_cross: list[tuple[str, str]] = ()) -> Graph:
    """Two copies of a gadget cross-linked at their low-degree stubs, giving
    a cubic host where the scripted threats face full-degree opposition.

    ``twin_stubs`` get an edge to their twin; each (a, b) in ``extra_cross``
    adds a—b' and a'—b.
    """
    t = gadget_graph(kind)
    edges = list(t.edges())
    edges += [(u + t.n, v + t.n) for u, v in t.edges()]
    for lbl in twin_stubs:
        v = t.vertex(lbl)
        edges.append((v, v + t.n))
    for la, lb in extra_cross:
        a, b = t.vertex(la), t.vertex(lb)
        edges.append((a, b + t.n))
        edges.append((a + t.n, b))
    labels = {v: tag for v, tag in (t.labels or ())}
    labels.update({v + t.n: tag + "'" for v, tag in (t.labels or ())})
    return Graph(2 * t.n, edges, labels)


def _identity_host_embedding(kind: str, host: Graph) -> GadgetEmbedding:
    t = gadget_graph(kind)
    host_ix = {host.label_of(v): v for v in range(host.n)}
    return GadgetEmbedding(
        gadget=kind,
        mapping=tuple(sorted((t.label_of(v), host_ix[t.label_of(v)])
                             for v in range(t.n))),
        free_snapshot=frozenset(),
    )


def test_g1_script_wins_in_cubic_host():
    host = _cubic_double_host("G1", ["u0", "v0"], [("u0", "v0")])
    from mbtd.graphs import validate
    assert validate(host)["cubic"]
    emb = _identity_host_embedding("G1", host)
    start = Position.setup(host, dominator={host.vertex("u0")},
                           to_move=Player.STALLER)
    st = staller_gadget_strategy(emb)
    run = validate_strategy(st, host, Player.STALLER, start=start)
    assert run.passed, run.losing_line
    assert run.fallbacks == 0


def test_g2_script_wins_in_cubic_host():
    host = _cubic_double_host("G2", ["x3", "v1", "z1", "z2", "v"], [("v", "x2")])
    from mbtd.graphs import validate
    assert validate(host)["cubic"]
    emb = _identity_host_embedding("G2", host)
    start = Position.setup(host, staller={host.vertex("u1")},
                           to_move=Player.STALLER)
    run = validate_strategy(staller_gadget_strategy(emb), host, Player.STALLER,
                            start=start)
    assert run.passed, run.losing_line


def test_g3_script_wins_in_cubic_host():
    host = _cubic_double_host("G3", ["u1", "u3", "z3"])
    from mbtd.graphs import validate
    assert validate(host)["cubic"]
    emb = _identity_host_embedding("G3", host)
    start = Position.setup(host, staller={host.vertex("u1")},
                           to_move=Player.STALLER)
    run = validate_strategy(staller_gadget_strategy(emb), host, Player.STALLER,
                            start=start)
    assert run.passed, run.losing_line


def test_g4_script_wins_in_cubic_host():
    host = _cubic_double_host("G4", ["u1", "y3", "z3"])
    from mbtd.graphs import validate
    assert validate(host)["cubic"]
    emb = _identity_host_embedding("G4", host)
    run = validate_strategy(staller_gadget_strategy(emb), host, Player.STALLER)
    assert run.passed, run.losing_line


def test_g2_script_wins_standalone_setup():
    g = gadget_graph("G2")
    start = Position.setup(g, staller={g.vertex("u1")}, to_move=Player.STALLER)
    run = validate_strategy(staller_gadget_strategy(identity_embedding("G2")),
                            g, Player.STALLER, start=start)
    assert run.passed


def test_g2_script_with_coinciding_stub_vertex():
    # the outward stub of the third triangle may coincide with a vertex of
    # the last one; the embedding goes non-injective exactly there
    t = gadget_graph("G2")
    base = {t.label_of(v): v for v in range(t.n)}
    del base["v"]
    order = sorted(base, key=base.get)
    ix = {lbl: i for i, lbl in enumerate(order)}
    edges = []
    for u, v in t.edges():
        lu, lv = t.label_of(u), t.label_of(v)
        lu = "z1" if lu == "v" else lu
        lv = "z1" if lv == "v" else lv
        edges.append((ix[lu], ix[lv]))
    # close the remaining degree-2 stubs pairwise to reach a cubic host
    for a, b in (("x2", "v1"), ("x3", "z2")):
        edges.append((ix[a], ix[b]))
    host = Graph(len(order), edges, {i: lbl for lbl, i in ix.items()})
    from mbtd.graphs import validate
    assert validate(host)["cubic"]
    mapping = {lbl: ix[lbl] for lbl in ix}
    mapping["v"] = ix["z1"]  # the coincidence
    emb = GadgetEmbedding(gadget="G2", mapping=tuple(sorted(mapping.items())),
                          free_snapshot=frozenset())
    start = Position.setup(host, staller={ix["u1"]}, to_move=Player.STALLER)
    run = validate_strategy(staller_gadget_strategy(emb), host, Player.STALLER,
                            start=start)
    assert run.passed, run.losing_line


def test_three_claws_script_wins_on_necklace_after_any_opening():
    g = generate_necklace("claw", 4)
    for d1 in range(g.n):
        p = Position.initial(g, Player.DOMINATOR).apply_move(d1)
        emb = find_gadget(g, p, kinds=("three-claws",))
        assert emb is not None
        st = staller_gadget_strategy(emb)
        run = validate_strategy(st, g, Player.DOMINATOR, start=p)
        assert run.passed, (d1, run.losing_line)


def test_gadget_scripts_never_return_illegal_moves_fuzzed():
    import random
    rng = random.Random(31)
    g = gadget_graph("G4")
    for _ in range(200):
        st = staller_gadget_strategy(identity_embedding("G4"))
        p = Position.initial(g, Player.STALLER)
        while status(p) is GameStatus.ONGOING:
            if p.to_move is Player.STALLER:
                v = st.next_move(p)
                assert p.is_free(v)
                p = p.apply_move(v)
            else:
                p = p.apply_move(rng.choice(p.free_vertices()))


# -- composite-graph strategies ----------------------------------------------------

def test_eta_dominator_both_openings_win_exhaustively():
    g = generate_eta()
    strats = eta_strategies()
    for key in ("dominator_first", "dominator_first_h3"):
        run = validate_strategy(strats[key], g, Player.DOMINATOR)
        assert run.passed, (key, run.losing_line)


def test_eta_staller_wins_s_game_and_punishes_bad_openings():
    g = generate_eta()
    run = validate_strategy(eta_strategies()["staller"], g, Player.STALLER)
    assert run.passed and run.fallbacks == 0
    for opener in ("h2", "h4", "y1", "y2", "k1", "k2", "w3", "m4"):
        start = Position.initial(g, Player.DOMINATOR).apply_move(g.vertex(opener))
        st = eta_strategies()["staller"]
        run = validate_strategy(st, g, Player.DOMINATOR, start=start)
        assert run.passed, (opener, run.losing_line)


def test_omega_dominator_wins_with_the_good_opening():
    for m in (1, 2):
        g = generate_omega(m)
        run = validate_strategy(omega_strategies(m)["dominator_first"], g,
                                Player.DOMINATOR)
        assert run.passed, (m, run.losing_line)


def test_omega_staller_wins_s_game_and_punishes_chain_openings():
    for m in (1, 2):
        g = generate_omega(m)
        run = validate_strategy(omega_strategies(m)["staller"], g, Player.STALLER)
        assert run.passed, (m, run.losing_line)
        for j in range(1, 5):
            start = Position.initial(g, Player.DOMINATOR).apply_move(
                g.vertex(f"z{j}@D1"))
            st = omega_strategies(m)["staller"]
            run = validate_strategy(st, g, Player.DOMINATOR, start=start)
            assert run.passed, (m, j, run.losing_line)


# -- master property: every strategy achieves its declared result vs the solver ----

def test_master_every_strategy_beats_best_response_on_its_family():
    cases = []
    for n in (3, 5, 7):
        g, plan = gp1_plan(n)
        cases.append((pairing_strategy(plan), g, Player.STALLER))
    for d in (2, 3):
        g = generate_necklace("diamond", d)
        parts = [list(range(4 * i, 4 * i + 4)) for i in range(d)]
        cases.append((partition_strategy(g, parts), g, Player.STALLER))
    for m in (3, 5):
        s = bipartite_circulant_strategy(m)
        cases.append((s, s.graph, Player.STALLER))
    cases.append((prism_strategy(), generate_gp(3, 1), Player.STALLER))
    cases.append((eta_strategies()["dominator_first"], generate_eta(), Player.DOMINATOR))
    cases.append((omega_strategies(1)["dominator_first"], generate_omega(1), Player.DOMINATOR))
    cases.append((eta_strategies()["staller"], generate_eta(), Player.STALLER))
    cases.append((omega_strategies(1)["staller"], generate_omega(1), Player.STALLER))
    for strategy, g, first in cases:
        run = validate_strategy(strategy, g, first, adversary="solver_best")
        assert run.passed, (strategy.name, run.losing_line)


def test_window_strategy_wins_restricted_game_on_gp92():
    g = generate_gp(9, 2)
    p = Position.initial(g, Player.DOMINATOR).apply_move(0)
    emb = find_gadget(g, p, kinds=("tau",))
    assert emb is not None
    st = staller_gadget_strategy(emb)
    run = validate_strategy(st, g, Player.DOMINATOR, start=p,
                            adversary="solver_best")
    assert run.passed
