import json

import pytest

from mbtd.graphs import (FormatError, Graph, GraphError, StructureError,
                         classify_structure, complete_graph, cycle_graph,
                         enumerate_triangles, find_factor, from_graph6,
                         from_json_edges, generate_bipartite_circulant,
                         generate_eta, generate_gp, generate_necklace,
                         parse_graph, serialize, star_graph, to_graph6,
                         to_json_edges, truncate, validate)

from oracles import girth, isomorphic, raw_triangles, two_coloring


def test_parse_json_edges_c4():
    g = parse_graph('{"n":4,"edges":[[0,1],[1,2],[2,3],[3,0]]}')
    assert g.n == 4 and g.edge_count() == 4


def test_parse_json_edges_k1():
    g = parse_graph('{"n":1,"edges":[]}')
    assert g.n == 1 and g.edge_count() == 0


def test_parse_rejects_malformed():
    with pytest.raises(FormatError):
        parse_graph("not json")
    with pytest.raises(GraphError):
        parse_graph('{"n":2,"edges":[[0,0]]}')            # self-loop
    with pytest.raises(GraphError):
        parse_graph('{"n":2,"edges":[[0,1],[1,0]]}')      # duplicate edge
    with pytest.raises(GraphError):
        parse_graph('{"n":2,"edges":[[0,5]]}')            # out of range


def test_graph6_k4_matches_independent_decoder():
    # hand/networkx-decoded value for K4
    assert to_graph6(complete_graph(4)) == "C~"
    g = from_graph6("C~")
    assert g.n == 4 and g.edge_count() == 6


def test_graph6_round_trip_against_networkx():
    nx = pytest.importorskip("networkx")
    for g in (generate_gp(5, 2), generate_necklace("claw", 3), cycle_graph(7)):
        s = to_graph6(g)
        h = nx.from_graph6_bytes(s.encode())
        assert h.number_of_nodes() == g.n
        assert {frozenset(e) for e in h.edges()} == {frozenset(e) for e in g.edges()}
        assert from_graph6(s) == Graph(g.n, g.edges())


def test_serialize_parse_round_trip_both_formats():
    for g in (generate_gp(6, 2), generate_necklace("diamond", 3), generate_eta()):
        again = parse_graph(serialize(g, "json-edges"), "json-edges")
        assert again.adjacency == g.adjacency
        again6 = parse_graph(serialize(g, "graph6"), "graph6")
        assert again6.adjacency == g.adjacency


def test_json_edges_byte_stable():
    g = generate_gp(4, 1)
    assert to_json_edges(g) == to_json_edges(Graph(g.n, list(reversed(g.edges())), g.label_map()))
    obj = json.loads(to_json_edges(g))
    assert obj["edges"] == sorted(obj["edges"])


def test_gp_petersen_counts_and_girth():
    g = generate_gp(5, 2)
    assert g.n == 10 and g.edge_count() == 15
    assert all(g.degree(v) == 3 for v in range(g.n))
    assert girth(g) == 5


def test_gp_9_2_counts():
    g = generate_gp(9, 2)
    assert g.n == 18 and g.edge_count() == 27


def test_gp_3_1_is_triangular_prism():
    k3k2 = Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5),
                     (0, 3), (1, 4), (2, 5)])
    assert isomorphic(generate_gp(3, 1), k3k2)


def test_gp_regularity_sweep():
    for n in range(3, 31):
        for k in range(1, (n - 1) // 2 + 1):
            if 2 * k >= n:
                continue
            g = generate_gp(n, k)
            assert g.n == 2 * n and g.edge_count() == 3 * n
            assert all(g.degree(v) == 3 for v in range(g.n))


def test_gp_rejects_bad_parameters():
    for n, k in ((2, 1), (4, 2), (5, 0), (6, 3)):
        with pytest.raises(GraphError):
            generate_gp(n, k)


def test_diamond_necklace():
    g = generate_necklace("diamond", 2)
    assert g.n == 8 and g.edge_count() == 12
    assert validate(g) == {"cubic": True, "connected": True, "bipartite": False}
    assert find_factor(g, "diamond") is not None


def test_claw_necklace_two_is_the_cross_linked_graph():
    g = generate_necklace("claw", 2)
    assert g.n == 8 and g.edge_count() == 12
    assert validate(g)["cubic"] and validate(g)["connected"]
    # the two quoted 4-sets each induce a 4-cycle
    for names in (("x1", "t1", "y1", "y2"), ("z1", "z2", "t2", "x2")):
        part = [g.vertex(x) for x in names]
        sub = g.induced(part)
        assert sub.edge_count() == 4 and all(sub.degree(v) == 2 for v in range(4))


def test_claw_necklace_three():
    g = generate_necklace("claw", 3)
    assert g.n == 12
    assert validate(g) == {"cubic": True, "connected": True, "bipartite": False}
    assert find_factor(g, "claw") is not None


def test_necklace_rejects_small_counts():
    with pytest.raises(GraphError):
        generate_necklace("diamond", 1)
    with pytest.raises(GraphError):
        generate_necklace("claw", 1)


def test_truncate_k4():
    g = truncate(complete_graph(4))
    assert g.n == 12 and g.edge_count() == 18
    cert = find_factor(g, "triangle")
    assert cert is not None and cert.validate(g)


def test_truncate_k33_and_gp41():
    k33 = generate_bipartite_circulant(3)
    t = truncate(k33)
    assert t.n == 18 and validate(t)["cubic"]
    t2 = truncate(generate_gp(4, 1))
    assert t2.n == 24 and validate(t2)["cubic"]
    cert = find_factor(t2, "triangle")
    assert cert is not None and len(cert.parts) == 8


def test_truncate_rejects_noncubic():
    with pytest.raises(GraphError):
        truncate(cycle_graph(5))


def test_bipartite_circulant():
    assert isomorphic(generate_bipartite_circulant(3),
                      Graph(6, [(i, 3 + j) for i in range(3) for j in range(3)]))
    g5 = generate_bipartite_circulant(5)
    assert g5.n == 10 and g5.edge_count() == 15
    assert two_coloring(g5) is not None
    assert girth(generate_bipartite_circulant(4)) == 4
    with pytest.raises(GraphError):
        generate_bipartite_circulant(2)


def test_eta_structure():
    g = generate_eta()
    assert g.n == 18 and g.edge_count() == 27
    assert validate(g) == {"cubic": True, "connected": True, "bipartite": False}
    rep = classify_structure(g)
    assert len(rep.triangles) == 2 and len(rep.diamonds) == 3


def test_omega_sizes():
    from mbtd.graphs import generate_omega
    assert generate_omega(1).n == 14
    assert generate_omega(3).n == 22
    for m in (1, 2, 3):
        g = generate_omega(m)
        assert validate(g) == {"cubic": True, "connected": True, "bipartite": False}
    with pytest.raises(GraphError):
        generate_omega(0)


def test_validate_flags():
    assert validate(generate_gp(7, 2)) == {"cubic": True, "connected": True,
                                           "bipartite": False}
    assert validate(cycle_graph(4))["cubic"] is False
    two_k4 = Graph(8, complete_graph(4).edges() +
                   [(u + 4, v + 4) for u, v in complete_graph(4).edges()])
    flags = validate(two_k4)
    assert flags["cubic"] and not flags["connected"]


def test_classify_structure_counts():
    rep = classify_structure(truncate(complete_graph(4)))
    assert (rep.t1, rep.t2, rep.t3, rep.k1, rep.k2) == (0, 12, 0, 0, 4)
    rep = classify_structure(generate_necklace("diamond", 2))
    # diamond centers sit in two triangles, tips in one
    assert (rep.t1, rep.t2, rep.t3, rep.k1, rep.k2) == (4, 4, 0, 2, 0)
    assert rep.triangles == ()  # both raw triangles live inside diamonds
    rep = classify_structure(generate_gp(5, 2))
    assert (rep.t1, rep.t2, rep.t3) == (0, 0, 10)


def test_classify_structure_matches_raw_triangle_oracle():
    for g in (generate_gp(6, 2), generate_eta(), generate_necklace("diamond", 3),
              truncate(complete_graph(4))):
        rep = classify_structure(g)
        raw = raw_triangles(g)
        assert sorted(enumerate_triangles(g)) == sorted(raw)
        counts = [sum(1 for t in raw if v in t) for v in range(g.n)]
        assert rep.t1 == sum(1 for c in counts if c == 2)
        assert rep.t2 == sum(1 for c in counts if c == 1)
        assert rep.t3 == sum(1 for c in counts if c == 0)


def test_classify_structure_relations_on_generated_family():
    from mbtd.graphs import generate_omega
    graphs = [generate_gp(n, k) for n in range(3, 12) for k in (1, 2) if 2 * k < n]
    graphs += [generate_necklace("diamond", d) for d in (2, 3, 4)]
    graphs += [generate_necklace("claw", c) for c in (2, 3, 4, 5)]
    graphs += [generate_bipartite_circulant(m) for m in range(3, 8)]
    graphs += [generate_eta(), generate_omega(1), generate_omega(2)]
    graphs += [truncate(complete_graph(4)), truncate(generate_gp(4, 1))]
    for g in graphs:
        if g.n < 6:
            continue
        rep = classify_structure(g)
        assert rep.t1 + rep.t2 + rep.t3 == g.n
        assert rep.t1 == 2 * rep.k1
        assert rep.t2 == rep.t1 + 3 * rep.k2
        diamond_sets = [set(d) for d in rep.diamonds]
        for tri in rep.triangles:
            assert not any(set(tri) <= d for d in diamond_sets)


def test_classify_structure_raises_on_k4_component():
    two_k4 = Graph(8, complete_graph(4).edges() +
                   [(u + 4, v + 4) for u, v in complete_graph(4).edges()])
    with pytest.raises(StructureError):
        classify_structure(two_k4)


def test_find_factor_definitive_none():
    assert find_factor(generate_gp(6, 2), "triangle") is None
    assert find_factor(generate_gp(5, 2), "claw") is None  # 10 % 4 != 0
    g = generate_necklace("diamond", 3)
    cert = find_factor(g, "diamond")
    assert cert is not None and len(cert.parts) == 3 and cert.validate(g)


def test_claw_factor_centers():
    g = generate_necklace("claw", 4)
    cert = find_factor(g, "claw")
    assert cert is not None and len(cert.parts) == 4 and cert.validate(g)
    centers = {g.vertex(f"t{i}") for i in range(1, 5)}
    for part in cert.parts:
        assert len(centers & set(part)) == 1


def test_labels_round_trip():
    g = generate_gp(3, 1)
    assert g.vertex("u0") == 0 and g.vertex("v2") == 5
    obj = json.loads(to_json_edges(g))
    assert obj["labels"]["0"] == "u0"
    again = from_json_edges(to_json_edges(g))
    assert again.label_map() == g.label_map()


def test_induced_and_relabeled():
    g = generate_gp(4, 1)
    sub = g.induced([0, 1, 4, 5])
    assert sub.n == 4 and sub.edge_count() == 4  # a 4-cycle slice
    perm = list(reversed(range(g.n)))
    h = g.relabeled(perm)
    assert sorted(h.degree(v) for v in range(h.n)) == sorted(g.degree(v) for v in range(g.n))


def test_star_graph_shape():
    g = star_graph(3)
    assert g.n == 4 and g.degree(0) == 3
    assert all(g.degree(v) == 1 for v in range(1, 4))
