import json

import pytest
from hypothesis import given, strategies as st

from sandpark import (
    DisconnectedGraphError,
    DuplicateVertexError,
    GraphError,
    LoopEdgeError,
    RootedMultigraph,
    TooFewVerticesError,
    UnknownVertexError,
    build_graph,
    graph_from_dict,
    graph_to_dict,
    load_graph,
    make_family,
    FamilySpec,
    save_graph,
)
from conftest import graph_pool, sink_multiedge_pair, triangle, twin_triangles

POOL = graph_pool()


class TestBuild:
    def test_triangle_shape(self):
        g = triangle()
        assert g.vertices == ("0", "v1", "v2")
        assert g.sink == "0"
        assert g.nonsink == ("v1", "v2")
        assert g.deg("0") == 2
        assert g.deg("v1") == 2
        assert g.multiplicity("v1", "v2") == 1
        assert g.multiplicity("v1", "v1") == 0

    def test_duplicate_edges_sum(self):
        g = build_graph(["0", "a"], "0", [("0", "a", 1), ("a", "0", 2)])
        assert g.multiplicity("0", "a") == 3
        assert g.edge_total == 3

    def test_loop_rejected(self):
        with pytest.raises(LoopEdgeError):
            build_graph(["0", "a"], "0", [("a", "a", 1), ("0", "a", 1)])

    def test_duplicate_vertex_rejected(self):
        with pytest.raises(DuplicateVertexError):
            build_graph(["0", "a", "a"], "0", [("0", "a", 1)])

    def test_unknown_endpoint_rejected(self):
        with pytest.raises(UnknownVertexError):
            build_graph(["0", "a"], "0", [("0", "b", 1)])

    def test_unknown_sink_rejected(self):
        with pytest.raises(UnknownVertexError):
            build_graph(["0", "a"], "z", [("0", "a", 1)])

    def test_too_few_vertices(self):
        with pytest.raises(TooFewVerticesError):
            build_graph(["0"], "0", [])

    def test_disconnected_rejected(self):
        with pytest.raises(DisconnectedGraphError):
            build_graph(["0", "a", "b"], "0", [("0", "a", 1)])

    def test_bad_multiplicity(self):
        with pytest.raises(GraphError):
            build_graph(["0", "a"], "0", [("0", "a", 0)])
        with pytest.raises(GraphError):
            build_graph(["0", "a"], "0", [("0", "a", True)])

    def test_multiedge(self):
        g = sink_multiedge_pair()
        assert g.multiplicity("0", "v1") == 2
        assert g.multiplicity("0", "v2") == 3
        assert g.deg("v2") == 4
        assert g.sink_mults == (2, 3)


class TestDegrees:
    def test_handshake(self):
        for label, g in POOL:
            assert sum(g.deg(v) for v in g.vertices) == 2 * g.edge_total, label

    def test_deg_within(self):
        g = make_family(FamilySpec("complete", n=3))
        v = g.nonsink[0]
        assert g.deg_within(v, set(g.nonsink)) == 2
        assert g.deg_within(v, {v}) == 0
        assert g.deg_within(v, set(g.vertices)) == g.deg(v)

    @given(st.data())
    def test_deg_within_additive_over_complement(self, data):
        label, g = data.draw(st.sampled_from(POOL))
        v = data.draw(st.sampled_from(g.nonsink))
        subset = {
            w for w in g.vertices
            if w != v and data.draw(st.booleans())
        }
        rest = set(g.vertices) - subset
        assert g.deg_within(v, subset) + g.deg_within(v, rest) == g.deg(v)


class TestInducedAndDelete:
    def test_induced_keeps_declaration_order(self):
        g = make_family(FamilySpec("wheel", n=5))
        sub = g.induced_with_sink(["3", "1"])
        assert sub.vertices == ("0", "1", "3")
        assert sub.multiplicity("0", "1") == 1
        assert sub.multiplicity("1", "3") == 0

    def test_induced_disconnected_rejected(self):
        g = make_family(FamilySpec("bipartite", p=2, q=2))
        with pytest.raises(DisconnectedGraphError):
            g.induced_with_sink(["p2"])

    def test_induced_rejects_sink_member(self):
        g = triangle()
        with pytest.raises(GraphError):
            g.induced_with_sink(["0", "v1"])

    def test_delete_vertex(self):
        g = make_family(FamilySpec("complete", n=4))
        g2 = g.delete_vertex(g.nonsink[0])
        assert len(g2.vertices) == 4
        for a in g2.vertices:
            for b in g2.vertices:
                if a != b:
                    assert g2.multiplicity(a, b) == 1

    def test_delete_sink_rejected(self):
        with pytest.raises(GraphError):
            triangle().delete_vertex("0")

    def test_delete_disconnecting_rejected(self):
        g = build_graph(["0", "a", "b"], "0", [("0", "a", 1), ("a", "b", 1)])
        with pytest.raises(DisconnectedGraphError):
            g.delete_vertex("a")

    def test_delete_below_minimum_rejected(self):
        g = build_graph(["0", "a"], "0", [("0", "a", 1)])
        with pytest.raises(TooFewVerticesError):
            g.delete_vertex("a")


class TestSinkCut:
    def test_twin_triangles_cut(self):
        assert twin_triangles().sink_is_cut_vertex() is True

    def test_complete_not_cut(self):
        assert make_family(FamilySpec("complete", n=4)).sink_is_cut_vertex() is False

    def test_single_nonsink_not_cut(self):
        g = build_graph(["0", "a"], "0", [("0", "a", 1)])
        assert g.sink_is_cut_vertex() is False


class TestSpanningTrees:
    def test_cayley(self):
        # complete graph on n+1 vertices has (n+1)^(n-1) spanning trees
        expected = {2: 3, 3: 16, 4: 125, 5: 1296, 6: 16807}
        for n, count in expected.items():
            g = make_family(FamilySpec("complete", n=n))
            assert g.spanning_tree_count() == count

    def test_single_multiedge(self):
        for m in (1, 2, 5):
            g = build_graph(["0", "a"], "0", [("0", "a", m)])
            assert g.spanning_tree_count() == m

    def test_cycle(self):
        g = build_graph(["0", "a", "b", "c"], "0",
                        [("0", "a", 1), ("a", "b", 1), ("b", "c", 1), ("c", "0", 1)])
        assert g.spanning_tree_count() == 4

    def test_multiedge_pair(self):
        # trees pick one edge per parallel class: 2*3 + 2*1 + 3*1 = 11
        assert sink_multiedge_pair().spanning_tree_count() == 11

    def test_positive_on_pool(self):
        for label, g in POOL:
            assert g.spanning_tree_count() >= 1, label


class TestJson:
    def test_round_trip(self, tmp_path):
        for label, g in POOL:
            path = tmp_path / "g.json"
            save_graph(g, path)
            assert load_graph(path) == g, label

    def test_dict_shape(self):
        d = graph_to_dict(triangle())
        assert d["vertices"] == ["0", "v1", "v2"]
        assert d["sink"] == "0"
        assert ["v1", "v2", 1] in d["edges"]

    def test_edges_require_multiplicity(self):
        d = {"vertices": ["0", "a"], "sink": "0", "edges": [["0", "a"]]}
        with pytest.raises(GraphError):
            graph_from_dict(d)

    def test_missing_key_rejected(self):
        with pytest.raises(GraphError):
            graph_from_dict({"vertices": ["0", "a"], "edges": []})

    def test_file_contents_are_json(self, tmp_path):
        path = tmp_path / "g.json"
        save_graph(triangle(), path)
        parsed = json.loads(path.read_text())
        assert parsed["sink"] == "0"


class TestValueSemantics:
    def test_equality_and_hash(self):
        assert triangle() == triangle()
        assert hash(triangle()) == hash(triangle())

    def test_frozen(self):
        g = triangle()
        with pytest.raises(AttributeError):
            g.sink = "v1"

    def test_is_dataclass_instance(self):
        assert isinstance(triangle(), RootedMultigraph)
