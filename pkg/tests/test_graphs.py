from __future__ import annotations

import networkx as nx
import pytest
from hypothesis import given, settings

from vertexnim import (
    GraphError,
    build_graph,
    connected_component_of,
    remove_zero_vertex,
    sink_components,
    strongly_connected_components,
    validate_playable,
)
from vertexnim.graphs import circuit_order, is_circuit

from conftest import connected_undirected, dg, strongly_connected_digraph, ug


class TestBuildGraph:
    def test_single_looped_vertex(self):
        g = ug({"a": 1}, [("a", "a")])
        assert g.vertices() == ("a",)
        assert g.has_loop("a")

    def test_undirected_edges_deduplicate_symmetrically(self):
        g = ug({"a": 1, "b": 2}, [("a", "b"), ("b", "a")])
        assert g.edges() == [("a", "b")]
        assert g.neighbors("a") == {"b"}
        assert g.neighbors("b") == {"a"}

    def test_dangling_endpoint_rejected(self):
        with pytest.raises(GraphError, match="undeclared"):
            build_graph("directed", [("a", 1)], [("a", "b")])

    def test_duplicate_id_rejected(self):
        with pytest.raises(GraphError, match="duplicate"):
            build_graph("undirected", [("a", 1), ("a", 2)], [])

    def test_negative_weight_rejected(self):
        with pytest.raises(GraphError, match="negative"):
            build_graph("undirected", [("a", -1)], [])

    def test_whitespace_id_rejected(self):
        with pytest.raises(GraphError):
            build_graph("undirected", [("a b", 1)], [])

    def test_zero_weight_allowed_at_build_time(self):
        g = ug({"a": 0, "b": 1}, [("a", "b")])
        assert g.weight("a") == 0


class TestScc:
    def test_two_cycle_is_one_component(self):
        g = dg({"a": 1, "b": 1}, [("a", "b"), ("b", "a")])
        part = strongly_connected_components(g)
        assert part.components == (frozenset({"a", "b"}),)

    def test_single_arc_splits_in_topological_order(self):
        g = dg({"a": 1, "b": 1}, [("a", "b")])
        part = strongly_connected_components(g)
        assert part.components == (frozenset({"a"}), frozenset({"b"}))
        assert part.successors == (frozenset({1}), frozenset())

    def test_cycle_with_feeder(self):
        # a<->b plus c->a: components {a,b} and {c}; {a,b} has no out-arc
        g = dg({"a": 1, "b": 1, "c": 1}, [("a", "b"), ("b", "a"), ("c", "a")])
        part = strongly_connected_components(g)
        assert set(part.components) == {frozenset({"a", "b"}), frozenset({"c"})}
        assert sink_components(part) == [frozenset({"a", "b"})]

    def test_undirected_input_rejected(self):
        with pytest.raises(GraphError):
            strongly_connected_components(ug({"a": 1}, []))

    @settings(max_examples=60, deadline=None)
    @given(strongly_connected_digraph(max_n=6))
    def test_matches_networkx(self, g):
        mine = {frozenset(c) for c in strongly_connected_components(g).components}
        theirs = nx.DiGraph()
        theirs.add_nodes_from(g.vertices())
        theirs.add_edges_from((u, v) for u in g.vertices() for v in g.adj[u])
        assert mine == {frozenset(c) for c in nx.strongly_connected_components(theirs)}

    @settings(max_examples=40, deadline=None)
    @given(strongly_connected_digraph(max_n=6))
    def test_partition_is_topologically_ordered(self, g):
        part = strongly_connected_components(g)
        where = part.component_index()
        for u in g.vertices():
            for v in g.adj[u]:
                assert where[u] <= where[v]


class TestSinkComponents:
    def test_single_component_is_its_own_sink(self):
        g = dg({"a": 1, "b": 1}, [("a", "b"), ("b", "a")])
        part = strongly_connected_components(g)
        assert sink_components(part) == [frozenset({"a", "b"})]

    def test_two_disjoint_cycles_both_returned(self):
        g = dg(
            {"a": 1, "b": 1, "c": 1, "d": 1},
            [("a", "b"), ("b", "a"), ("c", "d"), ("d", "c")],
        )
        sinks = sink_components(strongly_connected_components(g))
        assert set(sinks) == {frozenset({"a", "b"}), frozenset({"c", "d"})}


class TestConnectedComponent:
    def test_isolated_vertex(self):
        g = ug({"a": 1}, [])
        assert connected_component_of(g, "a") == {"a"}

    def test_path_component(self):
        g = ug({"a": 1, "b": 1, "c": 1}, [("a", "b"), ("b", "c")])
        assert connected_component_of(g, "b") == {"a", "b", "c"}

    def test_two_components(self):
        g = ug({"a": 1, "b": 1, "c": 1}, [("a", "b")])
        assert connected_component_of(g, "c") == {"c"}

    def test_unknown_vertex(self):
        with pytest.raises(GraphError):
            connected_component_of(ug({"a": 1}, []), "z")


class TestValidatePlayable:
    def test_directed_cycle_ok(self):
        g = dg({"a": 1, "b": 1, "c": 1}, [("a", "b"), ("b", "c"), ("c", "a")])
        assert validate_playable(g).ok

    def test_directed_path_reports_missing_return(self):
        g = dg({"a": 1, "b": 1}, [("a", "b")])
        report = validate_playable(g)
        assert not report.ok
        assert report.problem == "not strongly connected"
        assert report.witness == ("b", "a")  # no path b -> a

    def test_undirected_two_components(self):
        report = validate_playable(ug({"a": 1, "b": 1}, []))
        assert not report.ok
        assert report.witness is not None

    def test_empty_graph_is_playable(self):
        assert validate_playable(build_graph("undirected", [], [])).ok


class TestRemoveZeroVertex:
    def test_undirected_star_becomes_looped_clique(self):
        g = ug(
            {"v": 1, "x": 1, "y": 1, "z": 1},
            [("v", "x"), ("v", "y"), ("v", "z")],
        )
        g2 = remove_zero_vertex(g, "v")
        assert set(g2.vertices()) == {"x", "y", "z"}
        for a in "xyz":
            assert g2.has_loop(a)
            assert g2.neighbors(a) == {"x", "y", "z"}

    def test_directed_arc_replacement(self):
        g = dg({"p": 1, "v": 1, "s": 1}, [("p", "v"), ("v", "s"), ("s", "p")])
        g2 = remove_zero_vertex(g, "v")
        assert ("p", "s") in g2.edges()
        assert set(g2.vertices()) == {"p", "s"}

    def test_directed_two_cycle_contracts_to_loop(self):
        g = dg({"p": 1, "v": 1}, [("p", "v"), ("v", "p")])
        g2 = remove_zero_vertex(g, "v")
        assert g2.vertices() == ("p",)
        assert g2.has_loop("p")

    def test_loop_on_removed_vertex_is_ignored(self):
        g = ug({"v": 1, "x": 1}, [("v", "v"), ("v", "x")])
        g2 = remove_zero_vertex(g, "v")
        assert g2.vertices() == ("x",)
        assert g2.has_loop("x")

    def test_last_vertex_removal_yields_empty_graph(self):
        g = ug({"a": 1}, [("a", "a")])
        g2 = remove_zero_vertex(g, "a")
        assert g2.is_empty

    def test_unknown_vertex(self):
        with pytest.raises(GraphError):
            remove_zero_vertex(ug({"a": 1}, []), "z")

    @settings(max_examples=60, deadline=None)
    @given(connected_undirected(max_n=6))
    def test_connectivity_preserved_undirected(self, g):
        for v in g.vertices():
            assert validate_playable(remove_zero_vertex(g, v)).ok

    @settings(max_examples=60, deadline=None)
    @given(strongly_connected_digraph(max_n=6))
    def test_strong_connectivity_preserved_directed(self, g):
        for v in g.vertices():
            assert validate_playable(remove_zero_vertex(g, v)).ok

    @settings(max_examples=40, deadline=None)
    @given(strongly_connected_digraph(max_n=6))
    def test_scc_partition_of_survivors_unchanged(self, g):
        before = strongly_connected_components(g)
        for v in g.vertices():
            survivors = {frozenset(c - {v}) for c in before.components} - {frozenset()}
            after = strongly_connected_components(remove_zero_vertex(g, v))
            assert {frozenset(c) for c in after.components} == survivors

    @settings(max_examples=40, deadline=None)
    @given(connected_undirected(max_n=6))
    def test_adjacency_stays_symmetric(self, g):
        for v in g.vertices():
            g2 = remove_zero_vertex(g, v)
            for a in g2.vertices():
                for b in g2.neighbors(a):
                    assert a in g2.neighbors(b)

    @settings(max_examples=30, deadline=None)
    @given(connected_undirected(max_n=5))
    def test_operations_are_pure(self, g):
        snapshot = (dict(g.weights), {v: set(s) for v, s in g.adj.items()})
        for v in g.vertices():
            remove_zero_vertex(g, v)
            connected_component_of(g, v)
            validate_playable(g)
        assert snapshot == (dict(g.weights), {v: set(s) for v, s in g.adj.items()})


class TestCircuitHelpers:
    def test_three_cycle_is_circuit(self):
        g = dg({"a": 2, "b": 2, "c": 2}, [("a", "b"), ("b", "c"), ("c", "a")])
        assert is_circuit(g)
        assert circuit_order(g, "b") == ["b", "c", "a"]

    def test_two_cycle_is_not_circuit(self):
        g = dg({"a": 2, "b": 2}, [("a", "b"), ("b", "a")])
        assert not is_circuit(g)

    def test_looped_cycle_is_not_circuit(self):
        g = dg(
            {"a": 2, "b": 2, "c": 2},
            [("a", "b"), ("b", "c"), ("c", "a"), ("a", "a")],
        )
        assert not is_circuit(g)
