from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vertexnim import GraphError, Outcome, build_graph, lo_labeling, lu_labeling

from conftest import dg, strongly_connected_digraph, ug


class TestLoLabeling:
    def test_single_vertex_is_p(self):
        g = dg({"a": 1}, [("a", "a")])
        assert lo_labeling(g).labels == {"a": Outcome.P}

    def test_even_sink_component_is_n(self):
        g = dg({"a": 1, "b": 1}, [("a", "b"), ("b", "a")])
        lab = lo_labeling(g)
        assert lab.labels == {"a": Outcome.N, "b": Outcome.N}
        assert lab.steps == ((frozenset({"a", "b"}), frozenset()),)

    def test_feeder_into_even_sink(self):
        g = dg({"a": 1, "b": 1, "c": 1}, [("a", "b"), ("b", "a"), ("c", "a")])
        lab = lo_labeling(g)
        assert lab.labels == {"a": Outcome.N, "b": Outcome.N, "c": Outcome.P}

    def test_odd_sink_labels_feeders_n(self):
        g = dg({"a": 1, "b": 1, "c": 1}, [("b", "a"), ("c", "b"), ("a", "a")])
        lab = lo_labeling(g)
        # sink {a} odd -> P, its in-neighbour b -> N, then {c} alone -> P
        assert lab.labels == {"a": Outcome.P, "b": Outcome.N, "c": Outcome.P}
        assert lab.steps[0] == (frozenset({"a"}), frozenset({"b"}))

    def test_empty_graph_rejected(self):
        with pytest.raises(GraphError):
            lo_labeling(build_graph("directed", [], []))

    def test_undirected_rejected(self):
        with pytest.raises(GraphError):
            lo_labeling(ug({"a": 1}, []))

    @settings(max_examples=50, deadline=None)
    @given(strongly_connected_digraph(max_n=6))
    def test_totality_and_partition(self, g):
        lab = lo_labeling(g)
        assert set(lab.labels) == set(g.vertices())
        seen: set[str] = set()
        for s, t in lab.steps:
            assert not (s & seen) and not (t & seen)
            seen |= s | t
        assert seen == set(g.vertices())

    @settings(max_examples=40, deadline=None)
    @given(strongly_connected_digraph(max_n=6), st.integers(0, 10**6))
    def test_sink_choice_does_not_change_labels(self, g, seed):
        rng = random.Random(seed)
        reference = lo_labeling(g).labels
        for _ in range(3):
            shuffled = lo_labeling(g, sink_picker=lambda sinks: rng.choice(sinks))
            assert shuffled.labels == reference

    @settings(max_examples=30, deadline=None)
    @given(strongly_connected_digraph(max_n=6), st.integers(0, 10**6))
    def test_insertion_order_does_not_change_labels(self, g, seed):
        rng = random.Random(seed)
        items = list(g.weights.items())
        edges = [(u, v) for u in g.vertices() for v in g.adj[u]]
        rng.shuffle(items)
        rng.shuffle(edges)
        g2 = build_graph("directed", items, edges)
        assert lo_labeling(g2).labels == lo_labeling(g).labels

    @settings(max_examples=30, deadline=None)
    @given(strongly_connected_digraph(max_n=5), st.integers(0, 10**6))
    def test_relabeling_equivariance(self, g, seed):
        rng = random.Random(seed)
        names = list(g.vertices())
        renamed = list(names)
        rng.shuffle(renamed)
        mapping = dict(zip(names, renamed))
        g2 = build_graph(
            "directed",
            [(mapping[v], g.weight(v)) for v in names],
            [(mapping[u], mapping[v]) for u in names for v in g.adj[u]],
        )
        lab = lo_labeling(g).labels
        lab2 = lo_labeling(g2).labels
        assert all(lab2[mapping[v]] == lab[v] for v in names)


class TestLuLabeling:
    def test_two_vertex_gradient(self):
        g = ug({"a": 2, "b": 3}, [("a", "b")])
        assert lu_labeling(g).labels == {"a": Outcome.P, "b": Outcome.N}

    def test_equal_weights_are_mutual_minima(self):
        g = ug({"a": 2, "b": 2}, [("a", "b")])
        assert lu_labeling(g).labels == {"a": Outcome.P, "b": Outcome.P}

    def test_five_path_two_rounds(self):
        g = ug(
            {"a": 2, "b": 3, "c": 4, "d": 5, "e": 4},
            [("a", "b"), ("b", "c"), ("c", "d"), ("d", "e")],
        )
        lab = lu_labeling(g)
        assert lab.labels == {
            "a": Outcome.P,
            "b": Outcome.N,
            "c": Outcome.P,
            "d": Outcome.N,
            "e": Outcome.P,
        }
        assert lab.steps == (
            (frozenset({"a", "e"}), frozenset({"b", "d"})),
            (frozenset({"c"}), frozenset()),
        )

    def test_loops_rejected(self):
        g = ug({"a": 2}, [("a", "a")])
        with pytest.raises(GraphError, match="loop"):
            lu_labeling(g)

    def test_nonpositive_weight_rejected(self):
        g = ug({"a": 0, "b": 1}, [("a", "b")])
        with pytest.raises(GraphError, match="positive"):
            lu_labeling(g)

    def test_empty_graph_rejected(self):
        with pytest.raises(GraphError):
            lu_labeling(build_graph("undirected", [], []))

    @settings(max_examples=60, deadline=None)
    @given(st.data())
    def test_totality_and_level_property(self, data):
        from conftest import connected_undirected

        g = data.draw(connected_undirected(max_n=7, max_w=5, allow_loops=False))
        lab = lu_labeling(g)
        assert set(lab.labels) == set(g.vertices())
        alive = set(g.vertices())
        for s, t in lab.steps:
            for v in s:
                assert all(
                    g.weight(v) <= g.weight(x) for x in g.adj[v] if x in alive
                ), "P-labeled vertex must be a local minimum of its round"
                assert lab.labels[v] is Outcome.P
            for v in t:
                assert lab.labels[v] is Outcome.N
            alive -= s | t
        assert not alive
