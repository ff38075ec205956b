from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vertexnim import (
    Outcome,
    TheoremOutOfScopeError,
    make_position,
    oracle_solve,
    solve_directed_all_loops,
)

from conftest import dg, strongly_connected_digraph


def loop_all(weights, arcs):
    return dg(weights, arcs + [(v, v) for v in weights])


class TestDirectedAllLoops:
    def test_all_ones_odd_cycle_wins(self):
        g = loop_all({"a": 1, "b": 1, "c": 1}, [("a", "b"), ("b", "c"), ("c", "a")])
        pos = make_position(g, "a", "vertexnim")
        assert solve_directed_all_loops(pos) is Outcome.N

    def test_all_ones_even_cycle_loses(self):
        g = loop_all(
            {"a": 1, "b": 1, "c": 1, "d": 1},
            [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")],
        )
        pos = make_position(g, "a", "vertexnim")
        assert solve_directed_all_loops(pos) is Outcome.P

    def test_heavy_mover_wins_when_ones_do_not_cover(self):
        g = loop_all(
            {"a": 2, "b": 3, "c": 1}, [("a", "b"), ("b", "c"), ("c", "a")]
        )
        pos = make_position(g, "a", "vertexnim")
        assert solve_directed_all_loops(pos) is Outcome.N

    def test_weight_one_mover_decided_by_sink_peeling(self, triangle_all_loops):
        # weight-1 subgraph {a, b} with arc a->b: sink {b} is P, feeder a is N
        pos = make_position(triangle_all_loops, "a", "vertexnim")
        assert solve_directed_all_loops(pos) is Outcome.N
        pos_b = make_position(triangle_all_loops, "b", "vertexnim")
        assert solve_directed_all_loops(pos_b) is Outcome.P

    def test_missing_loop_rejected(self):
        g = dg(
            {"a": 1, "b": 1},
            [("a", "b"), ("b", "a"), ("a", "a")],
        )
        pos = make_position(g, "a", "vertexnim")
        with pytest.raises(TheoremOutOfScopeError, match="loop"):
            solve_directed_all_loops(pos)

    def test_wrong_orientation_rejected(self):
        from conftest import ug

        g = ug({"a": 1}, [("a", "a")])
        pos = make_position(g, "a", "vertexnim")
        with pytest.raises(TheoremOutOfScopeError, match="directed"):
            solve_directed_all_loops(pos)

    @settings(max_examples=60, deadline=None)
    @given(st.data())
    def test_matches_oracle_on_random_instances(self, data):
        g = data.draw(strongly_connected_digraph(max_n=4, max_w=3, all_loops=True))
        start = data.draw(st.sampled_from(g.vertices()))
        pos = make_position(g, start, "vertexnim")
        assert solve_directed_all_loops(pos) == oracle_solve(pos)
