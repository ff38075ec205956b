from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vertexnim import (
    Convention,
    IllegalMoveError,
    InvalidPositionError,
    Move,
    Ruleset,
    TerminalStatus,
    UnsupportedRulesError,
    apply_move,
    build_graph,
    legal_moves,
    make_position,
    terminal_status,
    validate_playable,
)
from vertexnim.rules import apply_move_unchecked

from conftest import connected_undirected, dg, strongly_connected_digraph, ug


class TestMakePosition:
    def test_vertexnim_rejects_zero_weight(self):
        g = ug({"a": 0, "b": 1}, [("a", "b")])
        with pytest.raises(InvalidPositionError, match="positive"):
            make_position(g, "a", "vertexnim")

    def test_vertexnim_rejects_disconnected(self):
        g = ug({"a": 1, "b": 1}, [])
        with pytest.raises(InvalidPositionError, match="not connected"):
            make_position(g, "a", "vertexnim")

    def test_stockman_accepts_zero_weights(self):
        g = ug({"a": 0, "b": 1}, [("a", "b")])
        pos = make_position(g, "b", "stockman")
        assert pos.graph.weight("a") == 0

    def test_misere_stockman_rejected(self):
        g = ug({"a": 1}, [("a", "a")])
        with pytest.raises(UnsupportedRulesError):
            make_position(g, "a", "stockman", "misere")

    def test_unknown_start_rejected(self):
        g = ug({"a": 1}, [("a", "a")])
        with pytest.raises(InvalidPositionError, match="start"):
            make_position(g, "z", "vertexnim")


class TestLegalMoves:
    def test_single_looped_vertex_weight_two(self):
        g = ug({"a": 2}, [("a", "a")])
        pos = make_position(g, "a", "vertexnim")
        assert set(legal_moves(pos)) == {Move(1, "a"), Move(0, None)}

    def test_weight_one_must_exit(self):
        g = ug({"a": 1, "b": 2}, [("a", "b")])
        pos = make_position(g, "a", "vertexnim")
        assert legal_moves(pos) == [Move(0, "b")]

    def test_stockman_can_step_onto_zero(self):
        g = ug({"a": 1, "b": 0}, [("a", "b")])
        pos = make_position(g, "a", "stockman")
        assert legal_moves(pos) == [Move(0, "b")]

    def test_zero_reduction_cannot_stay_on_deleted_vertex(self):
        g = ug({"a": 2, "b": 1}, [("a", "a"), ("a", "b")])
        pos = make_position(g, "a", "vertexnim")
        moves = legal_moves(pos)
        assert Move(0, "b") in moves
        assert Move(0, "a") not in moves
        assert Move(1, "a") in moves  # staying via the loop needs weight left

    def test_directed_destinations_follow_arcs(self):
        g = dg({"a": 2, "b": 1, "c": 1}, [("a", "b"), ("b", "c"), ("c", "a")])
        pos = make_position(g, "a", "vertexnim")
        assert set(legal_moves(pos)) == {Move(0, "b"), Move(1, "b")}

    def test_terminal_position_has_no_moves(self):
        g = ug({"a": 0, "b": 1}, [("a", "b")])
        pos = make_position(g, "a", "stockman")
        with pytest.raises(IllegalMoveError):
            legal_moves(pos)


class TestApplyMove:
    def test_vertexnim_zero_triggers_clique_transform(self):
        # triangle a-b-c weights (1,1,2): playing (0, b) from a leaves b-c
        # with loops on both, token on b
        g = ug({"a": 1, "b": 1, "c": 2}, [("a", "b"), ("b", "c"), ("a", "c")])
        pos = make_position(g, "a", "vertexnim")
        nxt = apply_move(pos, Move(0, "b"))
        assert set(nxt.graph.vertices()) == {"b", "c"}
        assert nxt.graph.has_loop("b") and nxt.graph.has_loop("c")
        assert "c" in nxt.graph.neighbors("b")
        assert nxt.current == "b"

    def test_stockman_keeps_graph_intact(self):
        g = ug({"a": 2, "b": 1}, [("a", "b")])
        pos = make_position(g, "a", "stockman")
        nxt = apply_move(pos, Move(1, "b"))
        assert nxt.graph.weights == {"a": 1, "b": 1}
        assert nxt.graph.edges() == [("a", "b")]
        assert nxt.current == "b"

    def test_ending_move_empties_the_board(self):
        g = ug({"a": 3}, [("a", "a")])
        pos = make_position(g, "a", "vertexnim")
        nxt = apply_move(pos, Move(0, None))
        assert nxt.graph.is_empty
        assert nxt.current is None
        assert terminal_status(nxt) is TerminalStatus.PREVIOUS_MOVER_WINS

    def test_bad_reduction_rejected(self):
        g = ug({"a": 2, "b": 1}, [("a", "b")])
        pos = make_position(g, "a", "vertexnim")
        with pytest.raises(IllegalMoveError, match="bad reduction"):
            apply_move(pos, Move(2, "b"))

    def test_bad_destination_rejected(self):
        g = ug({"a": 2, "b": 1, "c": 1}, [("a", "b"), ("b", "c")])
        pos = make_position(g, "a", "vertexnim")
        with pytest.raises(IllegalMoveError, match="bad destination"):
            apply_move(pos, Move(1, "c"))

    def test_deleted_vertex_destination_rejected(self):
        g = ug({"a": 2, "b": 1}, [("a", "a"), ("a", "b")])
        pos = make_position(g, "a", "vertexnim")
        with pytest.raises(IllegalMoveError, match="deleted-vertex"):
            apply_move(pos, Move(0, "a"))

    def test_unlooped_stay_rejected(self):
        g = ug({"a": 3, "b": 1}, [("a", "b")])
        pos = make_position(g, "a", "vertexnim")
        with pytest.raises(IllegalMoveError, match="no loop"):
            apply_move(pos, Move(1, "a"))


class TestTerminalStatus:
    def test_empty_graph_normal(self):
        g = build_graph("undirected", [], [])
        pos = make_position(g, None, "vertexnim", "normal")
        assert terminal_status(pos) is TerminalStatus.PREVIOUS_MOVER_WINS

    def test_empty_graph_misere(self):
        g = build_graph("undirected", [], [])
        pos = make_position(g, None, "vertexnim", "misere")
        assert terminal_status(pos) is TerminalStatus.MOVER_TO_ACT_WINS

    def test_stockman_zero_current_blocks_mover(self):
        g = ug({"a": 0, "b": 2}, [("a", "b")])
        pos = make_position(g, "a", "stockman")
        assert terminal_status(pos) is TerminalStatus.PREVIOUS_MOVER_WINS


def _random_playout(pos, rng):
    total = pos.graph.total_weight()
    moves_played = 0
    while terminal_status(pos) is TerminalStatus.NONTERMINAL:
        moves = legal_moves(pos)
        if not moves:  # stuck Stockman mover
            break
        before = pos.graph.total_weight()
        pos = apply_move_unchecked(pos, rng.choice(moves))
        assert pos.graph.total_weight() < before
        if pos.ruleset is Ruleset.VERTEXNIM and not pos.graph.is_empty:
            assert validate_playable(pos.graph).ok
        moves_played += 1
        assert moves_played <= total
    return pos


class TestPlayoutProperties:
    @settings(max_examples=40, deadline=None)
    @given(connected_undirected(max_n=5, max_w=3), st.integers(0, 10**6))
    def test_undirected_playouts_terminate_validly(self, g, seed):
        rng = random.Random(seed)
        start = rng.choice(g.vertices())
        _random_playout(make_position(g, start, "vertexnim"), rng)

    @settings(max_examples=40, deadline=None)
    @given(strongly_connected_digraph(max_n=5, max_w=3), st.integers(0, 10**6))
    def test_directed_playouts_terminate_validly(self, g, seed):
        rng = random.Random(seed)
        start = rng.choice(g.vertices())
        _random_playout(make_position(g, start, "vertexnim"), rng)

    @settings(max_examples=40, deadline=None)
    @given(connected_undirected(max_n=5, max_w=3), st.integers(0, 10**6))
    def test_vertexnim_nonterminal_always_has_a_move(self, g, seed):
        rng = random.Random(seed)
        pos = make_position(g, rng.choice(g.vertices()), "vertexnim")
        while terminal_status(pos) is TerminalStatus.NONTERMINAL:
            moves = legal_moves(pos)
            assert moves
            pos = apply_move_unchecked(pos, rng.choice(moves))

    @settings(max_examples=40, deadline=None)
    @given(connected_undirected(max_n=5, max_w=3), st.integers(0, 10**6))
    def test_moves_change_only_what_they_should(self, g, seed):
        rng = random.Random(seed)
        u = rng.choice(g.vertices())
        pos = make_position(g, u, "vertexnim")
        for m in legal_moves(pos):
            nxt = apply_move(pos, m)
            assert nxt.current == m.destination
            if m.reduce_to > 0:
                assert nxt.graph.adj is pos.graph.adj  # structure untouched
                diff = {
                    v
                    for v in pos.graph.vertices()
                    if nxt.graph.weight(v) != pos.graph.weight(v)
                }
                assert diff <= {u}
            else:
                assert u not in nxt.graph.weights
                for v in nxt.graph.vertices():
                    assert nxt.graph.weight(v) == pos.graph.weight(v)
