"""Move legality, move application and terminal detection.

Two rulesets share the same remove-then-move turn structure:

* ``vertexnim`` — a vertex whose weight reaches zero is deleted from the
  graph; undirected deletions clique the neighbourhood and add loops,
  directed deletions contract arcs through the deleted vertex.  The game
  ends when the graph is empty.
* ``stockman`` — zero-weight vertices persist and a player whose current
  vertex holds weight zero cannot move and loses.

Conventions: ``normal`` (last mover wins) and ``misere`` (last mover
loses).  Misere Stockman play has no supported theory and is rejected at
position construction.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import IllegalMoveError, InvalidPositionError, UnsupportedRulesError
from .graphs import GameGraph, VertexId, remove_zero_vertex, validate_playable


class Ruleset(str, enum.Enum):
    VERTEXNIM = "vertexnim"
    STOCKMAN = "stockman"


class Convention(str, enum.Enum):
    NORMAL = "normal"
    MISERE = "misere"


#: Destination marker for the move that empties the final vertex.
END_OF_GAME = None


@dataclass(frozen=True, order=True)
class Move:
    """Set the current vertex's weight to ``reduce_to`` and go to ``destination``.

    ``destination is None`` means the move empties the last vertex and ends
    the game.
    """

    reduce_to: int
    destination: VertexId | None

    def __str__(self) -> str:
        dest = "end" if self.destination is None else self.destination
        return f"reduce to {self.reduce_to}, go {dest}"


@dataclass(frozen=True)
class Position:
    """A graph, the current vertex, and the rules in force.

    Outcomes are always stated for the player about to move.  Use
    :func:`make_position` to get rule validation.
    """

    graph: GameGraph
    current: VertexId | None
    ruleset: Ruleset
    convention: Convention


def make_position(
    graph: GameGraph,
    current: VertexId | None,
    ruleset: Ruleset | str,
    convention: Convention | str = Convention.NORMAL,
) -> Position:
    """Validate and build a position.

    vertexnim requires strictly positive weights and a playable graph
    (connected / strongly connected).  Stockman accepts zero weights and is
    refused under the misere convention.
    """
    ruleset = Ruleset(ruleset)
    convention = Convention(convention)
    if ruleset is Ruleset.STOCKMAN and convention is Convention.MISERE:
        raise UnsupportedRulesError("misere Stockman play is not supported")
    if graph.is_empty:
        if current is not None:
            raise InvalidPositionError("empty graph cannot have a current vertex")
        return Position(graph, None, ruleset, convention)
    if current not in graph.weights:
        raise InvalidPositionError(f"start vertex {current!r} is not in the graph")
    if ruleset is Ruleset.VERTEXNIM:
        bad = [v for v, w in graph.weights.items() if w < 1]
        if bad:
            raise InvalidPositionError(
                f"vertexnim requires positive weights; offending vertices: {bad}"
            )
        report = validate_playable(graph)
        if not report.ok:
            raise InvalidPositionError(
                f"graph is {report.problem}; witness pair {report.witness}"
            )
    return Position(graph, current, ruleset, convention)


class TerminalStatus(enum.Enum):
    NONTERMINAL = "nonterminal"
    PREVIOUS_MOVER_WINS = "previous-mover-wins"
    MOVER_TO_ACT_WINS = "mover-to-act-wins"


def terminal_status(pos: Position) -> TerminalStatus:
    """Classify a position without enumerating moves.

    vertexnim ends on the empty graph; normal play awards the win to
    whoever just moved, misere reverses it.  Stockman ends when the current
    vertex holds weight zero: the player to act is stuck and loses.
    """
    if pos.ruleset is Ruleset.VERTEXNIM:
        if not pos.graph.is_empty:
            return TerminalStatus.NONTERMINAL
        if pos.convention is Convention.NORMAL:
            return TerminalStatus.PREVIOUS_MOVER_WINS
        return TerminalStatus.MOVER_TO_ACT_WINS
    # Stockman: misere is rejected upstream, so normal scoring applies.
    assert pos.current is not None
    if pos.graph.weight(pos.current) == 0:
        return TerminalStatus.PREVIOUS_MOVER_WINS
    return TerminalStatus.NONTERMINAL


def legal_moves(pos: Position) -> list[Move]:
    """All legal moves, sorted by (reduce_to, destination), end marker last.

    vertexnim: reductions to k >= 1 keep the vertex, so any out-neighbour
    (including the vertex itself via a loop) is a destination; reduction to
    0 deletes the vertex first, so the destinations are the pre-removal
    neighbours other than the vertex itself, or the end-of-game marker when
    it was the last vertex.  Stockman: the graph never changes, so every
    reduction pairs with every neighbour.
    """
    status = terminal_status(pos)
    if status is not TerminalStatus.NONTERMINAL:
        raise IllegalMoveError("no moves from a terminal position")
    g = pos.graph
    u = pos.current
    assert u is not None
    w = g.weight(u)
    moves: list[Move] = []
    if pos.ruleset is Ruleset.VERTEXNIM:
        if g.vertex_count == 1:
            moves.append(Move(0, END_OF_GAME))
        else:
            for dest in sorted(g.neighbors(u) - {u}):
                moves.append(Move(0, dest))
        stay_or_go = sorted(g.neighbors(u))
        for k in range(1, w):
            for dest in stay_or_go:
                moves.append(Move(k, dest))
    else:
        dests = sorted(g.neighbors(u))
        for k in range(0, w):
            for dest in dests:
                moves.append(Move(k, dest))
    moves.sort(key=lambda m: (m.reduce_to, m.destination is None, m.destination or ""))
    return moves


def apply_move(pos: Position, move: Move) -> Position:
    """Apply a validated move and return the successor position."""
    _validate_move(pos, move)
    return apply_move_unchecked(pos, move)


def apply_move_unchecked(pos: Position, move: Move) -> Position:
    """Apply a move known to be legal (used on generated move lists)."""
    g = pos.graph
    u = pos.current
    assert u is not None
    if pos.ruleset is Ruleset.VERTEXNIM and move.reduce_to == 0:
        g2 = remove_zero_vertex(g, u)
        return Position(g2, move.destination, pos.ruleset, pos.convention)
    g2 = g.with_weight(u, move.reduce_to)
    return Position(g2, move.destination, pos.ruleset, pos.convention)


def _validate_move(pos: Position, move: Move) -> None:
    status = terminal_status(pos)
    if status is not TerminalStatus.NONTERMINAL:
        raise IllegalMoveError("no moves from a terminal position")
    g = pos.graph
    u = pos.current
    assert u is not None
    w = g.weight(u)
    if not isinstance(move.reduce_to, int) or not (0 <= move.reduce_to < w):
        raise IllegalMoveError(
            f"bad reduction: reduce_to must be in [0, {w - 1}], got {move.reduce_to!r}"
        )
    dest = move.destination
    if pos.ruleset is Ruleset.STOCKMAN:
        if dest is None:
            raise IllegalMoveError("bad destination: stockman play never ends the graph")
        if dest not in g.neighbors(u):
            raise IllegalMoveError(f"bad destination: {dest!r} is not adjacent to {u!r}")
        return
    if move.reduce_to == 0:
        if g.vertex_count == 1:
            if dest is not None:
                raise IllegalMoveError(
                    "bad destination: emptying the last vertex ends the game"
                )
            return
        if dest is None:
            raise IllegalMoveError("bad destination: the graph is not empty yet")
        if dest == u:
            raise IllegalMoveError(
                f"deleted-vertex destination: {u!r} is removed by this move"
            )
        if dest not in g.neighbors(u):
            raise IllegalMoveError(f"bad destination: {dest!r} is not adjacent to {u!r}")
        return
    if dest is None:
        raise IllegalMoveError("bad destination: only a reduction to 0 can end the game")
    if dest not in g.neighbors(u):
        if dest == u:
            raise IllegalMoveError(f"bad destination: {u!r} has no loop to stay on")
        raise IllegalMoveError(f"bad destination: {dest!r} is not adjacent to {u!r}")
