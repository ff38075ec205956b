"""Walk through one full game of VertexNim, move by move.

VertexNim is played on a weighted graph with a token on a current vertex.
A move lowers the current vertex's weight and slides the token to an
adjacent vertex.  A vertex that hits weight zero vanishes: its neighbours
become a clique and each of them gains a loop, which keeps the board
connected and the token mobile.  Whoever makes the last move wins.
"""

from vertexnim import build_graph, legal_moves, make_position, terminal_status
from vertexnim.instance_io import to_dot
from vertexnim.rules import Move, apply_move

# A triangle with a tail: a-b-c-a plus c-d.
g = build_graph(
    "undirected",
    [("a", 1), ("b", 1), ("c", 2), ("d", 1)],
    [("a", "b"), ("b", "c"), ("a", "c"), ("c", "d")],
)
pos = make_position(g, "a", "vertexnim")

print("Starting board (DOT, paste into graphviz to draw):")
print(to_dot(pos.graph, pos.current))

print("Legal moves from", pos.current)
for m in legal_moves(pos):
    print("  ", m)

# Scripted line: both players drain vertices eagerly.
script = [Move(0, "b"), Move(0, "c"), Move(1, "d"), Move(0, "c"), Move(0, None)]
player = 1
for move in script:
    print(f"player {player} plays: {move}")
    pos = apply_move(pos, move)
    board = {v: pos.graph.weight(v) for v in pos.graph.vertices()}
    print(f"  board now {board}, token at {pos.current}")
    player = 3 - player

print("terminal:", terminal_status(pos).value)
print("player", 3 - player, "made the last move and wins")
