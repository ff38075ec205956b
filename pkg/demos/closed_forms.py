"""Tour of the closed-form solvers and their labelings.

Each family of instances has a polynomial rule; the game-tree oracle exists
only to prove the rules right.  This script shows each rule on a small
board, including the peeling labelings with their round-by-round steps.
"""

from vertexnim import (
    build_graph,
    lo_labeling,
    lu_labeling,
    make_position,
    solve,
    solve_adjacent_nim,
)

# --- circuits: index parity of the first minimum ---------------------------

print("Adjacent Nim, heaps (2,3,4,5) in cyclic order:")
print("  outcome:", solve_adjacent_nim((2, 3, 4, 5)).value, "(first minimum sits at")
print("  position 1, odd, so the mover loses on an even circuit)")
print("  heaps (3,2,4,5):", solve_adjacent_nim((3, 2, 4, 5)).value)
print()

# --- undirected graphs: the local-minimum peeling ---------------------------

path = build_graph(
    "undirected",
    [("a", 2), ("b", 3), ("c", 4), ("d", 5), ("e", 4)],
    [("a", "b"), ("b", "c"), ("c", "d"), ("d", "e")],
)
lab = lu_labeling(path)
print("Weight path 2-3-4-5-4 and its local-minimum peeling:")
for i, (kept, burned) in enumerate(lab.steps, start=1):
    print(f"  round {i}: minima {sorted(kept)} -> P, their neighbours {sorted(burned)} -> N")
print("  labels:", {v: o.value for v, o in sorted(lab.labels.items())})
print()

# --- directed graphs with loops everywhere: sink-component peeling ----------

dg = build_graph(
    "directed",
    [("a", 1), ("b", 1), ("c", 1)],
    [("b", "a"), ("c", "b"), ("a", "a")],
)
lab = lo_labeling(dg)
print("Sink peeling of b -> a (looped), c -> b:")
for i, (sink, feeders) in enumerate(lab.steps, start=1):
    print(f"  round {i}: sink {sorted(sink)}, feeders {sorted(feeders)}")
print("  labels:", {v: o.value for v, o in sorted(lab.labels.items())})
print()

# --- the dispatcher ties it together ----------------------------------------

board = build_graph(
    "undirected",
    [("a", 2), ("b", 3), ("c", 2)],
    [("a", "b"), ("b", "c")],
)
for start in "abc":
    report = solve(make_position(board, start, "vertexnim"))
    witness = f", winning move: {report.witness}" if report.witness else ""
    print(f"path 2-3-2 starting at {start}: {report.outcome.value}"
          f" via {report.method}{witness}")
