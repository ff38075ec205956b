"""Poke at the open cases with the game-tree oracle.

Circuits that contain weight-1 vertices have no known closed form, and
neither does directed play without loops.  The oracle settles small boards
exactly, which is how one hunts for patterns.
"""

from collections import Counter

from vertexnim import Envelope, make_position, oracle_solve
from vertexnim.cli import explore_circuits, run_check
from vertexnim.graphs import build_graph

# --- weight-1 circuits table -------------------------------------------------

print("Circuits with at least one weight-1 vertex (N=4, weights <= 2):")
rows = list(explore_circuits(4, 4, 2, min_ones=1))
for n, weights, start, outcome in rows[:8]:
    print(f"  C_{n} weights {weights} start {start}: {outcome.value}")
print(f"  ... {len(rows)} rows total")
tally = Counter(outcome.value for *_rest, outcome in rows)
print("  outcome tally:", dict(tally))
print()

# --- a loop-free digraph no theorem covers ------------------------------------

g = build_graph(
    "directed",
    [("a", 2), ("b", 2), ("c", 2)],
    [("a", "b"), ("b", "c"), ("c", "a"), ("a", "c")],
)
pos = make_position(g, "a", "vertexnim")
print("Loop-free non-circuit digraph, oracle verdict:", oracle_solve(pos).value)
print()

# --- and the standing cross-check every theorem lives under -------------------

result = run_check(Envelope("undirected", max_vertices=3, max_weight=3))
print(
    f"run_check over all undirected boards (<=3 vertices, w<=3): "
    f"{result.tested} tested, {result.mismatched} mismatched"
)
