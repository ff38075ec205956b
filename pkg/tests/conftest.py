from __future__ import annotations

import random

import pytest
from hypothesis import strategies as st

from vertexnim import GameGraph, build_graph


def ug(weights: dict[str, int], edges: list[tuple[str, str]]) -> GameGraph:
    return build_graph("undirected", list(weights.items()), edges)


def dg(weights: dict[str, int], edges: list[tuple[str, str]]) -> GameGraph:
    return build_graph("directed", list(weights.items()), edges)


def _ids(n: int) -> list[str]:
    return [chr(ord("a") + i) for i in range(n)]


@st.composite
def connected_undirected(draw, max_n=6, max_w=4, allow_loops=True):
    """Random connected undirected graph: spanning tree plus extras."""
    n = draw(st.integers(1, max_n))
    ids = _ids(n)
    rng = random.Random(draw(st.integers(0, 2**32 - 1)))
    order = list(range(n))
    rng.shuffle(order)
    edges = set()
    for i in range(1, n):
        a, b = order[rng.randrange(i)], order[i]
        edges.add((min(a, b), max(a, b)))
    for a in range(n):
        for b in range(a + 1, n):
            if rng.random() < 0.3:
                edges.add((a, b))
    loops = [i for i in range(n) if allow_loops and rng.random() < 0.4]
    weights = [draw(st.integers(1, max_w)) for _ in range(n)]
    edge_list = [(ids[a], ids[b]) for a, b in sorted(edges)]
    edge_list += [(ids[i], ids[i]) for i in loops]
    return build_graph("undirected", list(zip(ids, weights)), edge_list)


@st.composite
def strongly_connected_digraph(draw, max_n=6, max_w=4, all_loops=False):
    """Random strongly connected digraph: a cycle over a permutation plus extras."""
    n = draw(st.integers(1, max_n))
    ids = _ids(n)
    rng = random.Random(draw(st.integers(0, 2**32 - 1)))
    order = list(range(n))
    rng.shuffle(order)
    arcs = set()
    if n > 1:
        arcs = {(order[i], order[(i + 1) % n]) for i in range(n)}
    for a in range(n):
        for b in range(n):
            if a != b and rng.random() < 0.25:
                arcs.add((a, b))
    if all_loops:
        loops = list(range(n))
    else:
        loops = [i for i in range(n) if rng.random() < 0.4]
    weights = [draw(st.integers(1, max_w)) for _ in range(n)]
    edge_list = [(ids[a], ids[b]) for a, b in sorted(arcs)]
    edge_list += [(ids[i], ids[i]) for i in loops]
    return build_graph("directed", list(zip(ids, weights)), edge_list)


@pytest.fixture
def triangle_all_loops() -> GameGraph:
    return dg(
        {"a": 1, "b": 1, "c": 2},
        [("a", "b"), ("b", "c"), ("c", "a"), ("a", "a"), ("b", "b"), ("c", "c")],
    )
