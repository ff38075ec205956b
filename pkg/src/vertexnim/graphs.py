"""Weighted game graphs and the structural operations the solvers rely on.

Graphs are immutable values: every transformation returns a new graph, so
solver and oracle code can branch freely without aliasing bugs.  Vertex ids
are opaque printable tokens; all iteration is in sorted id order so that
labelings, serializations and tests are reproducible.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import GraphError

VertexId = str


@dataclass(frozen=True)
class GameGraph:
    """A directed or undirected graph with a non-negative weight per vertex.

    ``adj`` maps each vertex to its out-neighbour set (directed) or
    neighbour set (undirected, kept symmetric).  A loop is represented by a
    vertex appearing in its own set.  Parallel edges cannot exist because
    adjacency is a set.
    """

    directed: bool
    weights: dict[VertexId, int]
    adj: dict[VertexId, frozenset[VertexId]] = field(repr=False)

    # -- basic queries -------------------------------------------------

    def vertices(self) -> tuple[VertexId, ...]:
        return tuple(self.weights)

    @property
    def vertex_count(self) -> int:
        return len(self.weights)

    @property
    def is_empty(self) -> bool:
        return not self.weights

    def weight(self, v: VertexId) -> int:
        return self.weights[v]

    def total_weight(self) -> int:
        return sum(self.weights.values())

    def neighbors(self, v: VertexId) -> frozenset[VertexId]:
        """Out-neighbours for directed graphs, neighbours otherwise."""
        return self.adj[v]

    def in_neighbors(self, v: VertexId) -> frozenset[VertexId]:
        if not self.directed:
            return self.adj[v]
        return frozenset(u for u in self.weights if v in self.adj[u])

    def has_loop(self, v: VertexId) -> bool:
        return v in self.adj[v]

    def has_all_loops(self) -> bool:
        return all(v in self.adj[v] for v in self.weights)

    def edges(self) -> list[tuple[VertexId, VertexId]]:
        """Sorted edge list; undirected edges appear once as (min, max)."""
        out: set[tuple[VertexId, VertexId]] = set()
        for u in self.weights:
            for v in self.adj[u]:
                if self.directed:
                    out.add((u, v))
                else:
                    out.add((u, v) if u <= v else (v, u))
        return sorted(out)

    @property
    def edge_count(self) -> int:
        return len(self.edges())

    def with_weight(self, v: VertexId, value: int) -> GameGraph:
        """A copy with one weight changed; the adjacency is shared."""
        if v not in self.weights:
            raise GraphError(f"unknown vertex {v!r}")
        if value < 0:
            raise GraphError(f"negative weight {value} for vertex {v!r}")
        weights = dict(self.weights)
        weights[v] = value
        return GameGraph(self.directed, weights, self.adj)

    def induced(self, keep: Iterable[VertexId]) -> GameGraph:
        """The subgraph induced by ``keep`` (loops kept, weights kept)."""
        kept = set(keep)
        unknown = kept - self.weights.keys()
        if unknown:
            raise GraphError(f"unknown vertices {sorted(unknown)}")
        weights = {v: self.weights[v] for v in sorted(kept)}
        adj = {v: self.adj[v] & kept for v in weights}
        return GameGraph(self.directed, weights, adj)


def _check_vertex_id(v: VertexId) -> None:
    if not isinstance(v, str) or not v:
        raise GraphError(f"vertex id must be a non-empty string, got {v!r}")
    if any(c.isspace() for c in v) or not v.isprintable():
        raise GraphError(f"vertex id {v!r} contains whitespace or unprintable characters")


def build_graph(
    orientation: str,
    vertex_weights: Iterable[tuple[VertexId, int]],
    edges: Iterable[tuple[VertexId, VertexId]],
) -> GameGraph:
    """Build a normalized graph from declarations.

    Undirected edges are stored symmetrically and duplicates collapse.
    Raises :class:`GraphError` on duplicate ids, dangling endpoints or
    negative weights.  Zero weights are accepted here; rulesets that forbid
    them reject at position construction.
    """
    if orientation not in ("directed", "undirected"):
        raise GraphError(f"orientation must be 'directed' or 'undirected', got {orientation!r}")
    directed = orientation == "directed"

    weights: dict[VertexId, int] = {}
    for v, w in vertex_weights:
        _check_vertex_id(v)
        if v in weights:
            raise GraphError(f"duplicate vertex id {v!r}")
        if not isinstance(w, int) or isinstance(w, bool):
            raise GraphError(f"weight of {v!r} must be an integer, got {w!r}")
        if w < 0:
            raise GraphError(f"negative weight {w} for vertex {v!r}")
        weights[v] = w
    weights = {v: weights[v] for v in sorted(weights)}

    adj: dict[VertexId, set[VertexId]] = {v: set() for v in weights}
    for a, b in edges:
        if a not in weights:
            raise GraphError(f"edge ({a!r}, {b!r}) references undeclared vertex {a!r}")
        if b not in weights:
            raise GraphError(f"edge ({a!r}, {b!r}) references undeclared vertex {b!r}")
        adj[a].add(b)
        if not directed:
            adj[b].add(a)
    return GameGraph(directed, weights, {v: frozenset(s) for v, s in adj.items()})


# -- strongly connected components -------------------------------------


@dataclass(frozen=True)
class SccPartition:
    """Strongly connected components in topological order.

    ``components[i]`` may only reach components with index >= i;
    ``successors[i]`` lists the component indices reachable through a
    single condensation arc.
    """

    components: tuple[frozenset[VertexId], ...]
    successors: tuple[frozenset[int], ...]

    def component_index(self) -> dict[VertexId, int]:
        return {v: i for i, comp in enumerate(self.components) for v in comp}


def strongly_connected_components(g: GameGraph) -> SccPartition:
    """Tarjan's algorithm, iterative, with a deterministic visit order.

    Raises :class:`GraphError` for undirected input.
    """
    if not g.directed:
        raise GraphError("strongly_connected_components requires a directed graph")

    index: dict[VertexId, int] = {}
    lowlink: dict[VertexId, int] = {}
    on_stack: set[VertexId] = set()
    stack: list[VertexId] = []
    counter = 0
    comps: list[frozenset[VertexId]] = []

    for root in sorted(g.weights):
        if root in index:
            continue
        # Explicit DFS stack of (vertex, iterator over sorted successors).
        work: list[tuple[VertexId, Iterator[VertexId]]] = []
        index[root] = lowlink[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        work.append((root, iter(sorted(g.adj[root]))))
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = lowlink[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(sorted(g.adj[w]))))
                    advanced = True
                    break
                if w in on_stack:
                    lowlink[v] = min(lowlink[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[v])
            if lowlink[v] == index[v]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.add(w)
                    if w == v:
                        break
                comps.append(frozenset(comp))

    # Tarjan emits components in reverse topological order; flip it so that
    # component i only reaches components with larger indices.
    comps.reverse()
    where = {v: i for i, comp in enumerate(comps) for v in comp}
    succ: list[set[int]] = [set() for _ in comps]
    for u in g.weights:
        for v in g.adj[u]:
            if where[u] != where[v]:
                succ[where[u]].add(where[v])
    return SccPartition(tuple(comps), tuple(frozenset(s) for s in succ))


def sink_components(p: SccPartition) -> list[frozenset[VertexId]]:
    """Components without outgoing condensation arcs, in partition order."""
    return [comp for comp, succ in zip(p.components, p.successors) if not succ]


def connected_component_of(g: GameGraph, v: VertexId) -> frozenset[VertexId]:
    """The maximal connected vertex set containing ``v`` (undirected only)."""
    if g.directed:
        raise GraphError("connected_component_of requires an undirected graph")
    if v not in g.weights:
        raise GraphError(f"unknown vertex {v!r}")
    seen = {v}
    queue = deque([v])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return frozenset(seen)


# -- playability --------------------------------------------------------


@dataclass(frozen=True)
class PlayabilityReport:
    ok: bool
    problem: str | None = None
    witness: tuple[VertexId, VertexId] | None = None


def _reachable(g: GameGraph, start: VertexId, reverse: bool = False) -> set[VertexId]:
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        nbrs = g.in_neighbors(u) if reverse else g.adj[u]
        for w in nbrs:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def validate_playable(g: GameGraph) -> PlayabilityReport:
    """Directed graphs must be strongly connected, undirected ones connected.

    The empty graph is vacuously playable (it is the terminal state).
    On failure the report names a vertex pair with no connecting path.
    """
    if g.is_empty:
        return PlayabilityReport(True)
    first = min(g.weights)
    if g.directed:
        fwd = _reachable(g, first)
        if len(fwd) != g.vertex_count:
            missing = min(set(g.weights) - fwd)
            return PlayabilityReport(False, "not strongly connected", (first, missing))
        back = _reachable(g, first, reverse=True)
        if len(back) != g.vertex_count:
            missing = min(set(g.weights) - back)
            return PlayabilityReport(False, "not strongly connected", (missing, first))
        return PlayabilityReport(True)
    comp = connected_component_of(g, first)
    if len(comp) != g.vertex_count:
        missing = min(set(g.weights) - comp)
        return PlayabilityReport(False, "not connected", (first, missing))
    return PlayabilityReport(True)


def is_strongly_connected(g: GameGraph) -> bool:
    return g.directed and validate_playable(g).ok


def is_connected(g: GameGraph) -> bool:
    return not g.directed and validate_playable(g).ok


def is_circuit(g: GameGraph) -> bool:
    """True for an elementary directed cycle on >= 3 vertices, loop-free."""
    if not g.directed or g.vertex_count < 3:
        return False
    for v in g.weights:
        if len(g.adj[v]) != 1 or v in g.adj[v]:
            return False
    return is_strongly_connected(g)


def circuit_order(g: GameGraph, start: VertexId) -> list[VertexId]:
    """Vertices of a circuit in play order beginning at ``start``."""
    if not is_circuit(g):
        raise GraphError("not an elementary circuit")
    order = [start]
    cur = start
    for _ in range(g.vertex_count - 1):
        (cur,) = g.adj[cur]
        order.append(cur)
    return order


# -- zero-vertex removal -------------------------------------------------


def remove_zero_vertex(g: GameGraph, v: VertexId) -> GameGraph:
    """Delete ``v`` structurally after its weight reached zero.

    Undirected: the former neighbourhood of ``v`` becomes a clique and every
    vertex in it gains a loop.  Directed: each in-neighbour ``p`` gets an arc
    to each out-neighbour ``s`` (``p == s`` yields a loop).  A loop on ``v``
    itself plays no part.  Removing the last vertex yields the empty graph.
    Connectivity class is preserved in both orientations.
    """
    if v not in g.weights:
        raise GraphError(f"unknown vertex {v!r}")
    weights = {u: w for u, w in g.weights.items() if u != v}
    if not weights:
        return GameGraph(g.directed, {}, {})

    if not g.directed:
        hood = g.adj[v] - {v}
        adj = {u: set(g.adj[u]) - {v} for u in weights}
        for a in hood:
            adj[a].update(hood)  # clique over the neighbourhood, loops included
        return GameGraph(False, weights, {u: frozenset(s) for u, s in adj.items()})

    preds = g.in_neighbors(v) - {v}
    succs = g.adj[v] - {v}
    adj = {u: set(g.adj[u]) - {v} for u in weights}
    for p in preds:
        adj[p].update(succs)
    return GameGraph(True, weights, {u: frozenset(s) for u, s in adj.items()})
