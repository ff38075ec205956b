"""Exhaustive memoized minimax over the full game tree.

This is the ground truth the closed-form solvers are checked against, and
the only solver for instances no theorem covers.  A position is ``N``
exactly when some legal move leads to a ``P`` successor; a position with no
legal moves is ``P`` under the normal convention and ``N`` under misere.

The recursion runs on an interned representation: graph structures are
hash-consed into small integer tokens over index-encoded vertices (the
encoding follows sorted vertex order, so equal keys always mean equal
outcomes), and a state is ``(structure, weight vector, current index)``.
:func:`state_key` exposes the labeled canonical key for external use.
"""

from __future__ import annotations

import itertools
import random
import string
from dataclasses import dataclass
from typing import Iterator

from .errors import BudgetExceededError, GraphError
from .graphs import build_graph
from .outcome import Outcome
from .rules import (
    Convention,
    Move,
    Position,
    Ruleset,
    apply_move_unchecked,
    legal_moves,
    make_position,
    terminal_status,
    TerminalStatus,
)


@dataclass(frozen=True)
class OracleBudget:
    """Hard caps on what the oracle will search.

    The game tree has depth at most the total weight, so the caps bound the
    search directly.
    """

    max_total_weight: int = 16
    max_vertices: int = 8

    def admits(self, pos: Position) -> bool:
        return (
            pos.graph.total_weight() <= self.max_total_weight
            and pos.graph.vertex_count <= self.max_vertices
        )


DEFAULT_BUDGET = OracleBudget()


class Memo:
    """Outcome cache with hit/miss counters.

    Entries never change once written.  Concurrent readers are safe; writes
    rely on the atomicity of dict item assignment, and recomputing a value
    twice is harmless because both computations agree.
    """

    def __init__(self) -> None:
        self.table: dict[tuple, bool] = {}
        self.hits = 0
        self.misses = 0

    def __len__(self) -> int:
        return len(self.table)

    def clear(self) -> None:
        self.table.clear()


# -- interned structures -------------------------------------------------


class _Struct:
    """An index-encoded graph structure with a cache of vertex removals."""

    __slots__ = ("sid", "directed", "adj", "loops", "_removals")

    def __init__(self, sid: int, directed: bool, adj: tuple[tuple[int, ...], ...]):
        self.sid = sid
        self.directed = directed
        self.adj = adj
        self.loops = tuple(i in nbrs for i, nbrs in enumerate(adj))
        self._removals: dict[int, tuple["_Struct", tuple[int, ...]]] = {}

    @property
    def n(self) -> int:
        return len(self.adj)


class _StructRegistry:
    def __init__(self) -> None:
        self._by_shape: dict[tuple, _Struct] = {}

    def intern(self, directed: bool, adj: tuple[tuple[int, ...], ...]) -> _Struct:
        key = (directed, adj)
        s = self._by_shape.get(key)
        if s is None:
            s = _Struct(len(self._by_shape), directed, adj)
            self._by_shape[key] = s
        return s

    def remove_vertex(self, s: _Struct, idx: int) -> tuple[_Struct, tuple[int, ...]]:
        """Structure after deleting ``idx`` plus the old-to-new index map.

        Undirected removal cliques the old neighbourhood and adds loops on
        it; directed removal joins every in-neighbour to every
        out-neighbour (a matching pair gives a loop).
        """
        cached = s._removals.get(idx)
        if cached is not None:
            return cached
        keep = [i for i in range(s.n) if i != idx]
        old2new = [-1] * s.n
        for new, old in enumerate(keep):
            old2new[old] = new
        sets = {i: set(s.adj[i]) - {idx} for i in keep}
        if s.directed:
            succs = set(s.adj[idx]) - {idx}
            for p in keep:
                if idx in s.adj[p]:
                    sets[p] |= succs
        else:
            hood = set(s.adj[idx]) - {idx}
            for a in hood:
                sets[a] |= hood
        adj = tuple(tuple(sorted(old2new[j] for j in sets[i])) for i in keep)
        result = (self.intern(s.directed, adj), tuple(old2new))
        s._removals[idx] = result
        return result


_REGISTRY = _StructRegistry()


def _encode(pos: Position) -> tuple[_Struct, tuple[int, ...], int]:
    order = pos.graph.vertices()
    index = {v: i for i, v in enumerate(order)}
    adj = tuple(tuple(sorted(index[w] for w in pos.graph.adj[v])) for v in order)
    struct = _REGISTRY.intern(pos.graph.directed, adj)
    weights = tuple(pos.graph.weights[v] for v in order)
    cur = index[pos.current] if pos.current is not None else -1
    return struct, weights, cur


def state_key(pos: Position) -> tuple:
    """Labeled canonical key: equal positions produce equal keys."""
    g = pos.graph
    return (
        "directed" if g.directed else "undirected",
        tuple(sorted(g.weights.items())),
        tuple(g.edges()),
        pos.current,
        pos.ruleset.value,
        pos.convention.value,
    )


# -- the search ----------------------------------------------------------


class _Search:
    __slots__ = ("vertexnim", "misere", "memo", "use_memo", "rs_flag", "cv_flag")

    def __init__(self, ruleset: Ruleset, convention: Convention, memo: Memo, use_memo: bool):
        self.vertexnim = ruleset is Ruleset.VERTEXNIM
        self.misere = convention is Convention.MISERE
        self.memo = memo
        self.use_memo = use_memo
        self.rs_flag = ruleset.value
        self.cv_flag = convention.value

    def solve(self, s: _Struct, w: tuple[int, ...], cur: int) -> bool:
        """True when the player to move wins."""
        if self.use_memo:
            key = (self.rs_flag, self.cv_flag, s.sid, w, cur)
            memo = self.memo
            hit = memo.table.get(key)
            if hit is not None:
                memo.hits += 1
                return hit
            memo.misses += 1
        value = self._expand(s, w, cur)
        if self.use_memo:
            memo.table[key] = value
        return value

    def _expand(self, s: _Struct, w: tuple[int, ...], cur: int) -> bool:
        n = s.n
        if n == 0:
            return self.misere  # no move available: normal loses, misere wins
        wu = w[cur]
        if self.vertexnim:
            # Reduction to zero deletes the vertex first.
            if n == 1:
                if not self.misere:
                    return True  # emptying the last vertex is the winning last move
                # misere: ending the game loses; stalling needs a loop
                if s.loops[cur]:
                    for k in range(1, wu):
                        if not self.solve(s, (k,), cur):
                            return True
                return False
            s2, old2new = _REGISTRY.remove_vertex(s, cur)
            w2 = tuple(w[old] for old in range(n) if old != cur)
            for dest in s.adj[cur]:
                if dest == cur:
                    continue
                if not self.solve(s2, w2, old2new[dest]):
                    return True
            for k in range(1, wu):
                wk = w[:cur] + (k,) + w[cur + 1 :]
                for dest in s.adj[cur]:
                    if not self.solve(s, wk, dest):
                        return True
            return False
        # Stockman: the graph never changes and weight zero blocks the mover.
        if wu == 0:
            return False
        for k in range(wu):
            wk = w[:cur] + (k,) + w[cur + 1 :]
            for dest in s.adj[cur]:
                if not self.solve(s, wk, dest):
                    return True
        return False  # covers the no-neighbour corner: stuck movers lose


def oracle_solve(
    pos: Position,
    budget: OracleBudget | None = None,
    memo: Memo | None = None,
    use_memo: bool = True,
) -> Outcome:
    """Ground-truth outcome by exhaustive search, within ``budget``."""
    budget = budget or DEFAULT_BUDGET
    if not budget.admits(pos):
        raise BudgetExceededError(
            f"instance exceeds oracle budget (total weight {pos.graph.total_weight()} "
            f"> {budget.max_total_weight} or {pos.graph.vertex_count} vertices "
            f"> {budget.max_vertices})"
        )
    memo = memo if memo is not None else Memo()
    search = _Search(pos.ruleset, pos.convention, memo, use_memo)
    s, w, cur = _encode(pos)
    return Outcome.N if search.solve(s, w, cur) else Outcome.P


def oracle_best_move(
    pos: Position,
    budget: OracleBudget | None = None,
    memo: Memo | None = None,
) -> Move | None:
    """Any move to a ``P`` successor, or ``None`` when the mover is lost."""
    if terminal_status(pos) is not TerminalStatus.NONTERMINAL:
        return None
    memo = memo if memo is not None else Memo()
    for move in legal_moves(pos):
        succ = apply_move_unchecked(pos, move)
        if oracle_solve(succ, budget=budget, memo=memo) is Outcome.P:
            return move
    return None


# -- instance enumeration -------------------------------------------------


@dataclass(frozen=True)
class Envelope:
    """A family of instances to stream, exhaustively or as a seeded sample."""

    orientation: str  # "directed" | "undirected"
    ruleset: Ruleset = Ruleset.VERTEXNIM
    convention: Convention = Convention.NORMAL
    max_vertices: int = 3
    max_weight: int = 2
    min_weight: int | None = None  # defaults: 1 for vertexnim, 0 for stockman
    loop_policy: str = "free"  # "free" (all subsets) | "all" | "none"
    shape: str = "any"  # "any" | "circuit"
    starts: str = "all"  # "all" | "first"
    samples: int | None = None  # None means exhaustive
    seed: int = 0

    def weight_floor(self) -> int:
        if self.min_weight is not None:
            return self.min_weight
        return 1 if self.ruleset is Ruleset.VERTEXNIM else 0


def _ids(n: int) -> list[str]:
    letters = string.ascii_lowercase
    return [letters[i] if i < 26 else f"v{i}" for i in range(n)]


def _connected_mask(n: int, pairs: list[tuple[int, int]], mask: int) -> bool:
    if n == 1:
        return True
    adj: list[list[int]] = [[] for _ in range(n)]
    for bit, (a, b) in enumerate(pairs):
        if mask >> bit & 1:
            adj[a].append(b)
            adj[b].append(a)
    seen = {0}
    todo = [0]
    while todo:
        u = todo.pop()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                todo.append(v)
    return len(seen) == n


def _strongly_connected_mask(n: int, arcs: list[tuple[int, int]], mask: int) -> bool:
    if n == 1:
        return True
    fwd: list[list[int]] = [[] for _ in range(n)]
    bwd: list[list[int]] = [[] for _ in range(n)]
    for bit, (a, b) in enumerate(arcs):
        if mask >> bit & 1:
            fwd[a].append(b)
            bwd[b].append(a)
    for adj in (fwd, bwd):
        seen = {0}
        todo = [0]
        while todo:
            u = todo.pop()
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    todo.append(v)
        if len(seen) != n:
            return False
    return True


def _loop_subsets(n: int, policy: str) -> Iterator[tuple[int, ...]]:
    if policy == "all":
        yield tuple(range(n))
    elif policy == "none":
        yield ()
    elif policy == "free":
        for mask in range(1 << n):
            yield tuple(i for i in range(n) if mask >> i & 1)
    else:
        raise ValueError(f"unknown loop policy {policy!r}")


def _weight_vectors(env: Envelope, n: int) -> Iterator[tuple[int, ...]]:
    lo = env.weight_floor()
    for w in itertools.product(range(lo, env.max_weight + 1), repeat=n):
        if env.ruleset is Ruleset.STOCKMAN and not any(x > 0 for x in w):
            continue
        yield w


def _structures(env: Envelope, n: int) -> Iterator[list[tuple[int, int]]]:
    """Base edge sets (without loops) passing the connectivity filter."""
    if env.shape == "circuit":
        if env.orientation != "directed" or n < 3:
            return
        yield [(i, (i + 1) % n) for i in range(n)]
        return
    if env.orientation == "undirected":
        pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
        for mask in range(1 << len(pairs)):
            if _connected_mask(n, pairs, mask):
                yield [pairs[bit] for bit in range(len(pairs)) if mask >> bit & 1]
    else:
        arcs = [(a, b) for a in range(n) for b in range(n) if a != b]
        for mask in range(1 << len(arcs)):
            if _strongly_connected_mask(n, arcs, mask):
                yield [arcs[bit] for bit in range(len(arcs)) if mask >> bit & 1]


def _instance(
    env: Envelope,
    n: int,
    base_edges: list[tuple[int, int]],
    loops: tuple[int, ...],
    weights: tuple[int, ...],
    start: int,
) -> Position:
    ids = _ids(n)
    edges = [(ids[a], ids[b]) for a, b in base_edges]
    edges += [(ids[i], ids[i]) for i in loops]
    g = build_graph(env.orientation, list(zip(ids, weights)), edges)
    return make_position(g, ids[start], env.ruleset, env.convention)


def enumerate_instances(env: Envelope) -> Iterator[Position]:
    """Deterministic stream of valid instances for the envelope.

    Exhaustive mode nests structures, loop subsets, weight vectors and
    start vertices in a fixed order.  Sample mode draws ``env.samples``
    instances from a seeded generator that builds connectivity in (random
    spanning structure plus extra edges), so the stream is reproducible but
    not uniform.  Circuits are emitted once per size in canonical vertex
    order; relabelings add nothing because all weight vectors are streamed.
    """
    if env.max_vertices < 1:
        raise ValueError("empty envelope: max_vertices must be >= 1")
    if env.max_weight < max(1, env.weight_floor()):
        raise ValueError("empty envelope: no legal weight assignments")
    if env.samples is not None:
        yield from _sample_instances(env)
        return
    for n in range(1, env.max_vertices + 1):
        if env.shape == "circuit" and n < 3:
            continue
        for base_edges in _structures(env, n):
            for loops in _loop_subsets(n, env.loop_policy):
                if env.shape == "circuit" and loops:
                    continue
                for weights in _weight_vectors(env, n):
                    starts = range(n) if env.starts == "all" else range(1)
                    for start in starts:
                        yield _instance(env, n, base_edges, loops, weights, start)


def _sample_instances(env: Envelope) -> Iterator[Position]:
    rng = random.Random(env.seed)
    assert env.samples is not None
    produced = 0
    while produced < env.samples:
        n = rng.randint(1, env.max_vertices)
        if env.shape == "circuit":
            n = max(3, n)
            base = [(i, (i + 1) % n) for i in range(n)]
        elif env.orientation == "undirected":
            base_set: set[tuple[int, int]] = set()
            order = list(range(n))
            rng.shuffle(order)
            for i in range(1, n):
                a, b = order[rng.randrange(i)], order[i]
                base_set.add((min(a, b), max(a, b)))
            pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
            for p in pairs:
                if rng.random() < 0.3:
                    base_set.add(p)
            base = sorted(base_set)
        else:
            order = list(range(n))
            rng.shuffle(order)
            arc_set = {(order[i], order[(i + 1) % n]) for i in range(n)} if n > 1 else set()
            arcs = [(a, b) for a in range(n) for b in range(n) if a != b]
            for p in arcs:
                if rng.random() < 0.25:
                    arc_set.add(p)
            base = sorted(arc_set)
        if env.loop_policy == "all":
            loops = tuple(range(n))
        elif env.loop_policy == "none":
            loops = ()
        else:
            loops = tuple(i for i in range(n) if rng.random() < 0.5)
        lo = env.weight_floor()
        weights = tuple(rng.randint(lo, env.max_weight) for _ in range(n))
        if env.ruleset is Ruleset.STOCKMAN and not any(weights):
            continue
        start = 0 if env.starts == "first" else rng.randrange(n)
        try:
            yield _instance(env, n, base, loops, weights, start)
        except GraphError:  # pragma: no cover - defensive
            continue
        produced += 1
