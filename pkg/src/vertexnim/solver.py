"""Polynomial-time outcome computation and winning-move extraction.

Closed forms implemented here:

* directed circuits with every weight >= 2 — an index-parity formula on
  the first minimum-weight vertex;
* strongly connected digraphs with a loop on every vertex — reduction to a
  sink-component peeling (``lo``) of the weight-1 subgraph;
* undirected graphs with all loops — a component-parity rule;
* general undirected graphs — a four-case dispatch whose hard case peels
  local-minimum vertices (``lu``) of a loop-free heavy core;
* Stockman play on undirected graphs — the same machinery extended with
  "hot" vertices (a loop, or a zero-weight neighbour, lets whoever stands
  there win on the spot);
* Stockman play on directed circuits — the circuit formula, which
  tolerates weight-1 vertices;
* misere play — all-ones positions flip parity, everything else keeps its
  normal-play outcome.

``solve`` routes a position to the right closed form, falling back to the
game-tree oracle for open instances small enough to search.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

from .errors import (
    BudgetExceededError,
    GraphError,
    InvalidPositionError,
    TheoremOutOfScopeError,
    UnsupportedRulesError,
)
from .graphs import (
    GameGraph,
    VertexId,
    circuit_order,
    connected_component_of,
    is_circuit,
    sink_components,
    strongly_connected_components,
    validate_playable,
)
from .oracle import DEFAULT_BUDGET, Memo, OracleBudget, oracle_solve, state_key
from .outcome import Outcome
from .rules import (
    Convention,
    Move,
    Position,
    Ruleset,
    TerminalStatus,
    apply_move_unchecked,
    legal_moves,
    terminal_status,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Labeling:
    """A per-vertex P/N map plus the peeling steps that produced it.

    ``steps[i]`` is the pair of vertex sets retired in round ``i``; every
    vertex appears in exactly one of them.
    """

    labels: dict[VertexId, Outcome]
    steps: tuple[tuple[frozenset[VertexId], frozenset[VertexId]], ...]


@dataclass(frozen=True)
class SolveReport:
    """Outcome, the route that produced it, and a winning move if one exists.

    ``outcome`` is ``None`` only for the distinguished "open-problem"
    status: no theorem applies and the instance exceeds the oracle budget.
    """

    outcome: Outcome | None
    method: str
    witness: Move | None = None


# -- circuit formulas ------------------------------------------------------


def _first_argmin_is_even(weights: Sequence[int]) -> bool:
    best = min(range(len(weights)), key=lambda i: (weights[i], i))
    return (best + 1) % 2 == 0  # 1-based position of the first minimum


def solve_adjacent_nim(weights: Sequence[int]) -> Outcome:
    """Outcome of cyclic Nim on a directed circuit, mover at ``weights[0]``.

    Requires at least three heaps, all of weight two or more: with an odd
    number of heaps the mover wins; with an even number the mover wins
    exactly when the first heap of minimum weight sits at an even position.
    """
    n = len(weights)
    if n < 3:
        raise InvalidPositionError(f"a circuit needs at least 3 vertices, got {n}")
    low = [i for i, w in enumerate(weights) if w <= 1]
    if low:
        raise TheoremOutOfScopeError(
            f"circuit formula requires every weight >= 2; "
            f"weight-1 circuits are an open problem (positions {low})"
        )
    if n % 2 == 1:
        return Outcome.N
    return Outcome.N if _first_argmin_is_even(weights) else Outcome.P


def solve_stockman_circuit(weights: Sequence[int]) -> Outcome:
    """Circuit formula under Stockman rules, where weight-1 heaps are fine.

    A zero on the mover's own vertex blocks them immediately; zeros
    anywhere else have no supported theory and are rejected.
    """
    n = len(weights)
    if n < 3:
        raise InvalidPositionError(f"a circuit needs at least 3 vertices, got {n}")
    if weights[0] == 0:
        return Outcome.P
    if any(w == 0 for w in weights[1:]):
        raise TheoremOutOfScopeError(
            "stockman circuit formula does not cover zero weights away from the mover"
        )
    if n % 2 == 1:
        return Outcome.N
    return Outcome.N if _first_argmin_is_even(weights) else Outcome.P


# -- labelings -------------------------------------------------------------


def lo_labeling(
    g: GameGraph,
    sink_picker: Callable[[list[frozenset[VertexId]]], frozenset[VertexId]] | None = None,
) -> Labeling:
    """Label a digraph by repeatedly peeling a sink strongly connected component.

    Each round picks a component ``S`` with no outgoing condensation arc
    and collects ``T``, the outside vertices with an arc into ``S``.  An
    even ``S`` is labeled N and removed alone; an odd ``S`` is labeled P,
    ``T`` is labeled N, and both are removed.  The resulting labels do not
    depend on which sink component is picked; ``sink_picker`` exists so
    tests can exercise that.
    """
    if not g.directed:
        raise GraphError("lo labeling requires a directed graph")
    if g.is_empty:
        raise GraphError("lo labeling of the empty graph is undefined")
    if sink_picker is None:
        sink_picker = lambda sinks: min(sinks, key=min)  # noqa: E731

    labels: dict[VertexId, Outcome] = {}
    steps: list[tuple[frozenset[VertexId], frozenset[VertexId]]] = []
    residual = g
    while not residual.is_empty:
        part = strongly_connected_components(residual)
        s_set = sink_picker(sink_components(part))
        if len(s_set) % 2 == 0:
            for v in s_set:
                labels[v] = Outcome.N
            steps.append((s_set, frozenset()))
            remove = s_set
        else:
            t_set = frozenset(
                v
                for v in residual.weights
                if v not in s_set and residual.adj[v] & s_set
            )
            for v in s_set:
                labels[v] = Outcome.P
            for v in t_set:
                labels[v] = Outcome.N
            steps.append((s_set, t_set))
            remove = s_set | t_set
        residual = residual.induced(set(residual.weights) - remove)
    return Labeling(labels, tuple(steps))


def lu_labeling(g: GameGraph, weights: Mapping[VertexId, int] | None = None) -> Labeling:
    """Label an undirected loop-free graph by peeling local weight minima.

    Each round takes ``S``, the vertices no heavier than any surviving
    neighbour (isolated vertices qualify vacuously), labels them P, labels
    their surviving neighbours ``T`` as N, and removes both sets.  Weights
    never change, so a vertex can only become a local minimum when a
    blocking neighbour is removed; tracking those candidates keeps the
    whole run near-linear in the edge count.
    """
    if g.directed:
        raise GraphError("lu labeling requires an undirected graph")
    if g.is_empty:
        raise GraphError("lu labeling of the empty graph is undefined")
    w = dict(g.weights) if weights is None else {v: weights[v] for v in g.weights}
    bad = [v for v, x in w.items() if x < 1]
    if bad:
        raise GraphError(f"lu labeling requires positive weights; offending: {sorted(bad)}")
    looped = [v for v in g.weights if g.has_loop(v)]
    if looped:
        raise GraphError(
            f"lu labeling is undefined on graphs with loops; offending: {sorted(looped)}"
        )

    alive: set[VertexId] = set(g.weights)
    labels: dict[VertexId, Outcome] = {}
    steps: list[tuple[frozenset[VertexId], frozenset[VertexId]]] = []
    candidates: set[VertexId] = set(alive)
    while alive:
        s_set = frozenset(
            v
            for v in candidates
            if v in alive and all(w[v] <= w[t] for t in g.adj[v] if t in alive)
        )
        assert s_set, "a surviving global minimum is always a local minimum"
        t_set = frozenset(
            t for v in s_set for t in g.adj[v] if t in alive and t not in s_set
        )
        for v in s_set:
            labels[v] = Outcome.P
        for v in t_set:
            labels[v] = Outcome.N
        steps.append((s_set, t_set))
        removed = s_set | t_set
        alive -= removed
        candidates = {t for v in removed for t in g.adj[v] if t in alive}
    return Labeling(labels, tuple(steps))


# -- per-family solvers ----------------------------------------------------


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise TheoremOutOfScopeError(message)


def _all_ones(g: GameGraph) -> bool:
    return all(x == 1 for x in g.weights.values())


def solve_directed_all_loops(pos: Position) -> Outcome:
    """Outcome on a strongly connected digraph with a loop on each vertex.

    All-ones graphs are a pure parity game.  A mover holding weight >= 2
    always wins (zero out if that wins, otherwise drop to 1 and stay).  A
    mover holding weight 1 wins exactly when the sink-peeling label of
    their vertex inside the weight-1 subgraph is N.
    """
    g = pos.graph
    _require(pos.ruleset is Ruleset.VERTEXNIM, "ruleset must be vertexnim")
    _require(g.directed, "graph must be directed")
    _require(not g.is_empty, "graph must be nonempty")
    _require(validate_playable(g).ok, "graph must be strongly connected")
    _require(g.has_all_loops(), "every vertex needs a loop")
    _require(min(g.weights.values()) >= 1, "weights must be positive")
    u = pos.current
    assert u is not None
    if _all_ones(g):
        return Outcome.N if g.vertex_count % 2 == 1 else Outcome.P
    if g.weight(u) >= 2:
        return Outcome.N
    ones = [v for v, x in g.weights.items() if x == 1]
    return lo_labeling(g.induced(ones)).labels[u]


def solve_undirected_all_loops(pos: Position) -> Outcome:
    """Linear-time outcome on a connected undirected graph with all loops.

    All-ones graphs are a parity game; weight >= 2 on the mover's vertex
    wins; otherwise the mover wins exactly when their weight-1 component
    has even size.
    """
    g = pos.graph
    _require(pos.ruleset is Ruleset.VERTEXNIM, "ruleset must be vertexnim")
    _require(not g.directed, "graph must be undirected")
    _require(not g.is_empty, "graph must be nonempty")
    _require(validate_playable(g).ok, "graph must be connected")
    _require(g.has_all_loops(), "every vertex needs a loop")
    _require(min(g.weights.values()) >= 1, "weights must be positive")
    u = pos.current
    assert u is not None
    if _all_ones(g):
        return Outcome.N if g.vertex_count % 2 == 1 else Outcome.P
    if g.weight(u) >= 2:
        return Outcome.N
    ones = [v for v, x in g.weights.items() if x == 1]
    comp = connected_component_of(g.induced(ones), u)
    return Outcome.N if len(comp) % 2 == 0 else Outcome.P


def _heavy_core(g: GameGraph) -> list[VertexId]:
    """Loop-free vertices of weight >= 2 whose neighbours all weigh >= 2."""
    return [
        v
        for v, x in g.weights.items()
        if x >= 2 and not g.has_loop(v) and all(g.weights[t] >= 2 for t in g.adj[v])
    ]


def solve_undirected(pos: Position) -> Outcome:
    """Outcome on any connected undirected graph with positive weights.

    Dispatch, in order: if every other vertex weighs 1 the game is forced
    (parity decides when the mover also holds 1; any heavier mover wins); a
    loop under weight >= 2 wins; weight 1 is decided by the parity of the
    mover's weight-1 component; a weight-1 neighbour under weight >= 2
    wins; what remains lives in the loop-free heavy core and is decided by
    its local-minimum peeling.
    """
    g = pos.graph
    _require(pos.ruleset is Ruleset.VERTEXNIM, "ruleset must be vertexnim")
    _require(not g.directed, "graph must be undirected")
    _require(not g.is_empty, "graph must be nonempty")
    _require(validate_playable(g).ok, "graph must be connected")
    _require(min(g.weights.values()) >= 1, "weights must be positive")
    u = pos.current
    assert u is not None
    wu = g.weight(u)
    ones_and_u = [v for v, x in g.weights.items() if x == 1 or v == u]

    if len(ones_and_u) == g.vertex_count:
        if wu == 1:
            return Outcome.N if g.vertex_count % 2 == 1 else Outcome.P
        return Outcome.N
    if wu >= 2 and g.has_loop(u):
        return Outcome.N
    if wu == 1:
        comp = connected_component_of(g.induced(ones_and_u), u)
        return Outcome.N if len(comp) % 2 == 0 else Outcome.P
    if any(g.weights[t] == 1 for t in g.adj[u]):
        return Outcome.N
    core = _heavy_core(g)
    return lu_labeling(g.induced(core)).labels[u]


def solve_stockman_undirected(pos: Position) -> Outcome:
    """Outcome of Stockman play on a connected undirected graph.

    A vertex is *hot* when standing on it with positive weight wins on the
    spot: it has a loop (zero out and stay) or a zero-weight neighbour
    (step onto it and strand the opponent).  The dispatch: a mover on zero
    is stuck and loses; a mover on a hot vertex wins; weight 1 on a cold
    vertex loses (the forced exit hands the opponent a hot vertex); a cold
    weight-1 neighbour wins (park the opponent there); the rest is the
    local-minimum peeling of the cold heavy core.  On loop-free graphs with
    all weights positive no vertex is hot and this reduces to the plain
    four-case dispatch.
    """
    g = pos.graph
    _require(pos.ruleset is Ruleset.STOCKMAN, "ruleset must be stockman")
    _require(not g.directed, "graph must be undirected")
    _require(not g.is_empty, "graph must be nonempty")
    _require(validate_playable(g).ok, "graph must be connected")
    u = pos.current
    assert u is not None
    if g.weight(u) == 0:
        return Outcome.P

    def hot(v: VertexId) -> bool:
        return g.has_loop(v) or any(g.weights[t] == 0 for t in g.adj[v])

    if hot(u):
        return Outcome.N
    if g.weight(u) == 1:
        return Outcome.P
    cold_ones = {v for v, x in g.weights.items() if x == 1 and not hot(v)}
    if g.adj[u] & cold_ones:
        return Outcome.N
    core = [
        v
        for v, x in g.weights.items()
        if x >= 2 and not hot(v) and not (g.adj[v] & cold_ones)
    ]
    return lu_labeling(g.induced(core)).labels[u]


def solve_misere(pos: Position) -> Outcome:
    """Misere outcome for instances the normal-play solvers accept.

    All-ones positions flip the parity rule (the mover wins exactly when
    the vertex count is even); any position holding a weight >= 2 keeps its
    normal-play outcome.
    """
    if pos.convention is not Convention.MISERE:
        raise InvalidPositionError("solve_misere expects a misere position")
    if pos.ruleset is not Ruleset.VERTEXNIM:
        raise UnsupportedRulesError("misere Stockman play is not supported")
    g = pos.graph
    _require(not g.is_empty, "graph must be nonempty")
    if g.directed:
        _require(validate_playable(g).ok, "graph must be strongly connected")
        _require(
            g.has_all_loops(),
            "misere play on digraphs is only solved with a loop on every vertex",
        )
    else:
        _require(validate_playable(g).ok, "graph must be connected")
    if _all_ones(g):
        return Outcome.N if g.vertex_count % 2 == 0 else Outcome.P
    # Keeping the normal-play outcome relies on a stalling move existing; a
    # lone unlooped vertex only has the game-ending move, so the reduction
    # does not apply there (the dispatcher falls back to the oracle).
    _require(
        g.vertex_count > 1 or g.has_loop(pos.current),
        "misere reduction needs a loop or a second vertex to stall on",
    )
    normal = Position(g, pos.current, pos.ruleset, Convention.NORMAL)
    if g.directed:
        return solve_directed_all_loops(normal)
    if g.has_all_loops():
        return solve_undirected_all_loops(normal)
    return solve_undirected(normal)


# -- dispatcher ------------------------------------------------------------


def _theorem_outcome(pos: Position) -> tuple[Outcome, str]:
    """Route a nonterminal position to a closed form, or raise out-of-scope."""
    g = pos.graph
    if pos.convention is Convention.MISERE:
        return solve_misere(pos), "misere-reduction"
    if pos.ruleset is Ruleset.VERTEXNIM:
        if not g.directed:
            if g.has_all_loops():
                return solve_undirected_all_loops(pos), "undirected-all-loops"
            return solve_undirected(pos), "undirected-general"
        if g.has_all_loops():
            return solve_directed_all_loops(pos), "directed-all-loops"
        if is_circuit(g):
            assert pos.current is not None
            order = circuit_order(g, pos.current)
            return solve_adjacent_nim([g.weight(v) for v in order]), "circuit-formula"
        raise TheoremOutOfScopeError(
            "directed vertexnim without a loop on every vertex is an open problem"
        )
    # Stockman
    if not g.directed:
        assert pos.current is not None
        comp = connected_component_of(g, pos.current)
        sub_pos = pos
        if len(comp) != g.vertex_count:
            # play can never leave the component holding the token
            sub_pos = Position(g.induced(comp), pos.current, pos.ruleset, pos.convention)
        return solve_stockman_undirected(sub_pos), "stockman-undirected"
    if is_circuit(g):
        assert pos.current is not None
        order = circuit_order(g, pos.current)
        return solve_stockman_circuit([g.weight(v) for v in order]), "stockman-circuit"
    raise TheoremOutOfScopeError("stockman play on general digraphs has no closed form")


def resolve_outcome(
    pos: Position,
    oracle_budget: OracleBudget | None = None,
    memo: Memo | None = None,
) -> tuple[Outcome | None, str]:
    """Outcome plus method tag; ``(None, "open-problem")`` when unsolvable."""
    budget = oracle_budget or DEFAULT_BUDGET
    status = terminal_status(pos)
    if status is TerminalStatus.PREVIOUS_MOVER_WINS:
        return Outcome.P, "terminal"
    if status is TerminalStatus.MOVER_TO_ACT_WINS:
        return Outcome.N, "terminal"
    try:
        return _theorem_outcome(pos)
    except TheoremOutOfScopeError:
        if budget.admits(pos):
            return oracle_solve(pos, budget=budget, memo=memo), "oracle-fallback"
        return None, "open-problem"


# -- winning moves ---------------------------------------------------------


@dataclass(frozen=True)
class WitnessAnomaly:
    """A deviation from the expected winning-move candidate structure."""

    kind: str  # "fallback-used" | "no-witness"
    key: tuple
    move: Move | None


#: Anomalies recorded by :func:`winning_move`; tests assert this stays empty
#: on every instance the closed forms are proven on.
witness_anomalies: list[WitnessAnomaly] = []


def clear_witness_anomalies() -> None:
    witness_anomalies.clear()


def _record_anomaly(kind: str, pos: Position, move: Move | None) -> None:
    anomaly = WitnessAnomaly(kind, state_key(pos), move)
    witness_anomalies.append(anomaly)
    logger.warning("winning_move anomaly %s on %s", kind, anomaly.key)


def winning_move(
    pos: Position,
    oracle_budget: OracleBudget | None = None,
    memo: Memo | None = None,
) -> Move | None:
    """A move to a losing position for the opponent, or ``None`` from a loss.

    Candidate reductions are 0, 1 and one-less-than-the-weight — the moves
    every constructive winning strategy here uses.  If none of them works a
    full scan runs and the event is recorded as an anomaly, as is an N
    position with no winning move at all.
    """
    budget = oracle_budget or DEFAULT_BUDGET
    memo = memo if memo is not None else Memo()
    if terminal_status(pos) is not TerminalStatus.NONTERMINAL:
        return None
    outcome, _ = resolve_outcome(pos, budget, memo)
    if outcome is None:
        raise BudgetExceededError("position is unroutable and outside the oracle budget")
    if outcome is Outcome.P:
        return None
    g = pos.graph
    u = pos.current
    assert u is not None
    w = g.weight(u)
    moves = legal_moves(pos)
    preferred_ks: list[int] = []
    for k in (0, 1, w - 1):
        if 0 <= k < w and k not in preferred_ks:
            preferred_ks.append(k)
    candidates = [m for k in preferred_ks for m in moves if m.reduce_to == k]
    rest = [m for m in moves if m not in candidates]

    unknown_seen = False

    def try_moves(batch: Iterable[Move]) -> Move | None:
        nonlocal unknown_seen
        for m in batch:
            succ = apply_move_unchecked(pos, m)
            succ_outcome, _ = resolve_outcome(succ, budget, memo)
            if succ_outcome is None:
                unknown_seen = True
                continue
            if succ_outcome is Outcome.P:
                return m
        return None

    found = try_moves(candidates)
    if found is not None:
        return found
    found = try_moves(rest)
    if found is not None:
        _record_anomaly("fallback-used", pos, found)
        return found
    if unknown_seen:
        raise BudgetExceededError(
            "could not certify any winning move within the oracle budget"
        )
    _record_anomaly("no-witness", pos, None)
    return None


def solve(
    pos: Position,
    oracle_budget: OracleBudget | None = None,
    memo: Memo | None = None,
) -> SolveReport:
    """Full report: outcome, method tag, and a witness move on N positions."""
    budget = oracle_budget or DEFAULT_BUDGET
    memo = memo if memo is not None else Memo()
    outcome, method = resolve_outcome(pos, budget, memo)
    witness = None
    if outcome is Outcome.N and terminal_status(pos) is TerminalStatus.NONTERMINAL:
        witness = winning_move(pos, budget, memo)
    return SolveReport(outcome, method, witness)
