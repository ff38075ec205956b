"""VertexNim: solvers, oracle, CLI and play service for Nim on weighted graphs."""

from .errors import (
    BudgetExceededError,
    GraphError,
    IllegalMoveError,
    InvalidPositionError,
    ParseError,
    TheoremOutOfScopeError,
    UnsupportedRulesError,
    VertexNimError,
)
from .graphs import (
    GameGraph,
    PlayabilityReport,
    SccPartition,
    build_graph,
    connected_component_of,
    remove_zero_vertex,
    sink_components,
    strongly_connected_components,
    validate_playable,
)
from .oracle import (
    DEFAULT_BUDGET,
    Envelope,
    Memo,
    OracleBudget,
    enumerate_instances,
    oracle_best_move,
    oracle_solve,
    state_key,
)
from .outcome import Outcome
from .rules import (
    Convention,
    Move,
    Position,
    Ruleset,
    TerminalStatus,
    apply_move,
    legal_moves,
    make_position,
    terminal_status,
)
from .solver import (
    Labeling,
    SolveReport,
    lo_labeling,
    lu_labeling,
    solve,
    solve_adjacent_nim,
    solve_directed_all_loops,
    solve_misere,
    solve_stockman_circuit,
    solve_stockman_undirected,
    solve_undirected,
    solve_undirected_all_loops,
    winning_move,
)

__all__ = [
    "BudgetExceededError",
    "Convention",
    "DEFAULT_BUDGET",
    "Envelope",
    "GameGraph",
    "GraphError",
    "IllegalMoveError",
    "InvalidPositionError",
    "Labeling",
    "Memo",
    "Move",
    "Outcome",
    "OracleBudget",
    "ParseError",
    "PlayabilityReport",
    "Position",
    "Ruleset",
    "SccPartition",
    "SolveReport",
    "TerminalStatus",
    "TheoremOutOfScopeError",
    "UnsupportedRulesError",
    "VertexNimError",
    "apply_move",
    "build_graph",
    "connected_component_of",
    "enumerate_instances",
    "legal_moves",
    "lo_labeling",
    "lu_labeling",
    "make_position",
    "oracle_best_move",
    "oracle_solve",
    "remove_zero_vertex",
    "sink_components",
    "solve",
    "solve_adjacent_nim",
    "solve_directed_all_loops",
    "solve_misere",
    "solve_stockman_circuit",
    "solve_stockman_undirected",
    "solve_undirected",
    "solve_undirected_all_loops",
    "state_key",
    "strongly_connected_components",
    "terminal_status",
    "validate_playable",
    "winning_move",
]
