"""Instance file parsing, canonical serialization and DOT export.

The format is line oriented; ``#`` starts a comment and tokens are
whitespace separated::

    game <vertexnim|stockman> <normal|misere>
    graph <directed|undirected>
    v <id> <weight>          # one line per vertex
    e <id> <id>              # edge or arc; "e a a" declares a loop
    start <id>

``parse_instance`` returns a fully validated position.  ``serialize`` emits
the canonical normalized form: fixed line order, vertices and edges sorted,
so parse-serialize round-trips are byte identical.
"""

from __future__ import annotations

from .errors import ParseError
from .graphs import GameGraph, build_graph, GraphError
from .rules import Position, make_position
from .errors import InvalidPositionError, UnsupportedRulesError

#: Reserved destination token in the wire protocol and witness output.
RESERVED_IDS = {"end"}


def parse_instance(text: str) -> Position:
    """Parse and validate an instance file; raises :class:`ParseError`."""
    game: tuple[str, str] | None = None
    orientation: str | None = None
    vertex_lines: list[tuple[int, str, int]] = []
    edge_lines: list[tuple[int, str, str]] = []
    start: tuple[int, str] | None = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        kind, args = tokens[0], tokens[1:]
        if kind == "game":
            if game is not None:
                raise ParseError("duplicate 'game' line", lineno)
            if len(args) != 2:
                raise ParseError("expected: game <vertexnim|stockman> <normal|misere>", lineno)
            if args[0] not in ("vertexnim", "stockman"):
                raise ParseError(f"unknown ruleset {args[0]!r}", lineno)
            if args[1] not in ("normal", "misere"):
                raise ParseError(f"unknown convention {args[1]!r}", lineno)
            game = (args[0], args[1])
        elif kind == "graph":
            if orientation is not None:
                raise ParseError("duplicate 'graph' line", lineno)
            if len(args) != 1 or args[0] not in ("directed", "undirected"):
                raise ParseError("expected: graph <directed|undirected>", lineno)
            orientation = args[0]
        elif kind == "v":
            if len(args) != 2:
                raise ParseError("expected: v <id> <weight>", lineno)
            vid, raw_w = args
            if vid in RESERVED_IDS:
                raise ParseError(f"vertex id {vid!r} is reserved", lineno)
            try:
                w = int(raw_w)
            except ValueError:
                raise ParseError(f"weight {raw_w!r} is not an integer", lineno) from None
            if w < 0:
                raise ParseError(f"negative weight {w}", lineno)
            vertex_lines.append((lineno, vid, w))
        elif kind == "e":
            if len(args) != 2:
                raise ParseError("expected: e <id> <id>", lineno)
            edge_lines.append((lineno, args[0], args[1]))
        elif kind == "start":
            if start is not None:
                raise ParseError("duplicate 'start' line", lineno)
            if len(args) != 1:
                raise ParseError("expected: start <id>", lineno)
            start = (lineno, args[0])
        else:
            raise ParseError(f"unknown directive {kind!r}", lineno)

    if game is None:
        raise ParseError("missing 'game' line")
    if orientation is None:
        raise ParseError("missing 'graph' line")
    if not vertex_lines:
        raise ParseError("no vertices declared")
    if start is None:
        raise ParseError("missing 'start' line")

    seen: dict[str, int] = {}
    for lineno, vid, _ in vertex_lines:
        if vid in seen:
            raise ParseError(f"duplicate vertex id {vid!r} (first at line {seen[vid]})", lineno)
        seen[vid] = lineno

    declared = {vid for _, vid, _ in vertex_lines}
    for lineno, a, b in edge_lines:
        for endpoint in (a, b):
            if endpoint not in declared:
                raise ParseError(f"edge endpoint {endpoint!r} is not declared", lineno)

    start_line, start_id = start
    if start_id not in declared:
        raise ParseError(f"start vertex {start_id!r} is not declared", start_line)

    ruleset, convention = game
    if ruleset == "vertexnim":
        for lineno, vid, w in vertex_lines:
            if w == 0:
                raise ParseError(
                    f"vertexnim requires positive weights; {vid!r} has weight 0", lineno
                )

    try:
        graph = build_graph(
            orientation,
            [(vid, w) for _, vid, w in vertex_lines],
            [(a, b) for _, a, b in edge_lines],
        )
        return make_position(graph, start_id, ruleset, convention)
    except (GraphError, InvalidPositionError, UnsupportedRulesError) as exc:
        raise ParseError(str(exc)) from exc


def serialize(pos: Position) -> str:
    """Canonical text form; ``parse_instance(serialize(p))`` equals ``p``."""
    g = pos.graph
    lines = [
        f"game {pos.ruleset.value} {pos.convention.value}",
        f"graph {'directed' if g.directed else 'undirected'}",
    ]
    for v in g.vertices():
        lines.append(f"v {v} {g.weight(v)}")
    for a, b in g.edges():
        lines.append(f"e {a} {b}")
    lines.append(f"start {pos.current}")
    return "\n".join(lines) + "\n"


def to_dot(g: GameGraph, current: str | None = None) -> str:
    """One-way DOT export for visualization."""
    name = "digraph" if g.directed else "graph"
    arrow = "->" if g.directed else "--"
    lines = [f"{name} vertexnim {{"]
    for v in g.vertices():
        shape = ', shape="doublecircle"' if v == current else ""
        lines.append(f'  "{v}" [label="{v}:{g.weight(v)}"{shape}];')
    for a, b in g.edges():
        lines.append(f'  "{a}" {arrow} "{b}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
