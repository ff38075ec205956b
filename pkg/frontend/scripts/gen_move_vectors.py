"""Generate move-legality vectors for the client-side validator tests.

Each vector pairs a game-state snapshot (in the service wire shape) with
the full legal move list from the rules engine.  Run from the repo root:

    python3 frontend/scripts/gen_move_vectors.py > frontend/test/fixtures/move_vectors.json
"""

from __future__ import annotations

import json
import sys

from vertexnim import Envelope, Ruleset, enumerate_instances
from vertexnim.rules import TerminalStatus, legal_moves, terminal_status


def state_json(pos) -> dict:
    g = pos.graph
    return {
        "orientation": "directed" if g.directed else "undirected",
        "ruleset": pos.ruleset.value,
        "convention": pos.convention.value,
        "vertices": [
            {"id": v, "weight": g.weight(v), "loop": g.has_loop(v)}
            for v in g.vertices()
        ],
        "edges": [[a, b] for a, b in g.edges() if a != b],
        "current": pos.current,
        "to_move": "human",
        "status": "ongoing",
        "winner": None,
    }


def main() -> None:
    vectors = []
    envelopes = [
        Envelope("undirected", max_vertices=3, max_weight=3),
        Envelope("directed", max_vertices=3, max_weight=2),
        Envelope("undirected", ruleset=Ruleset.STOCKMAN, max_vertices=3, max_weight=2),
    ]
    for env in envelopes:
        for i, pos in enumerate(enumerate_instances(env)):
            if i % 17 != 0:  # thin the stream; variety beats volume here
                continue
            if terminal_status(pos) is not TerminalStatus.NONTERMINAL:
                moves = []
            else:
                moves = [
                    [m.reduce_to, "end" if m.destination is None else m.destination]
                    for m in legal_moves(pos)
                ]
            vectors.append({"state": state_json(pos), "legal": moves})
    json.dump(vectors, sys.stdout, indent=1)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
