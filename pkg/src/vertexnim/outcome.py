"""The two-valued outcome of an impartial game position."""

from __future__ import annotations

import enum


class Outcome(str, enum.Enum):
    """``P``: the player to move loses with best play.  ``N``: they win."""

    P = "P"
    N = "N"

    def flipped(self) -> "Outcome":
        return Outcome.N if self is Outcome.P else Outcome.P
