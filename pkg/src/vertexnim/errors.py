"""Exception types shared across the package."""


class VertexNimError(Exception):
    """Base class for all errors raised by this package."""


class GraphError(VertexNimError):
    """Malformed graph input: duplicate ids, dangling edges, bad weights."""


class InvalidPositionError(VertexNimError):
    """A position that violates the rules of its ruleset."""


class IllegalMoveError(VertexNimError):
    """A move rejected by the rules engine; the message carries the reason."""


class UnsupportedRulesError(VertexNimError):
    """A rule combination the solvers refuse, e.g. misere Stockman play."""


class TheoremOutOfScopeError(VertexNimError):
    """The instance falls outside the hypotheses of every closed-form solver."""


class BudgetExceededError(VertexNimError):
    """The game-tree oracle was asked to search beyond its configured budget."""


class ParseError(VertexNimError):
    """Instance file could not be parsed; carries a 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message)
        self.line = line

    def __str__(self) -> str:
        base = super().__str__()
        if self.line is not None:
            return f"line {self.line}: {base}"
        return base
