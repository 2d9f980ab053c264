"""Exception hierarchy shared by the whole library."""


class GameError(Exception):
    """Base class for all errors raised by divgame."""


class ParseError(GameError):
    """Malformed input text. Carries the offending position."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column})" if column is not None else ")")
        super().__init__(message + where)


class ValidationError(GameError):
    """Structurally well-formed input that violates a model invariant."""


class GuardLimitError(ValidationError):
    """An exhaustive/oracle routine was asked to exceed its size guard."""


class NotDivergentError(GameError):
    """Solving was refused because the game is not divergent."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InconsistencyError(GameError):
    """An internal certificate failed, e.g. an iteration exceeded its
    stabilisation bound. Signals a non-divergent input or a bug."""
