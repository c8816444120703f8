"""Exception hierarchy shared across the engine."""


class StratEngineError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(StratEngineError):
    """Syntax error in formula, rule, definitions file or state literal."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class RuleInFormulaError(ParseError):
    """A strategy-rule connective or rule name was used in formula position."""


class DomainError(StratEngineError):
    """An identifier does not belong to the game or model under evaluation."""


class PreconditionError(StratEngineError):
    """An operation was called outside its stated precondition."""


class NonTerminatingGameError(StratEngineError):
    """The forward-reachable legal-move graph contains a cycle."""

    def __init__(self, cycle):
        self.cycle = cycle
        super().__init__(f"game does not terminate: cycle through {cycle.states[0]}")


class GameFileError(StratEngineError):
    """An explicit game file is malformed or refers to unknown identifiers."""


class TranslationError(StratEngineError):
    """A strategy rule or game cannot be translated to the requested target."""


class SolverUnavailableError(StratEngineError):
    """The configured external ASP solver command could not be executed."""
