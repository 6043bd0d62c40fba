"""Exception hierarchy shared by all modules."""


class GraphAnonError(Exception):
    """Base class for package errors."""


class ParameterError(GraphAnonError, ValueError):
    """Invalid argument or input data (CLI exit code 2)."""


class ParseError(ParameterError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class BudgetError(GraphAnonError):
    """An exhaustive search would exceed its enumeration budget (CLI exit code 3)."""


class CapabilityError(GraphAnonError):
    """Input is outside what an exact routine supports (CLI exit code 3)."""
