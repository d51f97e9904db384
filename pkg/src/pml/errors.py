"""Exception types shared across the toolkit."""


class PmlError(Exception):
    """Base class for all toolkit errors."""


class ParseError(PmlError):
    """Raised on malformed formula text. Carries a 1-based line and column."""

    def __init__(self, message, line=1, column=1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.message = message
        self.line = line
        self.column = column


class ModelFormatError(PmlError):
    """Raised on malformed model documents. ``location`` is a JSON-path-like string."""

    def __init__(self, message, location=""):
        suffix = f" at {location}" if location else ""
        super().__init__(f"{message}{suffix}")
        self.message = message
        self.location = location


class BudgetError(PmlError):
    """Raised when a requested search would exceed its configured budget."""

    def __init__(self, message, estimate=None, budget=None):
        if estimate is not None and budget is not None:
            message = f"{message} (needs {estimate}, budget {budget})"
        super().__init__(message)
        self.estimate = estimate
        self.budget = budget


class IllegalMoveError(PmlError):
    """Raised when a game move violates a rule. ``rule`` names the violated rule."""

    def __init__(self, message, rule):
        super().__init__(message)
        self.rule = rule


class EvalError(PmlError):
    """Raised when a formula cannot be evaluated against a model."""


class UnsupportedConstructError(PmlError):
    """Raised when a translation meets a construct outside its source fragment."""
