"""Semantic exceptions shared across the package."""


class ValidationError(ValueError):
    """An input violates a documented contract (bad config, bad document,
    precondition failure). Maps to exit code 2 in the command line tool."""


class NumericsError(RuntimeError):
    """A computation produced non-finite values and was aborted."""
