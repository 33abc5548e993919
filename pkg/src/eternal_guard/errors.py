"""Exception types shared across the package."""


class EternalGuardError(Exception):
    """Base class for all package errors."""


class ConfigError(EternalGuardError, ValueError):
    """A guard configuration is malformed for the requested game variant.

    Raised for structural problems (bad length, negative counts, counts above
    the per-vertex cap); distinct from a well-formed configuration that merely
    fails the dominating condition, which is reported as False.
    """


class IllegalMoveError(EternalGuardError, ValueError):
    """A defense move is illegal; carries the offending (from, to) pair."""

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class IllegalAttackError(EternalGuardError, ValueError):
    """The attacked vertex is not a legal attack target."""


class CapabilityError(EternalGuardError, RuntimeError):
    """An instance exceeds a documented brute-force limit or budget."""

    def __init__(self, message, estimate=None, limit=None):
        super().__init__(message)
        self.estimate = estimate
        self.limit = limit


class GraphFormatError(EternalGuardError, ValueError):
    """A graph or attack-script file failed to parse; carries the line number."""

    def __init__(self, message, line=None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class InvariantViolation(EternalGuardError, RuntimeError):
    """A verified invariant failed (e.g. a vertex with domination index != 1)."""
