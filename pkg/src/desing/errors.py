"""Typed errors shared across the engine."""


class DesingError(Exception):
    """Base class for all engine errors."""


class ResourceBudgetExceeded(DesingError):
    """A configured resource cap was hit; computation was aborted, never truncated.

    `budget` names the cap that fired ("max_spairs", "max_coeff_bits" or
    "max_steps").
    """

    def __init__(self, budget: str, limit: int, message: str = ""):
        self.budget = budget
        self.limit = limit
        super().__init__(message or f"budget {budget} (limit {limit}) exceeded")


class RingMismatch(DesingError):
    """Operands live in polynomial rings with different variable counts."""


class ParseError(DesingError):
    """Positioned error from the polynomial / problem-file parser."""

    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"{message} (line {line}, column {column})")


class AlgorithmError(DesingError):
    """An internal contract of the resolution algorithm was violated.

    These are hard errors: they signal a bug (or a broken precondition the
    staging was supposed to guarantee), not bad user input.
    """


class VerificationError(DesingError):
    """A theorem-level certificate failed on a completed tree."""
