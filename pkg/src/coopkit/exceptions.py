"""Custom exceptions for coopkit.

Exceptions are grouped into families that the command-line interface maps to
exit codes: validation problems (2), parse problems (3), usage problems (4) and
analysis problems (1).
"""

from typing import Any, Optional


class CoopkitError(Exception):
    """Base exception for coopkit.

    All custom exceptions in this package inherit from this base class.
    This allows catching all coopkit-specific errors with a single except clause.

    Attributes:
        message: Human-readable error message.
        error_code: Optional error code for programmatic error handling.
    """

    def __init__(self, message: str, error_code: Optional[str] = None) -> None:
        """Initialize the exception.

        Args:
            message: Human-readable error message.
            error_code: Optional error code for programmatic error handling.
        """
        self.message = message
        self.error_code = error_code
        super().__init__(message)

    def __str__(self) -> str:
        """Return string representation of the error."""
        if self.error_code:
            return f"[{self.error_code}] {self.message}"
        return self.message


# =============================================================================
# Validation errors (exit code 2)
# =============================================================================


class ValidationError(CoopkitError):
    """Input data is well-formed but violates a model invariant."""

    def __init__(
        self, message: str = "Validation failed", error_code: str = "VALIDATION_ERROR"
    ) -> None:
        super().__init__(message, error_code)


class RowNotStochasticError(ValidationError):
    """A belief kernel row has negative entries or does not sum to exactly 1."""

    def __init__(
        self,
        player: Optional[int] = None,
        state: Optional[str] = None,
        total: Any = None,
        message: Optional[str] = None,
    ) -> None:
        self.player = player
        self.state = state
        self.total = total
        if message is None:
            message = "Belief row of player %s at state %s is not stochastic" % (
                player,
                state,
            )
            if total is not None:
                message += " (sum %s)" % total
        super().__init__(message, "ROW_NOT_STOCHASTIC")


class InconsistentBeliefError(ValidationError):
    """A player does not assign probability 1 to their own belief."""

    def __init__(self, player: Optional[int] = None, state: Optional[str] = None) -> None:
        self.player = player
        self.state = state
        super().__init__(
            "Player %s does not know their own belief at state %s" % (player, state),
            "INCONSISTENT_BELIEF",
        )


class UnknownOwnDiscountError(ValidationError):
    """A player does not assign probability 1 to their own discount factor."""

    def __init__(self, player: Optional[int] = None, state: Optional[str] = None) -> None:
        self.player = player
        self.state = state
        super().__init__(
            "Player %s does not know their own discount factor at state %s"
            % (player, state),
            "UNKNOWN_OWN_DISCOUNT",
        )


class BadPriorError(ValidationError):
    """The common prior is not a probability vector over the states."""

    def __init__(self, message: str = "Prior is not a probability vector") -> None:
        super().__init__(message, "BAD_PRIOR")


class PriorInconsistencyError(ValidationError):
    """A belief kernel differs from the prior conditioned on the player's cell."""

    def __init__(self, player: Optional[int] = None, state: Optional[str] = None) -> None:
        self.player = player
        self.state = state
        super().__init__(
            "Belief of player %s at state %s is not the prior conditioned on their type"
            % (player, state),
            "PRIOR_INCONSISTENT",
        )


class BadDiscountError(ValidationError):
    """A discount factor lies outside [0, 1)."""

    def __init__(
        self, player: Optional[int] = None, state: Optional[str] = None, value: Any = None
    ) -> None:
        self.player = player
        self.state = state
        self.value = value
        super().__init__(
            "Discount factor of player %s at state %s is %s, expected a value in [0, 1)"
            % (player, state, value),
            "BAD_DISCOUNT",
        )


class UnknownStateError(ValidationError):
    """An event or kernel refers to a state that is not part of the space."""

    def __init__(self, state: Any = None, message: Optional[str] = None) -> None:
        self.state = state
        super().__init__(message or "Unknown state: %s" % (state,), "UNKNOWN_STATE")


class GameValidationError(ValidationError):
    """The stage game or the designated profiles (sigma, tau) are invalid."""

    def __init__(self, message: str = "Invalid stage game or profile") -> None:
        super().__init__(message, "GAME_INVALID")


# =============================================================================
# Parse errors (exit code 3)
# =============================================================================


class ParseError(CoopkitError):
    """Input document is malformed (bad JSON, floats, missing fields)."""

    def __init__(
        self, message: str = "Failed to parse input", error_code: str = "PARSE_ERROR"
    ) -> None:
        super().__init__(message, error_code)


# =============================================================================
# Usage errors (exit code 4)
# =============================================================================


class UsageError(CoopkitError):
    """The command was invoked with unusable arguments."""

    def __init__(
        self, message: str = "Invalid usage", error_code: str = "USAGE_ERROR"
    ) -> None:
        super().__init__(message, error_code)


class UnknownExampleError(UsageError):
    """A built-in fixture or demo name is not known."""

    def __init__(self, name: str = "", known: tuple = ()) -> None:
        self.name = name
        message = "Unknown example: %s" % name
        if known:
            message += " (known: %s)" % ", ".join(sorted(known))
        super().__init__(message, "UNKNOWN_EXAMPLE")


# =============================================================================
# Analysis errors (exit code 1)
# =============================================================================


class AnalysisError(CoopkitError):
    """An analysis cannot be carried out on the given inputs."""

    def __init__(
        self, message: str = "Analysis failed", error_code: str = "ANALYSIS_ERROR"
    ) -> None:
        super().__init__(message, error_code)


class NotMeasurableError(AnalysisError):
    """An event is not a union of the player's information cells."""

    def __init__(self, player: Optional[int] = None, message: Optional[str] = None) -> None:
        self.player = player
        super().__init__(
            message or "Event is not measurable for player %s" % player,
            "NOT_MEASURABLE",
        )


class NotMeasurableThresholdError(AnalysisError):
    """A threshold function is not constant on the player's information cells."""

    def __init__(self, player: Optional[int] = None, state: Optional[str] = None) -> None:
        self.player = player
        self.state = state
        super().__init__(
            "Threshold of player %s is not constant on the cell of state %s"
            % (player, state),
            "NOT_MEASURABLE_THRESHOLD",
        )


class NoThresholdError(AnalysisError):
    """No discount factor below 1 sustains cooperation."""

    def __init__(self, player: Optional[int] = None) -> None:
        self.player = player
        super().__init__(
            "Cooperation is unsustainable for player %s at every discount factor" % player,
            "NO_THRESHOLD",
        )


class NotContainedInLambdaError(AnalysisError):
    """A candidate event is not contained in the player's cooperation region."""

    def __init__(self, player: Optional[int] = None) -> None:
        self.player = player
        super().__init__(
            "Candidate event of player %s is not contained in the lambda region" % player,
            "NOT_CONTAINED_IN_LAMBDA",
        )


class TooLargeError(AnalysisError):
    """Exhaustive enumeration would exceed the configured budget."""

    def __init__(self, required: int = 0, budget: int = 0) -> None:
        self.required = required
        self.budget = budget
        super().__init__(
            "Enumeration needs %s candidate pairs, budget is %s" % (required, budget),
            "TOO_LARGE",
        )


class NoPriorError(AnalysisError):
    """The operation needs a common prior and the space has none."""

    def __init__(self, message: str = "Belief space has no common prior") -> None:
        super().__init__(message, "NO_PRIOR")


class NotTwoByTwoError(AnalysisError):
    """The operation is defined for two-action stage games only."""

    def __init__(self, shape: tuple = ()) -> None:
        self.shape = shape
        super().__init__(
            "Stage game must be 2x2, got %s" % "x".join(str(n) for n in shape),
            "NOT_TWO_BY_TWO",
        )


class EpsilonTooSmallError(AnalysisError):
    """The tolerated gain is smaller than the scaled belief tolerance."""

    def __init__(self, eps_prime: Any = None, required: Any = None) -> None:
        self.eps_prime = eps_prime
        self.required = required
        super().__init__(
            "eps' = %s is below the required minimum %s" % (eps_prime, required),
            "EPSILON_TOO_SMALL",
        )


class UnknownNatureStateError(AnalysisError):
    """No state of the world carries the requested discount-factor pair."""

    def __init__(self, nature: Any = None) -> None:
        self.nature = nature
        super().__init__("No state carries discount factors %s" % (nature,), "UNKNOWN_NATURE_STATE")


class FixedPointError(AnalysisError):
    """A fixed-point iteration broke its monotonicity or round bound."""

    def __init__(self, message: str = "Fixed-point iteration failed") -> None:
        super().__init__(message, "FIXED_POINT_ERROR")


class ExportError(CoopkitError):
    """Report export failed.

    Raised when writing a report to file or console fails due to I/O errors,
    permission issues, or formatting problems.
    """

    def __init__(
        self, message: str = "Report export failed", error_code: str = "EXPORT_ERROR"
    ) -> None:
        super().__init__(message, error_code)
