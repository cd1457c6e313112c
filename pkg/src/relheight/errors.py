"""Exception types shared across the package."""


class RelHeightError(Exception):
    """Base class for all package errors."""


class ZeroPolynomialError(RelHeightError):
    """An operation received the zero polynomial ("zero input")."""


class DegreeLimitError(RelHeightError):
    """A degree cap was exceeded ("degree limit")."""


class NotAFieldError(RelHeightError):
    """A defining polynomial was reducible ("not a field")."""


class CertificationFailure(RelHeightError):
    """Root certification did not succeed within the iteration budget."""


class PrecisionExhausted(RelHeightError):
    """Precision escalation hit its ceiling without resolving an ambiguity."""


class HypothesisViolation(RelHeightError):
    """A theorem's stated hypothesis does not hold for the given inputs."""


class DomainError(RelHeightError):
    """An argument lies outside the mathematical domain of the operation."""


class InputError(RelHeightError):
    """Malformed user input (corpus parse errors and the like)."""
