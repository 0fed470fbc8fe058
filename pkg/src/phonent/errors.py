"""Exception types shared across the package."""


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class ValidationError(ValueError):
    """Malformed physical parameters, configuration or density matrix."""


class TruncationError(RuntimeError):
    """A mode sum could not reach the requested tolerance.

    Attributes
    ----------
    achieved : float
        Tail bound reached with the largest permitted number of terms.
    terms : int
        Number of terms that were used.
    """

    def __init__(self, message, achieved, terms):
        super().__init__(message)
        self.achieved = achieved
        self.terms = terms


class ResourceError(RuntimeError):
    """A brute-force computation would exceed its size guard."""
