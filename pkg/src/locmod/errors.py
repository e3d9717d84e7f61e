"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input was well-formed but violates a mathematical precondition.

    The CLI maps this to exit status 1.
    """


class CapExceeded(DomainError):
    """An enumeration would exceed a configured size cap."""
