class DomainError(ValueError):
    """Raised when an input lies outside an operation's domain."""


class UnboundedQueryError(DomainError):
    """Raised for class enumerations whose level set is infinite."""
