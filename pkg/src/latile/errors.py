class DomainError(ValueError):
    """Raised when an input violates an operation's mathematical precondition."""
