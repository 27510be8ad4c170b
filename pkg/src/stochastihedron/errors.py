"""Exception types shared across the library."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class CapacityError(RuntimeError):
    """The requested computation exceeds the configured desk-scale limits."""


class StructuralError(ValueError):
    """A composite object (representation, JSON payload) is malformed."""
