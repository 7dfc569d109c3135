"""Shared exception types."""


class StructuralError(ValueError):
    """Malformed or mismatched inputs: wrong level, arity, flavor, copy set,
    an invalid index sequence, or a generator with no assigned image."""


class DomainError(ArithmeticError):
    """Input outside the mathematical domain of the operation, e.g. dividing
    by an element of norm zero."""
