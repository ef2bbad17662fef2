"""Exception types shared across the library."""


class InvalidArgument(ValueError):
    """An input violates a documented precondition."""


class NumericFailure(RuntimeError):
    """A numerical routine failed to converge or produced an unusable result."""
