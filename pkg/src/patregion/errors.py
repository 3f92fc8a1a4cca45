"""Exception types shared across the package."""


class PatternError(ValueError):
    """Malformed permutation, pattern set or index input."""


class CapExceeded(RuntimeError):
    """A configured resource cap (enumeration size, cycle count) was hit.

    Raised instead of returning a truncated result.
    """


class InvariantViolation(RuntimeError):
    """A proven structural property failed to hold; signals a bug."""


class Infeasible(Exception):
    """A linear program has no feasible point."""
