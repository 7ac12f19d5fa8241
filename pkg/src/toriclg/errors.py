"""Error types shared across modules."""


class ConsistencyError(AssertionError):
    """Two independent computations disagree, or a theorem check failed."""
