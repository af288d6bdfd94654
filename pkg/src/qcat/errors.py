"""Shared error types."""


class GuardError(ValueError):
    """A combinatorial guard was exceeded (depth, arity, or size bound).

    The CLI maps this to exit code 1; malformed input raises plain
    ValueError and exits 2.
    """
