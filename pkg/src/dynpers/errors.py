"""Exception types shared across the package."""


class UsageError(ValueError):
    """A precondition on an operation was violated (bad vertex, bad threshold, ...)."""


class FormatError(ValueError):
    """A field file could not be parsed; the message names the offending location."""


class DivergenceError(RuntimeError):
    """The two pairing computations disagreed on the same field."""
