"""Shared exception types."""


class ResourceLimitError(RuntimeError):
    """A requested computation exceeds its configured size cap.

    Raised instead of silently truncating a sum or table.
    """


class InternalConsistencyError(RuntimeError):
    """An exact invariant that should hold by construction was violated.

    Signals a bug in this library (or a numerical evaluator drifting far
    beyond its contract), never a property of the inputs.
    """
