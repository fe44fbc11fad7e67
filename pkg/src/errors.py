"""Exception hierarchy shared by every pqstab module."""

from typing import Optional


class PQStabError(Exception):
    """Base class for all pqstab failures."""


class InadmissibleParametersError(PQStabError, ValueError):
    """(p, q) is not admissible for the Helly number in use."""

    def __init__(self, h: int, p: int, q: int):
        self.h = h
        self.p = p
        self.q = q
        super().__init__(
            f"(p, q) = ({p}, {q}) is not admissible for h = {h}: "
            f"need p >= q >= h and (h-2)p < (h-1)(q-1)"
        )


class EmptyRegionError(PQStabError, ValueError):
    """A minimum was requested from an empty set."""


class PreconditionError(PQStabError, ValueError):
    """An operation was called outside its precondition."""

    def __init__(self, message: str, set_index: Optional[int] = None):
        self.set_index = set_index
        if set_index is not None:
            message = f"{message} (set index {set_index})"
        super().__init__(message)


class PromiseViolationError(PQStabError):
    """The input does not satisfy the promise a promise algorithm relies on."""


class GeneralPositionError(PQStabError):
    """Two candidate minima share the x-coordinate of a maximum."""


class InconsistentDecisionError(PQStabError):
    """The decider reported an improvement the recursion did not produce."""


class NonShrinkingSplitError(PQStabError):
    """A splitter returned a subproblem that is not smaller than allowed."""


class SizeGuardError(PQStabError):
    """An exponential oracle refused to run above its configured bound."""

    def __init__(self, guard: str, limit: int, needed: Optional[int] = None):
        self.guard = guard
        self.limit = limit
        self.needed = needed
        detail = f" (needs {needed})" if needed is not None else ""
        super().__init__(f"size guard '{guard}' refused: limit {limit}{detail}")


class SweepDegeneracyError(PQStabError):
    """The sweep status lost its ordering invariant."""


class InstanceFormatError(PQStabError, ValueError):
    """An instance or result document failed to parse or validate."""

    def __init__(self, message: str, context: Optional[str] = None):
        self.context = context
        if context:
            message = f"{context}: {message}"
        super().__init__(message)
