"""Error taxonomy shared by the library and the CLI.

Exit-code mapping used by the CLI: usage errors exit 2, capacity errors
exit 3, failed mathematical checks (e.g. a median violation) exit 4.
"""


class WorkbenchError(Exception):
    """Base class for all workbench errors."""

    exit_code = 1


class UsageError(WorkbenchError):
    """Caller passed inconsistent or malformed arguments."""

    exit_code = 2


class ConfigurationError(UsageError):
    """A group or graph specification is malformed (e.g. a raag defining
    graph with loops or duplicate edges)."""


class CapacityError(WorkbenchError):
    """A computation would exceed the configured element cap.

    The message always names the offending radius so that callers can
    retry with a smaller ball or raise the cap.
    """

    exit_code = 3


class CheckError(WorkbenchError):
    """A verified mathematical property failed to hold."""

    exit_code = 4


class MedianViolationError(CheckError):
    """A triple of vertices whose interval intersection is not a singleton.

    Carries the witnessing triple and the offending intersection set.
    """

    def __init__(self, message, triple=None, intersection=None):
        super().__init__(message)
        self.triple = triple
        self.intersection = intersection
