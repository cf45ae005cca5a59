"""Exception hierarchy.

Input problems derive from :class:`InputError` (the CLI maps them to exit
code 1); numerical breakdowns and route disagreements derive from
:class:`AnalysisError` (exit code 2).
"""


class DbrgError(Exception):
    """Base class for every error raised by the package."""

    def __init__(self, message="", **evidence):
        super().__init__(message)
        self.evidence = evidence

    def record(self):
        """Structured form used by the CLI."""
        return {"type": type(self).__name__, "message": str(self), **_jsonable(self.evidence)}


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [_jsonable(v) for v in items]
    if hasattr(obj, "item"):
        return obj.item()
    return obj


class InputError(DbrgError, ValueError):
    pass


class MalformedLine(InputError):
    pass


class LoopEdge(InputError):
    pass


class Disconnected(InputError):
    pass


class UnknownFamily(InputError):
    pass


class BadParams(InputError):
    pass


class NotBipartite(DbrgError, ValueError):
    """Raised with an odd closed walk ``cycle`` as witness."""


class NotSemiregular(DbrgError, ValueError):
    pass


class NotRegular(DbrgError, ValueError):
    pass


class UnequalEccentricities(DbrgError, ValueError):
    pass


class EigenvalueCountMismatch(DbrgError, ValueError):
    pass


class GirthTooSmall(DbrgError, ValueError):
    pass


class AnalysisError(DbrgError, ArithmeticError):
    pass


class AmbiguousClustering(AnalysisError):
    pass


class InvariantViolation(AnalysisError):
    pass


class NonPositiveEntry(AnalysisError):
    pass


class DegenerateMeasure(AnalysisError):
    pass


class ZeroAtLambda(AnalysisError):
    pass


class CheckFailed(AnalysisError):
    pass


class SupportMismatch(AnalysisError):
    pass


class RouteDisagreement(AnalysisError):
    pass


class FixtureGateFailed(AnalysisError):
    pass
