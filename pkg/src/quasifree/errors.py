"""Exception types shared across the toolkit.

Every error carries the originating module and, when available, the query
that failed, so batch runs can report machine-readable diagnostics.
"""

from __future__ import annotations


class ToolkitError(Exception):
    def __init__(self, message: str, *, module: str | None = None, query=None):
        super().__init__(message)
        self.module = module
        self.query = query

    def payload(self) -> dict:
        out = {"message": str(self), "kind": type(self).__name__}
        if self.module is not None:
            out["module"] = self.module
        if self.query is not None:
            out["query"] = self.query
        return out


class PreconditionError(ToolkitError):
    """An operation was invoked outside its stated preconditions."""


class FeatureError(ToolkitError):
    """The requested combination of inputs is outside the supported families."""


class ConstructionError(ToolkitError):
    """A constructive search failed (carries the failing sub-query)."""


class ResourceLimitError(ToolkitError):
    """A configured expansion or enumeration cap was exceeded."""


class PrecisionError(ToolkitError):
    """Interval enclosures too coarse to decide a provably nonzero sign."""


class InternalCheckError(ToolkitError):
    """A self-verification identity failed; indicates a bug, not bad input."""


# CLI exit codes: 0 success, 2 precondition/feature, 3 resource, 4 precision.
EXIT_CODE = {
    PreconditionError: 2,
    FeatureError: 2,
    ConstructionError: 2,
    ResourceLimitError: 3,
    PrecisionError: 4,
}


def exit_code_for(exc: BaseException) -> int:
    for cls, code in EXIT_CODE.items():
        if isinstance(exc, cls):
            return code
    if isinstance(exc, ValueError):
        return 2
    return 1
