"""Exception hierarchy.

Every error carries a machine-readable ``code`` and maps onto a CLI exit code:
2 for bad input, 3 for a violated mathematical hypothesis, 4 for an outcome
that contradicts fiber constancy of theta or Tor-rigidity.
"""

from __future__ import annotations


class ThetaForgeError(Exception):
    exit_code = 2

    def __init__(self, code: str, message: str, **details):
        super().__init__(f"{code}: {message}")
        self.code = code
        self.message = message
        self.details = details

    def to_json(self) -> dict:
        out = {"error": self.code, "message": self.message}
        out.update({k: v for k, v in self.details.items() if v is not None})
        return out


class InputError(ThetaForgeError):
    exit_code = 2


class ParseError(InputError):
    def __init__(self, code: str, message: str, line: int, column: int, source: str | None = None):
        super().__init__(code, f"{message} (line {line}, column {column})",
                         line=line, column=column, source=source)
        self.line = line
        self.column = column


class HypothesisError(ThetaForgeError):
    """A finiteness / isolated-singularity hypothesis failed for the input."""

    exit_code = 3


class ContradictionError(ThetaForgeError):
    """Raised on NONCONSTANT theta across fibers or a rigidity VIOLATION."""

    exit_code = 4
