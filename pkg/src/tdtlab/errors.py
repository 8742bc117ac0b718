"""Exception hierarchy shared across the workbench.

Every error that crosses a module boundary derives from TdtError so the
CLI and HTTP layers can map failures to exit codes / status codes in one
place.
"""

from __future__ import annotations


class TdtError(Exception):
    """Base class for all workbench errors."""


class ParseError(TdtError):
    """Syntax error in rule text or a constraint expression."""

    def __init__(self, message: str, line: int = 0, col: int = 0, expected: str | None = None):
        self.line = line
        self.col = col
        self.expected = expected
        suffix = f" (line {line}, col {col})" if line else ""
        if expected:
            suffix += f", expected {expected}"
        super().__init__(message + suffix)


class MixedDialect(ParseError):
    """Arithmetic and set vocabulary mixed in a single expression."""


class NoUniqueRoot(TdtError):
    """Rule set has zero or several heads that are never referenced."""


class RecursiveRules(TdtError):
    """Rule heads form a cycle; no tree skeleton exists."""


class MultipleRoots(TdtError):
    """GSN document has more than one spine root."""


class CyclicSupport(TdtError):
    """supported-by edges contain a cycle."""


class ConversionError(TdtError):
    """GSN structure that cannot be mapped onto a derivation tree."""


class MixedCtypes(TdtError):
    """Obligation members do not share a single constraint type."""


class IllFormedQuery(TdtError):
    """Query shape the solver cannot process (e.g. floundering negation)."""


class UnboundSetName(TdtError):
    """Concrete set query references a name with no literal binding."""


class SchemaVersionMismatch(TdtError):
    """Project file carries an unsupported schema version."""


class ValidationFailed(TdtError):
    """Project violates core model invariants."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations) or "validation failed")


class ProviderError(TdtError):
    """The language-model provider returned a failure."""

    def __init__(self, status: int, body: str):
        self.status = status
        self.body = body
        super().__init__(f"provider error {status}: {body[:200]}")


class ReplayMiss(ProviderError):
    """Replay fixture has no entry for the request."""

    def __init__(self, request_hash: str):
        self.request_hash = request_hash
        super(ProviderError, self).__init__(f"no recorded response for request {request_hash}")
        self.status = 0
        self.body = f"replay miss: {request_hash}"


class UnparseableResponse(TdtError):
    """Model response does not follow the labeled-line format."""

    def __init__(self, message: str, offending_line: str | None = None):
        self.offending_line = offending_line
        if offending_line is not None:
            message = f"{message}: {offending_line!r}"
        super().__init__(message)


class MissingPlaceholder(TdtError):
    """Prompt template lacks a required placeholder."""
