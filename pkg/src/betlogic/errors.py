"""Exception hierarchy shared by every betlogic module."""

from __future__ import annotations


class ReasonerError(Exception):
    """Base class for all errors raised by betlogic."""


class ParseError(ReasonerError, ValueError):
    """Malformed sentence or assertion text.

    ``position`` is the 0-based character offset of the offending token,
    ``expected`` the set of token descriptions that would have been accepted.
    """

    def __init__(self, message: str, position: int, expected=(), found: str | None = None):
        self.position = position
        self.expected = frozenset(expected)
        self.found = found
        self.reason = message
        detail = f"syntax error at offset {position}: {message}"
        if self.expected:
            detail += f" (expected one of: {', '.join(sorted(self.expected))})"
        super().__init__(detail)


class UnknownAtomError(ReasonerError, LookupError):
    def __init__(self, atoms):
        self.atoms = tuple(sorted(atoms))
        super().__init__(f"unknown atom(s): {', '.join(self.atoms)}")


class ZeroEvidenceError(ReasonerError, ArithmeticError):
    """Conditioning on evidence that has probability 0 under the density."""

    def __init__(self, evidence: str):
        self.evidence = evidence
        super().__init__(f"evidence has probability 0: {evidence}")


class ContradictionError(ZeroEvidenceError):
    """A told fact is impossible given the density and the evidence so far."""

    def __init__(self, fact: str, evidence: str):
        self.fact = fact
        ReasonerError.__init__(
            self, f"contradiction: {fact!s} has probability 0 given {evidence!s}"
        )
        self.evidence = evidence


class InvalidDensityError(ReasonerError, ValueError):
    def __init__(self, report, message: str | None = None):
        self.report = report
        super().__init__(message or "invalid density:\n  " + "\n  ".join(
            v.message for v in report.violations))


class KBSyntaxError(ReasonerError, ValueError):
    """Malformed knowledge-base file; ``line`` and ``column`` are 1-based."""

    def __init__(self, message: str, line: int, column: int = 1, path: str | None = None):
        self.line = line
        self.column = column
        self.path = path
        where = f"{path}:" if path else "line "
        super().__init__(f"{where}{line}:{column}: {message}")
