"""Exception hierarchy shared across the package.

Everything user-input related derives from :class:`InputError` so the CLI can
map it to a single exit code; genuine bugs surface as ordinary exceptions.
"""

from __future__ import annotations


class ChronoKgError(Exception):
    """Base class for all package errors."""


class InputError(ChronoKgError):
    """Bad user-supplied data (files, IRIs, CLI arguments)."""


class ParseError(InputError):
    """A fixture or data file line could not be parsed.

    Carries the offending 1-based line number when known.
    """

    def __init__(self, message: str, line: int | None = None, path: str | None = None):
        self.line = line
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


class SchemaError(InputError):
    """A record uses an unknown tag or is structurally invalid for its kind."""


class OrderViolation(InputError):
    """An interval's start is after its end."""


class UnknownGraph(InputError):
    """A named graph is not present in the store."""


class UnknownEntity(InputError):
    """An entity IRI cannot be resolved in the store or graph."""


class UnknownPerson(UnknownEntity):
    """A timeline/benchmark person is absent from the graph."""


class CycleError(InputError):
    """A hierarchy that must be acyclic contains a cycle."""

    def __init__(self, message: str, members: frozenset[str] = frozenset()):
        self.members = members
        super().__init__(message)


class ScopeError(InputError):
    """A date expression cannot be completed from the page's temporal scope."""


class ConflictError(InputError):
    """Contradictory identity information (for example two Wikidata ids)."""


class EmptyTraining(InputError):
    """The training set is empty."""


class DegenerateTraining(InputError):
    """The training set contains a single class only."""


class DimensionMismatch(InputError):
    """A feature vector does not match the model's expected layout."""


class LengthMismatch(InputError):
    """Two parallel sequences differ in length."""


class ZeroVarianceWarning(UserWarning):
    """A correlation input had zero variance; the coefficient is reported as 0."""


class IntegrationWarning(UserWarning):
    """Non-fatal integration issue (identity conflict, hierarchy cycle)."""
