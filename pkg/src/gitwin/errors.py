"""Exception hierarchy for gitwin.

The CLI maps these onto exit codes: user-facing input and precondition
problems exit 2, internal inconsistencies exit 1.
"""

from __future__ import annotations


class GitwinError(Exception):
    """Base class for all gitwin errors."""


class InputError(GitwinError):
    """Malformed or out-of-contract user input (shapes, parsing, validation)."""


class DimensionMismatchError(InputError):
    """Vectors or matrices of incompatible lengths were combined."""


class PreconditionError(GitwinError):
    """Structurally valid input that violates a documented precondition
    (e.g. a wall-crossing request at a point that is not on a wall)."""


class InternalError(GitwinError):
    """An invariant the library itself guarantees was violated; a bug."""
