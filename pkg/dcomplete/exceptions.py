"""Custom exceptions for the d-complete poset toolkit.

This module defines the exception hierarchy used throughout the library to
report malformed posets, invalid parameters, unreadable input files and
broken theorem-level invariants.
"""

from __future__ import annotations

from typing import Optional, Sequence


class DCompleteError(Exception):
    """Base exception for all dcomplete errors.

    All custom exceptions in this library inherit from this base class,
    allowing users to catch every library error with a single except block.
    """

    pass


class PosetError(DCompleteError):
    """Base exception for poset construction and order query errors."""

    pass


class CycleDetectedError(PosetError):
    """Raised when the supplied cover relation contains a directed cycle."""

    def __init__(self, cycle: Sequence[str]) -> None:
        """Initialize the exception with the elements on the cycle.

        Args:
            cycle: Elements found on (or feeding) a directed cycle.
        """
        self.cycle = tuple(cycle)
        super().__init__(
            "Cover relation is not acyclic; elements on a cycle: "
            + ", ".join(self.cycle)
        )


class RedundantCoverError(PosetError):
    """Raised when a cover pair is implied by a longer path.

    Only raised when automatic transitive reduction is disabled.
    """

    def __init__(self, lower: str, upper: str) -> None:
        self.lower = lower
        self.upper = upper
        super().__init__(
            f"Cover ({lower}, {upper}) is implied by a longer chain; "
            "the cover relation must be a transitive reduction"
        )


class UnknownElementError(PosetError):
    """Raised when an element id is not part of the poset."""

    def __init__(self, element: str) -> None:
        self.element = element
        super().__init__(f"Unknown element: {element!r}")


class DuplicateElementError(PosetError):
    """Raised when an element id is listed more than once."""

    def __init__(self, element: str) -> None:
        self.element = element
        super().__init__(f"Duplicate element: {element!r}")


class NotComparableError(PosetError):
    """Raised when an interval [lower, upper] is requested with lower not <= upper."""

    def __init__(self, lower: str, upper: str) -> None:
        self.lower = lower
        self.upper = upper
        super().__init__(f"{lower!r} is not below or equal to {upper!r}")


class NoUniqueMaxError(PosetError):
    """Raised when an operation needs a connected poset with a unique maximum."""

    def __init__(self, maximal: Sequence[str]) -> None:
        self.maximal = tuple(maximal)
        super().__init__(
            "Poset must be connected with a unique maximal element; "
            f"maximal elements: {list(self.maximal)}"
        )


class PosetTooLargeError(PosetError):
    """Raised when a poset exceeds the size bound of an exponential routine."""

    def __init__(self, size: int, limit: int) -> None:
        self.size = size
        self.limit = limit
        super().__init__(f"Poset has {size} elements; limit is {limit}")


class InvalidKError(DCompleteError):
    """Raised when a structure index k is below 3."""

    def __init__(self, k: Optional[int]) -> None:
        self.k = k
        super().__init__(f"k must be an integer >= 3, got {k!r}")


class NotDCompleteError(DCompleteError):
    """Raised when an audit that is only claimed for d-complete posets gets another."""

    def __init__(self, reason: str) -> None:
        self.reason = reason
        super().__init__(f"Poset is not d-complete: {reason}")


class GeneratorError(DCompleteError):
    """Base exception for poset family generators."""

    pass


class InvalidPartitionError(GeneratorError):
    """Raised when partition parts are not (strictly) decreasing positive integers."""

    pass


class InvalidTreeError(GeneratorError):
    """Raised when a parent mapping does not describe a rooted tree."""

    pass


class NotUpClosedError(GeneratorError):
    """Raised when a filter is requested for a subset that is not up-closed."""

    def __init__(self, element: str, above: str) -> None:
        self.element = element
        self.above = above
        super().__init__(
            f"Subset is not up-closed: contains {element!r} but not {above!r}"
        )


class EnumerationCapError(GeneratorError):
    """Raised when exhaustive enumeration is requested beyond the configured cap."""

    def __init__(self, n: int, cap: int) -> None:
        self.n = n
        self.cap = cap
        super().__init__(
            f"Exhaustive enumeration requested for n={n}; cap is {cap} "
            "(set DCOMPLETE_ENUM_CAP to raise it)"
        )


class FileValidationError(DCompleteError):
    """Raised when input file validation fails.

    This can occur when:
    - The input file does not exist
    - The path is a directory
    - The file extension does not map to a known poset format
    """

    pass


class ParseError(DCompleteError):
    """Raised when a poset file cannot be parsed.

    Carries the source name and, where known, the 1-based line and column.
    """

    def __init__(
        self,
        message: str,
        source: Optional[str] = None,
        line: Optional[int] = None,
        position: Optional[int] = None,
    ) -> None:
        self.source = source
        self.line = line
        self.position = position

        location = source or "<input>"
        if line is not None:
            location += f":{line}"
            if position is not None:
                location += f":{position}"
        super().__init__(f"{location}: {message}")


class OutputFormatError(DCompleteError):
    """Raised when output formatting fails.

    This can occur when:
    - The specified output format is not supported
    - Output file cannot be written
    """

    def __init__(self, message: str, format_name: Optional[str] = None) -> None:
        self.format_name = format_name
        if format_name:
            message = f"[{format_name}] {message}"
        super().__init__(message)


class InvariantBreachError(DCompleteError):
    """Raised when a theorem-guaranteed invariant fails.

    Examples are a disagreement between the five d-completeness criteria or a
    violated row of a theorem table. Such a failure is an implementation bug,
    not a property of the input.
    """

    pass


class ConfigurationError(DCompleteError):
    """Raised when an environment variable or option combination is invalid."""

    pass
