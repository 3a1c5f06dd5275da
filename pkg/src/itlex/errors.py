"""Exception classes shared across the package."""

from __future__ import annotations


class ItlexError(Exception):
    """Base class for every error raised by itlex."""


# f-structure parsing

class FStructureError(ItlexError, ValueError):
    """Malformed f-structure text. ``position`` is a character offset."""

    def __init__(self, message: str, position: int | None = None) -> None:
        self.position = position
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


class UnbalancedBrackets(FStructureError):
    pass


class EmptyStructure(FStructureError):
    pass


class IllegalCharacter(FStructureError):
    pass


class NoHead(ItlexError, ValueError):
    """The structure has no bare token at its own level."""


class CorpusError(ItlexError, ValueError):
    """A corpus record could not be read. ``record`` is 1-based."""

    def __init__(self, record: int, message: str) -> None:
        self.record = record
        super().__init__(f"record {record}: {message}")


# networks

class CategoryMismatch(ItlexError, ValueError):
    pass


class LambdaMismatch(ItlexError, ValueError):
    pass


class NotInVocabulary(ItlexError, KeyError):
    def __str__(self) -> str:
        return Exception.__str__(self)


class EmptyVocabulary(ItlexError, ValueError):
    pass


class SmoothingRequired(ItlexError, ValueError):
    """Selection was attempted on a network with lambda == 0."""


class ModelFormatError(ItlexError, ValueError):
    pass


class EmptyTable(ItlexError, ValueError):
    pass
