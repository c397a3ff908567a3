"""Shared exception types."""


class GroupSpecError(ValueError):
    """A group-spec string failed to parse or validate."""

    def __init__(self, message: str, text: str = "", position: int = 0):
        self.position = position
        self.text = text
        if text:
            message = f"{message} (at position {position} in {text!r})"
        super().__init__(message)


class ResourceBoundError(RuntimeError):
    """An enumeration or table exceeded its configured resource bound."""


class SubgroupError(ValueError):
    """H is not a subgroup of G (or uses an incompatible element encoding)."""


class InternalCheckError(AssertionError):
    """Two independent evaluation routes disagreed: an implementation bug."""
