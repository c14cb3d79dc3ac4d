"""Shared result values and error types."""

from __future__ import annotations


class _EmptyType:
    """Marker for a generically empty subscheme.

    A distinct value rather than -1, so that arithmetic on dimensions can
    never silently absorb an empty result.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "EMPTY"

    def __bool__(self) -> bool:
        return False


EMPTY = _EmptyType()


class SizeLimitError(ValueError):
    """Raised when an exact exponential search exceeds its size bound."""


class BudgetExceededError(RuntimeError):
    """Raised when the oracle's pair queue exceeds its configured cap.

    Carries partial statistics so a caller can report how far the
    computation got.
    """

    def __init__(self, message: str, stats: dict | None = None):
        super().__init__(message)
        self.stats = dict(stats or {})


class NotQCartierError(ValueError):
    """A divisor class hypothesis failed: the class is not Q-Cartier."""

    def __init__(self, degree_index: int):
        super().__init__(f"degree #{degree_index} is not Q-Cartier")
        self.degree_index = degree_index


class UnboundedPolytopeError(ValueError):
    """An inequality system that was expected to be bounded is not."""
