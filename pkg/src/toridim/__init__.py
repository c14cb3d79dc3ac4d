"""toridim: generic dimensions of sparse systems over complete toric varieties.

Everything is decided by exact combinatorics over arbitrary-precision
integers and rationals; an independent Groebner oracle is available for
cross-validation on weighted and standard gradings.
"""

from toridim.base import (
    EMPTY,
    BudgetExceededError,
    NotQCartierError,
    SizeLimitError,
    UnboundedPolytopeError,
)

__version__ = "0.1.0"

__all__ = [
    "EMPTY",
    "BudgetExceededError",
    "NotQCartierError",
    "SizeLimitError",
    "UnboundedPolytopeError",
    "__version__",
]
