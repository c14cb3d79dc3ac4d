"""Essential families of lattice point sets and generic torus dimension.

A family is essential when every nonempty subfamily has Minkowski-sum
affine span of dimension at least its size; extremal-generic systems with
essential supports cut the torus properly, and non-essential ones miss the
torus entirely.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from toridim.base import EMPTY
from toridim.exactlin import IntVector, integer_row_basis

PointSet = tuple[IntVector, ...]


@dataclass(frozen=True)
class PointFamily:
    """An ordered family (multiset) of finite point sets in one lattice,
    with labels remembering the original system indices."""

    sets: tuple[PointSet, ...]
    labels: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.sets)


def point_family(
    sets: Iterable[Iterable[Sequence[int]]], labels: Sequence[int] | None = None
) -> PointFamily:
    normalized = tuple(
        tuple(sorted(tuple(int(x) for x in p) for p in s)) for s in sets
    )
    lengths = {len(p) for s in normalized for p in s}
    if len(lengths) > 1:
        raise ValueError("points of mixed dimension")
    if labels is None:
        labels = tuple(range(len(normalized)))
    else:
        labels = tuple(labels)
        if len(labels) != len(normalized):
            raise ValueError("labels and sets differ in length")
    return PointFamily(normalized, labels)


@lru_cache(maxsize=65536)
def _difference_basis(points: PointSet) -> tuple[IntVector, ...]:
    """Reduced integer basis of the linear span of (points - base point)."""
    if len(points) <= 1:
        return ()
    base = points[0]
    diffs = [tuple(x - b for x, b in zip(p, base)) for p in points[1:]]
    return tuple(integer_row_basis(diffs))


def affine_span_dim(family: PointFamily, indices: Sequence[int]) -> int:
    """Dimension of the affine span of the Minkowski sum over the chosen
    member positions.  That equals the rank of the union of the per-set
    difference spans, so empty members are rejected."""
    rows: list[IntVector] = []
    for i in indices:
        if not family.sets[i]:
            raise ValueError(f"member {i} is empty")
        rows.extend(_difference_basis(family.sets[i]))
    return len(integer_row_basis(rows))


def is_essential(family: PointFamily) -> tuple[bool, tuple[int, ...] | None]:
    """Decide essentiality; on failure give a violating subfamily of
    minimal size (lexicographically least among those).

    The empty family is essential by vacuity.  Exhaustive over all
    nonempty subfamilies, in increasing cardinality with early exit.
    """
    r = len(family.sets)
    for s in family.sets:
        if not s:
            raise ValueError("essentiality requires nonempty sets")
    bases = [_difference_basis(s) for s in family.sets]
    for size in range(1, r + 1):
        for combo in itertools.combinations(range(r), size):
            rows: list[IntVector] = []
            for i in combo:
                rows.extend(bases[i])
            if len(integer_row_basis(rows)) < size:
                return False, tuple(family.labels[i] for i in combo)
    return True, None


def generic_torus_dim(family: PointFamily, ambient_rank: int):
    """Generic dimension over the torus: ``ambient_rank - len(family)``
    when the family is essential, EMPTY otherwise (the ideal is then the
    unit ideal for extremal-generic coefficients)."""
    flag, _ = is_essential(family)
    if not flag:
        return EMPTY
    return ambient_rank - len(family)
