"""Constructive complexity reductions, cross-checked by exact brute force.

Hitting-set instances translate into monomial supports on the standard
simplex whose generic codimension equals the minimum hitting set size; the
knapsack connection on weighted projective spaces is demonstrated by
reporting both sides without asserting their equality (border cases of
the published claim are logged, not hidden).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from toridim.base import EMPTY, SizeLimitError, _EmptyType
from toridim.exactlin import IntVector
from toridim.polytopal import (
    polytopal_dimension,
    polytopal_system,
    semigroup_member,
    standard_simplex,
    weighted_monomials,
    weighted_simplex,
)

BRUTE_FORCE_GROUND_LIMIT = 24


@dataclass(frozen=True)
class SetSystem:
    """A hitting-set instance: nonempty subsets of {0, ..., ground-1}."""

    ground: int
    sets: tuple[frozenset[int], ...]


def set_system(ground: int, sets: Iterable[Iterable[int]]) -> SetSystem:
    if ground < 1:
        raise ValueError("ground must have at least one point")
    out = []
    for s in sets:
        fs = frozenset(int(i) for i in s)
        if not fs:
            raise ValueError("sets must be nonempty")
        if any(i < 0 or i >= ground for i in fs):
            raise ValueError(f"set {sorted(fs)} leaves the ground range")
        out.append(fs)
    return SetSystem(ground, tuple(out))


def hitting_supports(
    system: SetSystem, rng: random.Random | None = None
) -> tuple[IntVector, ...]:
    """One monomial of total degree ``ground`` per set, with positive
    exponent exactly on the set's points.

    The canonical choice puts all excess degree on the least point; pass
    an rng to spread the excess randomly instead (any valid choice obeys
    the reduction).
    """
    n_plus_1 = system.ground
    out = set()
    for s in system.sets:
        v = [0] * n_plus_1
        for i in s:
            v[i] = 1
        excess = n_plus_1 - len(s)
        if rng is None:
            v[min(s)] += excess
        else:
            members = sorted(s)
            for _ in range(excess):
                v[rng.choice(members)] += 1
        out.add(tuple(v))
    return tuple(sorted(out))


def min_hitting_set(system: SetSystem) -> int:
    """Exact minimum size of a subset meeting every set.

    Exhaustive over subsets by increasing cardinality with bitmask tests;
    guarded to grounds of at most 24 points.
    """
    if system.ground > BRUTE_FORCE_GROUND_LIMIT:
        raise SizeLimitError(
            f"ground {system.ground} exceeds the exact-search bound "
            f"{BRUTE_FORCE_GROUND_LIMIT}"
        )
    if not system.sets:
        return 0
    masks = [sum(1 << i for i in s) for s in system.sets]
    candidates = sorted(set().union(*system.sets))
    for size in range(0, len(candidates) + 1):
        for combo in itertools.combinations(candidates, size):
            chosen = sum(1 << i for i in combo)
            if all(chosen & m for m in masks):
                return size
    raise AssertionError("the whole ground always hits")


@dataclass(frozen=True)
class HittingReduction:
    min_hitting: int
    codimension: int
    agree: bool


def hitting_reduction(
    system: SetSystem, rng: random.Random | None = None
) -> HittingReduction:
    """Run both sides of the reduction: brute-force minimum hitting set
    versus the generic codimension of ``ground`` copies of the derived
    support on the standard simplex."""
    if not system.sets:
        raise ValueError("need at least one set")
    n = system.ground - 1
    supports = hitting_supports(system, rng)
    copies = system.ground
    psys = polytopal_system(
        standard_simplex(n), (system.ground,) * copies, (supports,) * copies
    )
    dim = polytopal_dimension(psys)
    codim = n + 1 if isinstance(dim, _EmptyType) else n - dim
    hit = min_hitting_set(system)
    return HittingReduction(hit, codim, hit == codim)


@dataclass(frozen=True)
class KnapsackReport:
    """Both sides of the knapsack connection, reported without asserting
    the published biconditional (border cases disagree)."""

    positive_solution: bool
    hypersurface_dim: int | _EmptyType
    degree_has_monomials: bool
    sides_agree: bool | None


def knapsack_demo(weights: Sequence[int], target: int) -> KnapsackReport:
    """All-positive knapsack solvability next to the generic hypersurface
    dimension of a full-support form of that weighted degree."""
    a = tuple(int(w) for w in weights)
    if any(w <= 0 for w in a):
        raise ValueError("weights must be positive")
    if target < 1:
        raise ValueError("target must be at least 1")
    shifted = target - sum(a)
    positive = shifted >= 0 and semigroup_member(tuple(sorted(set(a))), shifted)

    mons = weighted_monomials(a, target)
    if not mons:
        return KnapsackReport(positive, EMPTY, False, None)
    psys = polytopal_system(weighted_simplex(a), (target,), (mons,))
    dim = polytopal_dimension(psys)
    n = len(a) - 1
    agree = positive == (dim == n - 1)
    return KnapsackReport(positive, dim, True, agree)
