"""Generic dimension of sparse systems over a complete fan.

One row per torus orbit: which supports survive restriction, whether the
restricted family is essential, and the resulting orbit dimension.  The
global dimension is the maximum over essential rows, or EMPTY.  Complete
intersection and subsystem certificates refine the same table under
effectivity and Q-Cartier hypotheses.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from toridim.base import EMPTY, NotQCartierError, _EmptyType
from toridim.exactlin import dot, solve_integer_affine, solve_rational
from toridim.polyhedra import Fan, enumerate_cones
from toridim.sparse import is_essential, point_family
from toridim.toric import (
    DivisorClass,
    Support,
    class_group,
    effective_rep_vanishing_on,
    restrict_support,
    support,
)


@dataclass(frozen=True)
class SparseSystem:
    """A fan together with one monomial support per equation."""

    fan: Fan
    supports: tuple[Support, ...]

    @property
    def rank(self) -> int:
        return self.fan.rank

    def __len__(self) -> int:
        return len(self.supports)


def sparse_system(fan: Fan, monomial_sets: Sequence) -> SparseSystem:
    """Build a system, validating every support against the fan's grading."""
    supports = tuple(
        s if isinstance(s, Support) else support(fan, s) for s in monomial_sets
    )
    return SparseSystem(fan, supports)


def subsystem(system: SparseSystem, indices: Sequence[int]) -> SparseSystem:
    return SparseSystem(system.fan, tuple(system.supports[i] for i in indices))


@dataclass(frozen=True)
class OrbitRow:
    """Generic behavior of the system on one torus orbit."""

    cone_rays: tuple[int, ...]
    cone_dim: int
    active: tuple[int, ...]  # supports with nonempty restriction
    essential: bool
    orbit_dim: int | _EmptyType


@dataclass(frozen=True)
class DimensionReport:
    rows: tuple[OrbitRow, ...]
    global_dim: int | _EmptyType


@lru_cache(maxsize=4096)
def orbit_table(system: SparseSystem) -> tuple[OrbitRow, ...]:
    """One row per cone of the fan (the zero cone included), in canonical
    order by (cone dimension, ray indices)."""
    fan = system.fan
    n = fan.rank
    rows = []
    for cone in enumerate_cones(fan):
        restricted = [
            restrict_support(fan, supp, cone.rays) for supp in system.supports
        ]
        active = tuple(i for i, pts in enumerate(restricted) if pts)
        family = point_family([restricted[i] for i in active], labels=active)
        essential, _ = is_essential(family)
        if essential:
            orbit_dim: int | _EmptyType = n - cone.dim - len(active)
        else:
            orbit_dim = EMPTY
        rows.append(OrbitRow(cone.rays, cone.dim, active, essential, orbit_dim))
    return tuple(rows)


def generic_dimension(system: SparseSystem) -> int | _EmptyType:
    """Maximum orbit dimension over essential rows; EMPTY when none is."""
    dims = [row.orbit_dim for row in orbit_table(system) if row.essential]
    result: int | _EmptyType = max(dims) if dims else EMPTY
    _check_dimension_bounds(system, result)
    return result


def _check_dimension_bounds(system: SparseSystem, result: int | _EmptyType) -> None:
    """Consistency guards derived from height and ampleness arguments:
    with effective Q-Cartier degrees a nonempty result is at least n - r,
    and with Q-ample degrees and r <= n the result cannot be EMPTY."""
    n, r = system.rank, len(system.supports)
    flags = [class_positivity(system.fan, s.degree) for s in system.supports]
    if all(f.q_cartier and f.effective for f in flags):
        if not isinstance(result, _EmptyType):
            assert result >= n - r, "height bound violated"
    if flags and all(f.ample for f in flags) and r <= n:
        assert not isinstance(result, _EmptyType), "ample degrees gave EMPTY"


def report(system: SparseSystem) -> DimensionReport:
    return DimensionReport(orbit_table(system), generic_dimension(system))


@dataclass(frozen=True)
class CICertificate:
    """Why the system is or is not a complete intersection: one essential
    cone witnessing nonemptiness, plus any cones violating the dimension
    inequality."""

    essential_cone: tuple[int, ...] | None
    violations: tuple[tuple[int, ...], ...]


def _require_q_cartier(system: SparseSystem) -> None:
    for i, supp in enumerate(system.supports):
        if not class_positivity(system.fan, supp.degree).q_cartier:
            raise NotQCartierError(i)


def is_complete_intersection(system: SparseSystem) -> tuple[bool, CICertificate]:
    """Nonempty of dimension exactly n - r, decided combinatorially.

    Requires r <= n and every degree effective and Q-Cartier; refuses to
    answer otherwise since the criterion is only valid under those
    hypotheses.
    """
    n, r = system.rank, len(system.supports)
    if r > n:
        raise ValueError(f"r = {r} exceeds the rank {n}")
    _require_q_cartier(system)
    rows = orbit_table(system)
    violations = tuple(
        row.cone_rays
        for row in rows
        if row.essential and row.cone_dim + len(row.active) < r
    )
    essential_cone = next((row.cone_rays for row in rows if row.essential), None)
    flag = not violations and essential_cone is not None
    return flag, CICertificate(essential_cone, violations)


def all_subsystems_ci(system: SparseSystem) -> tuple[bool, tuple[int, ...] | None]:
    """Does every subsystem cut its expected dimension?

    True iff ``r - |active| <= dim cone`` for every cone; the first
    violating cone (in canonical order) is returned otherwise.  Requires
    the full system to be nonempty with effective Q-Cartier degrees.
    """
    n, r = system.rank, len(system.supports)
    if r > n:
        raise ValueError(f"r = {r} exceeds the rank {n}")
    _require_q_cartier(system)
    if isinstance(generic_dimension(system), _EmptyType):
        raise ValueError("the full system is generically empty")
    for row in orbit_table(system):
        if r - len(row.active) > row.cone_dim:
            return False, row.cone_rays
    return True, None


@dataclass(frozen=True)
class PositivityFlags:
    effective: bool
    cartier: bool
    q_cartier: bool
    nef: bool
    ample: bool


@lru_cache(maxsize=8192)
def class_positivity(fan: Fan, degree: DivisorClass) -> PositivityFlags:
    """Effectivity and positivity grades of a divisor class.

    Local character data is solved per maximal cone: integral solvability
    everywhere is Cartier, rational is Q-Cartier; the data being a global
    (strictly) convex support function is nef (ample).
    """
    rep = degree.representative
    effective = effective_rep_vanishing_on(fan, degree, ()) is not None
    cartier = True
    q_cartier = True
    nef = True
    ample = True
    for cone in fan.max_cones:
        rows = tuple(fan.rays[i] for i in cone)
        rhs = tuple(-rep[i] for i in cone)
        rational = solve_rational(rows, rhs)
        if rational is None:
            return PositivityFlags(effective, False, False, False, False)
        if solve_integer_affine(rows, rhs) is None:
            cartier = False
        cone_set = set(cone)
        for j, ray in enumerate(fan.rays):
            val = dot(rational, ray)
            if val < -rep[j]:
                nef = False
                ample = False
            elif j not in cone_set and val == -rep[j]:
                ample = False
    nef = nef and q_cartier
    ample = ample and q_cartier
    return PositivityFlags(effective, cartier, q_cartier, nef, ample)
