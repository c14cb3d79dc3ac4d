"""Systems in polytopal algebras: dimension and regular sequences.

A system lives on a rational polytope P of dimension n with positive
integer degrees: support i is a set of lattice points of d_i * P.  The
dimension of the cut subscheme is read off face by face, and the regular
sequence criterion is a pure count per face.  Weighted projective spaces
specialize to simplices { v >= 0 : sum a_i v_i = 1 }, where face counts
reduce to numerical semigroup membership.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from toridim.base import EMPTY, _EmptyType
from toridim.dimension import SparseSystem, sparse_system
from toridim.exactlin import IntVector, dot
from toridim.polyhedra import (
    RationalPolytope,
    dual_description,
    lattice_points,
    normal_fan,
)
from toridim.sparse import PointSet, is_essential, point_family


@dataclass(frozen=True)
class PolytopalSystem:
    """Degrees and lattice-point supports over one rational polytope."""

    polytope: RationalPolytope
    degrees: tuple[int, ...]
    supports: tuple[PointSet, ...]

    @property
    def rank(self) -> int:
        """Dimension of the polytope, i.e. of the ambient toric variety."""
        return self.polytope.dim

    def __len__(self) -> int:
        return len(self.supports)


def polytopal_system(
    polytope: RationalPolytope,
    degrees: Sequence[int],
    supports: Sequence[Iterable[Sequence[int]]],
) -> PolytopalSystem:
    """Validate degrees and supports: positive degrees, nonempty supports
    contained in the scaled polytope."""
    if len(degrees) != len(supports):
        raise ValueError("degrees and supports differ in length")
    degs = tuple(int(d) for d in degrees)
    if any(d < 1 for d in degs):
        raise ValueError("degrees must be positive")
    sups = []
    for d, raw in zip(degs, supports):
        pts = tuple(sorted(tuple(int(x) for x in p) for p in raw))
        if not pts:
            raise ValueError("supports must be nonempty")
        for p in pts:
            if len(p) != polytope.ambient_dim:
                raise ValueError(f"point {p} has wrong dimension")
            if not _in_scaled(polytope, d, p):
                raise ValueError(f"point {p} lies outside {d} * P")
        sups.append(pts)
    return PolytopalSystem(polytope, degs, tuple(sups))


def _in_scaled(poly: RationalPolytope, d: int, p: Sequence[int]) -> bool:
    return all(dot(a, p) == d * c for a, c in poly.equations) and all(
        dot(a, p) >= d * c for a, c in poly.facets
    )


@dataclass(frozen=True)
class FaceRow:
    """Contribution of one face of the polytope to the dimension."""

    face_vertices: frozenset[int]
    face_dim: int
    active: tuple[int, ...]
    essential: bool
    contribution: int | _EmptyType


@lru_cache(maxsize=200000)
def _tight_mask(poly: RationalPolytope, d: int, point: IntVector) -> int:
    mask = 0
    for j, (a, c) in enumerate(poly.facets):
        if dot(a, point) == d * c:
            mask |= 1 << j
    return mask


@lru_cache(maxsize=65536)
def _face_masks(poly: RationalPolytope) -> tuple[int, ...]:
    """Per face: the bitmask of facets containing it."""
    out = []
    for idx in range(len(poly.faces)):
        mask = 0
        for j in poly.facets_through(idx):
            mask |= 1 << j
        out.append(mask)
    return tuple(out)


@lru_cache(maxsize=65536)
def _restricted(poly: RationalPolytope, d: int, pts: PointSet, face_idx: int) -> PointSet:
    """Points of the support on the scaled face: tight on all its facets."""
    need = _face_masks(poly)[face_idx]
    return tuple(p for p in pts if _tight_mask(poly, d, p) & need == need)


@lru_cache(maxsize=16384)
def face_table(system: PolytopalSystem) -> tuple[FaceRow, ...]:
    """One row per face of P (P itself included), in canonical order."""
    poly = system.polytope
    rows = []
    for idx, (vset, fdim) in enumerate(poly.faces):
        restricted = [
            _restricted(poly, d, pts, idx)
            for d, pts in zip(system.degrees, system.supports)
        ]
        active = tuple(i for i, pts in enumerate(restricted) if pts)
        family = point_family([restricted[i] for i in active], labels=active)
        essential, _ = is_essential(family)
        contribution: int | _EmptyType = fdim - len(active) if essential else EMPTY
        rows.append(FaceRow(vset, fdim, active, essential, contribution))
    return tuple(rows)


def polytopal_dimension(system: PolytopalSystem) -> int | _EmptyType:
    """Maximum face contribution over essential rows, EMPTY when none.

    With r <= n the result can never be EMPTY (the degrees are positive
    multiples of an ample class); that is asserted.
    """
    vals = [row.contribution for row in face_table(system) if row.essential]
    result: int | _EmptyType = max(vals) if vals else EMPTY
    if len(system.supports) <= system.rank:
        assert not isinstance(result, _EmptyType), "positive degrees gave EMPTY"
    return result


def is_regular_sequence(
    system: PolytopalSystem,
) -> tuple[bool, tuple[frozenset[int], int] | None]:
    """Regularity of an extremal-generic sequence in the polytopal algebra.

    True iff every face F satisfies ``|active| >= dim F + r - n``; the
    witness is the first violating face otherwise.  Consistency with the
    dimension (regular iff codimension r, by Cohen-Macaulayness) and the
    closure of the per-face criterion are both asserted on every run.
    """
    n, r = system.rank, len(system.supports)
    if r > n:
        raise ValueError(f"r = {r} exceeds the polytope dimension {n}")
    rows = face_table(system)
    witness = None
    for row in rows:
        if len(row.active) < row.face_dim + r - n:
            witness = (row.face_vertices, row.face_dim)
            break
    flag = witness is None

    dim_value = polytopal_dimension(system)
    assert flag == (dim_value == n - r), "regularity vs codimension mismatch"
    weak_ok = all(
        (not row.essential) or len(row.active) >= row.face_dim + r - n
        for row in rows
    )
    if weak_ok:
        assert flag, "per-face criterion failed to close"
    return flag, witness


# ---------------------------------------------------------------------------
# Standard and weighted gradings


def _subsets_lex(ground: int) -> list[tuple[int, ...]]:
    """All nonempty subsets of range(ground), lexicographically as tuples."""
    subs = [
        combo
        for size in range(1, ground + 1)
        for combo in itertools.combinations(range(ground), size)
    ]
    return sorted(subs)


def standard_simplex(n: int) -> RationalPolytope:
    """The n-simplex in barycentric coordinates: conv(e_0, ..., e_n)."""
    return dual_description(
        [tuple(int(i == j) for j in range(n + 1)) for i in range(n + 1)]
    )


def standard_regseq(
    n: int,
    degrees: Sequence[int],
    supports: Sequence[Iterable[Sequence[int]]],
) -> tuple[bool, tuple[int, ...] | None]:
    """Regularity for classical homogeneous supports in n+1 variables.

    Counts, for every variable subset, how many supports contain a
    monomial in those variables alone; delegates to the simplex route and
    asserts agreement.  The witness is the violating variable subset.
    """
    r = len(degrees)
    if r > n:
        raise ValueError(f"r = {r} exceeds n = {n}")
    sups = []
    for d, raw in zip(degrees, supports):
        pts = tuple(sorted(tuple(int(x) for x in p) for p in raw))
        for p in pts:
            if len(p) != n + 1 or any(x < 0 for x in p) or sum(p) != d:
                raise ValueError(f"support point {p} is not homogeneous of degree {d}")
        sups.append(pts)

    witness = None
    for subset in _subsets_lex(n + 1):
        inside = set(subset)
        count = sum(
            1
            for pts in sups
            if any(all(x == 0 or i in inside for i, x in enumerate(p)) for p in pts)
        )
        if count < len(subset) - 1 + r - n:
            witness = subset
            break
    flag = witness is None

    delegate, _ = is_regular_sequence(
        polytopal_system(standard_simplex(n), degrees, sups)
    )
    assert delegate == flag, "subset count disagrees with the simplex route"
    return flag, witness


@lru_cache(maxsize=None)
def semigroup_member(generators: tuple[int, ...], target: int) -> bool:
    """Is the target a nonnegative integer combination of the generators?
    Dynamic program over values up to the target."""
    if not generators:
        raise ValueError("need at least one generator")
    if any(g <= 0 for g in generators):
        raise ValueError("generators must be positive")
    if target < 0:
        return False
    reachable = [False] * (target + 1)
    reachable[0] = True
    for v in range(1, target + 1):
        reachable[v] = any(g <= v and reachable[v - g] for g in generators)
    return reachable[target]


def weighted_regseq(
    weights: Sequence[int], degrees: Sequence[int]
) -> tuple[bool, tuple[int, ...] | None]:
    """Do extremal-generic forms of these weighted degrees form a regular
    sequence?  Pure semigroup counting: for every variable subset J the
    number of degrees representable by the weights in J must be at least
    ``|J| - 1 + r - n``.  The witness is the lex-least violating J."""
    a = tuple(int(w) for w in weights)
    d = tuple(int(x) for x in degrees)
    if any(w <= 0 for w in a):
        raise ValueError("weights must be positive")
    if any(x <= 0 for x in d):
        raise ValueError("degrees must be positive")
    n = len(a) - 1
    r = len(d)
    if r > n:
        raise ValueError(f"r = {r} exceeds n = {n}")
    for subset in _subsets_lex(n + 1):
        gens = tuple(sorted({a[j] for j in subset}))
        count = sum(1 for x in d if semigroup_member(gens, x))
        if count < len(subset) - 1 + r - n:
            return False, subset
    return True, None


def weighted_simplex(weights: Sequence[int]) -> RationalPolytope:
    """The simplex { v >= 0 : sum a_i v_i = 1 } in R^(n+1); its vertices
    e_i / a_i need not be lattice points."""
    a = tuple(int(w) for w in weights)
    if any(w <= 0 for w in a):
        raise ValueError("weights must be positive")
    verts = [
        tuple(Fraction(1, a[i]) if j == i else Fraction(0) for j in range(len(a)))
        for i in range(len(a))
    ]
    return dual_description(verts)


@lru_cache(maxsize=None)
def weighted_monomials(weights: tuple[int, ...], degree: int) -> PointSet:
    """All exponent tuples of the given weighted degree: the lattice
    points of degree * simplex."""
    simplex = weighted_simplex(weights)
    return tuple(lattice_points(simplex.scale(degree)))


def weighted_system(weights: Sequence[int], degrees: Sequence[int]) -> PolytopalSystem:
    """Full-support system on the weighted simplex.  Degrees with no
    monomials are rejected; see weighted_full_support_regseq."""
    a = tuple(int(w) for w in weights)
    return polytopal_system(
        weighted_simplex(a),
        tuple(degrees),
        tuple(weighted_monomials(a, int(x)) for x in degrees),
    )


def weighted_full_support_regseq(
    weights: Sequence[int], degrees: Sequence[int]
) -> bool:
    """Geometric-route verdict for full supports on the weighted simplex.

    A degree with no monomials at all makes the form zero, hence never
    regular; otherwise delegate to the polytopal criterion.
    """
    a = tuple(int(w) for w in weights)
    if any(not weighted_monomials(a, int(x)) for x in degrees):
        return False
    flag, _ = is_regular_sequence(weighted_system(a, degrees))
    return flag


def refine_lattice(system: PolytopalSystem, k: int) -> PolytopalSystem:
    """Pass to the k-fold refined lattice: in its coordinates the polytope
    and all supports scale by k while degrees stay fixed.  Dimension and
    regularity verdicts are invariant under this."""
    if k < 1:
        raise ValueError("refinement factor must be a positive integer")
    if k == 1:
        return system
    return PolytopalSystem(
        system.polytope.scale(k),
        system.degrees,
        tuple(
            tuple(sorted(tuple(k * x for x in p) for p in pts))
            for pts in system.supports
        ),
    )


def cox_system(system: PolytopalSystem) -> SparseSystem:
    """The same system over the normal fan of a full-dimensional lattice
    polytope: support points turn into exponent tuples over the rays via
    ``exp_ray = <ray, m> - d * offset_ray``."""
    poly = system.polytope
    if poly.dim != poly.ambient_dim:
        raise ValueError("need a full-dimensional polytope")
    if any(any(v.denominator != 1 for v in vert) for vert in poly.vertices):
        raise ValueError("need a lattice polytope")
    fan = normal_fan(poly)
    offsets = {}
    for a, c in poly.facets:
        if c.denominator != 1:
            raise ValueError("need integral facet offsets")
        offsets[a] = int(c)
    monomial_sets = []
    for d, pts in zip(system.degrees, system.supports):
        monomial_sets.append(
            [
                tuple(dot(ray, p) - d * offsets[ray] for ray in fan.rays)
                for p in pts
            ]
        )
    return sparse_system(fan, monomial_sets)
