"""Divisor classes and monomial geometry on a complete fan.

The grading group of the homogeneous coordinate ring is the cokernel of
the ray pairing map ``m -> (<m, u_ray>)_ray``, presented through the Smith
normal form, torsion included.  Monomials of a given degree are identified
with lattice points of the divisor polytope, and supports restrict to
torus orbits by keeping the monomials with exponent zero on the orbit's
rays.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from toridim.exactlin import (
    IntMatrix,
    IntVector,
    mat_vec,
    smith_normal_form,
    solve_integer_affine,
)
from toridim.polyhedra import (
    Fan,
    RationalPolytope,
    dual_description,
    lattice_points,
    polytope_from_inequalities,
)

TDivisor = tuple[int, ...]  # coefficients on the rays, in fan order


@dataclass(frozen=True)
class DivisorClass:
    """Canonical coordinates of a divisor class: a free part and a torsion
    part, plus one stored representative divisor (not part of equality)."""

    free: tuple[int, ...]
    torsion: tuple[int, ...]
    representative: TDivisor = field(compare=False)

    def __repr__(self) -> str:
        if self.torsion:
            return f"DivisorClass(free={self.free}, torsion={self.torsion})"
        return f"DivisorClass{self.free}"


@dataclass(frozen=True)
class ClassGroup:
    """The grading group of a complete fan, with a chosen presentation.

    ``free_rows`` and ``torsion_rows`` project a divisor (an integer
    vector over the rays) onto canonical coordinates; ``section`` maps
    coordinates back to a representative divisor.
    """

    num_rays: int
    free_rank: int
    torsion: tuple[int, ...]
    free_rows: tuple[IntVector, ...]
    torsion_rows: tuple[IntVector, ...]
    section_columns: tuple[IntVector, ...]  # one divisor per coordinate

    def project(self, divisor: Sequence[int]) -> DivisorClass:
        if len(divisor) != self.num_rays:
            raise ValueError("divisor length does not match number of rays")
        free = tuple(sum(r * d for r, d in zip(row, divisor)) for row in self.free_rows)
        tors = tuple(
            sum(r * d for r, d in zip(row, divisor)) % m
            for row, m in zip(self.torsion_rows, self.torsion)
        )
        return DivisorClass(free, tors, tuple(int(x) for x in divisor))

    def representative(self, free: Sequence[int], torsion: Sequence[int]) -> TDivisor:
        coords = list(free) + list(torsion)
        out = [0] * self.num_rays
        for c, col in zip(coords, self.section_columns):
            out = [o + c * x for o, x in zip(out, col)]
        return tuple(out)

    def add(self, a: DivisorClass, b: DivisorClass) -> DivisorClass:
        rep = tuple(x + y for x, y in zip(a.representative, b.representative))
        return self.project(rep)

    def scale(self, a: DivisorClass, k: int) -> DivisorClass:
        return self.project(tuple(k * x for x in a.representative))

    @property
    def zero(self) -> DivisorClass:
        return self.project((0,) * self.num_rays)


@lru_cache(maxsize=None)
def pairing_matrix(fan: Fan) -> IntMatrix:
    """The map from characters to ray valuations: row per ray."""
    return tuple(fan.rays)


@lru_cache(maxsize=None)
def class_group(fan: Fan) -> ClassGroup:
    """Cokernel of the ray pairing, computed by Smith normal form.

    Deterministic: each free projection row has its first nonzero entry
    positive, so e.g. the weight-(1,2,3) plane reports ray degrees
    (1, 2, 3), never their negatives.
    """
    a = pairing_matrix(fan)
    s = len(fan.rays)
    n = fan.rank
    d, u, v = smith_normal_form(a)
    diag = [d[k][k] for k in range(min(s, n))]
    u_rows = [list(row) for row in u]

    free_idx = [k for k in range(s) if k >= min(s, n) or diag[k] == 0]
    tors_idx = [k for k in range(min(s, n)) if diag[k] > 1]

    for k in free_idx:
        lead = next((x for x in u_rows[k] if x != 0), 0)
        if lead < 0:
            u_rows[k] = [-x for x in u_rows[k]]

    # integer inverse of the (sign-fixed) unimodular U, column by column
    fixed_u = tuple(tuple(r) for r in u_rows)
    uinv = _unimodular_inverse(fixed_u)

    section_cols = []
    for k in free_idx + tors_idx:
        section_cols.append(tuple(uinv[i][k] for i in range(s)))

    return ClassGroup(
        num_rays=s,
        free_rank=len(free_idx),
        torsion=tuple(diag[k] for k in tors_idx),
        free_rows=tuple(fixed_u[k] for k in free_idx),
        torsion_rows=tuple(fixed_u[k] for k in tors_idx),
        section_columns=tuple(section_cols),
    )


def _unimodular_inverse(u: IntMatrix) -> IntMatrix:
    """Exact inverse of a unimodular integer matrix (integral by Cramer)."""
    n = len(u)
    aug = [
        [Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
        for i, row in enumerate(u)
    ]
    for col in range(n):
        piv = next(i for i in range(col, n) if aug[i][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        f = aug[col][col]
        aug[col] = [x / f for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                g = aug[i][col]
                aug[i] = [x - g * y for x, y in zip(aug[i], aug[col])]
    out = []
    for row in aug:
        vals = row[n:]
        assert all(x.denominator == 1 for x in vals)
        out.append(tuple(int(x) for x in vals))
    return tuple(out)


def divisor_class(fan: Fan, divisor: Sequence[int]) -> DivisorClass:
    """Canonical class coordinates of a torus-invariant divisor."""
    return class_group(fan).project(divisor)


@dataclass(frozen=True)
class Support:
    """A set of monomials (exponent tuples over the rays), all of one degree."""

    degree: DivisorClass
    monomials: tuple[IntVector, ...]

    def __len__(self) -> int:
        return len(self.monomials)


def support(fan: Fan, monomials: Iterable[Sequence[int]]) -> Support:
    """Validate and build a support: nonempty, nonnegative exponents over
    the rays, all monomials of the same degree."""
    mons = tuple(sorted(tuple(int(x) for x in m) for m in monomials))
    if not mons:
        raise ValueError("support must be nonempty")
    s = len(fan.rays)
    for m in mons:
        if len(m) != s:
            raise ValueError(f"monomial {m} has wrong length (expected {s})")
        if any(x < 0 for x in m):
            raise ValueError(f"monomial {m} has a negative exponent")
    group = class_group(fan)
    degrees = {group.project(m) for m in mons}
    if len(degrees) != 1:
        raise ValueError("support mixes degrees")
    # the representative is the lex-least monomial: effective by construction
    degree = group.project(mons[0])
    return Support(degree, mons)


def divisor_polytope(
    fan: Fan, divisor: Sequence[int], cone_rays: Sequence[int] = ()
) -> RationalPolytope:
    """The polytope of characters making the divisor effective while
    vanishing on the given cone's rays.

    The divisor must already have coefficient zero on every ray of the
    cone; completeness of the fan keeps the result bounded.
    """
    v = tuple(int(x) for x in divisor)
    if len(v) != len(fan.rays):
        raise ValueError("divisor length does not match number of rays")
    bad = [i for i in cone_rays if v[i] != 0]
    if bad:
        raise ValueError(f"divisor has nonzero coefficient on cone rays {bad}")
    ineqs = [(fan.rays[i], -v[i]) for i in range(len(fan.rays))]
    eqs = [(fan.rays[i], 0) for i in cone_rays]
    return polytope_from_inequalities(ineqs, eqs, ambient_dim=fan.rank)


def monomial_to_point(fan: Fan, divisor: Sequence[int], exponents: Sequence[int]) -> IntVector:
    """The unique character with ``exponents = divisor + <m, rays>``.

    Fails exactly when the monomial's degree differs from the divisor's.
    The inverse direction is :func:`point_to_monomial`.
    """
    a = pairing_matrix(fan)
    b = tuple(int(e) - int(d) for e, d in zip(exponents, divisor))
    sol = solve_integer_affine(a, b)
    if sol is None:
        raise ValueError("monomial degree differs from divisor degree")
    m, kernel = sol
    if kernel:
        raise ValueError("fan rays do not span: characters are not unique")
    return m


def point_to_monomial(fan: Fan, divisor: Sequence[int], point: Sequence[int]) -> IntVector:
    """Exponent tuple of the monomial attached to a lattice point."""
    a = pairing_matrix(fan)
    vals = mat_vec(a, tuple(point))
    out = tuple(int(d) + x for d, x in zip(divisor, vals))
    if any(x < 0 for x in out):
        raise ValueError("point lies outside the divisor polytope")
    return out


def monomials_of_class(fan: Fan, divisor: Sequence[int]) -> tuple[IntVector, ...]:
    """All monomials of the divisor's degree, i.e. the lattice points of
    its polytope mapped back to exponent tuples.  Sorted."""
    poly = divisor_polytope(fan, divisor)
    return tuple(
        sorted(point_to_monomial(fan, divisor, m) for m in lattice_points(poly))
    )


def effective_rep_vanishing_on(
    fan: Fan, degree: DivisorClass, cone_rays: Sequence[int]
) -> TDivisor | None:
    """An effective divisor of the given class with coefficient zero on
    the cone's rays, or None when no such divisor exists.

    When None, every polynomial of this degree restricts to zero on the
    orbit of the cone.
    """
    rep = degree.representative
    rays = pairing_matrix(fan)
    ineqs = [(rays[i], -rep[i]) for i in range(len(fan.rays))]
    eqs = [(rays[i], -rep[i]) for i in cone_rays]
    try:
        poly = polytope_from_inequalities(ineqs, eqs, ambient_dim=fan.rank)
    except Exception as exc:  # pragma: no cover - complete fans are bounded
        raise ValueError("fan is not complete enough to bound the search") from exc
    pts = lattice_points(poly)
    if not pts:
        return None
    m = pts[0]
    return tuple(int(r) + v for r, v in zip(rep, mat_vec(rays, m)))


def restrict_support(fan: Fan, supp: Support, cone_rays: Sequence[int]) -> tuple[IntVector, ...]:
    """Lattice points of the support's restriction to the orbit of a cone.

    Keeps the monomials with exponent zero on every cone ray, maps them
    through the character bijection for a divisor vanishing there, and
    subtracts the lexicographically least point so the output does not
    depend on that choice of divisor.
    """
    cone_set = set(cone_rays)
    survivors = [m for m in supp.monomials if all(m[i] == 0 for i in cone_set)]
    if not survivors:
        return ()
    base_divisor = survivors[0]  # itself effective and vanishing on the cone
    points = sorted(monomial_to_point(fan, base_divisor, m) for m in survivors)
    origin = points[0]
    return tuple(tuple(x - o for x, o in zip(p, origin)) for p in points)


class OrbitClass(enum.Enum):
    """Generic behavior of one hypersurface on one torus orbit."""

    ORBIT_CONTAINED = "orbit_contained"
    EMPTY_INTERSECTION = "empty_intersection"
    HYPERSURFACE = "hypersurface"


def classify_orbit(fan: Fan, supp: Support, cone_rays: Sequence[int]) -> OrbitClass:
    """Trichotomy by the size of the restricted support: zero monomials
    mean the orbit lies inside the hypersurface, one monomial means the
    intersection is empty, two or more cut a hypersurface in the orbit.
    Coefficient values are never consulted: this is generic behavior."""
    count = len(restrict_support(fan, supp, cone_rays))
    if count == 0:
        return OrbitClass.ORBIT_CONTAINED
    if count == 1:
        return OrbitClass.EMPTY_INTERSECTION
    return OrbitClass.HYPERSURFACE


def extremal_monomials(fan: Fan, supp: Support) -> tuple[IntVector, ...]:
    """The monomials sitting at vertices of the support's convex hull in
    character coordinates.  Generic behavior is governed by these."""
    rep = supp.degree.representative
    points = {monomial_to_point(fan, rep, m): m for m in supp.monomials}
    if len(points) == 1:
        return tuple(supp.monomials)
    hull = dual_description(list(points))
    return tuple(
        sorted(
            points[tuple(int(x) for x in v)]
            for v in hull.vertices
        )
    )
