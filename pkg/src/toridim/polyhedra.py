"""Exact rational polytopes, cones, and complete fans.

V-representations are converted to H-representations (and back) with an
exact double description method over the integers; lattice points are
enumerated by Fourier-Motzkin projection with exact rational bounds.
Everything is deterministic: vertices, facets, faces and cones come out in
canonical (lexicographic) order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from toridim.base import UnboundedPolytopeError
from toridim.exactlin import (
    IntVector,
    content,
    dot,
    integer_row_basis,
    integerize,
    primitive,
    rational_rank,
    solve_integer_affine,
)

Point = tuple[Fraction, ...]
Facet = tuple[IntVector, Fraction]  # <normal, x> >= offset
Equation = tuple[IntVector, Fraction]  # <normal, x> == value


def _to_point(p: Sequence) -> Point:
    return tuple(Fraction(x) for x in p)


def _row_basis_with_pivots(rows: Iterable[Sequence[int]]):
    basis = integer_row_basis(rows)
    pivots = [next(i for i, x in enumerate(b) if x != 0) for b in basis]
    return basis, pivots


def _canonical_sign(v: IntVector) -> IntVector:
    lead = next((x for x in v if x != 0), 0)
    return tuple(-x for x in v) if lead < 0 else tuple(v)


# ---------------------------------------------------------------------------
# Double description: extreme rays of {z : <z, g> >= 0 for all g}


def _rational_inverse(mat: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    n = len(mat)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next(i for i in range(col, n) if aug[i][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        aug[col] = [x / aug[col][col] for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    return [row[n:] for row in aug]


def dual_rays(generators: Sequence[Sequence[int]], dim: int) -> list[IntVector]:
    """Extreme rays of the cone ``{z : <z, g> >= 0 for all g}``.

    The generators must span R^dim so that the dual cone is pointed.
    Rays are returned as primitive integer vectors, sorted.
    """
    gens = [tuple(g) for g in generators if any(g)]
    basis: list[IntVector] = []
    chosen: list[int] = []
    for idx, g in enumerate(gens):
        trial = integer_row_basis([*basis, g])
        if len(trial) > len(basis):
            basis = trial
            chosen.append(idx)
        if len(basis) == dim:
            break
    if len(basis) < dim:
        raise ValueError("generators do not span; dual cone is not pointed")

    square = [gens[i] for i in chosen]
    inv = _rational_inverse(square)
    rays = [primitive(integerize([inv[i][j] for i in range(dim)])) for j in range(dim)]
    processed = [gens[i] for i in chosen]

    for idx, g in enumerate(gens):
        if idx in chosen:
            continue
        vals = [dot(r, g) for r in rays]
        if all(v >= 0 for v in vals):
            processed.append(g)
            continue
        tight = [frozenset(k for k, h in enumerate(processed) if dot(r, h) == 0) for r in rays]
        keep = [i for i, v in enumerate(vals) if v >= 0]
        plus = [i for i, v in enumerate(vals) if v > 0]
        minus = [i for i, v in enumerate(vals) if v < 0]
        new_rays = [rays[i] for i in keep]
        seen = set(new_rays)
        for i in plus:
            for j in minus:
                common = tight[i] & tight[j]
                adjacent = not any(
                    k != i and k != j and common <= tight[k] for k in range(len(rays))
                )
                if not adjacent:
                    continue
                combo = primitive(
                    tuple(vals[i] * b - vals[j] * a for a, b in zip(rays[i], rays[j]))
                )
                if combo not in seen:
                    seen.add(combo)
                    new_rays.append(combo)
        rays = new_rays
        processed.append(g)
    return sorted(rays)


# ---------------------------------------------------------------------------
# Fourier-Motzkin machinery on integer inequality rows (a..., c): <a,x> >= c


def _normalize_row(row: Sequence[int]) -> IntVector:
    g = content(row)
    return tuple(x // g for x in row) if g > 1 else tuple(row)


def _fm_eliminate(rows: list[IntVector], var: int) -> list[IntVector] | None:
    """Project out variable `var`.  Returns None when infeasibility is
    already visible as a constant contradiction."""
    zero, plus, minus = [], [], []
    for row in rows:
        coef = row[var]
        if coef == 0:
            zero.append(row)
        elif coef > 0:
            plus.append(row)
        else:
            minus.append(row)
    out = set()
    for row in zero:
        if not any(row[:-1]):
            if row[-1] > 0:
                return None
            continue
        out.add(row)
    for p in plus:
        for m in minus:
            a, b = p[var], -m[var]
            combo = tuple(b * x + a * y for x, y in zip(p, m))
            combo = _normalize_row(combo)
            if not any(combo[:-1]):
                if combo[-1] > 0:
                    return None
                continue
            out.add(combo)
    return sorted(out)


def feasible(rows: Sequence[Sequence[int]], nvars: int) -> bool:
    """Exact feasibility of the system ``<a, x> >= c`` (rows = (a..., c))."""
    current: list[IntVector] | None = sorted(
        {_normalize_row(r) for r in rows if any(r)}
    )
    for var in range(nvars):
        if current is None:
            return False
        current = _fm_eliminate(current, var)
    if current is None:
        return False
    return all(row[-1] <= 0 for row in current)


def in_cone(x: Sequence[int], generators: Sequence[Sequence[int]]) -> bool:
    """Is x a nonnegative rational combination of the generators?"""
    gens = [tuple(g) for g in generators]
    s = len(gens)
    n = len(x)
    if s == 0:
        return not any(x)
    rows: list[IntVector] = []
    for i in range(s):
        rows.append(tuple(1 if j == i else 0 for j in range(s)) + (0,))
    for coord in range(n):
        forward = tuple(g[coord] for g in gens)
        rows.append(forward + (x[coord],))
        rows.append(tuple(-v for v in forward) + (-x[coord],))
    return feasible(rows, s)


def cone_is_pointed(generators: Sequence[Sequence[int]]) -> bool:
    """Strong convexity: no nontrivial nonnegative combination is zero."""
    gens = [tuple(g) for g in generators if any(g)]
    s = len(gens)
    if s == 0:
        return True
    n = len(gens[0])
    rows: list[IntVector] = []
    for i in range(s):
        rows.append(tuple(1 if j == i else 0 for j in range(s)) + (0,))
    rows.append((1,) * s + (1,))  # lambdas sum to at least 1
    for coord in range(n):
        forward = tuple(g[coord] for g in gens)
        rows.append(forward + (0,))
        rows.append(tuple(-v for v in forward) + (0,))
    return not feasible(rows, s)


# ---------------------------------------------------------------------------
# Polytopes


@dataclass(frozen=True)
class RationalPolytope:
    """A bounded rational polytope with exact V- and H-representations.

    ``facets`` hold primitive integer inward normals with rational offsets
    (`<a, x> >= c`); ``equations`` cut out the affine hull when the
    polytope is not full-dimensional.  ``faces`` lists every nonempty face
    as a set of vertex indices with its dimension, the polytope itself
    included, ordered by (dimension, vertex set).
    """

    ambient_dim: int
    dim: int
    vertices: tuple[Point, ...]
    facets: tuple[Facet, ...]
    equations: tuple[Equation, ...]
    faces: tuple[tuple[frozenset[int], int], ...]

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    def contains(self, point: Sequence) -> bool:
        p = _to_point(point)
        if self.is_empty or len(p) != self.ambient_dim:
            return False
        return all(dot(a, p) == c for a, c in self.equations) and all(
            dot(a, p) >= c for a, c in self.facets
        )

    def scale(self, k: int) -> "RationalPolytope":
        if k <= 0:
            raise ValueError("scale factor must be positive")
        if self.is_empty:
            return self
        return dual_description([tuple(k * x for x in v) for v in self.vertices])

    def facets_through(self, face_index: int) -> tuple[int, ...]:
        """Indices of facets whose vertex set contains the given face."""
        face_vertices, _ = self.faces[face_index]
        out = []
        for i, (a, c) in enumerate(self.facets):
            if all(dot(a, self.vertices[v]) == c for v in face_vertices):
                out.append(i)
        return tuple(out)


def _empty_polytope(ambient_dim: int) -> RationalPolytope:
    return RationalPolytope(ambient_dim, -1, (), (), (), ())


def _affine_hull(points: list[Point]):
    """Equations of the affine hull plus pivot coordinates of its direction
    space.  Returns (equations, pivots, dim)."""
    base = points[0]
    diffs = [integerize([x - b for x, b in zip(p, base)]) for p in points[1:]]
    basis, pivots = _row_basis_with_pivots(diffs)
    d = len(basis)
    n = len(base)
    # normals orthogonal to all difference vectors
    if d == n:
        equations: tuple[Equation, ...] = ()
    else:
        if basis:
            _, kernel = solve_integer_affine(tuple(basis), (0,) * d)
        else:
            kernel = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        equations = tuple(
            sorted(
                (_canonical_sign(primitive(k)), Fraction(dot(_canonical_sign(primitive(k)), base)))
                for k in kernel
            )
        )
    return equations, pivots, d


def _face_lattice(
    vertex_count: int,
    facet_vertex_sets: list[frozenset[int]],
    vertex_coords: Sequence[Point],
    top_dim: int,
) -> tuple[tuple[frozenset[int], int], ...]:
    top = frozenset(range(vertex_count))
    faces = {top}
    frontier = [s for s in facet_vertex_sets if s]
    while frontier:
        new = []
        for s in frontier:
            if s not in faces:
                faces.add(s)
                new.append(s)
        frontier = [
            s & f
            for s in new
            for f in facet_vertex_sets
            if (s & f) and (s & f) not in faces
        ]

    def face_dim(vset: frozenset[int]) -> int:
        pts = [vertex_coords[i] for i in sorted(vset)]
        return rational_rank(
            [tuple(x - b for x, b in zip(p, pts[0])) for p in pts[1:]]
        )

    dims = {s: (top_dim if s == top else face_dim(s)) for s in faces}
    return tuple(sorted(((s, dims[s]) for s in faces), key=lambda t: (t[1], sorted(t[0]))))


def dual_description(points: Iterable[Sequence]) -> RationalPolytope:
    """Canonical polytope from a list of rational points.

    Duplicate and non-extreme input points are dropped silently; facets
    are computed exactly by double description of the homogenization.
    """
    pts = sorted({_to_point(p) for p in points})
    if not pts:
        raise ValueError("need at least one point")
    if len({len(p) for p in pts}) != 1:
        raise ValueError("points of mixed dimension")
    n = len(pts[0])
    equations, pivots, d = _affine_hull(pts)
    if d == 0:
        vertices = (pts[0],)
        faces = ((frozenset({0}), 0),)
        return RationalPolytope(n, 0, vertices, (), equations, faces)

    projected = [tuple(p[j] for j in pivots) for p in pts]
    gens = [integerize(list(q) + [1]) for q in projected]
    rays = dual_rays(gens, d + 1)

    facets: list[Facet] = []
    for ray in rays:
        a_proj, b = ray[:-1], ray[-1]
        if not any(a_proj):
            continue  # the trivial inequality 1 >= 0 cannot be a facet
        g = content(a_proj)
        normal_proj = tuple(x // g for x in a_proj)
        offset = Fraction(-b, g)
        normal = [0] * n
        for coord, j in zip(normal_proj, pivots):
            normal[j] = coord
        facets.append((tuple(normal), offset))
    facets.sort()

    # extreme points: tight facet normals span the direction space
    def tight_normals(q):
        return [f[0] for f in facets if dot(f[0], q) == f[1]]

    vertices = tuple(p for p in pts if rational_rank(tight_normals(p)) == d)
    facet_vsets = [
        frozenset(i for i, v in enumerate(vertices) if dot(a, v) == c)
        for a, c in facets
    ]
    faces = _face_lattice(len(vertices), facet_vsets, vertices, d)
    return RationalPolytope(n, d, vertices, tuple(facets), equations, faces)


def polytope_from_inequalities(
    inequalities: Sequence[tuple[Sequence[int], Fraction | int]],
    equations: Sequence[tuple[Sequence[int], Fraction | int]] = (),
    *,
    ambient_dim: int,
) -> RationalPolytope:
    """Polytope ``{x : <a, x> >= c}`` intersected with ``{<a, x> == c}``.

    Raises UnboundedPolytopeError when the feasible set is unbounded (the
    homogenization then has a recession ray) or when the constraint
    normals fail to span, which would make emptiness undecidable here.
    """
    n = ambient_dim
    gens: list[IntVector] = []
    for a, c in inequalities:
        gens.append(primitive(integerize(list(a) + [-Fraction(c)])))
    for a, c in equations:
        row = integerize(list(a) + [-Fraction(c)])
        gens.append(primitive(row))
        gens.append(primitive([-x for x in row]))
    gens.append(tuple([0] * n + [1]))
    try:
        rays = dual_rays(gens, n + 1)
    except ValueError as exc:
        raise UnboundedPolytopeError(str(exc)) from exc
    vertices = []
    recession = []
    for ray in rays:
        t = ray[-1]
        if t > 0:
            vertices.append(tuple(Fraction(x, t) for x in ray[:-1]))
        else:
            recession.append(ray)
    if vertices and recession:
        raise UnboundedPolytopeError("inequality system is unbounded")
    if not vertices:
        return _empty_polytope(n)
    return dual_description(vertices)


def lattice_points(poly: RationalPolytope) -> list[IntVector]:
    """All integer points of the polytope, sorted lexicographically.

    Enumerates by projecting coordinates out one at a time (exact
    Fourier-Motzkin), so every partial assignment extends to a rational
    point and the integer bounds per level are sharp.
    """
    if poly.is_empty:
        return []
    n = poly.ambient_dim
    rows: set[IntVector] = set()
    for a, c in poly.facets:
        rows.add(_normalize_row(integerize(list(a) + [Fraction(c)])))
    for a, c in poly.equations:
        row = integerize(list(a) + [Fraction(c)])
        rows.add(_normalize_row(row))
        rows.add(_normalize_row([-x for x in row]))
    if not rows:
        # only the ambient-0 polytope carries no constraints
        assert n == 0
        return [()]

    systems: list[list[IntVector]] = [sorted(rows)]
    for var in range(n - 1, 0, -1):
        nxt = _fm_eliminate(systems[0], var)
        if nxt is None:
            return []
        systems.insert(0, nxt)

    out: list[IntVector] = []
    prefix = [0] * n

    def descend(level: int) -> None:
        lo, hi = None, None
        for row in systems[level]:
            coef = row[level]
            if coef == 0:
                continue
            rest = row[-1] - sum(row[j] * prefix[j] for j in range(level))
            if coef > 0:
                bound = -((-rest) // coef)  # ceil
                lo = bound if lo is None else max(lo, bound)
            else:
                bound = rest // coef  # floor (Python floors toward -inf)
                hi = bound if hi is None else min(hi, bound)
        if lo is None or hi is None:
            raise AssertionError("unbounded direction in bounded polytope")
        for val in range(lo, hi + 1):
            prefix[level] = val
            if level == n - 1:
                out.append(tuple(prefix))
            else:
                descend(level + 1)

    descend(0)
    return out


def face_lattice(poly: RationalPolytope) -> tuple[tuple[frozenset[int], int], ...]:
    """All faces (vertex-index set, dimension), the polytope included."""
    return poly.faces


# ---------------------------------------------------------------------------
# Cones and fans


@dataclass(frozen=True)
class Cone:
    """A polyhedral cone given by primitive integer generators."""

    generators: tuple[IntVector, ...]
    dim: int

    @classmethod
    def from_generators(cls, generators: Iterable[Sequence[int]]) -> "Cone":
        gens = tuple(sorted({primitive(g) for g in generators if any(g)}))
        return cls(gens, rational_rank(gens))


@dataclass(frozen=True)
class FanCone:
    """A cone of a fan, addressed by indices into the fan's ray list."""

    rays: tuple[int, ...]
    dim: int


@dataclass(frozen=True)
class Fan:
    """A fan in N, given by primitive rays and maximal cones.

    Use :func:`fan_validate` to check strong convexity, the face-to-face
    property and completeness before relying on derived data.
    """

    rank: int
    rays: tuple[IntVector, ...]
    max_cones: tuple[tuple[int, ...], ...]

    @classmethod
    def make(cls, rank: int, rays: Iterable[Sequence[int]], max_cones: Iterable[Iterable[int]]) -> "Fan":
        rays_t = tuple(tuple(int(x) for x in r) for r in rays)
        cones_t = tuple(sorted(tuple(sorted(set(c))) for c in max_cones))
        return cls(rank, rays_t, cones_t)

    def generators(self, ray_indices: Iterable[int]) -> tuple[IntVector, ...]:
        return tuple(self.rays[i] for i in ray_indices)


@dataclass(frozen=True)
class FanValidation:
    ok: bool
    problems: tuple[str, ...]


def _cone_facet_data(generators: Sequence[IntVector]):
    """Facets of a cone, each as (ambient support normal, tight generator
    index set).  The cone may be lower-dimensional; normals are lifted so
    they vanish on the cone's span outside the facet."""
    gens = list(generators)
    basis, pivots = _row_basis_with_pivots(gens)
    k = len(basis)
    if k == 0:
        return [], 0
    n = len(gens[0])
    projected = [tuple(g[j] for j in pivots) for g in gens]
    rays = dual_rays(projected, k)
    facets = []
    for z in rays:
        tight = frozenset(i for i, q in enumerate(projected) if dot(z, q) == 0)
        if len(tight) == len(gens):
            continue  # supports the whole cone, not a facet
        normal = [0] * n
        for coord, j in zip(z, pivots):
            normal[j] = coord
        facets.append((tuple(normal), tight))
    return facets, k


def _cone_face_sets(generators: Sequence[IntVector]) -> set[frozenset[int]]:
    """All faces of the cone as generator-index sets (zero face included)."""
    facets, k = _cone_facet_data(generators)
    all_idx = frozenset(range(len(generators)))
    faces = {all_idx}
    frontier = [t for _, t in facets]
    while frontier:
        new = [s for s in frontier if s not in faces]
        faces.update(new)
        frontier = [s & t for s in new for _, t in facets if (s & t) not in faces]
    if k > 0:
        faces.add(frozenset())
    return faces


def fan_validate(fan: Fan) -> FanValidation:
    """Check a fan candidate: strong convexity, face-to-face intersections,
    and completeness (every facet of a maximal cone shared by exactly two
    maximal cones, all maximal cones full-dimensional)."""
    problems: list[str] = []
    n = fan.rank

    def fail(msg: str) -> FanValidation:
        problems.append(msg)
        return FanValidation(False, tuple(problems))

    if n < 1:
        return fail("fan rank must be at least 1")
    if not fan.max_cones:
        return fail("fan has no maximal cones")
    seen_rays = set()
    for i, ray in enumerate(fan.rays):
        if len(ray) != n:
            return fail(f"ray {i} has wrong length")
        if not any(ray):
            return fail(f"ray {i} is zero")
        if primitive(ray) != ray:
            return fail(f"ray {i} = {ray} is not primitive")
        if ray in seen_rays:
            return fail(f"duplicate ray {ray}")
        seen_rays.add(ray)
    used = set(itertools.chain.from_iterable(fan.max_cones))
    missing = set(range(len(fan.rays))) - used
    if missing:
        return fail(f"rays {sorted(missing)} appear in no maximal cone")
    for cone in fan.max_cones:
        if any(i < 0 or i >= len(fan.rays) for i in cone):
            return fail(f"cone {cone} references an unknown ray")
        gens = fan.generators(cone)
        if rational_rank(gens) != n:
            return fail(f"maximal cone {cone} is not {n}-dimensional")
        if not cone_is_pointed(gens):
            return fail(f"maximal cone {cone} is not strongly convex")
        for pos, i in enumerate(cone):
            others = [g for j, g in enumerate(gens) if j != pos]
            if in_cone(fan.rays[i], others):
                return fail(f"ray {i} is redundant in cone {cone}")
    # every fan ray inside a maximal cone must be one of its listed rays
    for i, ray in enumerate(fan.rays):
        for cone in fan.max_cones:
            if i not in cone and in_cone(ray, fan.generators(cone)):
                return fail(f"ray {i} lies in cone {cone} but is not listed in it")

    cone_facets = {cone: _cone_facet_data(fan.generators(cone))[0] for cone in fan.max_cones}
    cone_faces = {cone: _cone_face_sets(fan.generators(cone)) for cone in fan.max_cones}

    # pairwise intersections must be common faces
    for ca, cb in itertools.combinations(fan.max_cones, 2):
        shared = sorted(set(ca) & set(cb))
        local_a = frozenset(ca.index(i) for i in shared)
        local_b = frozenset(cb.index(i) for i in shared)
        if local_a not in cone_faces[ca] or local_b not in cone_faces[cb]:
            return fail(f"shared rays {shared} are not a face of both {ca} and {cb}")
        # check cone(ca) /\ cone(cb) does not exceed the shared face
        for cone, local in ((ca, local_a), (cb, local_b)):
            support = [0] * n
            for normal, tight in cone_facets[cone]:
                if local <= tight:
                    support = [s + x for s, x in zip(support, normal)]
            if not any(support) and len(local) < len(cone):
                return fail(f"no supporting functional for face {shared} of {cone}")
            if not any(support):
                continue
            rows = [tuple(support) + (1,)]
            for other in (ca, cb):
                for normal, _ in cone_facets[other]:
                    rows.append(tuple(normal) + (0,))
            if feasible(rows, n):
                return fail(
                    f"intersection of {ca} and {cb} exceeds their shared face {shared}"
                )

    # completeness: each facet of a maximal cone belongs to exactly two
    for cone in fan.max_cones:
        for _, tight in cone_facets[cone]:
            facet_rays = frozenset(cone[i] for i in tight)
            holders = [c for c in fan.max_cones if facet_rays <= set(c)]
            if len(holders) != 2:
                return fail(
                    f"facet {sorted(facet_rays)} of cone {cone} is shared by "
                    f"{len(holders)} maximal cones (expected 2)"
                )
    return FanValidation(True, ())


def enumerate_cones(fan: Fan) -> tuple[FanCone, ...]:
    """All cones of the fan, the zero cone included, without duplicates,
    ordered by (dimension, ray indices)."""
    found: set[tuple[int, ...]] = set()
    for cone in fan.max_cones:
        for face in _cone_face_sets(fan.generators(cone)):
            found.add(tuple(sorted(cone[i] for i in face)))
    found.add(())
    out = [
        FanCone(idx, rational_rank(fan.generators(idx)))
        for idx in found
    ]
    out.sort(key=lambda c: (c.dim, c.rays))
    return tuple(out)


def normal_fan(poly: RationalPolytope) -> Fan:
    """The (inner) normal fan of a full-dimensional polytope.

    Maximal cones are the vertex normal cones, spanned by the inward
    facet normals of the facets through each vertex.
    """
    if poly.is_empty or poly.dim != poly.ambient_dim:
        raise ValueError("normal fan requires a full-dimensional polytope")
    rays = sorted({f[0] for f in poly.facets})
    ray_index = {r: i for i, r in enumerate(rays)}
    max_cones = []
    for v in poly.vertices:
        tight = [ray_index[a] for a, c in poly.facets if dot(a, v) == c]
        max_cones.append(tuple(sorted(tight)))
    return Fan.make(poly.ambient_dim, rays, max_cones)
