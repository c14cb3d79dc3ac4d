import random
from fractions import Fraction

import pytest

from toridim.base import EMPTY, _EmptyType
from toridim import dimension as dm
from toridim import polyhedra as ph
from toridim import polytopal as pt


def simplex2():
    return pt.standard_simplex(2)


class TestPolytopalDimension:
    def test_r0(self):
        sys0 = pt.polytopal_system(simplex2(), (), ())
        assert pt.polytopal_dimension(sys0) == 2

    def test_double_x0x1(self):
        # two copies of the single monomial x0*x1 at degree 2: a curve
        sysd = pt.polytopal_system(simplex2(), (2, 2), [[(1, 1, 0)], [(1, 1, 0)]])
        assert pt.polytopal_dimension(sysd) == 1
        rows = pt.face_table(sysd)
        contributing = [r for r in rows if r.essential and r.contribution == 1]
        assert contributing and all(r.active == () for r in contributing)

    def test_fig1_weighted_compactification(self):
        # genus 2, weights (1, 1, 3) on variables (x, z, y), degree 6
        support = [(i, 6 - i, 0) for i in range(6)] + [(0, 0, 2)]
        sysw = pt.polytopal_system(pt.weighted_simplex((1, 1, 3)), (6,), [support])
        assert pt.polytopal_dimension(sysw) == 1
        # the vertex face of the first variable carries no support point
        rows = pt.face_table(sysw)
        vertex_rows = [r for r in rows if r.face_dim == 0]
        empties = [r for r in vertex_rows if r.active == ()]
        assert len(empties) == 1
        assert all(r.contribution == 0 for r in empties)

    def test_rejects_outside_points(self):
        with pytest.raises(ValueError):
            pt.polytopal_system(simplex2(), (1,), [[(2, 0, 0)]])
        with pytest.raises(ValueError):
            pt.polytopal_system(simplex2(), (0,), [[(0, 0, 0)]])

    def test_full_supports_expected_dims(self):
        simplex = simplex2()
        full = {
            d: [tuple(p) for p in ph.lattice_points(simplex.scale(d))] for d in (1, 2, 3)
        }
        for degs in [(1,), (2,), (1, 2), (2, 3)]:
            sysd = pt.polytopal_system(simplex, degs, [full[d] for d in degs])
            assert pt.polytopal_dimension(sysd) == 2 - len(degs)


class TestIsRegularSequence:
    def test_coordinate_squares(self):
        sysr = pt.polytopal_system(simplex2(), (2, 2), [[(2, 0, 0)], [(0, 2, 0)]])
        flag, witness = pt.is_regular_sequence(sysr)
        assert flag and witness is None

    def test_shared_factor_fails(self):
        sysr = pt.polytopal_system(simplex2(), (2, 2), [[(1, 1, 0)], [(1, 1, 0)]])
        flag, witness = pt.is_regular_sequence(sysr)
        assert not flag
        vset, fdim = witness
        assert fdim == 1  # an edge misses both supports

    def test_weighted_123_full(self):
        flag, _ = pt.is_regular_sequence(pt.weighted_system((1, 2, 3), (2, 3)))
        assert flag

    def test_rejects_r_gt_n(self):
        with pytest.raises(ValueError):
            pt.is_regular_sequence(
                pt.polytopal_system(
                    simplex2(), (1, 1, 1), [[(1, 0, 0)], [(0, 1, 0)], [(0, 0, 1)]]
                )
            )


class TestStandardRegseq:
    def test_squares(self):
        assert pt.standard_regseq(2, (2, 2), [[(2, 0, 0)], [(0, 2, 0)]]) == (True, None)

    def test_shared_monomial(self):
        flag, witness = pt.standard_regseq(2, (2, 2), [[(1, 1, 0)], [(1, 1, 0)]])
        assert not flag
        assert witness == (0, 2)

    def test_full_quadrics(self):
        full = [(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)]
        assert pt.standard_regseq(2, (2, 2), [full, full]) == (True, None)

    def test_rejects_inhomogeneous(self):
        with pytest.raises(ValueError):
            pt.standard_regseq(2, (2,), [[(1, 0, 0)]])


class TestSemigroup:
    def test_chicken_mcnugget(self):
        assert not pt.semigroup_member((2, 3), 1)
        assert pt.semigroup_member((2, 3), 7)
        assert not pt.semigroup_member((3,), 2)

    def test_dp_against_enumeration(self):
        rng = random.Random(61)
        for _ in range(60):
            gens = tuple(sorted(rng.sample(range(1, 9), rng.randint(1, 3))))
            t = rng.randint(0, 30)
            brute = any(
                sum(c * g for c, g in zip(combo, gens)) == t
                for combo in _box(len(gens), t)
            )
            assert pt.semigroup_member(gens, t) == brute

    def test_input_validation(self):
        with pytest.raises(ValueError):
            pt.semigroup_member((), 1)
        with pytest.raises(ValueError):
            pt.semigroup_member((0, 2), 1)


def _box(k, t):
    if k == 0:
        yield ()
        return
    for head in range(t + 1):
        for rest in _box(k - 1, t):
            yield (head,) + rest


class TestWeightedRegseq:
    def test_123_23(self):
        assert pt.weighted_regseq((1, 2, 3), (2, 3)) == (True, None)

    def test_123_11(self):
        flag, witness = pt.weighted_regseq((1, 2, 3), (1, 1))
        assert not flag and witness == (1, 2)

    def test_standard_weights_always(self):
        rng = random.Random(67)
        for _ in range(20):
            n = rng.randint(1, 4)
            r = rng.randint(1, n)
            degs = tuple(rng.randint(1, 9) for _ in range(r))
            assert pt.weighted_regseq((1,) * (n + 1), degs) == (True, None)

    def test_validation(self):
        with pytest.raises(ValueError):
            pt.weighted_regseq((1, 0), (1,))
        with pytest.raises(ValueError):
            pt.weighted_regseq((1, 2), (0,))
        with pytest.raises(ValueError):
            pt.weighted_regseq((1, 2), (1, 1))

    def test_matches_simplex_route(self):
        rng = random.Random(71)
        checked = 0
        for _ in range(40):
            n = rng.randint(1, 3)
            weights = tuple(rng.randint(1, 5) for _ in range(n + 1))
            r = rng.randint(1, n)
            degrees = tuple(rng.randint(1, 8) for _ in range(r))
            combinatorial, _ = pt.weighted_regseq(weights, degrees)
            geometric = pt.weighted_full_support_regseq(weights, degrees)
            assert combinatorial == geometric
            checked += 1
        assert checked == 40


class TestRefineLattice:
    def test_identity(self):
        sysd = pt.weighted_system((1, 1, 3), (6,))
        assert pt.refine_lattice(sysd, 1) is sysd

    def test_dimension_invariance(self):
        support = [(i, 6 - i, 0) for i in range(6)] + [(0, 0, 2)]
        sysw = pt.polytopal_system(pt.weighted_simplex((1, 1, 3)), (6,), [support])
        base = pt.polytopal_dimension(sysw)
        for k in (2, 3):
            refined = pt.refine_lattice(sysw, k)
            assert pt.polytopal_dimension(refined) == base

    def test_regseq_invariance(self):
        sysr = pt.polytopal_system(simplex2(), (2, 2), [[(2, 0, 0)], [(0, 2, 0)]])
        for k in (2, 3):
            assert pt.is_regular_sequence(pt.refine_lattice(sysr, k))[0] is True

    def test_rejects_bad_k(self):
        with pytest.raises(ValueError):
            pt.refine_lattice(pt.weighted_system((1, 1), (2,)), 0)


class TestRouteEquivalence:
    def test_simplex_systems(self):
        simplex = ph.dual_description([(0, 0), (1, 0), (0, 1)])
        full1 = [tuple(p) for p in ph.lattice_points(simplex)]
        sysd = pt.polytopal_system(simplex, (1, 1), [full1, full1])
        assert pt.polytopal_dimension(sysd) == 0
        cox = pt.cox_system(sysd)
        assert dm.generic_dimension(cox) == 0

    def test_random_lattice_polytopes(self):
        rng = random.Random(73)
        done = 0
        while done < 25:
            n = rng.randint(1, 3)
            pts = [
                tuple(rng.randint(0, 3) for _ in range(n))
                for _ in range(rng.randint(n + 1, 6))
            ]
            poly = ph.dual_description(pts)
            if poly.dim != n:
                continue
            r = rng.randint(1, min(3, n + 1))
            degrees, supports = [], []
            ok = True
            for _ in range(r):
                d = rng.randint(1, 2)
                cand = ph.lattice_points(poly.scale(d))
                if not cand:
                    ok = False
                    break
                k = rng.randint(1, min(4, len(cand)))
                degrees.append(d)
                supports.append(rng.sample(cand, k))
            if not ok:
                continue
            sysd = pt.polytopal_system(poly, tuple(degrees), supports)
            lhs = pt.polytopal_dimension(sysd)
            rhs = dm.generic_dimension(pt.cox_system(sysd))
            assert lhs == rhs, (poly.vertices, degrees, supports)
            done += 1
