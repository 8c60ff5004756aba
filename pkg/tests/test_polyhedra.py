import itertools
import random
from fractions import Fraction

import pytest

from deltoid.core import SignedPermutation, ads, nonempty_ads, tau_last
from deltoid.deltamatroid import (
    DeltaMatroid,
    enumerate_deltamatroids,
    from_bases,
    from_independents,
    uniform_matroid,
)
from deltoid.errors import InvalidArgumentError, InvalidCombinationError
from deltoid.polyhedra import (
    BnPolytope,
    DeltaDecomposition,
    cross_polytope,
    cube,
    cube_difference_support,
    delta_decompose,
    delta_decompose_dense,
    deltamatroid_of_01_polytope,
    incidence_nonsingular,
    intersect_with_cube,
    lattice_count_formula,
    lattice_count_oracle,
    lattice_points,
    lattice_points_of_region,
    minkowski_combine,
    psi,
    signed_permutohedron,
    signed_transversal_count,
    volume,
    volume_oracle,
    volume_ordered_sum,
)
from deltoid.polyring import MPoly


def circle_polytope():
    return BnPolytope.of_deltamatroid(
        DeltaMatroid.from_feasible_sets(2, [(1, 2), (-1, -2)])
    )


class TestSimplex:
    def test_segment_positive(self):
        p = BnPolytope.simplex(ads(1, 1))
        assert p.support(ads(1, 1)) == 1
        assert p.support(ads(1, -1)) == 0

    def test_segment_negative(self):
        p = BnPolytope.simplex(ads(1, -1))
        assert p.support(ads(1, -1)) == 1
        assert p.support(ads(1, 1)) == 0

    def test_triangle_opposite_ray(self):
        p = BnPolytope.simplex(ads(2, 1, 2))
        assert p.support(ads(2, -1, -2)) == 0

    def test_empty_rejected(self):
        with pytest.raises(InvalidArgumentError):
            BnPolytope.simplex(ads(2))


class TestVertex:
    def test_cube_identity(self):
        assert cube(2).vertex(SignedPermutation((1, 2))) == (1, 1)

    def test_segment_flip(self):
        p = BnPolytope.simplex(ads(1, 1))
        assert p.vertex(tau_last(1)) == (0,)

    def test_cross_polytope(self):
        assert cross_polytope(2).vertex(SignedPermutation((1, 2))) == (1, 0)

    def test_all_vertices_of_cube(self):
        vs = cube(2).all_vertices()
        assert sorted(vs) == [(0, 0), (0, 1), (1, 0), (1, 1)]

    def test_min_vertex(self):
        assert cube(2).min_vertex(SignedPermutation((1, 2))) == (0, 0)


class TestMinkowski:
    def test_square_as_sum_of_segments(self):
        p = minkowski_combine(
            [(1, BnPolytope.simplex(ads(2, 1))), (1, BnPolytope.simplex(ads(2, 2)))]
        )
        assert p == cube(2)

    def test_dilation(self):
        p = minkowski_combine([(2, BnPolytope.simplex(ads(1, 1)))])
        assert p.support(ads(1, 1)) == 2

    def test_signed_translate(self):
        # segment minus its own reverse direction: [0,1] - [-1,0] = [0,1]+...
        # Delta_{1-bar} = Delta_{1} - e_1, so the difference is the point e_1
        p = minkowski_combine(
            [
                (1, BnPolytope.simplex(ads(1, 1))),
                (-1, BnPolytope.simplex(ads(1, -1))),
            ]
        )
        assert p.all_vertices() == [(1,)]

    def test_invalid_combination_rejected(self):
        with pytest.raises(InvalidCombinationError):
            minkowski_combine(
                [
                    (1, BnPolytope.simplex(ads(2, 1))),
                    (-1, BnPolytope.simplex(ads(2, 2))),
                ]
            )


class TestDecompose:
    def test_cube(self):
        d = delta_decompose(cube(2))
        expected = {ads(2, 1): 1, ads(2, 2): 1}
        assert {s: c for s, c in d.coeffs.items() if c} == expected

    def test_circle_roundtrip(self):
        p = circle_polytope()
        d = delta_decompose(p)
        assert d.to_polytope() == p

    def test_signed_permutohedron_roundtrip(self):
        p = signed_permutohedron(2)
        d = delta_decompose(p)
        assert d.to_polytope() == p

    @pytest.mark.parametrize("n", [1, 2])
    def test_matches_dense_oracle(self, n):
        polys = [cube(n), cross_polytope(n), signed_permutohedron(n)]
        for p in polys:
            tensor = delta_decompose(p).coeffs
            dense = delta_decompose_dense(p)
            for s in nonempty_ads(n):
                assert Fraction(tensor[s]) == dense[s]

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
    def test_incidence_nonsingular(self, n):
        assert incidence_nonsingular(n)

    def test_roundtrip_sparse_exhaustive(self):
        # all coefficient vectors in {-1,0,1,2} on at most two rays, n <= 2
        for n in (1, 2):
            rays = nonempty_ads(n)
            for pair in itertools.combinations(range(len(rays)), 2):
                for c1, c2 in itertools.product((-1, 0, 1, 2), repeat=2):
                    terms = [
                        (c, BnPolytope.simplex(rays[i]))
                        for c, i in zip((c1, c2), pair)
                        if c
                    ]
                    if not terms:
                        continue
                    try:
                        p = minkowski_combine(terms)
                    except InvalidCombinationError:
                        continue
                    d = delta_decompose(p)
                    assert d.to_polytope() == p
                    rebuilt = {rays[i]: c for c, i in zip((c1, c2), pair) if c}
                    assert {s: c for s, c in d.coeffs.items() if c} == rebuilt


class TestTransversals:
    def test_spec_examples(self):
        assert signed_transversal_count([ads(2, 1), ads(2, 2)]) == 1
        assert signed_transversal_count([ads(2, 1), ads(2, 1)]) == 0
        assert signed_transversal_count([ads(2, 1, -2), ads(2, -2, 1)]) == 1

    def test_symmetry(self):
        sets = [ads(3, 1, 2), ads(3, -1, 3), ads(3, 2, -3)]
        base = signed_transversal_count(sets)
        for perm in itertools.permutations(sets):
            assert signed_transversal_count(list(perm)) == base

    def test_exhaustive_oracle_n2(self):
        # independent oracle: enumerate admissible tau and bijections directly
        rays = nonempty_ads(2)
        for s1, s2 in itertools.product(rays, repeat=2):
            expected = 0
            for tau_mask in range(4):
                tau = [1 if tau_mask & 1 else -1, 2 if tau_mask & 2 else -2]
                found = any(
                    a in s1 and b in s2
                    for a, b in itertools.permutations(tau, 2)
                )
                expected += found
            assert signed_transversal_count([s1, s2]) == expected


class TestVolume:
    def test_cube(self):
        assert volume(delta_decompose(cube(2))) == 2
        assert volume_oracle(cube(2)) == 2

    def test_standard_simplex(self):
        for n in (1, 2, 3):
            p = BnPolytope.simplex(ads(n, *range(1, n + 1)))
            assert volume(delta_decompose(p)) == 1
            assert volume_oracle(p) == 1

    def test_dilated_cube(self):
        p = cube(2).dilate(2)
        assert volume_oracle(p) == 8
        assert volume(delta_decompose(p)) == 8

    def test_lower_dimensional(self):
        assert volume_oracle(circle_polytope()) == 0

    def test_ordered_sum_agrees(self):
        for p in [cube(2), cross_polytope(2), signed_permutohedron(2)]:
            d = delta_decompose(p)
            assert volume(d) == volume_ordered_sum(d)

    def test_mixed_volume_grid_n2(self):
        # Vol(a*D_S + b*D_R) = N(S,S)a^2 + 2N(S,R)ab + N(R,R)b^2
        rng = random.Random(5)
        rays = nonempty_ads(2)
        for _ in range(10):
            s, r = rng.choice(rays), rng.choice(rays)
            nss = signed_transversal_count([s, s])
            nsr = signed_transversal_count([s, r])
            nrr = signed_transversal_count([r, r])
            for a, b in itertools.product((1, 2, 3), repeat=2):
                p = minkowski_combine(
                    [(a, BnPolytope.simplex(s)), (b, BnPolytope.simplex(r))]
                )
                assert (
                    volume_oracle(p) == nss * a * a + 2 * nsr * a * b + nrr * b * b
                )


class TestLatticePoints:
    def test_cube(self):
        assert len(lattice_points(cube(2))) == 4

    def test_cross(self):
        assert len(lattice_points(cross_polytope(2))) == 5

    def test_point(self):
        assert lattice_points(BnPolytope.point((0, 0))) == [(0, 0)]

    def test_empty_region(self):
        h = [Fraction(-5) for _ in nonempty_ads(2)]
        assert lattice_points_of_region(2, h) == []


class TestPsi:
    def test_examples(self):
        x, y = MPoly.var("x"), MPoly.var("y")
        assert psi(x**2) == x * (x - 1) / 2
        assert psi(x * y) == x * y
        assert psi(3 * x**3) == 3 * x * (x - 1) * (x - 2) / 6


class TestLatticeCountFormula:
    def test_square(self):
        d = delta_decompose(cube(2))
        assert lattice_count_formula(d, "multiset") == 1
        assert lattice_count_oracle(cube(2)) == 1

    def test_triple_segment(self):
        p = minkowski_combine([(3, BnPolytope.simplex(ads(1, 1)))])
        d = delta_decompose(p)
        assert lattice_count_formula(d, "multiset") == 3
        assert lattice_count_formula(d, "ordered-psi") == 3
        assert lattice_count_oracle(p) == 3

    def test_double_cube(self):
        p = cube(2).dilate(2)
        d = delta_decompose(p)
        assert lattice_count_formula(d, "multiset") == 4
        assert lattice_count_oracle(p) == 4

    def test_ordered_psi_disagrees_on_square(self):
        # the documented convention discrepancy: the literal reading gives 2
        d = delta_decompose(cube(2))
        assert lattice_count_formula(d, "ordered-psi") == 2

    def test_cube_difference_region(self):
        # P - cube as an H-region equals the support translation
        p = cube(2).dilate(2)
        pts = lattice_points_of_region(2, cube_difference_support(p))
        assert sorted(pts) == [(0, 0), (0, 1), (1, 0), (1, 1)]


class TestIntersectWithCube:
    def test_double_cube(self):
        assert intersect_with_cube(cube(2).dilate(2), (0, 0)) == cube(2)

    def test_cross_gives_corner_simplex(self):
        q = intersect_with_cube(cross_polytope(2), (0, 0))
        assert q == BnPolytope.simplex(ads(2, 1, 2))

    def test_far_cube_empty(self):
        p = BnPolytope.simplex(ads(2, 1))
        assert intersect_with_cube(p, (5, 0)) is None

    def test_deltamatroid_intersections_validate(self):
        for d in enumerate_deltamatroids(2):
            p = BnPolytope.of_deltamatroid(d)
            q = intersect_with_cube(p, (0, 0))
            assert q is not None
            dm = deltamatroid_of_01_polytope(q)
            assert dm.feasible == d.feasible


from conftest import random_lattice_bngp


class TestRandomCorpus:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_decompose_and_volume_roundtrip(self, n):
        rng = random.Random(100 + n)
        for _ in range(25):
            p = random_lattice_bngp(n, rng)
            d = delta_decompose(p)
            assert all(isinstance(c, int) for c in d.coeffs.values())
            assert d.to_polytope() == p
            assert volume(d) == volume_oracle(p)
