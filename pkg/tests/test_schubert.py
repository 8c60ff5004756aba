import itertools
import random

import pytest

from deltoid.core import AdmissibleSet, ads, maximal_ads
from deltoid.deltamatroid import (
    DeltaMatroid,
    enumerate_deltamatroids,
    from_independents,
)
from deltoid.polyhedra import (
    BnPolytope,
    cross_polytope,
    cube,
    intersect_with_cube,
    deltamatroid_of_01_polytope,
    signed_permutohedron,
)
from deltoid.schubert import (
    IndicatorCombination,
    IndicatorTerm,
    all_schubert_deltamatroids,
    coloop_free_schubert_census,
    cone_cube_intersect,
    cone_cube_intersect_oracle,
    eulerian_numbers,
    schubert_decompose,
    schubert_matroid,
    schubert_piece,
    standard_schubert,
    verify_indicator,
)


def dm(n, *sets):
    return DeltaMatroid.from_feasible_sets(n, sets)


class TestStandardSchubert:
    def test_gale_minimum(self):
        d = standard_schubert(ads(2, -1, -2))
        assert d.feasible == frozenset({0b00})

    def test_full_interval_n1(self):
        assert standard_schubert(ads(1, 1)) == dm(1, (1,), (-1,))

    def test_mixed(self):
        # interval below {-1, 2}: {-1,-2}, {1,-2}, {-1,2} (paper's dominance)
        d = standard_schubert(ads(2, -1, 2))
        assert d.feasible == frozenset({0b00, 0b01, 0b10})

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_matches_schubert_matroid_independence(self, n):
        for s in maximal_ads(n):
            d = standard_schubert(s)
            m = schubert_matroid(n, sorted(i for i in s.letters() if i > 0))
            assert d == from_independents(m)


class TestSchubertMatroid:
    def test_u12(self):
        m = schubert_matroid(2, [2])
        assert m.bases == frozenset({frozenset({1}), frozenset({2})})

    def test_only_bottom(self):
        m = schubert_matroid(2, [1])
        assert m.bases == frozenset({frozenset({1})})

    def test_13_in_3(self):
        m = schubert_matroid(3, [1, 3])
        assert m.bases == frozenset({frozenset({1, 2}), frozenset({1, 3})})


class TestConeCube:
    def test_all_ones(self):
        n = 3
        d = cone_cube_intersect([1] * n)
        assert d == standard_schubert(ads(n, *range(1, n + 1)))
        assert len(d.feasible) == 2**n

    def test_origin(self):
        d = cone_cube_intersect([0, 0, 0])
        assert d.feasible == frozenset({0})

    def test_reduction_fires(self):
        d = cone_cube_intersect([2, 0])
        assert d == cone_cube_intersect_oracle([2, 0])

    def test_empty(self):
        assert cone_cube_intersect([-3, -1]) is None
        assert cone_cube_intersect_oracle([-3, -1]) is None

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_matches_oracle_on_grid(self, n):
        for m in itertools.product(range(-2, 4), repeat=n):
            assert cone_cube_intersect(m) == cone_cube_intersect_oracle(m), m


class TestVerifyIndicator:
    def test_inclusion_exclusion_on_segments(self):
        # 1_{[0,2]} - 1_{[0,1]} - 1_{[1,2]} + 1_{{1}} = 0
        seg01 = dm(1, (1,), (-1,))
        point = dm(1, (-1,))  # the origin vertex
        comb = IndicatorCombination(
            1,
            [
                IndicatorTerm(1, (0,), cube(1).dilate(2)),
                IndicatorTerm(-1, (0,), BnPolytope.of_deltamatroid(seg01)),
                IndicatorTerm(-1, (1,), BnPolytope.of_deltamatroid(seg01)),
                IndicatorTerm(1, (1,), BnPolytope.of_deltamatroid(point)),
            ],
        )
        assert verify_indicator(comb, None)

    def test_square_matches_itself(self):
        comb = IndicatorCombination(2, [IndicatorTerm(1, (0, 0), cube(2))])
        assert verify_indicator(comb, cube(2))

    def test_mismatch_detected(self):
        comb = IndicatorCombination(
            2,
            [
                IndicatorTerm(1, (0, 0), cube(2)),
                IndicatorTerm(-1, (0, 0), BnPolytope.point((0, 0))),
            ],
        )
        assert not verify_indicator(comb, cube(2))


class TestDecompose:
    @pytest.mark.parametrize("n", [1, 2])
    def test_schubert_idempotence(self, n):
        for s in maximal_ads(n):
            d = standard_schubert(s)
            p = BnPolytope.of_deltamatroid(d)
            comb = schubert_decompose(p)
            assert len(comb.terms) == 1
            term = comb.terms[0]
            assert term.coeff == 1
            assert term.polytope.translate(term.translation) == p

    def test_cross_polytope(self):
        p = cross_polytope(2)
        comb = schubert_decompose(p)
        assert verify_indicator(comb, p)

    def test_signed_permutohedron(self):
        p = signed_permutohedron(2)
        comb = schubert_decompose(p)
        assert verify_indicator(comb, p)
        for t in (1, 2, 3):
            assert comb.lattice_point_statistic(t) == len(
                __import__("deltoid.polyhedra", fromlist=["lattice_points"])
                .lattice_points(p.dilate(t))
            )

    @pytest.mark.parametrize("n", [1, 2])
    def test_all_deltamatroids(self, n):
        for d in enumerate_deltamatroids(n):
            p = BnPolytope.of_deltamatroid(d)
            comb = schubert_decompose(p)
            assert verify_indicator(comb, p), d

    def test_terms_are_schubert(self):
        # every emitted piece is a Weyl image of a standard Schubert polytope
        catalog = {d.feasible for d in all_schubert_deltamatroids(2)}
        p = signed_permutohedron(2)
        for term in schubert_decompose(p).terms:
            dm_term = deltamatroid_of_01_polytope(term.polytope)
            assert dm_term.feasible in catalog


class TestSchubertClosure:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_closed_under_face_intersections(self, n):
        catalog = {d.feasible for d in all_schubert_deltamatroids(n)}
        for d in all_schubert_deltamatroids(n):
            p = BnPolytope.of_deltamatroid(d)
            for fixed in itertools.product((None, 0, 1), repeat=n):
                if all(f is None for f in fixed):
                    continue
                # intersect with the cube face given by the fixed coordinates
                pts = [
                    v
                    for v in p.all_vertices()
                    if all(
                        f is None or v[i] == f for i, f in enumerate(fixed)
                    )
                ]
                if not pts:
                    continue
                q = BnPolytope.from_vertices(n, pts)
                dm_q = deltamatroid_of_01_polytope(q)
                assert dm_q.feasible in catalog


class TestLinearIndependence:
    def test_evaluation_vectors_full_rank_n2(self):
        from fractions import Fraction

        from deltoid.schubert import _grid_products, _scaled_bounds
        import numpy as np

        n = 2
        cat = all_schubert_deltamatroids(n)
        box = ((0, 1), (0, 1))
        pts, products = _grid_products(n, box, 4 * n)
        rows = []
        for d in cat:
            p = BnPolytope.of_deltamatroid(d)
            inside = (products <= _scaled_bounds(p.h, 4 * n)[None, :]).all(axis=1)
            rows.append([Fraction(int(x)) for x in inside])
        # exact rank via Gaussian elimination
        rank = 0
        cols = len(rows[0])
        mat = [row[:] for row in rows]
        r = 0
        for c in range(cols):
            piv = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
            if piv is None:
                continue
            mat[r], mat[piv] = mat[piv], mat[r]
            inv = Fraction(1) / mat[r][c]
            mat[r] = [x * inv for x in mat[r]]
            for i in range(len(mat)):
                if i != r and mat[i][c] != 0:
                    f = mat[i][c]
                    mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
            r += 1
            if r == len(mat):
                break
        rank = r
        assert rank == len(cat)


class TestCensus:
    def test_n1(self):
        assert coloop_free_schubert_census(1) == {0: 1, 1: 1}

    def test_n2(self):
        assert coloop_free_schubert_census(2) == {0: 1, 1: 6, 2: 1}

    def test_n3(self):
        assert coloop_free_schubert_census(3) == {0: 1, 1: 23, 2: 23, 3: 1}

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_matches_eulerian(self, n):
        census = coloop_free_schubert_census(n)
        assert census == eulerian_numbers(n)
