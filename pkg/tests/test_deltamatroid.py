import itertools

import pytest

from deltoid.core import SignedPermutation, ads, enumerate_group, tau_last
from deltoid.deltamatroid import (
    DeltaMatroid,
    Matroid,
    count_deltamatroids,
    enumerate_deltamatroids,
    from_bases,
    from_independents,
    graphic_matroid,
    polytope_edge_check,
    uniform_matroid,
)
from deltoid.errors import InvalidArgumentError, NotADeltaMatroidError


def dm(n, *sets):
    return DeltaMatroid.from_feasible_sets(n, sets)


def circle():
    return dm(2, (1, 2), (-1, -2))


def dplus():
    return dm(1, (1,))


def dminus():
    return dm(1, (-1,))


def dpm():
    return dm(1, (1,), (-1,))


class TestValidation:
    def test_valid_examples(self):
        dm(1, (1,), (-1,))
        circle()

    def test_three_of_four_square_vertices(self):
        # {1,2},{-1,-2},{1,-2} with {-1,2} absent: check against the hull oracle
        masks = {0b11, 0b00, 0b01}
        verdict_hull = polytope_edge_check(2, masks)
        try:
            DeltaMatroid.from_masks(2, masks)
            verdict_axiom = True
        except NotADeltaMatroidError:
            verdict_axiom = False
        assert verdict_axiom == verdict_hull

    def test_invalid_family_has_witness(self):
        # vertices (0,0,0) and (1,1,1): cube diagonal is not a root direction
        with pytest.raises(NotADeltaMatroidError) as err:
            DeltaMatroid.from_masks(3, {0b000, 0b111})
        assert err.value.witness is not None

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_axiom_agrees_with_hull_oracle(self, n):
        masks = list(range(1 << n))
        for r in range(1, (1 << n) + 1):
            for family in itertools.combinations(masks, r):
                axiom_ok = True
                try:
                    DeltaMatroid.from_masks(n, family)
                except NotADeltaMatroidError:
                    axiom_ok = False
                assert axiom_ok == polytope_edge_check(n, family), family


class TestMinors:
    def test_project_to_empty_ground(self):
        d = dpm().project(1)
        assert d.n == 0 and d.feasible == frozenset([0])

    def test_circle_project(self):
        assert circle().project(1) == DeltaMatroid(1, frozenset({0b0, 0b1}))

    def test_circle_contract(self):
        assert circle().contract(1) == DeltaMatroid(1, frozenset({0b1}))

    def test_circle_delete(self):
        assert circle().delete(1) == DeltaMatroid(1, frozenset({0b0}))

    def test_loop_coloop_conventions(self):
        d = dminus()  # 1 is a loop
        assert d.contract(1) == d.delete(1) == d.project(1)

    @pytest.mark.parametrize("n", [2, 3])
    def test_projections_commute(self, n):
        for d in enumerate_deltamatroids(n):
            assert d.project(1).project(1) == d.project(2).project(1)
            if n == 3:
                assert d.project(1).project(2) == d.project(3).project(1)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_dual_exchanges_delete_contract(self, n):
        for d in enumerate_deltamatroids(n):
            for i in range(1, n + 1):
                assert d.delete(i).dual() == d.dual().contract(i)


class TestDualProductTwist:
    def test_dual_of_dplus(self):
        assert dplus().dual() == dminus()

    def test_dual_involution(self):
        for d in enumerate_deltamatroids(2):
            assert d.dual().dual() == d

    def test_product(self):
        p = dplus().product(dminus())
        assert p == DeltaMatroid(2, frozenset({0b01}))

    def test_twist_by_tau(self):
        assert dplus().twist(tau_last(1)) == dminus()

    def test_twist_is_group_action(self):
        d = circle()
        for w1 in enumerate_group(2):
            for w2 in enumerate_group(2):
                assert d.twist(w2).twist(w1) == d.twist(w1 * w2)


class TestDistance:
    def test_circle_distances(self):
        c = circle()
        assert c.distance(ads(2, 1, 2)) == 0
        assert c.distance(ads(2, 1, -2)) == 1
        assert c.distance(ads(2, -1, 2)) == 1

    def test_dplus(self):
        assert dplus().distance(ads(1, -1)) == 1

    def test_zero_iff_feasible(self):
        for d in enumerate_deltamatroids(2):
            for pos in range(4):
                s = ads(2, *[i if pos >> (i - 1) & 1 else -i for i in (1, 2)])
                assert (d.distance(s) == 0) == (pos in d.feasible)


class TestExtremes:
    def test_dpm_examples(self):
        assert dpm().w_min_feasible(SignedPermutation.identity(1)) == ads(1, -1)
        assert dpm().w_min_feasible(tau_last(1)) == ads(1, 1)

    def test_circle_identity(self):
        w = SignedPermutation((1, 2))
        assert circle().w_min_feasible(w) == ads(2, -1, -2)

    def test_max_dual_identity(self):
        for d in enumerate_deltamatroids(2):
            for w in enumerate_group(2):
                assert d.w_max_feasible(w).bar() == d.dual().w_min_feasible(w)

    def test_twist_compatibility(self):
        for d in enumerate_deltamatroids(2):
            for w in enumerate_group(2):
                lhs = d.twist(w).w_min_feasible(SignedPermutation.identity(2))
                # the twisted polytope's identity-minimal vertex is the image
                # of the w^{-1}-chain minimum of the original
                from deltoid.core import weyl_act

                rhs = weyl_act(w, d.w_min_feasible(w.inverse()))
                assert lhs == rhs


class TestFromMatroids:
    def test_u12_bases(self):
        d = from_bases(uniform_matroid(1, 2))
        assert d == DeltaMatroid(2, frozenset({0b01, 0b10}))

    def test_u12_independents(self):
        d = from_independents(uniform_matroid(1, 2))
        assert d == DeltaMatroid(2, frozenset({0b00, 0b01, 0b10}))

    def test_free_matroid(self):
        assert from_bases(uniform_matroid(1, 1)) == dplus()

    def test_all_small_matroids_give_deltamatroids(self):
        for k in range(1, 5):
            for r in range(k + 1):
                m = uniform_matroid(r, k)
                from_bases(m)
                from_independents(m)

    def test_graphic(self):
        tri = graphic_matroid(3, [(1, 2), (2, 3), (3, 1)])
        assert tri.rank == 2
        assert len(tri.bases) == 3


class TestCornered:
    def test_ip_is_cornered_at_identity(self):
        d = from_independents(uniform_matroid(1, 2))
        w, m = d.is_cornered()
        assert w == SignedPermutation.identity(2)
        assert m.bases == uniform_matroid(1, 2).bases

    def test_circle_not_standard_cornered(self):
        assert not circle().is_standard_cornered()
        # no sign flip makes the diagonal segment downward closed
        assert circle().is_cornered() is None

    def test_loops_coloops(self):
        assert dminus().loops() == {1}
        assert dminus().coloops() == set()
        assert dplus().coloops() == {1}

    def test_cornered_witness_roundtrip(self):
        for d in enumerate_deltamatroids(2):
            res = d.is_cornered()
            if res is None:
                continue
            w, m = res
            assert d.twist(w) == from_independents(m)


class TestEnumeration:
    def test_counts(self):
        assert count_deltamatroids(0) == 1
        assert count_deltamatroids(1) == 3
        # every nonempty family of square vertices is a delta-matroid
        assert count_deltamatroids(2) == 15

    def test_n3_regression_constant(self):
        # frozen by exhaustive filtering, cross-validated against the hull
        # oracle in TestValidation
        assert count_deltamatroids(3) == 155


class TestMatroid:
    def test_exchange_rejected(self):
        with pytest.raises(InvalidArgumentError):
            Matroid((1, 2, 3, 4), frozenset({frozenset({1, 2}), frozenset({3, 4})}))

    def test_rank_functions(self):
        m = uniform_matroid(2, 4)
        assert m.rank == 2
        assert m.rank_of({1}) == 1
        assert m.corank({1}) == 1
        assert m.nullity({1, 2, 3}) == 1

    def test_dual(self):
        m = uniform_matroid(1, 3)
        assert m.dual().rank == 2

    def test_minors(self):
        m = uniform_matroid(2, 4)
        assert m.delete(4).rank == 2
        assert m.contract(4).rank == 1

    def test_direct_sum(self):
        m = uniform_matroid(1, 2).direct_sum(
            uniform_matroid(1, 2).relabel({1: 3, 2: 4})
        )
        assert m.rank == 2
        assert len(m.bases) == 4
