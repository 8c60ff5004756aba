import itertools
import random

import pytest

from deltoid.core import all_group_elements
from deltoid.deltamatroid import (
    DeltaMatroid,
    Matroid,
    enumerate_deltamatroids,
    from_bases,
    from_independents,
    uniform_matroid,
)
from deltoid.envelope import (
    EnvelopeWitness,
    bar_relabel,
    check_envelope_lemmas,
    duchamp_family,
    env_support,
    envelope_base,
    envelope_from_rep,
    envelope_indep,
    find_envelope,
    is_enveloping,
)
from deltoid.errors import InvalidArgumentError
from deltoid.core import ads
from deltoid.represent import FqMatrix, Graph, adjacency_delta, circ_uniform, circ_uniform_matrix


def dm(n, *sets):
    return DeltaMatroid.from_feasible_sets(n, sets)


def letters_matroid(bases):
    ground = sorted(
        {abs(x) for b in bases for x in b}
    )
    n = max(ground)
    full = tuple(range(1, n + 1)) + tuple(range(-1, -n - 1, -1))
    return Matroid(full, frozenset(frozenset(b) for b in bases))


class TestEnvSupport:
    def test_u12_on_doubled_single(self):
        m = letters_matroid([{1}, {-1}])
        h = env_support(m, 1)
        assert h[ads(1, 1)] == 1
        assert h[ads(1, -1)] == 1

    def test_point_basis(self):
        m = letters_matroid([{1}])
        h = env_support(m, 1)
        assert h[ads(1, 1)] == 1
        assert h[ads(1, -1)] == -1


class TestIsEnveloping:
    def test_dpm(self):
        m = letters_matroid([{1}, {-1}])
        assert is_enveloping(m, dm(1, (1,), (-1,)))

    def test_point_not_enveloping_dpm(self):
        m = letters_matroid([{1}])
        assert not is_enveloping(m, dm(1, (1,), (-1,)))

    def test_direct_sum_for_base_polytope(self):
        m = uniform_matroid(1, 2)
        witness = envelope_base(m)
        assert is_enveloping(witness, from_bases(m))


class TestConstructions:
    @pytest.mark.parametrize("r,k", [(0, 1), (1, 1), (1, 2), (1, 3), (2, 3)])
    def test_envelope_base(self, r, k):
        m = uniform_matroid(r, k)
        assert is_enveloping(envelope_base(m), from_bases(m))

    @pytest.mark.parametrize("r,k", [(0, 1), (1, 1), (1, 2), (1, 3), (2, 3)])
    def test_envelope_indep(self, r, k):
        m = uniform_matroid(r, k)
        assert is_enveloping(envelope_indep(m), from_independents(m))

    def test_envelope_base_u01(self):
        m = uniform_matroid(0, 1)
        w = envelope_base(m)
        assert w.bases == frozenset({frozenset({-1})})

    def test_envelope_from_rep_identity(self):
        mat = FqMatrix(2, ((1, 0, 0, 0, 0), (0, 1, 0, 0, 0)))
        m = envelope_from_rep(mat)
        assert is_enveloping(m, dm(2, (1, 2)))

    def test_envelope_from_rep_circle(self):
        g = Graph.from_pairs(2, [(1, 2)])
        mat = FqMatrix(2, ((1, 0, 0, 1), (0, 1, 1, 0)))
        m = envelope_from_rep(mat)
        assert is_enveloping(m, adjacency_delta(g))

    def test_envelope_from_rep_circ_uniform(self):
        mat = circ_uniform_matrix(1, 3, seed=2)
        m = envelope_from_rep(mat)
        assert is_enveloping(m, circ_uniform(1, 3))

    def test_non_isotropic_rejected(self):
        with pytest.raises(InvalidArgumentError):
            envelope_from_rep(FqMatrix(2, ((1, 1),)))


class TestLemmas:
    def test_base_witness(self):
        m = uniform_matroid(1, 2)
        w = EnvelopeWitness(from_bases(m), envelope_base(m), "direct-sum")
        assert all(check_envelope_lemmas(w).values())

    def test_indep_witness(self):
        m = uniform_matroid(1, 2)
        w = EnvelopeWitness(
            from_independents(m), envelope_indep(m), "free-product"
        )
        assert all(check_envelope_lemmas(w).values())

    def test_loop_witness(self):
        m = uniform_matroid(0, 1)
        w = EnvelopeWitness(from_bases(m), envelope_base(m), "direct-sum")
        assert all(check_envelope_lemmas(w).values())


class TestCompatibility:
    """Witnesses stay witnesses under the group action, minors, sums, duals."""

    def _witnesses_n2(self):
        out = []
        for r in range(3):
            m = uniform_matroid(r, 2)
            out.append((from_bases(m), envelope_base(m)))
            out.append((from_independents(m), envelope_indep(m)))
        return out

    def test_weyl_images(self):
        for d, m in self._witnesses_n2():
            for w in all_group_elements(2):
                twisted = d.twist(w)
                relabeled = m.relabel({g: w(g) for g in m.ground})
                assert is_enveloping(relabeled, twisted)

    def test_duals(self):
        for d, m in self._witnesses_n2():
            assert is_enveloping(m.dual(), d.dual())

    def test_minors(self):
        for d, m in self._witnesses_n2():
            for i in (1, 2):
                contracted = m.contract(i).delete(-i)
                relabel = {}
                for g in contracted.ground:
                    a = abs(g)
                    new = a if a < i else a - 1
                    relabel[g] = new if g > 0 else -new
                assert is_enveloping(contracted.relabel(relabel), d.contract(i))

    def test_direct_sums(self):
        m1 = uniform_matroid(1, 1)
        d1, w1 = from_bases(m1), envelope_base(m1)
        m2 = uniform_matroid(1, 2)
        d2, w2 = from_bases(m2), envelope_base(m2)
        shifted = w2.relabel(
            {g: (abs(g) + 1) * (1 if g > 0 else -1) for g in w2.ground}
        )
        assert is_enveloping(w1.direct_sum(shifted), d1.product(d2))

    def test_random_n3(self):
        rng = random.Random(11)
        for _ in range(5):
            r = rng.randint(0, 3)
            m = uniform_matroid(r, 3)
            d, w = from_independents(m), envelope_indep(m)
            g = rng.choice(all_group_elements(3))
            assert is_enveloping(w.relabel({x: g(x) for x in w.ground}), d.twist(g))


class TestFindEnvelope:
    def test_base_form(self):
        d = from_bases(uniform_matroid(1, 2))
        w = find_envelope(d)
        assert w is not None and w.construction == "direct-sum"

    def test_indep_form(self):
        d = from_independents(uniform_matroid(1, 2))
        assert find_envelope(d) is not None

    def test_twisted_indep_form(self):
        d = from_independents(uniform_matroid(1, 2))
        for w in all_group_elements(2):
            assert find_envelope(d.twist(w)) is not None


class TestDuchamp:
    def test_is_valid_deltamatroid(self):
        d = duchamp_family()
        assert len(d.feasible) == 9

    def test_not_base_or_indep_form(self):
        d = duchamp_family()
        sizes = {bin(m).count("1") for m in d.feasible}
        assert len(sizes) > 1  # not P(M) form
        assert d.is_cornered() is None  # not a twisted IP(M) form

    def test_canonical_constructions_inapplicable(self):
        assert find_envelope(duchamp_family()) is None
