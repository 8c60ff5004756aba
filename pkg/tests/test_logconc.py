import itertools

import pytest

from deltoid.deltamatroid import (
    DeltaMatroid,
    enumerate_deltamatroids,
    from_bases,
    from_independents,
    graphic_matroid,
    uniform_matroid,
)
from deltoid.envelope import find_envelope
from deltoid.errors import InvalidArgumentError
from deltoid.logconc import (
    corollary_checks,
    flawless_scan,
    homogenize_u,
    is_denormalized_lorentzian,
    is_log_concave_unbroken,
    normalization,
    sequence_verdict,
)
from deltoid.polyring import MPoly, poly_ring
from deltoid.represent import circ_uniform, circ_uniform_interlace

x, y, q = poly_ring("x", "y", "q")


def dm(n, *sets):
    return DeltaMatroid.from_feasible_sets(n, sets)


def dpm():
    return dm(1, (1,), (-1,))


def circle():
    return dm(2, (1, 2), (-1, -2))


class TestHomogenize:
    def test_dpm_isotropic(self):
        assert homogenize_u(dpm(), "isotropic") == x + 2 * y + 2 * q

    def test_dplus_isotropic(self):
        assert homogenize_u(dm(1, (1,)), "isotropic") == x + 2 * y

    def test_empty_ground(self):
        d = DeltaMatroid(0, frozenset([0]))
        assert homogenize_u(d, "isotropic") == MPoly.const(1)

    @pytest.mark.parametrize("target", ["isotropic", "enveloping", "multivariable"])
    def test_homogeneous_of_degree_n(self, target):
        for d in enumerate_deltamatroids(2):
            f = homogenize_u(d, target)
            assert f.is_homogeneous()
            assert f.degree() == 2

    def test_multivariable_specializes_to_isotropic(self):
        for d in enumerate_deltamatroids(2):
            multi = homogenize_u(d, "multivariable")
            folded = multi.substitute({"x1": x, "x2": x})
            assert folded == homogenize_u(d, "isotropic")


class TestUnbrokenArray:
    def test_square_of_sum(self):
        ok, _ = is_log_concave_unbroken((x + y) ** 2)
        assert ok

    def test_internal_zero(self):
        ok, witness = is_log_concave_unbroken(x**2 + y**2)
        assert not ok
        assert witness.reason == "internal zero"

    def test_dpm_transform(self):
        ok, _ = is_log_concave_unbroken(x + 2 * y + 2 * q)
        assert ok

    def test_sequence_verdict(self):
        assert sequence_verdict([1, 2, 1])[0]
        assert not sequence_verdict([1, 0, 1])[0]
        assert not sequence_verdict([1, -1])[0]
        assert sequence_verdict([0, 0, 0])[0]


class TestLorentzian:
    def test_perfect_square(self):
        assert is_denormalized_lorentzian(x**2 + 2 * x * y + y**2)

    def test_diagonal_rejected(self):
        assert not is_denormalized_lorentzian(x**2 + y**2)

    def test_circle_multivariable(self):
        assert is_denormalized_lorentzian(homogenize_u(circle(), "multivariable"))

    def test_inhomogeneous_rejected(self):
        with pytest.raises(InvalidArgumentError):
            is_denormalized_lorentzian(x**2 + y)

    def test_normalization(self):
        f = 2 * x**2
        assert normalization(f) == x**2

    def test_implication_to_unbroken(self):
        # denormalized Lorentzian implies log-concave unbroken array
        for d in enumerate_deltamatroids(2):
            for target in ("isotropic", "enveloping", "multivariable"):
                f = homogenize_u(d, target)
                if is_denormalized_lorentzian(f):
                    ok, witness = is_log_concave_unbroken(f)
                    assert ok, (d, target, witness)


class TestTheoremB:
    def witnessed(self, n):
        for d in enumerate_deltamatroids(n):
            if find_envelope(d) is not None:
                yield d

    @pytest.mark.parametrize("n", [1, 2])
    def test_all_witnessed_small(self, n):
        count = 0
        for d in self.witnessed(n):
            count += 1
            for target in ("isotropic", "enveloping", "multivariable"):
                assert is_denormalized_lorentzian(homogenize_u(d, target)), (
                    d,
                    target,
                )
        assert count > 0

    def test_matroid_forms_n3(self):
        for r in range(4):
            m = uniform_matroid(r, 3)
            for d in (from_bases(m), from_independents(m)):
                for target in ("isotropic", "enveloping", "multivariable"):
                    assert is_denormalized_lorentzian(homogenize_u(d, target))


class TestCorollaries:
    def test_p_u12(self):
        m = uniform_matroid(1, 2)
        rep = corollary_checks(from_bases(m), matroid=m)
        assert rep.all_pass
        assert rep.results["matroid_pair_count"][2] == [2, 4, 1]

    def test_dpm(self):
        rep = corollary_checks(dpm())
        assert rep.all_pass
        assert rep.results["u_poly_2u_minus_u"][2] == [2, 2]

    def test_circle_transform_exact(self):
        seq = corollary_checks(circle()).results["interlace_transform"][2]
        assert seq == [0, 4, 4]

    def test_triangle_graphic(self):
        m = graphic_matroid(3, [(1, 2), (2, 3), (3, 1)])
        assert corollary_checks(from_bases(m), matroid=m).all_pass


class TestFlawless:
    def test_small_families(self):
        assert flawless_scan(enumerate_deltamatroids(2)) == []

    def test_dpm_sequence(self):
        assert flawless_scan([dpm()]) == []


class TestNonUnimodalFamily:
    def test_m10_transform_log_concave(self):
        # interlace itself is non-unimodal at m = 10, yet the (y+1)^n transform
        # stays nonnegative log-concave with no internal zeros
        poly = circ_uniform_interlace(7, 20)
        coeffs = poly.univariate_coeffs("v")
        assert coeffs[1] > coeffs[2] < coeffs[3]
        yv = MPoly.var("y")
        out = MPoly((), {})
        for k, c in enumerate(coeffs):
            out = out + c * (yv - 1) ** k * (yv + 1) ** (20 - k)
        ok, reason = sequence_verdict(out.univariate_coeffs("y"))
        assert ok, reason

    def test_small_member_full_lorentzian(self):
        d = circ_uniform(1, 4)
        assert is_denormalized_lorentzian(homogenize_u(d, "isotropic"))
