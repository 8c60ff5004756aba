"""End-to-end verification of the localization identities for delta-matroids.

Left sides are computed by fixed-point sums, right sides by the invariants
module; both are exact polynomials in the formal parameters, so equality is
literal.  Any mismatch is reported with both sides attached.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .core import ads, all_group_elements
from .deltamatroid import DeltaMatroid
from .errors import InvalidArgumentError
from .invariants import interlace, u_poly_explicit
from .localization import (
    EqClass,
    box_class,
    chern,
    class_of_polytope,
    constant_class,
    dual_class,
    env_quot,
    env_sub,
    euler_char,
    integrate,
    iso_class,
    phi_B,
    restrict_class,
    segre,
    t_var,
    validate_class,
    zeta_B,
)
from .logconc import homogenize_u
from .polyhedra import BnPolytope, cross_polytope, lattice_points
from .polyring import MPoly


def _simplex_class(n: int, i: int) -> EqClass:
    return class_of_polytope(BnPolytope.simplex(ads(n, i)))


def c_box_bundle(n: int, uname: str | None = None, dual: bool = False) -> EqClass:
    """Total Chern class of the sum of coordinate O(1) pullbacks (or duals)."""
    out = constant_class(n, 1, "chow")
    for i in range(1, n + 1):
        cls = _simplex_class(n, i)
        if dual:
            cls = dual_class(cls)
        out = out * chern(cls, uname)
    return out


def c_box_multivariable(n: int) -> EqClass:
    """prod over i of (1 + x_i h_i), with a separate variable per coordinate."""
    out = constant_class(n, 1, "chow")
    for i in range(1, n + 1):
        out = out * chern(_simplex_class(n, i), f"x{i}")
    return out


def gamma_series(n: int, yname: str = "y") -> EqClass:
    """1 / (1 - y gamma) = sum y^k gamma^k, gamma the cross-polytope divisor."""
    gamma = phi_B(class_of_polytope(cross_polytope(n))) - constant_class(
        n, 1, "chow"
    )
    y = MPoly.var(yname)
    out = constant_class(n, 1, "chow")
    power = constant_class(n, 1, "chow")
    for k in range(1, n + 1):
        power = power * gamma
        out = out + power * y**k
    return out


def gamma_polynomial(n: int) -> EqClass:
    """1 + gamma + ... + gamma^n."""
    gamma = phi_B(class_of_polytope(cross_polytope(n))) - constant_class(
        n, 1, "chow"
    )
    out = constant_class(n, 1, "chow")
    power = constant_class(n, 1, "chow")
    for _ in range(n):
        power = power * gamma
        out = out + power
    return out


@dataclass
class IdentityReport:
    delta_matroid: DeltaMatroid | None
    results: dict = field(default_factory=dict)

    def record(self, name, lhs, rhs):
        self.results[name] = (lhs == rhs, lhs, rhs)

    @property
    def all_pass(self) -> bool:
        return all(ok for ok, *_ in self.results.values())

    def failures(self):
        return {k: v for k, v in self.results.items() if not v[0]}


def interlace_identity(d: DeltaMatroid, seed=0) -> tuple[MPoly, MPoly]:
    """int c(S, u) c(Q, v) against v^n Int(u/v)."""
    lhs = integrate(chern(env_sub(d), "u") * chern(env_quot(d), "v"), seed=seed)
    u, v = MPoly.var("u"), MPoly.var("v")
    rhs = MPoly((), {})
    for k, c in enumerate(interlace(d).univariate_coeffs("v")):
        rhs = rhs + c * u**k * v ** (d.n - k)
    return lhs, rhs.canonical()


def u_poly_identity(d: DeltaMatroid, seed=0) -> tuple[MPoly, MPoly]:
    """int c(box O(1), u) c(S, v) c(Q) against U_D(u, v)."""
    lhs = integrate(
        c_box_bundle(d.n, "u") * chern(env_sub(d), "v") * chern(env_quot(d)),
        seed=seed,
    )
    return lhs, u_poly_explicit(d).canonical()


def enveloping_identity(d: DeltaMatroid, seed=0) -> tuple[MPoly, MPoly]:
    """Segre/Chern/cross-divisor integral against the enveloping homogenization."""
    q = env_quot(d)
    lhs = integrate(
        segre(dual_class(q), "z")
        * chern(q, "w")
        * gamma_series(d.n)
        * c_box_bundle(d.n, "x"),
        seed=seed,
    )
    return lhs, homogenize_u(d, "enveloping").canonical()


def isotropic_identity(d: DeltaMatroid, seed=0) -> tuple[MPoly, MPoly]:
    """Isotropic-class integral against the multivariable homogenization."""
    lhs = integrate(
        chern(dual_class(iso_class(d)), "q")
        * gamma_series(d.n)
        * c_box_multivariable(d.n),
        seed=seed,
    )
    return lhs, homogenize_u(d, "multivariable").canonical()


def hrr_for_polytope(p: BnPolytope, seed=0) -> tuple[int, MPoly, int]:
    """(chi by fixed points, integral side, lattice count) for a line bundle."""
    cls = class_of_polytope(p)
    chi = euler_char(cls, seed=seed)
    integral = integrate(phi_B(cls) * c_box_bundle(p.n), seed=seed)
    count = len(lattice_points(p))
    return chi, integral.canonical(), count


def dual_hrr_for_polytope(p: BnPolytope, seed=0) -> tuple[int, MPoly]:
    """chi against the dual Hirzebruch-Riemann-Roch integral."""
    cls = class_of_polytope(p)
    chi = euler_char(cls, seed=seed)
    integral = integrate(
        zeta_B(cls) * c_box_bundle(p.n, dual=True) * gamma_polynomial(p.n),
        seed=seed,
    )
    return chi, integral.canonical()


def restriction_identity(d: DeltaMatroid) -> bool:
    """Restriction to the coordinate subvariety is 1 + class of the projection."""
    for maker in (iso_class, env_sub, env_quot):
        cls = maker(d)
        for i in range(1, d.n + 1):
            restricted = restrict_class(cls, i)
            expected = maker(d.project(i)) + MPoly.const(1, True)
            if any(
                restricted.values[w] != expected.values[w]
                for w in restricted.values
            ):
                return False
    return True


def _u_coeffs(poly: MPoly, udeg: int) -> list[MPoly]:
    return [poly.coefficient("u", k) for k in range(udeg + 1)]


def _u_series_mul(a: list[MPoly], b: list[MPoly], n, tvars) -> list[MPoly]:
    out = [MPoly((), {}) for _ in a]
    for i, ai in enumerate(a):
        if ai.is_zero():
            continue
        for j in range(len(a) - i):
            if not b[j].is_zero():
                out[i + j] = (out[i + j] + ai * b[j]).truncate_degree(
                    n, names=tvars
                )
    return out


def _u_series_inverse(c: list[MPoly], n, tvars) -> list[MPoly]:
    s0 = c[0].series_inverse(n, names=tvars)
    out = [s0] + [MPoly((), {}) for _ in c[1:]]
    for k in range(1, len(c)):
        acc = MPoly((), {})
        for j in range(1, k + 1):
            acc = acc + c[j] * out[k - j]
        out[k] = (-(s0 * acc)).truncate_degree(n, names=tvars)
    return out


def _geometric_inverse_power(m: int, udeg: int) -> list[MPoly]:
    """(1 - u)^(-m) as u-series coefficients (constants)."""
    from .polyring import generalized_binomial

    return [
        MPoly.const(generalized_binomial(m + j - 1, j)) for j in range(udeg + 1)
    ]


def nice_chern_roots_identities(d: DeltaMatroid, udeg: int | None = None) -> bool:
    """Per-fixed-point series identities for the dual enveloping quotient class.

    Wedge identities are exact polynomials in u; Sym identities are verified
    as truncated series to u-degree 2n.
    """
    n = d.n
    udeg = 2 * n if udeg is None else udeg
    q_dual = dual_class(env_quot(d))
    tvars = [t_var(i) for i in range(1, n + 1)]
    u = MPoly.var("u")

    for w in all_group_elements(n):
        f = q_dual.values[w]
        rank = int(sum(f.terms.values()))
        monos = [
            ({v: e for v, e in zip(f.vars, expo) if e}, int(coeff))
            for expo, coeff in f.terms.items()
        ]
        if any(a < 0 for _, a in monos):
            raise InvalidArgumentError("series need effective classes")

        # wedge generating polynomial prod (1 + T^m u)^a
        wedge = MPoly.const(1, True)
        for mono, a in monos:
            base = MPoly.const(1, True) + MPoly.monomial(mono, laurent=True) * u
            wedge = wedge * base**a
        wedge_k = _u_coeffs(wedge, wedge.degree(["u"]))

        zeta_wedge = MPoly((), {})
        phi_wedge = MPoly((), {})
        for k, ck in enumerate(wedge_k):
            zeta_wedge = zeta_wedge + _zeta_at(ck, w, n) * u**k
            phi_wedge = phi_wedge + _phi_at(ck, w, n) * u**k

        f_dual = _dualize_poly(f)
        cT = _chern_at(f, w, n, "u")
        cT_dual = _chern_at(f_dual, w, n, "u")
        sT_dual_total = _chern_at(f_dual, w, n, None).series_inverse(
            n, names=tvars
        )

        rhs_zeta = MPoly((), {})
        rhs_phi = MPoly((), {})
        for k in range(n + 1):
            ck = cT.coefficient("u", k)
            if not ck.is_zero():
                rhs_zeta = rhs_zeta + ck * u**k * (u + 1) ** (rank - k)
            dk = cT_dual.coefficient("u", k)
            if not dk.is_zero():
                rhs_phi = rhs_phi + dk * (u + 1) ** (rank - k)
        rhs_phi = (rhs_phi * sT_dual_total).truncate_degree(n, names=tvars)
        if zeta_wedge != rhs_zeta:
            return False
        if phi_wedge.truncate_degree(n, names=tvars) != rhs_phi:
            return False

        # sym series: inverse of prod (1 - T^m u)^a, truncated at u-degree udeg
        sym_denom = MPoly.const(1, True)
        for mono, a in monos:
            base = MPoly.const(1, True) - MPoly.monomial(mono, laurent=True) * u
            sym_denom = sym_denom * base**a
        sym_k = _u_series_inverse(
            [sym_denom.coefficient("u", k) for k in range(udeg + 1)], n, tvars
        )
        zeta_sym = [_zeta_at(ck, w, n) for ck in sym_k]
        phi_sym = [_phi_at(ck, w, n) for ck in sym_k]

        # rhs of the zeta-sym identity: (1-u)^(-rank) s^T([E], u/(u-1))
        sT = _chern_at(f, w, n, None).series_inverse(n, names=tvars)
        # s^T as graded pieces s_k of t-degree k
        s_pieces = [sT.homogeneous_part(k, tvars) for k in range(n + 1)]
        rhs_zeta_sym = [MPoly((), {}) for _ in range(udeg + 1)]
        for k, sk in enumerate(s_pieces):
            if sk.is_zero():
                continue
            # s_k u^k (u-1)^(-k) (1-u)^(-rank) = s_k (-1)^k u^k (1-u)^(-k-rank)
            geo = _geometric_inverse_power(k + rank, udeg)
            sign = (-1) ** k
            for j in range(udeg + 1 - k):
                rhs_zeta_sym[k + j] = (
                    rhs_zeta_sym[k + j] + sign * sk * geo[j]
                ).truncate_degree(n, names=tvars)
        if any(a != b for a, b in zip(zeta_sym, rhs_zeta_sym)):
            return False

        # rhs of the phi-sym identity: c^T([E*]) (1-u)^(-rank) s^T([E*], 1/(1-u))
        cT_dual_total = _chern_at(f_dual, w, n, None)
        s_dual_pieces = [
            sT_dual_total.homogeneous_part(k, tvars) for k in range(n + 1)
        ]
        rhs_phi_sym = [MPoly((), {}) for _ in range(udeg + 1)]
        for k, sk in enumerate(s_dual_pieces):
            if sk.is_zero():
                continue
            geo = _geometric_inverse_power(k + rank, udeg)
            for j in range(udeg + 1):
                rhs_phi_sym[j] = (rhs_phi_sym[j] + sk * geo[j]).truncate_degree(
                    n, names=tvars
                )
        rhs_phi_sym = [
            (cT_dual_total * x).truncate_degree(n, names=tvars)
            for x in rhs_phi_sym
        ]
        if any(a != b for a, b in zip(phi_sym, rhs_phi_sym)):
            return False
    return True


def _dualize_poly(f: MPoly) -> MPoly:
    terms = {tuple(-e for e in expo): c for expo, c in f.terms.items()}
    return MPoly(f.vars, terms, True)


def _chern_at(f: MPoly, w, n, uname):
    from .localization import _monomial_linear_form, _chow_vars

    u = MPoly.var(uname) if uname else MPoly.const(1)
    out = MPoly.const(1)
    for expo, coeff in f.terms.items():
        lin = _monomial_linear_form(f.vars, expo, n)
        if lin.is_zero():
            continue
        a = int(coeff)
        factor = MPoly.const(1) + lin * u
        if a >= 0:
            out = out * factor**a
        else:
            out = out * factor.series_inverse(n, names=_chow_vars(n)) ** (-a)
        out = out.truncate_degree(n, names=_chow_vars(n))
    return out


def _phi_at(f: MPoly, w, n):
    from .localization import _phi_series, _chow_vars

    eps = w.sign_pattern()
    out = MPoly((), {})
    for expo, coeff in f.terms.items():
        term = MPoly.const(coeff)
        for var, e in zip(f.vars, expo):
            if e and var.startswith("T"):
                i = int(var[1:])
                term = term * _phi_series(eps[i - 1], e, n, i)
                term = term.truncate_degree(n, names=_chow_vars(n))
        out = out + term
    return out.truncate_degree(n, names=_chow_vars(n))


def _zeta_at(f: MPoly, w, n):
    out = _phi_at(_dualize_poly(f), w, n)
    return out.substitute(
        {t_var(i): MPoly((t_var(i),), {(1,): -1}) for i in range(1, n + 1)}
    )


def verify_identities(d: DeltaMatroid, seed: int = 0, include_hrr: bool = True) -> IdentityReport:
    """Run the full identity battery for one delta-matroid."""
    report = IdentityReport(d)
    for cls_name, maker in (
        ("iso", iso_class),
        ("env_sub", env_sub),
        ("env_quot", env_quot),
    ):
        report.results[f"validate_{cls_name}"] = (
            validate_class(maker(d)),
            None,
            None,
        )
    s_plus_q = env_sub(d) + env_quot(d)
    box = box_class(d.n)
    report.results["sub_plus_quot_is_box"] = (
        all(s_plus_q.values[w] == box.values[w] for w in box.values),
        None,
        None,
    )
    report.record("interlace", *interlace_identity(d, seed))
    report.record("u_polynomial", *u_poly_identity(d, seed))
    report.record("enveloping", *enveloping_identity(d, seed))
    report.record("isotropic", *isotropic_identity(d, seed))
    report.results["restriction"] = (restriction_identity(d), None, None)
    if include_hrr:
        p = BnPolytope.of_deltamatroid(d)
        chi, integral, count = hrr_for_polytope(p, seed)
        report.results["hrr"] = (
            MPoly.const(chi) == integral and chi == count,
            (chi, count),
            integral,
        )
        chi2, dual_integral = dual_hrr_for_polytope(p, seed)
        report.results["dual_hrr"] = (
            MPoly.const(chi2) == dual_integral,
            chi2,
            dual_integral,
        )
    return report
