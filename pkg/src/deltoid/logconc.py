"""Lorentzian and log-concavity verification for U-polynomial transforms.

The homogenizations clear denominators termwise, so everything stays an exact
polynomial identity.  Lorentzian testing uses the standard characterization:
nonnegative coefficients, M-convex support, and every (d-2)-fold derivative
of the normalization having a Hessian with at most one positive eigenvalue
(eigenvalue signs counted by Descartes' rule on the exact characteristic
polynomial, which has only real roots).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .deltamatroid import DeltaMatroid, Matroid, from_bases
from .errors import InvalidArgumentError, ResourceLimitError
from .invariants import interlace, u_poly_explicit, u_poly_multi
from .polyring import MPoly

HESSIAN_VAR_CAP = 8
HESSIAN_DEGREE_CAP = 8


def homogenize_u(d: DeltaMatroid, target: str) -> MPoly:
    """The Theorem-B style degree-n homogenizations of the U-polynomial.

    isotropic:   u^a v^b -> x^a (y-q)^b (y+q)^(n-a-b)
    enveloping:  u^a v^b -> (2z+x)^a (y-z)^b (y+w)^(n-a-b)
    multivariable: u_I v^b -> prod(x_i) (y-q)^b (y+q)^(n-|I|-b)
    """
    n = d.n
    y = MPoly.var("y")
    if target == "isotropic":
        u_image = MPoly.var("x")
        v_image = y - MPoly.var("q")
        scale = y + MPoly.var("q")
    elif target == "enveloping":
        u_image = 2 * MPoly.var("z") + MPoly.var("x")
        v_image = y - MPoly.var("z")
        scale = y + MPoly.var("w")
    elif target == "multivariable":
        v_image = y - MPoly.var("q")
        scale = y + MPoly.var("q")
    else:
        raise InvalidArgumentError(f"unknown homogenization target {target!r}")

    out = MPoly((), {})
    if target == "multivariable":
        poly = u_poly_multi(d)
        for mono, coeff in poly.monomials():
            b = mono.get("v", 0)
            term = MPoly.const(coeff)
            weight = 0
            for name, e in mono.items():
                if name == "v":
                    continue
                term = term * MPoly.var(name.replace("u", "x")) ** e
                weight += e
            out = out + term * v_image**b * scale ** (n - weight - b)
        return out
    poly = u_poly_explicit(d)
    for mono, coeff in poly.monomials():
        a, b = mono.get("u", 0), mono.get("v", 0)
        out = out + coeff * u_image**a * v_image**b * scale ** (n - a - b)
    return out


# -- sequence checks ----------------------------------------------------------------


def sequence_verdict(seq) -> tuple[bool, str | None]:
    """Nonnegative, log-concave, no internal zeros; returns (ok, reason)."""
    seq = [Fraction(x) for x in seq]
    if any(x < 0 for x in seq):
        return False, "negative entry"
    nonzero = [i for i, x in enumerate(seq) if x]
    if nonzero:
        lo, hi = nonzero[0], nonzero[-1]
        if any(seq[i] == 0 for i in range(lo, hi + 1)):
            return False, "internal zero"
    for k in range(1, len(seq) - 1):
        if seq[k] ** 2 < seq[k - 1] * seq[k + 1]:
            return False, f"log-concavity fails at index {k}"
    return True, None


@dataclass(frozen=True)
class SliceWitness:
    pair: tuple[str, str]
    complement: dict
    sequence: tuple
    reason: str


def is_log_concave_unbroken(f: MPoly):
    """Check every two-variable coefficient slice of a homogeneous polynomial.

    Returns (ok, witness): the first violating slice if any.  All-zero slices
    pass vacuously (consistent with nonnegativity).
    """
    if not f.is_homogeneous():
        raise InvalidArgumentError("polynomial must be homogeneous")
    names = f.canonical().vars
    f = f.canonical()
    d = f.degree()
    for i, j in itertools.combinations(range(len(names)), 2):
        slices: dict[tuple, dict[int, Fraction]] = {}
        for expo, coeff in f.terms.items():
            rest = tuple(
                e for k, e in enumerate(expo) if k not in (i, j)
            )
            slices.setdefault(rest, {})[expo[i]] = coeff
        for rest, data in slices.items():
            length = d - sum(rest)
            seq = [data.get(k, Fraction(0)) for k in range(length + 1)]
            ok, reason = sequence_verdict(seq)
            if not ok:
                comp = {
                    names[k]: e
                    for k, e in zip(
                        (k for k in range(len(names)) if k not in (i, j)), rest
                    )
                    if e
                }
                return False, SliceWitness(
                    (names[i], names[j]), comp, tuple(seq), reason
                )
    return True, None


# -- Lorentzian testing --------------------------------------------------------------


def normalization(f: MPoly) -> MPoly:
    """Divide each coefficient by the factorial of its exponent vector."""
    terms = {}
    for expo, coeff in f.terms.items():
        denom = 1
        for e in expo:
            denom *= factorial(e)
        terms[expo] = coeff / denom
    return MPoly(f.vars, terms, f.laurent)


def _support_m_convex(support: set[tuple[int, ...]]) -> bool:
    for alpha in support:
        for beta in support:
            for i, (a, b) in enumerate(zip(alpha, beta)):
                if a <= b:
                    continue
                found = False
                for j, (c, dd) in enumerate(zip(alpha, beta)):
                    if c < dd:
                        cand = list(alpha)
                        cand[i] -= 1
                        cand[j] += 1
                        if tuple(cand) in support:
                            found = True
                            break
                if not found:
                    return False
    return True


def _char_poly_coeffs(h: list[list[Fraction]]) -> list[Fraction]:
    """det(x I - H) by exact evaluation-interpolation."""
    m = len(h)

    def det_at(x: Fraction) -> Fraction:
        a = [[(x if i == j else Fraction(0)) - h[i][j] for j in range(m)] for i in range(m)]
        sign = Fraction(1)
        out = Fraction(1)
        for col in range(m):
            piv = next((r for r in range(col, m) if a[r][col] != 0), None)
            if piv is None:
                return Fraction(0)
            if piv != col:
                a[col], a[piv] = a[piv], a[col]
                sign = -sign
            out *= a[col][col]
            inv = Fraction(1) / a[col][col]
            for r in range(col + 1, m):
                factor = a[r][col] * inv
                if factor:
                    a[r] = [v - factor * u for v, u in zip(a[r], a[col])]
        return sign * out

    # Newton interpolation on nodes 0..m
    values = [det_at(Fraction(k)) for k in range(m + 1)]
    divided = list(values)
    for j in range(1, m + 1):
        for i in range(m, j - 1, -1):
            divided[i] = (divided[i] - divided[i - 1]) / j
    coeffs = [Fraction(0)] * (m + 1)
    coeffs[0] = divided[m]
    for k in range(m - 1, -1, -1):
        new = [Fraction(0)] * (m + 1)
        for i in range(m):
            new[i + 1] += coeffs[i]
            new[i] -= k * coeffs[i]
        new[0] += divided[k]
        coeffs = new
    return coeffs


def _positive_eigenvalues(h: list[list[Fraction]]) -> int:
    """Exact count of positive eigenvalues of a rational symmetric matrix.

    All roots of the characteristic polynomial are real, so Descartes' rule
    on the coefficient signs is exact.
    """
    coeffs = _char_poly_coeffs(h)
    signs = [c for c in coeffs if c != 0]
    variations = sum(
        1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0)
    )
    return variations


def is_denormalized_lorentzian(f: MPoly) -> bool:
    """Is the normalization N(f) Lorentzian?

    Checks nonnegative coefficients, M-convex support, and the signature
    condition on every Hessian of a (d-2)-fold partial derivative of N(f).
    """
    if f.is_zero():
        return True
    if not f.is_homogeneous():
        raise InvalidArgumentError("polynomial must be homogeneous")
    f = f.canonical()
    if any(c < 0 for c in f.terms.values()):
        return False
    if not _support_m_convex(set(f.terms)):
        return False
    d = f.degree()
    m = len(f.vars)
    if d < 2:
        return True
    if m > HESSIAN_VAR_CAP or d > HESSIAN_DEGREE_CAP:
        raise ResourceLimitError("Hessian stage cap exceeded")
    nf = normalization(f)

    def partial(poly: MPoly, var_idx: int) -> MPoly:
        terms = {}
        for expo, coeff in poly.terms.items():
            if expo[var_idx] == 0:
                continue
            new = list(expo)
            new[var_idx] -= 1
            terms[tuple(new)] = coeff * expo[var_idx]
        return MPoly(poly.vars, terms)

    for combo in itertools.combinations_with_replacement(range(m), d - 2):
        g = nf
        for idx in combo:
            g = partial(g, idx)
        hess = [[Fraction(0)] * m for _ in range(m)]
        for expo, coeff in g.terms.items():
            idxs = [k for k, e in enumerate(expo) for _ in range(e)]
            if len(idxs) != 2:
                continue
            i, j = idxs
            if i == j:
                hess[i][i] += 2 * coeff
            else:
                hess[i][j] += coeff
                hess[j][i] += coeff
        if _positive_eigenvalues(hess) > 1:
            return False
    return True


# -- corollary and exploratory checks ---------------------------------------------------


@dataclass
class CorollaryReport:
    delta_matroid: DeltaMatroid
    results: dict = field(default_factory=dict)

    @property
    def all_pass(self) -> bool:
        return all(entry[0] for entry in self.results.values())


def interlace_transform_sequence(int_coeffs, n: int) -> list[Fraction]:
    """(y+1)^n Int((y-1)/(y+1)) as a coefficient sequence in y."""
    y = MPoly.var("y")
    out = MPoly((), {})
    for k, c in enumerate(int_coeffs):
        out = out + c * (y - 1) ** k * (y + 1) ** (n - k)
    return out.univariate_coeffs("y") if not out.is_zero() else [Fraction(0)]


def _int_transform_sequence(d: DeltaMatroid) -> list[Fraction]:
    return interlace_transform_sequence(interlace(d).univariate_coeffs("v"), d.n)


def corollary_checks(d: DeltaMatroid, matroid: Matroid | None = None) -> CorollaryReport:
    """All sequence consequences of the log-concavity theorem for one input."""
    report = CorollaryReport(d)
    u = MPoly.var("u")
    upoly = u_poly_explicit(d)

    two_u = upoly.substitute({"u": 2 * u, "v": -u})
    seq = two_u.univariate_coeffs("u") if not two_u.is_zero() else [Fraction(0)]
    report.results["u_poly_2u_minus_u"] = sequence_verdict(seq) + (seq,)

    seq2 = _int_transform_sequence(d)
    report.results["interlace_transform"] = sequence_verdict(seq2) + (seq2,)

    for name, vval in (("u_poly_v0", 0), ("u_poly_vm1", -1)):
        spec = upoly.substitute({"v": vval})
        coeffs = spec.univariate_coeffs("u") if not spec.is_zero() else [Fraction(0)]
        weighted = [factorial(k) * c for k, c in enumerate(coeffs)]
        report.results[name] = sequence_verdict(weighted) + (weighted,)

    if matroid is not None:
        # a_k = #{T <= S: T independent, S spanning, |S - T| = k} equals the
        # u^k coefficient of U_{P(M)}(u, 0)
        ground = sorted(matroid.ground, key=repr)
        counts = [0] * (len(ground) + 1)
        for r in range(len(ground) + 1):
            for s in itertools.combinations(ground, r):
                if not matroid.is_spanning(s):
                    continue
                for j in range(len(s) + 1):
                    for t in itertools.combinations(s, j):
                        if matroid.is_independent(t):
                            counts[len(s) - len(t)] += 1
        dm_base = from_bases(matroid)
        poly = u_poly_explicit(dm_base).substitute({"v": 0})
        coeffs = poly.univariate_coeffs("u")
        coeffs += [Fraction(0)] * (len(counts) - len(coeffs))
        match = all(Fraction(c) == x for c, x in zip(counts, coeffs))
        strong = all(
            k * counts[k] ** 2 >= (k + 1) * counts[k - 1] * counts[k + 1]
            for k in range(1, len(counts) - 1)
        )
        report.results["matroid_pair_count"] = (match, None, counts)
        report.results["strong_log_concavity"] = (strong, None, counts)
    return report


def flawless_scan(family) -> list[tuple[DeltaMatroid, tuple]]:
    """Search for counterexamples to a_i <= a_{n-i} for U_D(2u, -u)."""
    counterexamples = []
    for d in family:
        poly = u_poly_explicit(d).substitute({"u": 2 * MPoly.var("u"), "v": -MPoly.var("u")})
        seq = poly.univariate_coeffs("u") if not poly.is_zero() else [Fraction(0)]
        seq = seq + [Fraction(0)] * (d.n + 1 - len(seq))
        for i in range(d.n // 2 + 1):
            if seq[i] > seq[d.n - i]:
                counterexamples.append((d, tuple(seq)))
                break
    return counterexamples
