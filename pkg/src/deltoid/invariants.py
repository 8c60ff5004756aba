"""Interlace and U-polynomials of delta-matroids, Tutte polynomials of matroids.

The closed form (distance sums over projections) is the primary route; the
deletion/contraction/projection recursion is kept as an independent oracle
and is asserted to be pivot-order independent.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .core import mask_members, popcount
from .deltamatroid import DeltaMatroid, Matroid
from .errors import InternalVerificationError
from .polyring import MPoly


def distance_profile(d: DeltaMatroid) -> list[int]:
    """counts[k] = number of maximal admissible sets at lattice distance k."""
    counts = [0] * (d.n + 1)
    feas = list(d.feasible)
    for target in range(1 << d.n):
        counts[min(popcount(m ^ target) for m in feas)] += 1
    return counts


def interlace(d: DeltaMatroid) -> MPoly:
    """Sum of v^(distance) over all maximal admissible sets."""
    counts = distance_profile(d)
    return MPoly(("v",), {(k,): c for k, c in enumerate(counts)})


def _projections(d: DeltaMatroid) -> dict[int, DeltaMatroid]:
    """All 2^n projections D(I), keyed by the bitmask of I."""
    out = {0: d}
    for mask in range(1, 1 << d.n):
        top = mask.bit_length()  # largest element of I
        below = popcount(mask) - 1  # projected elements below it
        prev = out[mask ^ (1 << (top - 1))]
        out[mask] = prev.project(top - below)
    return out


def u_poly_explicit(d: DeltaMatroid) -> MPoly:
    """Closed form: sum over subsets I of u^|I| Int(D(I))."""
    u = MPoly.var("u")
    out = MPoly(("u", "v"), {})
    for mask, proj in _projections(d).items():
        out = out + (u ** popcount(mask)) * interlace(proj)
    return out


def u_poly_multi(d: DeltaMatroid) -> MPoly:
    """Multivariable version: sum over I of (prod of u_i) Int(D(I))."""
    out = MPoly((), {})
    for mask, proj in _projections(d).items():
        mono = MPoly.monomial({f"u{i}": 1 for i in mask_members(mask)})
        out = out + mono * interlace(proj)
    return out


_UV1 = {(0, 0): 1, (1, 0): 1, (0, 1): 1}  # u + v + 1


def _u_recursive(d: DeltaMatroid, pivot: str, memo: dict) -> MPoly:
    if d.n == 0:
        return MPoly.const(1)
    key = (d.n, d.feasible)
    hit = memo.get(key)
    if hit is not None:
        return hit
    i = 1 if pivot == "min" else d.n
    if i in d.loops() or i in d.coloops():
        val = MPoly(("u", "v"), _UV1) * _u_recursive(d.delete(i), pivot, memo)
    else:
        val = (
            _u_recursive(d.delete(i), pivot, memo)
            + _u_recursive(d.contract(i), pivot, memo)
            + MPoly.var("u") * _u_recursive(d.project(i), pivot, memo)
        )
    memo[key] = val
    return val


def u_poly_recursive(d: DeltaMatroid) -> MPoly:
    """The deletion/contraction/projection recursion.

    Computed with two different pivot orders; their agreement is asserted.
    """
    first = _u_recursive(d, "min", {})
    second = _u_recursive(d, "max", {})
    if first != second:
        raise InternalVerificationError(
            "U-polynomial recursion depends on pivot order"
        )
    return first


@dataclass(frozen=True)
class InvariantReport:
    """Bundled invariants of one delta-matroid, cross-checked on construction."""

    delta_matroid: DeltaMatroid
    interlace: MPoly
    u_poly: MPoly
    u_multi: MPoly

    @classmethod
    def compute(cls, d: DeltaMatroid) -> "InvariantReport":
        inter = interlace(d)
        u = u_poly_explicit(d)
        multi = u_poly_multi(d)
        folded = multi.substitute(
            {f"u{i}": MPoly.var("u") for i in range(1, d.n + 1)}
        )
        if folded != u:
            raise InternalVerificationError("u_multi does not fold to u_poly")
        if u.substitute({"u": 0}) != inter:
            raise InternalVerificationError("u_poly at u=0 is not the interlace")
        return cls(d, inter, u, multi)


# -- matroid invariants -----------------------------------------------------------


def tutte(m: Matroid) -> MPoly:
    """Corank-nullity sum over all subsets of the ground set."""
    x = MPoly.var("x")
    y = MPoly.var("y")
    out = MPoly(("x", "y"), {})
    ground = sorted(m.ground, key=repr)
    for r in range(len(ground) + 1):
        for s in itertools.combinations(ground, r):
            out = out + (x - 1) ** m.corank(s) * (y - 1) ** m.nullity(s)
    return out


def tutte_substitution_for_indep(m: Matroid) -> MPoly:
    """(u+1)^(n-r) T_M(u+2, (u+v+1)/(u+1)) with denominators cleared exactly.

    Termwise, (u+1)^{n-r} (x-1)^{corank} (y-1)^{nullity} at x = u+2,
    y - 1 = v/(u+1) becomes (u+1)^{corank + n - r - nullity} v^{nullity};
    the exponent is nonnegative because nullity is at most n - r.
    """
    n, r = len(m.ground), m.rank
    u = MPoly.var("u")
    v = MPoly.var("v")
    out = MPoly(("u", "v"), {})
    ground = sorted(m.ground, key=repr)
    for k in range(n + 1):
        for s in itertools.combinations(ground, k):
            cork, null = m.corank(s), m.nullity(s)
            e = cork + n - r - null
            if e < 0:
                raise InternalVerificationError("nullity exceeded n - rank")
            out = out + (u + 1) ** e * v**null
    return out


def u_poly_base_double_sum(m: Matroid) -> MPoly:
    """Sum over pairs T <= S of u^|S - T| v^(corank(S) + nullity(T))."""
    u = MPoly.var("u")
    v = MPoly.var("v")
    out = MPoly(("u", "v"), {})
    ground = sorted(m.ground, key=repr)
    for k in range(len(ground) + 1):
        for s in itertools.combinations(ground, k):
            cork = m.corank(s)
            for j in range(len(s) + 1):
                for t in itertools.combinations(s, j):
                    out = out + u ** (k - j) * v ** (cork + m.nullity(t))
    return out


@dataclass(frozen=True)
class MatroidIdentityReport:
    matroid: Matroid
    u_indep: MPoly
    u_base: MPoly
    indep_matches_tutte: bool
    base_matches_double_sum: bool
    projection_sum_matches: bool

    @property
    def all_pass(self) -> bool:
        return (
            self.indep_matches_tutte
            and self.base_matches_double_sum
            and self.projection_sum_matches
        )


def check_matroid_identities(m: Matroid) -> MatroidIdentityReport:
    """Falsification harness for the matroid specializations of U."""
    from .deltamatroid import from_bases, from_independents

    d_ip = from_independents(m)
    d_p = from_bases(m)
    u_ip = u_poly_explicit(d_ip)
    u_p = u_poly_explicit(d_p)
    ok_ip = u_ip == tutte_substitution_for_indep(m)
    ok_p = u_p == u_poly_base_double_sum(m)

    # sum over I of a^|I| U_{D(I)}(u, v) = U_D(u + a, v), at symbolic a
    a = MPoly.var("a")
    lhs = MPoly(("a", "u", "v"), {})
    for mask, proj in _projections(d_p).items():
        lhs = lhs + a ** popcount(mask) * u_poly_explicit(proj)
    rhs = u_p.substitute({"u": MPoly.var("u") + a})
    ok_proj = lhs == rhs

    return MatroidIdentityReport(m, u_ip, u_p, ok_ip, ok_p, ok_proj)
