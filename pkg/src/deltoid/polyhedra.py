"""B_n generalized permutohedra stored by support numbers on the 3^n - 1 rays.

A polytope is the data h(S) = max over P of <x, e_S> for every nonempty
admissible S.  Validity (= the normal fan coarsens the type-B fan) is
certified by checking that the candidate vertex of every maximal cone
satisfies every ray inequality.  All arithmetic is exact; integer grid
scans are vectorized with numpy (values stay far below 2^63).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, floor, lcm

import numpy as np

from .core import (
    AdmissibleSet,
    SignedPermutation,
    all_group_elements,
    mask_members,
    nonempty_ads,
    popcount,
)
from .deltamatroid import DeltaMatroid
from .errors import (
    InternalVerificationError,
    InvalidArgumentError,
    InvalidCombinationError,
)
from .polyring import MPoly, generalized_binomial


@lru_cache(maxsize=None)
def ray_index(n: int) -> dict[tuple[int, int], int]:
    """(pos, neg) bitmask pair -> position in the canonical ray order."""
    return {(s.pos, s.neg): i for i, s in enumerate(nonempty_ads(n))}


@lru_cache(maxsize=None)
def ray_matrix(n: int) -> np.ndarray:
    """Integer matrix whose rows are the ray vectors e_S."""
    return np.array([s.vector() for s in nonempty_ads(n)], dtype=np.int64)


class BnPolytope:
    """A lattice-or-rational B_n generalized permutohedron."""

    __slots__ = ("n", "h", "_vertex_cache")

    def __init__(self, n: int, h: tuple[Fraction, ...], validate: bool = True):
        rays = nonempty_ads(n)
        if len(h) != len(rays):
            raise InvalidArgumentError("support vector has wrong length")
        self.n = n
        self.h = tuple(Fraction(x) for x in h)
        self._vertex_cache: dict[tuple[int, ...], tuple[Fraction, ...]] = {}
        if validate:
            self._validate()

    # -- constructors --------------------------------------------------------

    @classmethod
    def from_support_map(cls, n, mapping, validate=True) -> "BnPolytope":
        idx = ray_index(n)
        h = [Fraction(0)] * len(idx)
        for s, val in mapping.items():
            h[idx[(s.pos, s.neg)]] = Fraction(val)
        return cls(n, tuple(h), validate)

    @classmethod
    def simplex(cls, s: AdmissibleSet) -> "BnPolytope":
        """Convex hull of the origin and {e_i : i in S}."""
        if len(s) == 0:
            raise InvalidArgumentError("simplex requires a nonempty admissible set")
        h = tuple(
            Fraction(1) if s.intersects(r) else Fraction(0)
            for r in nonempty_ads(s.n)
        )
        return cls(s.n, h, validate=False)

    @classmethod
    def from_vertices(cls, n, points, validate=True) -> "BnPolytope":
        pts = [tuple(Fraction(x) for x in p) for p in points]
        if not pts:
            raise InvalidArgumentError("need at least one point")
        h = []
        for r in nonempty_ads(n):
            vec = r.vector()
            h.append(max(sum(c * e for c, e in zip(p, vec)) for p in pts))
        return cls(n, tuple(h), validate)

    @classmethod
    def of_deltamatroid(cls, d: DeltaMatroid, validate=False) -> "BnPolytope":
        """P(D): the hull of the feasible 0/1 points (valid by construction)."""
        pts = [
            tuple(Fraction((m >> i) & 1) for i in range(d.n)) for m in d.feasible
        ]
        return cls.from_vertices(d.n, pts, validate)

    @classmethod
    def point(cls, coords) -> "BnPolytope":
        return cls.from_vertices(len(coords), [coords], validate=False)

    # -- basic queries ---------------------------------------------------------

    def support(self, s: AdmissibleSet) -> Fraction:
        return self.h[ray_index(self.n)[(s.pos, s.neg)]]

    def support_map(self) -> dict[AdmissibleSet, Fraction]:
        return dict(zip(nonempty_ads(self.n), self.h))

    def __eq__(self, other):
        return (
            isinstance(other, BnPolytope)
            and self.n == other.n
            and self.h == other.h
        )

    def __hash__(self):
        return hash((self.n, self.h))

    def __repr__(self):
        return f"BnPolytope(n={self.n})"

    @property
    def is_lattice(self) -> bool:
        return all(v.denominator == 1 for p in self.all_vertices() for v in p)

    # -- vertices ----------------------------------------------------------------

    def vertex(self, w: SignedPermutation) -> tuple[Fraction, ...]:
        """The maximizing vertex on the (open) cone of w: triangular chain solve."""
        key = w.images
        cached = self._vertex_cache.get(key)
        if cached is not None:
            return cached
        idx = ray_index(self.n)
        x = [Fraction(0)] * self.n
        pos = neg = 0
        prev = Fraction(0)
        for letter in w.images:
            if letter > 0:
                pos |= 1 << (letter - 1)
            else:
                neg |= 1 << (-letter - 1)
            val = self.h[idx[(pos, neg)]]
            delta = val - prev
            x[abs(letter) - 1] = delta if letter > 0 else -delta
            prev = val
        out = tuple(x)
        self._vertex_cache[key] = out
        return out

    def min_vertex(self, w: SignedPermutation) -> tuple[Fraction, ...]:
        """The vertex minimizing every functional in the open cone of w."""
        return self.vertex(w.global_flip())

    def all_vertices(self) -> list[tuple[Fraction, ...]]:
        return sorted({self.vertex(w) for w in all_group_elements(self.n)})

    def _validate(self):
        verts = {self.vertex(w) for w in all_group_elements(self.n)}
        scale = lcm(
            *[x.denominator for x in self.h],
            *[c.denominator for p in verts for c in p],
        )
        v_arr = np.array(
            [[int(c * scale) for c in p] for p in verts], dtype=np.int64
        )
        h_arr = np.array([int(x * scale) for x in self.h], dtype=np.int64)
        prods = v_arr @ ray_matrix(self.n).T
        bad = np.argwhere(prods > h_arr[None, :])
        if bad.size:
            i, j = bad[0]
            raise InvalidCombinationError(
                f"candidate vertex {tuple(v_arr[i])} (x{scale}) violates ray "
                f"{nonempty_ads(self.n)[j]}: support numbers are not bisubmodular"
            )

    # -- affine operations ----------------------------------------------------------

    def translate(self, m) -> "BnPolytope":
        h = list(self.h)
        for i, r in enumerate(nonempty_ads(self.n)):
            h[i] = self.h[i] + sum(
                Fraction(c) * e for c, e in zip(m, r.vector())
            )
        return BnPolytope(self.n, tuple(h), validate=False)

    def dilate(self, t: int) -> "BnPolytope":
        if t < 0:
            raise InvalidArgumentError("dilation factor must be >= 0")
        return BnPolytope(
            self.n, tuple(Fraction(t) * x for x in self.h), validate=False
        )

    def contains_point(self, point) -> bool:
        pt = [Fraction(x) for x in point]
        for r, bound in zip(nonempty_ads(self.n), self.h):
            if sum(c * e for c, e in zip(pt, r.vector())) > bound:
                return False
        return True


def minkowski_combine(terms) -> BnPolytope:
    """Signed Minkowski combination sum(c * P); validated after combining.

    Negative terms are legal exactly when the combined support numbers again
    define a B_n generalized permutohedron (P = Q - R means Q = P + R).
    """
    terms = list(terms)
    if not terms:
        raise InvalidArgumentError("empty combination")
    n = terms[0][1].n
    h = [Fraction(0)] * len(nonempty_ads(n))
    for c, p in terms:
        if p.n != n:
            raise InvalidArgumentError("mixed ground sizes")
        for i, v in enumerate(p.h):
            h[i] += Fraction(c) * v
    return BnPolytope(n, tuple(h))


# -- Theorem A(a): the Delta-decomposition -------------------------------------------


@dataclass(frozen=True)
class DeltaDecomposition:
    """Integer coefficients c_S with sum(c_S * simplex(S)) = P - translation."""

    n: int
    coeffs: dict[AdmissibleSet, int] = field(compare=False)
    translation: tuple[int, ...] = None

    def __post_init__(self):
        if self.translation is None:
            object.__setattr__(self, "translation", (0,) * self.n)

    def support(self) -> list[tuple[AdmissibleSet, int]]:
        return [(s, c) for s, c in sorted(
            self.coeffs.items(), key=lambda kv: (kv[0].pos, kv[0].neg)
        ) if c]

    def to_polytope(self) -> BnPolytope:
        terms = [(c, BnPolytope.simplex(s)) for s, c in self.coeffs.items() if c]
        if not terms:
            return BnPolytope.point((0,) * self.n).translate(self.translation)
        return minkowski_combine(terms).translate(self.translation)


_Z3 = ((1, 1, 1), (1, 0, 1), (1, 1, 0))  # disjointness of one coordinate: 0, +, -
_Z3_INV = ((-1, 1, 1), (1, -1, 0), (1, 0, -1))


def _tensor_apply(n: int, mat, vec):
    """Apply a 3x3 matrix along every ternary axis of a length-3^n vector."""
    vec = list(vec)
    stride = 1
    for _ in range(n):
        period = stride * 3
        for base in range(0, len(vec), period):
            for off in range(base, base + stride):
                a, b, c = vec[off], vec[off + stride], vec[off + 2 * stride]
                for d in range(3):
                    m = mat[d]
                    vec[off + d * stride] = m[0] * a + m[1] * b + m[2] * c
        stride = period
    return vec


def _ternary_code(s: AdmissibleSet) -> int:
    code = 0
    power = 1
    for i in range(s.n):
        if s.pos >> i & 1:
            code += power
        elif s.neg >> i & 1:
            code += 2 * power
        power *= 3
    return code


def delta_decompose(p: BnPolytope) -> DeltaDecomposition:
    """Unique integers c_S with sum c_S * simplex(S) = P, for lattice P.

    Solves the incidence system M[R][S] = [S and R intersect] exactly via the
    coordinatewise tensor inverse of the disjointness transform; integrality
    and exact reconstruction are asserted.
    """
    n = p.n
    rays = nonempty_ads(n)
    hvec = [Fraction(0)] * 3**n
    for s, val in zip(rays, p.h):
        hvec[_ternary_code(s)] = val
    g = _tensor_apply(n, _Z3_INV, hvec)
    coeffs = {}
    c_ext = [Fraction(0)] * 3**n
    total = Fraction(0)
    for s in rays:
        code = _ternary_code(s)
        c = -g[code]
        coeffs[s] = c
        c_ext[code] = c
        total += c
    if total != g[0]:
        raise InternalVerificationError("tensor solve inconsistency")
    # exact reconstruction: h_R = total - (Z c_ext)_R
    z = _tensor_apply(n, _Z3, c_ext)
    for s, val in zip(rays, p.h):
        if total - z[_ternary_code(s)] != val:
            raise InternalVerificationError(
                f"decomposition fails to reconstruct support at {s}"
            )
    bad = [s for s, c in coeffs.items() if c.denominator != 1]
    if bad:
        raise InvalidArgumentError(
            f"non-integer coefficient at {bad[0]}: input is not a lattice "
            "B_n generalized permutohedron"
        )
    return DeltaDecomposition(n, {s: int(c) for s, c in coeffs.items()})


def incidence_matrix(n: int) -> list[list[int]]:
    """Dense 0/1 matrix [S intersects R] over the canonical ray order."""
    rays = nonempty_ads(n)
    return [[1 if s.intersects(r) else 0 for s in rays] for r in rays]


def delta_decompose_dense(p: BnPolytope) -> dict[AdmissibleSet, Fraction]:
    """Gaussian-elimination oracle for the decomposition (small n only)."""
    rays = nonempty_ads(p.n)
    m = len(rays)
    a = [[Fraction(x) for x in row] + [p.h[i]]
         for i, row in enumerate(incidence_matrix(p.n))]
    for col in range(m):
        piv = next(r for r in range(col, m) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        inv = Fraction(1) / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(m):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return {rays[i]: a[i][m] for i in range(m)}


def incidence_nonsingular(n: int) -> bool:
    """Certify the 3^n - 1 incidence system is invertible (basis round trip).

    Solves M c = e_R for every nonempty R via the tensor inverse and verifies
    the forward incidence map reproduces the basis vector; all-integer, so the
    whole batch runs through numpy (entries stay below 3^n).
    """
    size = 3**n
    z = np.array([[1]], dtype=np.int64)
    zi = np.array([[1]], dtype=np.int64)
    for _ in range(n):
        z = np.kron(np.array(_Z3, dtype=np.int64), z)
        zi = np.kron(np.array(_Z3_INV, dtype=np.int64), zi)
    codes = np.array([_ternary_code(s) for s in nonempty_ads(n)])
    # columns of g: tensor-inverse images of the basis vectors e_R, R nonempty
    g = zi[:, codes]
    c_ext = -g
    c_ext[0, :] = 0  # the empty set carries no coefficient
    totals = c_ext[codes, :].sum(axis=0)
    rec = totals[None, :] - (z @ c_ext)
    expected = np.zeros((size, len(codes)), dtype=np.int64)
    expected[codes, np.arange(len(codes))] = 1
    return bool((rec[codes, :] == expected[codes, :]).all())


# -- Theorem A(b): signed transversals and volume --------------------------------------


def signed_transversal_count(sets) -> int:
    """Number of maximal admissible sets admitting distinct representatives.

    Each candidate is counted once (not per bijection); existence of a system
    of distinct representatives is Hall's condition over the positions.
    """
    sets = list(sets)
    if not sets:
        return 1
    n = sets[0].n
    if len(sets) != n:
        raise InvalidArgumentError(f"need exactly {n} admissible sets")
    if any(s.n != n or len(s) == 0 for s in sets):
        raise InvalidArgumentError("sets must be nonempty admissible of equal n")
    full = (1 << n) - 1
    count = 0
    size = 1 << n
    unions = [0] * size
    for tau in range(size):
        masks = [(s.pos & tau) | (s.neg & ~tau & full) for s in sets]
        ok = True
        for a in range(1, size):
            low_index = (a & -a).bit_length() - 1
            u = unions[a & (a - 1)] | masks[low_index]
            unions[a] = u
            if popcount(u) < popcount(a):
                ok = False
                break
        if ok:
            count += 1
    return count


def _multiset_iter(support, n):
    """Multisets of size n over the support, as (entry, multiplicity) lists."""
    for combo in itertools.combinations_with_replacement(range(len(support)), n):
        groups = []
        for key, grp in itertools.groupby(combo):
            groups.append((support[key], len(list(grp))))
        yield groups


def volume(decomp: DeltaDecomposition) -> Fraction:
    """Theorem A(b) volume: signed-transversal counts times coefficient products.

    The ordered-sequence sum is organized by multisets with multinomial
    weights; normalization gives the standard simplex volume 1.
    """
    n = decomp.n
    if n == 0:
        return Fraction(1)
    support = decomp.support()
    total = Fraction(0)
    for groups in _multiset_iter(support, n):
        multinomial = factorial(n)
        coeff = 1
        seq = []
        for (s, c), k in groups:
            multinomial //= factorial(k)
            coeff *= c**k
            seq.extend([s] * k)
        if coeff == 0:
            continue
        total += multinomial * coeff * signed_transversal_count(seq)
    return Fraction(total)


def volume_ordered_sum(decomp: DeltaDecomposition) -> Fraction:
    """Literal ordered-sequence form of the volume sum (test oracle, tiny inputs)."""
    n = decomp.n
    support = decomp.support()
    total = Fraction(0)
    for seq in itertools.product(support, repeat=n):
        coeff = 1
        for _, c in seq:
            coeff *= c
        if coeff:
            total += coeff * signed_transversal_count([s for s, _ in seq])
    return total


# -- lattice point machinery ----------------------------------------------------------


def _lattice_points_bounds(n, floor_bounds) -> list[tuple[int, ...]]:
    """Integer points of {x : <x, e_S> <= floor_bounds[S]} (may be empty)."""
    idx = ray_index(n)
    los, his = [], []
    for i in range(n):
        hi = floor_bounds[idx[(1 << i, 0)]]
        lo = -floor_bounds[idx[(0, 1 << i)]]
        if lo > hi:
            return []
        los.append(lo)
        his.append(hi)
    grids = np.meshgrid(
        *[np.arange(lo, hi + 1, dtype=np.int64) for lo, hi in zip(los, his)],
        indexing="ij",
    )
    pts = np.stack([g.ravel() for g in grids], axis=1)
    if pts.size == 0:
        return []
    vals = pts @ ray_matrix(n).T
    bound = np.array(floor_bounds, dtype=np.int64)
    keep = (vals <= bound[None, :]).all(axis=1)
    return [tuple(int(x) for x in row) for row in pts[keep]]


def lattice_points_of_region(n, hvec) -> list[tuple[int, ...]]:
    """Integer points of the H-region of a (possibly invalid) support vector."""
    if n == 0:
        return [()]
    floors = [floor(Fraction(x)) for x in hvec]
    return _lattice_points_bounds(n, floors)


def lattice_points(p: BnPolytope) -> list[tuple[int, ...]]:
    return lattice_points_of_region(p.n, p.h)


def ehrhart_counts(p: BnPolytope, tmax: int) -> list[int]:
    return [len(lattice_points(p.dilate(t))) for t in range(tmax + 1)]


def _newton_interpolate(values) -> list[Fraction]:
    """Coefficients (ascending) of the poly with f(i) = values[i]."""
    pts = [Fraction(v) for v in values]
    m = len(pts)
    divided = list(pts)
    for j in range(1, m):
        for i in range(m - 1, j - 1, -1):
            divided[i] = (divided[i] - divided[i - 1]) / j
    coeffs = [Fraction(0)] * m
    coeffs[0] = divided[m - 1]
    for k in range(m - 2, -1, -1):
        # multiply by (x - k) and add divided[k]
        new = [Fraction(0)] * m
        for i in range(m - 1):
            new[i + 1] += coeffs[i]
            new[i] -= k * coeffs[i]
        new[0] += divided[k]
        coeffs = new
    return coeffs


def volume_oracle(p: BnPolytope) -> Fraction:
    """Ehrhart interpolation: n! times the leading coefficient."""
    n = p.n
    if n == 0:
        return Fraction(1)
    counts = ehrhart_counts(p, n + 1)
    coeffs = _newton_interpolate(counts[: n + 1])
    check = sum(c * Fraction(n + 1) ** k for k, c in enumerate(coeffs))
    if check != counts[n + 1]:
        raise InternalVerificationError(
            "Ehrhart fit of degree n fails at t = n + 1"
        )
    return factorial(n) * coeffs[n]


# -- Theorem A(c): the lattice point formula --------------------------------------------


def psi(f: MPoly) -> MPoly:
    """Replace each monomial prod x^d by prod binomial(x, d), termwise."""
    out = MPoly((), {})
    for mono, coeff in f.monomials():
        term = MPoly.const(coeff)
        for name, d in mono.items():
            x = MPoly.var(name)
            binom = MPoly.const(Fraction(1, factorial(d)))
            prod = MPoly.const(1)
            for j in range(d):
                prod = prod * (x - j)
            term = term * binom * prod
        out = out + term
    return out


def volume_polynomial(decomp: DeltaDecomposition) -> MPoly:
    """The Theorem A(b) sum as a polynomial in variables c_S (support only)."""
    n = decomp.n
    support = decomp.support()
    names = {s: f"c{j}" for j, (s, _) in enumerate(support)}
    out = MPoly((), {})
    for groups in _multiset_iter(support, n):
        seq = []
        mono = MPoly.const(factorial(n))
        for (s, _), k in groups:
            mono = mono * MPoly.monomial({names[s]: k}, Fraction(1, factorial(k)))
            seq.extend([s] * k)
        count = signed_transversal_count(seq)
        if count:
            out = out + count * mono
    return out


def lattice_count_formula(decomp: DeltaDecomposition, convention="multiset") -> int:
    """Count of lattice points of P - cube, by either stated convention.

    "multiset": sum over multisets {k_S} of prod binom(c_S, k_S) times the
    transversal count (the paper's proof form; validated).  "ordered-psi":
    apply the binomial operator to the ordered-sequence volume polynomial
    literally (disagrees by multinomial factors whenever a part repeats).
    """
    n = decomp.n
    support = decomp.support()
    if convention == "ordered-psi":
        vol = volume_polynomial(decomp)
        names = {f"c{j}": Fraction(c) for j, (_, c) in enumerate(support)}
        return psi(vol).evaluate(names)
    if convention != "multiset":
        raise InvalidArgumentError(f"unknown convention {convention!r}")
    total = 0
    for groups in _multiset_iter(support, n):
        weight = 1
        seq = []
        for (s, c), k in groups:
            weight *= generalized_binomial(c, k)
            seq.extend([s] * k)
        if weight == 0:
            continue
        total += weight * signed_transversal_count(seq)
    return total


def cube_difference_support(p: BnPolytope) -> list[Fraction]:
    """Support numbers of the Minkowski difference P - [0,1]^n (exact as a region)."""
    out = []
    for s, v in zip(nonempty_ads(p.n), p.h):
        out.append(v - popcount(s.pos))
    return out


def lattice_count_oracle(p: BnPolytope) -> int:
    """|lattice points of (P - cube)| by direct enumeration."""
    return len(lattice_points_of_region(p.n, cube_difference_support(p)))


# -- cube intersections ------------------------------------------------------------------


def intersect_with_cube(p: BnPolytope, m) -> BnPolytope | None:
    """P intersected with m + [0,1]^n, or None when empty.

    Vertices of a nonempty intersection are lattice points of the unit cube,
    i.e. its corners; the hull of the surviving corners is the intersection.
    """
    m = tuple(int(x) for x in m)
    if len(m) != p.n:
        raise InvalidArgumentError("translation vector has wrong arity")
    floors = [floor(x) for x in p.h]
    idx = ray_index(p.n)
    rays = ray_matrix(p.n)
    corners = []
    for eps in itertools.product((0, 1), repeat=p.n):
        pt = tuple(a + b for a, b in zip(m, eps))
        vals = rays @ np.array(pt, dtype=np.int64)
        if all(int(v) <= fb for v, fb in zip(vals, floors)):
            corners.append(pt)
    if not corners:
        return None
    out = BnPolytope.from_vertices(p.n, corners, validate=True)
    if not out.is_lattice:
        raise InternalVerificationError("cube intersection is not lattice")
    return out


def deltamatroid_of_01_polytope(p: BnPolytope) -> DeltaMatroid:
    """Read off the feasible family of a polytope with vertices in {0,1}^n."""
    masks = set()
    for v in lattice_points(p):
        if any(x not in (0, 1) for x in v):
            raise InvalidArgumentError("polytope is not inside the unit cube")
        masks.add(sum(1 << i for i, x in enumerate(v) if x))
    return DeltaMatroid.from_masks(p.n, masks)


# -- standard polytopes -------------------------------------------------------------------


def cube(n: int) -> BnPolytope:
    return BnPolytope(
        n,
        tuple(Fraction(popcount(s.pos)) for s in nonempty_ads(n)),
        validate=False,
    )


def cross_polytope(n: int) -> BnPolytope:
    return BnPolytope(n, tuple(Fraction(1) for _ in nonempty_ads(n)), validate=False)


def signed_permutohedron(n: int) -> BnPolytope:
    """Convex hull of the orbit of (n, n-1, ..., 1)."""
    pts = []
    base = list(range(n, 0, -1))
    for w in all_group_elements(n):
        v = [0] * n
        for k, letter in enumerate(w.images):
            v[abs(letter) - 1] = base[k] if letter > 0 else -base[k]
        pts.append(tuple(v))
    return BnPolytope.from_vertices(n, pts, validate=False)
