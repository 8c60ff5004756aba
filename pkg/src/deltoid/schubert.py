"""Schubert delta-matroids, the cone-cube reduction, and indicator decompositions.

The decomposition writes the indicator function of a lattice B_n generalized
permutohedron as a signed sum of indicators of lattice translates of Schubert
delta-matroid polytopes, by combining the Brianchon-Gram expansion over the
type-B fan with the tiling of space by unit cubes.  Verification compares
indicator combinations pointwise on a rational grid plus random points, and
through dilation lattice-point statistics.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import floor

import numpy as np

from .core import (
    AdmissibleSet,
    SignedPermutation,
    all_group_elements,
    descent_count,
    gale_leq,
    mask_members,
    maximal_ads,
    nonempty_ads,
    popcount,
)
from .deltamatroid import DeltaMatroid, Matroid
from .errors import InternalVerificationError, InvalidArgumentError, ResourceLimitError
from .polyhedra import (
    BnPolytope,
    lattice_points_of_region,
    ray_index,
    ray_matrix,
)


def standard_schubert(s: AdmissibleSet) -> DeltaMatroid:
    """The delta-matroid whose feasible sets form the Gale interval below S."""
    if not s.is_maximal:
        raise InvalidArgumentError("needs a maximal admissible set")
    masks = {
        t.pos for t in maximal_ads(s.n) if gale_leq(t, s)
    }
    return DeltaMatroid.from_masks(s.n, masks)


def schubert_matroid(n: int, t) -> Matroid:
    """Standard Schubert matroid of T inside [n] (dominance order on subsets)."""
    t = sorted(t)
    r = len(t)
    bases = set()
    for b in itertools.combinations(range(1, n + 1), r):
        if all(x <= y for x, y in zip(sorted(b), t)):
            bases.add(frozenset(b))
    return Matroid(tuple(range(1, n + 1)), frozenset(bases))


def cone_cube_intersect(m) -> DeltaMatroid | None:
    """Intersection of m + C with the unit cube, by the root reduction.

    C is the cone cut out by the inequalities sum_{i>=k} x_i <= 0.  Steps
    replace m by a translate along a negative simple root without changing
    the intersection; emptiness is certified by the decreasing statistic
    sum(i * m_i) going negative (or by m_n < 0, which forces x_n < 0).
    """
    m = [int(x) for x in m]
    n = len(m)
    if n == 0:
        return DeltaMatroid(0, frozenset([0]))
    while True:
        if sum((i + 1) * x for i, x in enumerate(m)) < 0:
            return None
        if all(0 <= x <= 1 for x in m):
            pos = sum(1 << i for i, x in enumerate(m) if x == 1)
            return standard_schubert(AdmissibleSet.from_pos_mask(n, pos))
        stepped = False
        for i in range(1, n + 1):
            if m[i - 1] > 1:
                # alpha_i = -e_1 when i = 1, e_{i-1} - e_i otherwise
                k = m[i - 1] - 1
                if i == 1:
                    m[0] -= k
                else:
                    m[i - 2] += k
                    m[i - 1] -= k
                stepped = True
                break
            if m[i - 1] < 0:
                if i == n:
                    return None  # x_n <= m_n < 0 on the whole cone
                k = -m[i - 1]
                m[i - 1] += k
                m[i] -= k
                stepped = True
                break
        if not stepped:  # unreachable: some coordinate violated 0..1
            raise InternalVerificationError("reduction stalled")


def cone_cube_intersect_oracle(m) -> DeltaMatroid | None:
    """Direct H-representation oracle: filter cube corners through m + C."""
    m = [int(x) for x in m]
    n = len(m)
    masks = set()
    for eps in itertools.product((0, 1), repeat=n):
        if all(
            sum(eps[i] for i in range(k, n)) <= sum(m[i] for i in range(k, n))
            for k in range(n)
        ):
            masks.add(sum(1 << i for i, e in enumerate(eps) if e))
    if not masks:
        return None
    return DeltaMatroid.from_masks(n, masks)


# -- indicator combinations ---------------------------------------------------------


@dataclass(frozen=True)
class IndicatorTerm:
    coeff: int
    translation: tuple[int, ...]
    polytope: BnPolytope

    def translated_support(self) -> tuple[Fraction, ...]:
        return self.polytope.translate(self.translation).h


@dataclass
class IndicatorCombination:
    n: int
    terms: list[IndicatorTerm]

    def collect(self) -> "IndicatorCombination":
        acc: dict[tuple, list] = {}
        for t in self.terms:
            key = (t.translation, t.polytope.h)
            if key in acc:
                acc[key][0] += t.coeff
            else:
                acc[key] = [t.coeff, t]
        terms = [
            IndicatorTerm(c, t.translation, t.polytope)
            for c, t in acc.values()
            if c != 0
        ]
        return IndicatorCombination(self.n, terms)

    def lattice_point_statistic(self, t: int) -> int:
        total = 0
        for term in self.terms:
            h = [Fraction(t) * v for v in term.translated_support()]
            total += term.coeff * len(lattice_points_of_region(self.n, h))
        return total


def schubert_piece(d: DeltaMatroid, translation, coeff=1) -> IndicatorTerm:
    return IndicatorTerm(
        coeff, tuple(int(x) for x in translation), BnPolytope.of_deltamatroid(d)
    )


def _coloop_free_normalize(d: DeltaMatroid, translation):
    """Translate so every coloop becomes a loop; returns (rep, new translation)."""
    shift = list(translation)
    masks = set(d.feasible)
    for i in sorted(d.coloops()):
        bit = 1 << (i - 1)
        masks = {m ^ bit for m in masks}
        shift[i - 1] += 1
    return DeltaMatroid(d.n, frozenset(masks)), tuple(shift)


# -- the fan of type B ----------------------------------------------------------------


@lru_cache(maxsize=None)
def fan_cones(n: int) -> tuple[tuple[AdmissibleSet, ...], ...]:
    """All cones of the type-B fan, as tuples of their ray sets (deduplicated)."""
    seen = set()
    out = []
    for w in all_group_elements(n):
        chain = []
        pos = neg = 0
        for letter in w.images:
            if letter > 0:
                pos |= 1 << (letter - 1)
            else:
                neg |= 1 << (-letter - 1)
            chain.append(AdmissibleSet(n, pos, neg))
        for k in range(len(chain) + 1):
            for subset in itertools.combinations(chain, k):
                key = frozenset((s.pos, s.neg) for s in subset)
                if key not in seen:
                    seen.add(key)
                    out.append(tuple(subset))
    return tuple(out)


def _tangent_region_bounds(p: BnPolytope, cone_rays):
    """H-system of P + dual(cone): <x, e_{R-bar}> <= h_P(R-bar), R ray of cone."""
    out = []
    for r in cone_rays:
        barred = r.bar()
        out.append((barred, floor(p.support(barred))))
    return out


def schubert_decompose(p: BnPolytope, size_cap: int = 4) -> IndicatorCombination:
    """Write 1_P as a signed sum of translated Schubert delta-matroid indicators.

    Every Brianchon-Gram term restricted to a face of the cube tiling is the
    convex hull of the face's corners satisfying the tangent H-system; the
    resulting delta-matroids are normalized to coloop-free representatives
    before like terms are collected.
    """
    n = p.n
    if n > size_cap:
        raise ResourceLimitError(f"decomposition capped at n <= {size_cap}")
    verts = p.all_vertices()
    lo = [min(floor(v[i]) for v in verts) for i in range(n)]
    hi = [max(-floor(-v[i]) for v in verts) for i in range(n)]

    # all lattice points of the (enlarged) tiling box, with their ray products
    point_list = list(
        itertools.product(*[range(lo[i] - 1, hi[i] + 2) for i in range(n)])
    )
    point_id = {pt: k for k, pt in enumerate(point_list)}
    products = np.array(point_list, dtype=np.int64) @ ray_matrix(n).T
    floors_p = [floor(x) for x in p.h]
    in_p = (products <= np.array(floors_p, dtype=np.int64)[None, :]).all(axis=1)

    # faces of the cube tiling meeting P, as per-coordinate intervals
    faces = set()
    for corner in itertools.product(
        *[range(lo[i] - 1, hi[i] + 1) for i in range(n)]
    ):
        for kinds in itertools.product((0, 1, 2), repeat=n):
            # 0: [a, a+1], 1: {a}, 2: {a+1}
            iv = tuple(
                (c, c + 1) if k == 0 else ((c, c) if k == 1 else (c + 1, c + 1))
                for c, k in zip(corner, kinds)
            )
            faces.add(iv)
    face_list = []
    for iv in faces:
        ids = [
            point_id[pt]
            for pt in itertools.product(*[range(a, b + 1) for a, b in iv])
        ]
        if any(in_p[k] for k in ids):
            codim_f = sum(1 for a, b in iv if a == b)
            face_list.append((codim_f, ids))

    idx = ray_index(n)
    acc: dict[tuple, int] = {}
    for cone_rays in fan_cones(n):
        codim_sigma = n - len(cone_rays)
        ok = np.ones(len(point_list), dtype=bool)
        for s, b in _tangent_region_bounds(p, cone_rays):
            ok &= products[:, idx[(s.pos, s.neg)]] <= b
        for codim_f, ids in face_list:
            surviving = [point_list[k] for k in ids if ok[k]]
            if not surviving:
                continue
            # the min-corner convention makes every piece coloop-free, so
            # (masks, base) is already a canonical key for the translate class
            base = tuple(min(pt[i] for pt in surviving) for i in range(n))
            masks = frozenset(
                sum(1 << i for i in range(n) if pt[i] - base[i])
                for pt in surviving
            )
            sign = -1 if (codim_f + codim_sigma) % 2 else 1
            key = (masks, base)
            acc[key] = acc.get(key, 0) + sign
    terms = []
    for (masks, base), coeff in acc.items():
        if coeff == 0:
            continue
        piece = DeltaMatroid.from_masks(n, masks)
        if piece.coloops():
            raise InternalVerificationError("piece is not coloop-free")
        terms.append(schubert_piece(piece, base, coeff))
    return IndicatorCombination(n, terms).collect()


# -- verification ----------------------------------------------------------------------


@lru_cache(maxsize=16)
def _grid_products(n: int, box: tuple, denom: int):
    """Scaled grid points and their ray products for membership testing."""
    axes = [
        np.arange(denom * (lo - 1), denom * (hi + 1) + 1, dtype=np.int64)
        for lo, hi in box
    ]
    grids = np.meshgrid(*axes, indexing="ij")
    pts = np.stack([g.ravel() for g in grids], axis=1)
    return pts, pts @ ray_matrix(n).T


def _scaled_bounds(support, denom) -> np.ndarray:
    out = []
    for v in support:
        scaled = denom * Fraction(v)
        if scaled.denominator != 1:
            raise InvalidArgumentError(
                "facet offsets must be integral (lattice polytopes only)"
            )
        out.append(int(scaled))
    return np.array(out, dtype=np.int64)


def _membership_counts(n, terms, pts_products, denom):
    """Signed sum of memberships for every grid point (scaled by denom)."""
    acc = np.zeros(pts_products.shape[0], dtype=np.int64)
    for term in terms:
        exact = _scaled_bounds(term.translated_support(), denom)
        inside = (pts_products <= exact[None, :]).all(axis=1)
        acc += term.coeff * inside
    return acc


def _bounding_box(comb: IndicatorCombination, target: BnPolytope | None):
    n = comb.n
    los = [0] * n
    his = [0] * n
    pools = [t.polytope.translate(t.translation) for t in comb.terms]
    if target is not None:
        pools.append(target)
    all_verts = [v for p in pools for v in p.all_vertices()]
    if not all_verts:
        return tuple((0, 0) for _ in range(n))
    for i in range(n):
        los[i] = min(floor(v[i]) for v in all_verts)
        his[i] = max(-floor(-v[i]) for v in all_verts)
    return tuple(zip(los, his))


def verify_indicator(
    comb: IndicatorCombination,
    target: BnPolytope | None,
    seed: int = 0,
) -> bool:
    """Pointwise equality of the combination with the target indicator.

    Checks every point of the (1/4n)-grid in the enlarged bounding box, 64
    random rational points with denominator 4n+1, and the lattice-point
    statistics of the dilates t = 1, 2, 3.
    """
    n = comb.n
    if n == 0:
        total = sum(t.coeff for t in comb.terms)
        return total == (1 if target is not None else 0)
    box = _bounding_box(comb, target)
    denom = 4 * n
    pts, products = _grid_products(n, box, denom)
    acc = _membership_counts(n, comb.terms, products, denom)
    if target is not None:
        acc -= (products <= _scaled_bounds(target.h, denom)[None, :]).all(axis=1)
    if np.any(acc != 0):
        return False

    rng = random.Random(seed)
    denom2 = 4 * n + 1
    rand_pts = np.array(
        [
            [
                rng.randint(denom2 * (lo - 1), denom2 * (hi + 1))
                for lo, hi in box
            ]
            for _ in range(64)
        ],
        dtype=np.int64,
    )
    prods2 = rand_pts @ ray_matrix(n).T
    acc2 = _membership_counts(n, comb.terms, prods2, denom2)
    if target is not None:
        acc2 -= (prods2 <= _scaled_bounds(target.h, denom2)[None, :]).all(axis=1)
    if np.any(acc2 != 0):
        return False

    for t in (1, 2, 3):
        lhs = comb.lattice_point_statistic(t)
        rhs = (
            len(lattice_points_of_region(n, [Fraction(t) * v for v in target.h]))
            if target is not None
            else 0
        )
        if lhs != rhs:
            return False
    return True


# -- the census --------------------------------------------------------------------------


def all_schubert_deltamatroids(n: int) -> list[DeltaMatroid]:
    """All Weyl images of standard Schubert delta-matroids, deduplicated."""
    seen = set()
    out = []
    for s in maximal_ads(n):
        base = standard_schubert(s)
        for w in all_group_elements(n):
            img = base.twist(w)
            if img.feasible not in seen:
                seen.add(img.feasible)
                out.append(img)
    return out


def coloop_free_schubert_census(n: int) -> dict[int, int]:
    """Counts of coloop-free Schubert delta-matroids by cornered rank."""
    if n > 4:
        raise ResourceLimitError("census capped at n <= 4")
    hist: dict[int, int] = {}
    for d in all_schubert_deltamatroids(n):
        if d.coloops():
            continue
        res = d.is_cornered()
        if res is None:
            raise InternalVerificationError(
                "Schubert delta-matroid is not cornered"
            )
        rank = res[1].rank
        hist[rank] = hist.get(rank, 0) + 1
    return hist


def eulerian_numbers(n: int) -> dict[int, int]:
    hist: dict[int, int] = {}
    for w in all_group_elements(n):
        d = descent_count(w)
        hist[d] = hist.get(d, 0) + 1
    return hist
