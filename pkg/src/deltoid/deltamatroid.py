"""Delta-matroids and matroids: validation, minors, duality, distance, extremes.

A delta-matroid on [n, n-bar] is stored by the positive parts of its feasible
sets: the maximal admissible set B corresponds to the bitmask of B & [n].
Validation is the symmetric exchange axiom; a convex-hull edge-direction
checker is kept as an independent oracle for small n.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .core import (
    AdmissibleSet,
    SignedPermutation,
    mask_members,
    maximal_ads,
    popcount,
)
from .errors import (
    InvalidArgumentError,
    NotADeltaMatroidError,
    ResourceLimitError,
)


def _remove_bit(mask: int, i: int) -> int:
    """Drop element i from a bitmask over [n], relabeling i+1..n down by one."""
    low = (1 << (i - 1)) - 1
    return (mask & low) | ((mask >> i) << (i - 1))


def _pair_exchange_witness(family, m1: int, m2: int):
    diff = m1 ^ m2
    if not diff:
        return None
    bits = list(mask_members(diff))
    for i in bits:
        bi = 1 << (i - 1)
        # {i, j} is a set: j = i flips only i
        if not any(
            (m1 ^ bi if j == i else m1 ^ bi ^ (1 << (j - 1))) in family
            for j in bits
        ):
            return (m1, m2, i)
    return None


def _exchange_witness(n: int, masks: frozenset[int]):
    """Return None if the family satisfies symmetric exchange, else a witness."""
    family = masks
    for m1 in family:
        for m2 in family:
            witness = _pair_exchange_witness(family, m1, m2)
            if witness is not None:
                return witness
    return None


def _exchange_witness_sampled(n, masks: frozenset[int], seed=0, samples=20000):
    """Randomized spot check of the exchange axiom for very large families."""
    import random

    rng = random.Random(seed)
    pool = sorted(masks)
    for _ in range(samples):
        m1, m2 = rng.choice(pool), rng.choice(pool)
        witness = _pair_exchange_witness(masks, m1, m2)
        if witness is not None:
            return witness
    return None


FULL_VALIDATION_PAIR_CAP = 4_000_000


@dataclass(frozen=True)
class DeltaMatroid:
    """A nonempty family of maximal admissible sets closed under exchange."""

    n: int
    feasible: frozenset[int]

    def __post_init__(self):
        if not self.feasible:
            raise InvalidArgumentError("feasible family must be nonempty")

    @classmethod
    def from_masks(cls, n, masks, validated=False) -> "DeltaMatroid":
        """Build and validate; families too large for the quadratic exchange
        sweep fall back to a randomized spot check of the axiom."""
        masks = frozenset(masks)
        full = (1 << n) - 1
        if any(m & ~full for m in masks):
            raise InvalidArgumentError("feasible mask outside ground size")
        if not masks:
            raise InvalidArgumentError("feasible family must be nonempty")
        if not validated:
            if len(masks) ** 2 <= FULL_VALIDATION_PAIR_CAP:
                witness = _exchange_witness(n, masks)
            else:
                witness = _exchange_witness_sampled(n, masks)
            if witness is not None:
                m1, m2, i = witness
                raise NotADeltaMatroidError(
                    f"symmetric exchange fails for F1={m1:b}, F2={m2:b} at i={i}",
                    witness=witness,
                )
        return cls(n, masks)

    @classmethod
    def from_feasible_sets(cls, n, sets, validated=False) -> "DeltaMatroid":
        """Build from iterables of signed letters; each must be maximal admissible."""
        masks = set()
        for s in sets:
            a = s if isinstance(s, AdmissibleSet) else AdmissibleSet.from_letters(n, s)
            if a.n != n or not a.is_maximal:
                raise InvalidArgumentError(f"{a} is not maximal admissible of size {n}")
            masks.add(a.pos)
        return cls.from_masks(n, masks, validated=validated)

    # -- views ---------------------------------------------------------------

    def feasible_sets(self) -> tuple[AdmissibleSet, ...]:
        return tuple(
            AdmissibleSet.from_pos_mask(self.n, m) for m in sorted(self.feasible)
        )

    def sorted_masks(self) -> tuple[int, ...]:
        return tuple(sorted(self.feasible))

    def __str__(self):
        sets = ", ".join(str(s) for s in self.feasible_sets())
        return f"DeltaMatroid(n={self.n}, [{sets}])"

    # -- loops, coloops, minors ----------------------------------------------

    def loops(self) -> set[int]:
        return {
            i
            for i in range(1, self.n + 1)
            if all(not m >> (i - 1) & 1 for m in self.feasible)
        }

    def coloops(self) -> set[int]:
        return {
            i
            for i in range(1, self.n + 1)
            if all(m >> (i - 1) & 1 for m in self.feasible)
        }

    def _check_element(self, i: int):
        if not 1 <= i <= self.n:
            raise InvalidArgumentError(f"element {i} outside [{self.n}]")

    def contract(self, i: int) -> "DeltaMatroid":
        """Feasible sets B - i over feasible B containing i (projection if loop)."""
        self._check_element(i)
        bit = 1 << (i - 1)
        keep = [m for m in self.feasible if m & bit]
        if not keep:  # i is a loop
            return self.project(i)
        return DeltaMatroid(
            self.n - 1, frozenset(_remove_bit(m, i) for m in keep)
        )

    def delete(self, i: int) -> "DeltaMatroid":
        """Feasible sets B - i-bar over feasible B containing i-bar (projection if coloop)."""
        self._check_element(i)
        bit = 1 << (i - 1)
        keep = [m for m in self.feasible if not m & bit]
        if not keep:  # i is a coloop
            return self.project(i)
        return DeltaMatroid(
            self.n - 1, frozenset(_remove_bit(m, i) for m in keep)
        )

    def project(self, i: int) -> "DeltaMatroid":
        """Feasible sets B - {i, i-bar} over all feasible B."""
        self._check_element(i)
        return DeltaMatroid(
            self.n - 1, frozenset(_remove_bit(m, i) for m in self.feasible)
        )

    def project_many(self, elements) -> "DeltaMatroid":
        """Project away a set of elements (projections commute)."""
        d = self
        for i in sorted(elements, reverse=True):
            d = d.project(i)
        return d

    # -- duality, products, twists ---------------------------------------------

    def dual(self) -> "DeltaMatroid":
        full = (1 << self.n) - 1
        return DeltaMatroid(self.n, frozenset(full & ~m for m in self.feasible))

    def product(self, other: "DeltaMatroid") -> "DeltaMatroid":
        """Disjoint union; the second factor is relabeled to n1+1 .. n1+n2."""
        return DeltaMatroid(
            self.n + other.n,
            frozenset(
                m1 | (m2 << self.n)
                for m1 in self.feasible
                for m2 in other.feasible
            ),
        )

    def twist(self, w: SignedPermutation) -> "DeltaMatroid":
        """The image delta-matroid under the ground-set action of w."""
        if w.n != self.n:
            raise InvalidArgumentError("size mismatch")
        out = set()
        for m in self.feasible:
            new = 0
            for i in range(1, self.n + 1):
                x = w(i) if m >> (i - 1) & 1 else w(-i)
                if x > 0:
                    new |= 1 << (x - 1)
            out.add(new)
        return DeltaMatroid(self.n, frozenset(out))

    # -- metric and extremal feasible sets -------------------------------------

    def distance(self, s: AdmissibleSet) -> int:
        """Half the minimum symmetric difference to a feasible set."""
        if s.n != self.n or not s.is_maximal:
            raise InvalidArgumentError("distance requires a maximal admissible set")
        target = s.pos
        return min(popcount(m ^ target) for m in self.feasible)

    def _cone_weights(self, w: SignedPermutation) -> list[int]:
        """An interior integer functional of the cone of w (namely w.(n..1))."""
        v = [0] * self.n
        for k, x in enumerate(w.images):
            v[abs(x) - 1] = (self.n - k) if x > 0 else -(self.n - k)
        return v

    def _extreme_feasible(self, w: SignedPermutation, maximize: bool) -> AdmissibleSet:
        v = self._cone_weights(w)
        best_mask, best_score = None, None
        tie = False
        for m in self.feasible:
            score = sum(v[i] for i in range(self.n) if m >> i & 1)
            if best_score is None or (score > best_score if maximize else score < best_score):
                best_mask, best_score, tie = m, score, False
            elif score == best_score:
                tie = True
        if tie:
            raise NotADeltaMatroidError(
                "generic cone functional has a tied extremum; family is not a delta-matroid"
            )
        return AdmissibleSet.from_pos_mask(self.n, best_mask)

    def w_min_feasible(self, w: SignedPermutation) -> AdmissibleSet:
        """The unique feasible set minimizing every functional in the open cone of w."""
        return self._extreme_feasible(w, maximize=False)

    def w_max_feasible(self, w: SignedPermutation) -> AdmissibleSet:
        return self._extreme_feasible(w, maximize=True)

    # -- cornered structure -----------------------------------------------------

    def is_standard_cornered(self) -> bool:
        """Whenever B is feasible and i in B & [n], B - i + i-bar is feasible too."""
        for m in self.feasible:
            sub = m
            while sub:
                low = sub & -sub
                if m ^ low not in self.feasible:
                    return False
                sub ^= low
        return True

    def is_cornered(self):
        """Search sign patterns for a twist onto an independence-polytope form.

        Returns (w, M) with twist(w)(self) = IP(M), or None.  Only the 2^n sign
        patterns need searching: standard-corneredness is invariant under
        relabeling by plain permutations.
        """
        for flip in range(1 << self.n):
            flipped = frozenset(m ^ flip for m in self.feasible)
            cand = DeltaMatroid(self.n, flipped)
            if cand.is_standard_cornered():
                independents = flipped
                top = max(popcount(m) for m in independents)
                bases = frozenset(
                    frozenset(mask_members(m))
                    for m in independents
                    if popcount(m) == top
                )
                matroid = Matroid(tuple(range(1, self.n + 1)), bases)
                images = tuple(
                    -i if flip >> (i - 1) & 1 else i for i in range(1, self.n + 1)
                )
                return SignedPermutation(images), matroid
        return None


# -- constructions from matroids ------------------------------------------------


@dataclass(frozen=True)
class Matroid:
    """A matroid given by its bases over an arbitrary finite label set."""

    ground: tuple
    bases: frozenset[frozenset]

    def __post_init__(self):
        if not self.bases:
            raise InvalidArgumentError("matroid needs at least one basis")
        sizes = {len(b) for b in self.bases}
        if len(sizes) != 1:
            raise InvalidArgumentError("bases have unequal sizes")
        ground = set(self.ground)
        if any(not b <= ground for b in self.bases):
            raise InvalidArgumentError("basis element outside ground set")
        witness = self.exchange_witness()
        if witness is not None:
            b1, b2, x = witness
            raise InvalidArgumentError(
                f"basis exchange fails for {set(b1)}, {set(b2)} at {x}"
            )

    def exchange_witness(self):
        for b1 in self.bases:
            for b2 in self.bases:
                for x in b1 - b2:
                    if not any(
                        (b1 - {x}) | {y} in self.bases for y in b2 - b1
                    ):
                        return (b1, b2, x)
        return None

    @property
    def rank(self) -> int:
        return len(next(iter(self.bases)))

    def rank_of(self, subset) -> int:
        s = frozenset(subset)
        return max(len(b & s) for b in self.bases)

    def corank(self, subset) -> int:
        return self.rank - self.rank_of(subset)

    def nullity(self, subset) -> int:
        s = frozenset(subset)
        return len(s) - self.rank_of(s)

    def is_independent(self, subset) -> bool:
        s = frozenset(subset)
        return self.rank_of(s) == len(s)

    def is_spanning(self, subset) -> bool:
        return self.rank_of(subset) == self.rank

    def independent_sets(self):
        seen = set()
        for b in self.bases:
            for r in range(len(b) + 1):
                for s in itertools.combinations(sorted(b, key=repr), r):
                    seen.add(frozenset(s))
        return seen

    def dual(self) -> "Matroid":
        ground = frozenset(self.ground)
        return Matroid(self.ground, frozenset(ground - b for b in self.bases))

    def relabel(self, mapping) -> "Matroid":
        return Matroid(
            tuple(mapping[g] for g in self.ground),
            frozenset(frozenset(mapping[x] for x in b) for b in self.bases),
        )

    def delete(self, e) -> "Matroid":
        ground = tuple(g for g in self.ground if g != e)
        without = frozenset(b for b in self.bases if e not in b)
        if without:
            return Matroid(ground, without)
        # e is a coloop: remove it from every basis
        return Matroid(ground, frozenset(b - {e} for b in self.bases))

    def contract(self, e) -> "Matroid":
        ground = tuple(g for g in self.ground if g != e)
        with_e = frozenset(b - {e} for b in self.bases if e in b)
        if with_e:
            return Matroid(ground, with_e)
        # e is a loop
        return Matroid(ground, self.bases)

    def direct_sum(self, other: "Matroid") -> "Matroid":
        if set(self.ground) & set(other.ground):
            raise InvalidArgumentError("direct sum needs disjoint grounds")
        return Matroid(
            self.ground + other.ground,
            frozenset(b1 | b2 for b1 in self.bases for b2 in other.bases),
        )


def uniform_matroid(r: int, k: int) -> Matroid:
    if not 0 <= r <= k:
        raise InvalidArgumentError(f"need 0 <= r <= k, got ({r}, {k})")
    ground = tuple(range(1, k + 1))
    return Matroid(
        ground, frozenset(frozenset(c) for c in itertools.combinations(ground, r))
    )


def graphic_matroid(num_vertices: int, edges) -> Matroid:
    """Matroid of a graph; ground is 1..|edges| indexing the given edge list."""
    edges = [tuple(e) for e in edges]
    m = len(edges)

    def acyclic(subset):
        parent = list(range(num_vertices + 1))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for idx in subset:
            u, v = edges[idx - 1]
            ru, rv = find(u), find(v)
            if ru == rv:
                return False
            parent[ru] = rv
        return True

    best_rank = 0
    forests_by_size = {0: [frozenset()]}
    for r in range(1, m + 1):
        found = [
            frozenset(c)
            for c in itertools.combinations(range(1, m + 1), r)
            if acyclic(c)
        ]
        if not found:
            break
        forests_by_size[r] = found
        best_rank = r
    return Matroid(tuple(range(1, m + 1)), frozenset(forests_by_size[best_rank]))


def from_bases(matroid: Matroid) -> DeltaMatroid:
    """The delta-matroid of the base polytope: B together with bars of the rest."""
    n = len(matroid.ground)
    order = {g: i for i, g in enumerate(sorted(matroid.ground, key=repr))}
    masks = frozenset(
        sum(1 << order[g] for g in b) for b in matroid.bases
    )
    return DeltaMatroid.from_masks(n, masks)


def from_independents(matroid: Matroid) -> DeltaMatroid:
    """The delta-matroid of the independence polytope."""
    n = len(matroid.ground)
    order = {g: i for i, g in enumerate(sorted(matroid.ground, key=repr))}
    masks = frozenset(
        sum(1 << order[g] for g in s) for s in matroid.independent_sets()
    )
    return DeltaMatroid.from_masks(n, masks)


def enumerate_deltamatroids(n: int):
    """All delta-matroids on [n, n-bar]; exponential, capped at n <= 3."""
    if n > 3:
        raise ResourceLimitError("exhaustive enumeration capped at n <= 3")
    if n == 0:
        return [DeltaMatroid(0, frozenset([0]))]
    out = []
    all_masks = list(range(1 << n))
    for r in range(1, len(all_masks) + 1):
        for family in itertools.combinations(all_masks, r):
            if _exchange_witness(n, frozenset(family)) is None:
                out.append(DeltaMatroid(n, frozenset(family)))
    return out


# -- brute-force polytope edge oracle (small n) ----------------------------------


def _fm_feasible(rows) -> bool:
    """Exact feasibility of {x : sum(a_i x_i) >= b} via Fourier-Motzkin.

    Each row is (coeffs tuple, rhs).  Intended for tiny systems only.
    """
    rows = [([Fraction(a) for a in coeffs], Fraction(b)) for coeffs, b in rows]
    dim = len(rows[0][0]) if rows else 0
    for var in range(dim):
        pos, neg, rest = [], [], []
        for coeffs, b in rows:
            if coeffs[var] > 0:
                pos.append((coeffs, b))
            elif coeffs[var] < 0:
                neg.append((coeffs, b))
            else:
                rest.append((coeffs, b))
        new_rows = rest
        for cp, bp in pos:
            for cn, bn in neg:
                # scale so the var cancels: row_p / cp[var] + row_n / (-cn[var])
                sp, sn = cp[var], -cn[var]
                coeffs = [
                    a / sp + c / sn for a, c in zip(cp, cn)
                ]
                new_rows.append((coeffs, bp / sp + bn / sn))
        rows = new_rows
    return all(b <= 0 for _, b in rows)


def _is_edge(p, q, others) -> bool:
    """Is [p, q] an edge of conv({p, q} | others)?  Exact LP feasibility."""
    dq = tuple(a - b for a, b in zip(p, q))
    rows = [(dq, 0), (tuple(-x for x in dq), 0)]  # c.(p-q) = 0
    for v in others:
        rows.append((tuple(a - b for a, b in zip(p, v)), 1))  # c.(p-v) >= 1
    return _fm_feasible(rows)


def polytope_edge_check(n: int, masks) -> bool:
    """Oracle: do all edges of conv{e_B} lie in type-B root directions?

    Pairs at Hamming distance <= 2 point in root directions, so only
    distance >= 3 pairs are tested.  Exponential; intended for n <= 3.
    """
    masks = sorted(set(masks))
    verts = {m: tuple((m >> i) & 1 for i in range(n)) for m in masks}
    for m1, m2 in itertools.combinations(masks, 2):
        if popcount(m1 ^ m2) <= 2:
            continue
        others = [verts[m] for m in masks if m != m1 and m != m2]
        if _is_edge(verts[m1], verts[m2], others):
            return False
    return True


@lru_cache(maxsize=8)
def count_deltamatroids(n: int) -> int:
    return len(enumerate_deltamatroids(n))
