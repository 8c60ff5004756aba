"""Enveloping matroids: the env projection, witnesses, and canonical constructions.

A matroid M on the doubled ground set {±1, ..., ±n} envelops a delta-matroid D
when the image of its base polytope under env(x) = (x_i - x_{i-bar}) is the
rescaled polytope 2 P(D) - e_[n].  All polytope comparisons go through support
numbers on the 3^n - 1 rays, with the ray images computed by matroid greedy.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .core import AdmissibleSet, mask_members, nonempty_ads, popcount
from .deltamatroid import DeltaMatroid, Matroid
from .errors import InvalidArgumentError
from .polyhedra import BnPolytope, cube, minkowski_combine
from .represent import FqMatrix, is_isotropic, matrix_matroid, zero_extend_to_b_type

LETTER_GROUND = lambda n: tuple(range(1, n + 1)) + tuple(range(-1, -n - 1, -1))


def _check_doubled_ground(m: Matroid, n: int):
    if set(m.ground) != set(LETTER_GROUND(n)):
        raise InvalidArgumentError(
            "matroid ground set must be the letters {±1, ..., ±n}"
        )


def _ray_weights(s: AdmissibleSet) -> dict[int, int]:
    """Weight of each letter under the pullback of <., e_S> along env."""
    w = {}
    for i in range(1, s.n + 1):
        coord = (s.pos >> (i - 1) & 1) - (s.neg >> (i - 1) & 1)
        w[i] = coord
        w[-i] = -coord
    return w


def max_weight_basis_value(m: Matroid, weights: dict) -> int:
    """Greedy maximum of sum(weights) over bases."""
    order = sorted(m.ground, key=lambda g: -weights.get(g, 0))
    chosen = []
    for g in order:
        if m.rank_of(chosen + [g]) > len(chosen):
            chosen.append(g)
    return sum(weights.get(g, 0) for g in chosen)


def max_weight_independent_value(m: Matroid, weights: dict) -> int:
    """Greedy maximum of sum(weights) over independent sets."""
    order = sorted(
        (g for g in m.ground if weights.get(g, 0) > 0),
        key=lambda g: -weights.get(g, 0),
    )
    chosen = []
    for g in order:
        if m.rank_of(chosen + [g]) > len(chosen):
            chosen.append(g)
    return sum(weights.get(g, 0) for g in chosen)


def env_support(m: Matroid, n: int) -> dict[AdmissibleSet, int]:
    """Support numbers of env(P(M)) on all rays, via matroid greedy."""
    _check_doubled_ground(m, n)
    return {
        s: max_weight_basis_value(m, _ray_weights(s)) for s in nonempty_ads(n)
    }


def rescaled_support(d: DeltaMatroid) -> dict[AdmissibleSet, int]:
    """Support numbers of 2 P(D) - e_[n]."""
    p = BnPolytope.of_deltamatroid(d)
    out = {}
    for s in nonempty_ads(d.n):
        shift = popcount(s.pos) - popcount(s.neg)
        out[s] = int(2 * p.support(s) - shift)
    return out


def is_enveloping(m: Matroid, d: DeltaMatroid) -> bool:
    try:
        _check_doubled_ground(m, d.n)
    except InvalidArgumentError:
        return False
    return env_support(m, d.n) == rescaled_support(d)


def bar_relabel(m: Matroid) -> Matroid:
    """Image under the bar involution on letters."""
    return m.relabel({g: -g for g in m.ground})


def envelope_base(m: Matroid) -> Matroid:
    """M + bar(M-dual): envelops the base-polytope delta-matroid P(M)."""
    n = len(m.ground)
    pos = m.relabel({g: i + 1 for i, g in enumerate(sorted(m.ground, key=repr))})
    return pos.direct_sum(bar_relabel(pos.dual()))


def envelope_indep(m: Matroid) -> Matroid:
    """Free product M box bar(M-dual): envelops IP(M).

    Bases are S + bar(T) with S independent in M, T spanning in M-dual,
    |S| + |T| = n.
    """
    n = len(m.ground)
    pos = m.relabel({g: i + 1 for i, g in enumerate(sorted(m.ground, key=repr))})
    dual = pos.dual()
    ground = LETTER_GROUND(n)
    bases = set()
    elements = list(range(1, n + 1))
    for k in range(n + 1):
        for s in itertools.combinations(elements, k):
            if not pos.is_independent(s):
                continue
            for t in itertools.combinations(elements, n - k):
                if dual.is_spanning(t):
                    bases.add(frozenset(s) | frozenset(-x for x in t))
    return Matroid(ground, frozenset(bases))


def envelope_from_rep(mat: FqMatrix) -> Matroid:
    """Column matroid of a B-type isotropic matrix with the 0-column dropped."""
    mat = zero_extend_to_b_type(mat)
    if not is_isotropic(mat):
        raise InvalidArgumentError("matrix is not isotropic")
    n = mat.nrows
    projected = mat.column_submatrix(range(2 * n))
    if projected.rank() != n:
        raise InvalidArgumentError("projection away from x_0 lost rank")
    return matrix_matroid(projected, LETTER_GROUND(n))


@dataclass(frozen=True)
class EnvelopeWitness:
    delta_matroid: DeltaMatroid
    matroid: Matroid
    construction: str  # direct-sum | free-product | from-representation | user-supplied

    def __post_init__(self):
        if not is_enveloping(self.matroid, self.delta_matroid):
            raise InvalidArgumentError(
                f"matroid does not envelop the delta-matroid ({self.construction})"
            )


def find_envelope(d: DeltaMatroid) -> EnvelopeWitness | None:
    """Try the canonical constructions: base-polytope form, then cornered forms."""
    # P(M) form: all feasible sets of one size and the positive parts a matroid
    sizes = {popcount(mask) for mask in d.feasible}
    if len(sizes) == 1:
        try:
            bases = frozenset(
                frozenset(mask_members(mask)) for mask in d.feasible
            )
            m = Matroid(tuple(range(1, d.n + 1)), bases)
            witness = envelope_base(m)
            if is_enveloping(witness, d):
                return EnvelopeWitness(d, witness, "direct-sum")
        except InvalidArgumentError:
            pass
    cornered = d.is_cornered()
    if cornered is not None:
        w, m = cornered
        # twist(w, d) = IP(m); pull the free-product witness back through w
        witness = envelope_indep(m)
        back = w.inverse()
        relabeled = witness.relabel(
            {g: back(g) for g in witness.ground}
        )
        if is_enveloping(relabeled, d):
            return EnvelopeWitness(d, relabeled, "free-product")
    return None


def check_envelope_lemmas(witness: EnvelopeWitness) -> dict[str, bool]:
    """Exact checks of the independence-image and loop/coloop lemmas."""
    d, m = witness.delta_matroid, witness.matroid
    n = d.n
    # env(IP(M)) = P(D) + cube - e_[n]
    lhs = {
        s: max_weight_independent_value(m, _ray_weights(s))
        for s in nonempty_ads(n)
    }
    box = cube(n)
    p = BnPolytope.of_deltamatroid(d)
    rhs = {}
    for s in nonempty_ads(n):
        shift = popcount(s.pos) - popcount(s.neg)
        rhs[s] = int(p.support(s) + box.support(s) - shift)
    indep_image = lhs == rhs

    loops_ok = True
    m_loops = {g for g in m.ground if all(g not in b for b in m.bases)}
    m_coloops = {g for g in m.ground if all(g in b for b in m.bases)}
    for i in range(1, n + 1):
        d_loop = i in d.loops()
        d_coloop = i in d.coloops()
        if d_loop != (i in m_loops and -i in m_coloops):
            loops_ok = False
        if d_coloop != (i in m_coloops and -i in m_loops):
            loops_ok = False
    return {"independence_image": indep_image, "loop_coloop": loops_ok}


def duchamp_family() -> DeltaMatroid:
    """The 9-set family with no enveloping matroid (fixed input)."""
    sets = [
        (-1, -2, -3, -4),
        (-1, -2, -3, 4),
        (-1, 2, 3, -4),
        (1, -2, 3, -4),
        (1, 2, -3, -4),
        (-1, 2, 3, 4),
        (1, -2, 3, 4),
        (1, 2, -3, 4),
        (1, 2, 3, 4),
    ]
    return DeltaMatroid.from_feasible_sets(4, sets)
