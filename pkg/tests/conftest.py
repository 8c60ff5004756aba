"""Shared corpus builders for the test suite."""

import random

from deltoid.core import enumerate_group, nonempty_ads
from deltoid.deltamatroid import (
    enumerate_deltamatroids,
    from_bases,
    from_independents,
    uniform_matroid,
)
from deltoid.errors import InvalidCombinationError
from deltoid.polyhedra import BnPolytope, minkowski_combine


def random_deltamatroid(n, rng):
    """Random delta-matroid built from matroids, twists, and products."""
    group = list(enumerate_group(n))
    while True:
        kind = rng.randrange(3)
        if kind == 0:
            r = rng.randint(0, n)
            base = rng.choice([from_bases, from_independents])(
                uniform_matroid(r, n)
            )
        elif kind == 1 and n >= 2:
            k = rng.randint(1, n - 1)
            left = random_deltamatroid(k, rng)
            right = random_deltamatroid(n - k, rng)
            base = left.product(right)
        else:
            if n > 3:
                continue
            base = rng.choice(enumerate_deltamatroids(n))
        return base.twist(rng.choice(group))


def random_lattice_bngp(n, rng, allow_deltamatroid=True):
    """Random lattice B_n generalized permutohedra for corpus tests."""
    choice = rng.randrange(3 if allow_deltamatroid else 2)
    if choice == 0 and allow_deltamatroid and n <= 3:
        d = rng.choice(enumerate_deltamatroids(n))
        return BnPolytope.of_deltamatroid(d)
    rays = nonempty_ads(n)
    while True:
        support_rays = rng.sample(rays, rng.randint(1, min(6, len(rays))))
        terms = [(rng.randint(1, 2), BnPolytope.simplex(s)) for s in support_rays]
        if choice == 2:
            extra = rng.choice(rays)
            try:
                return minkowski_combine(terms + [(-1, BnPolytope.simplex(extra))])
            except InvalidCombinationError:
                pass
        try:
            return minkowski_combine(terms)
        except InvalidCombinationError:
            continue
