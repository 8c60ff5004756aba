"""Ground-set combinatorics: signed letters, admissible sets, signed permutations.

Conventions used throughout the package:

* A *letter* is a nonzero int: ``+i`` stands for the element i of the ground
  set and ``-i`` for its barred partner (1 <= i <= n).  This matches the
  serialized form, where a negative integer means a barred element.
* The total order on letters used by the Gale order and descents is the
  usual integer order, i.e. -n < ... < -1 < (0) < 1 < ... < n.
* Subsets of [n] are held as bitmasks (bit i-1 <-> element i).
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from functools import lru_cache

from .errors import InvalidArgumentError, ResourceLimitError

DEFAULT_MAX_N = 8


def max_n() -> int:
    """Size cap for enumerative operations; DELTOID_MAX_N overrides."""
    return int(os.environ.get("DELTOID_MAX_N", DEFAULT_MAX_N))


def _check_n(n: int, cap: int | None = None) -> None:
    cap = max_n() if cap is None else cap
    if n < 0:
        raise InvalidArgumentError(f"ground size must be nonnegative, got {n}")
    if n > cap:
        raise ResourceLimitError(f"ground size {n} exceeds cap {cap}")


def popcount(x: int) -> int:
    return x.bit_count()


def mask_members(mask: int):
    """Elements of [n] present in a bitmask, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length()
        mask ^= low


@dataclass(frozen=True)
class AdmissibleSet:
    """A subset of [n, n-bar] containing no pair {i, i-bar}.

    ``pos`` and ``neg`` are disjoint bitmasks over [n]: bit i-1 of ``pos``
    means the letter +i is present, of ``neg`` that -i is present.
    """

    n: int
    pos: int
    neg: int

    def __post_init__(self):
        if self.pos & self.neg:
            raise InvalidArgumentError(
                f"set contains a pair {{i, i-bar}}: masks {self.pos} & {self.neg}"
            )
        full = (1 << self.n) - 1
        if (self.pos | self.neg) & ~full:
            raise InvalidArgumentError("element outside ground size")

    @classmethod
    def from_letters(cls, n: int, letters) -> "AdmissibleSet":
        pos = neg = 0
        for x in letters:
            if x == 0 or abs(x) > n:
                raise InvalidArgumentError(f"letter {x} outside [{n}, {n}-bar]")
            if x > 0:
                pos |= 1 << (x - 1)
            else:
                neg |= 1 << (-x - 1)
        return cls(n, pos, neg)

    @classmethod
    def from_pos_mask(cls, n: int, pos: int) -> "AdmissibleSet":
        """Maximal admissible set with positive part ``pos`` (rest barred)."""
        full = (1 << n) - 1
        return cls(n, pos, full & ~pos)

    def letters(self) -> tuple[int, ...]:
        """Members as signed ints, ascending in the letter order."""
        return tuple(
            sorted(-i for i in mask_members(self.neg))
        ) + tuple(mask_members(self.pos))

    def __len__(self) -> int:
        return popcount(self.pos) + popcount(self.neg)

    def __contains__(self, letter: int) -> bool:
        if letter > 0:
            return bool(self.pos >> (letter - 1) & 1)
        return bool(self.neg >> (-letter - 1) & 1)

    @property
    def is_maximal(self) -> bool:
        return len(self) == self.n

    def bar(self) -> "AdmissibleSet":
        """Image under the bar involution (negate every letter)."""
        return AdmissibleSet(self.n, self.neg, self.pos)

    def vector(self) -> tuple[int, ...]:
        """The lattice vector e_S = sum of e_i over members (e_{i-bar} = -e_i)."""
        return tuple(
            (self.pos >> i & 1) - (self.neg >> i & 1) for i in range(self.n)
        )

    def intersects(self, other: "AdmissibleSet") -> bool:
        return bool(self.pos & other.pos or self.neg & other.neg)

    def __str__(self) -> str:
        return "{" + ",".join(str(x) for x in self.letters()) + "}"


def ads(n: int, *letters: int) -> AdmissibleSet:
    """Shorthand constructor from signed ints."""
    return AdmissibleSet.from_letters(n, letters)


@dataclass(frozen=True)
class SignedPermutation:
    """An element of the signed permutation group on [n, n-bar].

    ``images`` holds the images of 1..n as letters; the image of -i is
    forced to -images[i-1], so w(i-bar) = w(i)-bar holds by construction.
    """

    images: tuple[int, ...]

    def __post_init__(self):
        seen = {abs(x) for x in self.images}
        if seen != set(range(1, len(self.images) + 1)):
            raise InvalidArgumentError(f"not a signed permutation: {self.images}")

    @classmethod
    def identity(cls, n: int) -> "SignedPermutation":
        return cls(tuple(range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, letter: int) -> int:
        if letter > 0:
            return self.images[letter - 1]
        return -self.images[-letter - 1]

    def compose(self, other: "SignedPermutation") -> "SignedPermutation":
        """self after other: (self*other)(x) = self(other(x))."""
        if self.n != other.n:
            raise InvalidArgumentError("size mismatch")
        return SignedPermutation(tuple(self(x) for x in other.images))

    def __mul__(self, other):
        return self.compose(other)

    def inverse(self) -> "SignedPermutation":
        inv = [0] * self.n
        for i, x in enumerate(self.images, start=1):
            if x > 0:
                inv[x - 1] = i
            else:
                inv[-x - 1] = -i
        return SignedPermutation(tuple(inv))

    def sign_pattern(self) -> tuple[int, ...]:
        """epsilon_i(w) = +1 iff the letter +i lies in w([n])."""
        eps = [0] * self.n
        for x in self.images:
            eps[abs(x) - 1] = 1 if x > 0 else -1
        return tuple(eps)

    def image_of_positives(self) -> AdmissibleSet:
        """w([n]) as a maximal admissible set."""
        return AdmissibleSet.from_letters(self.n, self.images)

    def global_flip(self) -> "SignedPermutation":
        """Compose with the bar involution on values: images all negated."""
        return SignedPermutation(tuple(-x for x in self.images))

    def __str__(self) -> str:
        return "[" + " ".join(str(x) for x in self.images) + "]"


def tau_adjacent(n: int, i: int) -> SignedPermutation:
    """The involution swapping i and i+1 (with their bars)."""
    imgs = list(range(1, n + 1))
    imgs[i - 1], imgs[i] = imgs[i], imgs[i - 1]
    return SignedPermutation(tuple(imgs))


def tau_last(n: int) -> SignedPermutation:
    """The involution swapping n and n-bar."""
    imgs = list(range(1, n + 1))
    imgs[-1] = -n
    return SignedPermutation(tuple(imgs))


def weyl_act(w: SignedPermutation, s: AdmissibleSet) -> AdmissibleSet:
    """Apply w elementwise: {w(x) : x in S}."""
    if w.n != s.n:
        raise InvalidArgumentError("size mismatch")
    return AdmissibleSet.from_letters(s.n, (w(x) for x in s.letters()))


def gale_leq(s1: AdmissibleSet, s2: AdmissibleSet) -> bool:
    """Gale (dominance) order on maximal admissible sets.

    Sorted members compare elementwise in the letter order
    -n < ... < -1 < 1 < ... < n.
    """
    if s1.n != s2.n:
        raise InvalidArgumentError("size mismatch")
    if not (s1.is_maximal and s2.is_maximal):
        raise InvalidArgumentError("Gale order compares maximal admissible sets")
    return all(a <= b for a, b in zip(s1.letters(), s2.letters()))


def gale_upper_segment_leq(s1: AdmissibleSet, s2: AdmissibleSet) -> bool:
    """Equivalent upper-segment criterion: |S1 & {i..n}| <= |S2 & {i..n}|."""
    if s1.n != s2.n or not (s1.is_maximal and s2.is_maximal):
        raise InvalidArgumentError("size mismatch or non-maximal input")
    n = s1.n
    for i in range(1, n + 1):
        seg = ((1 << n) - 1) & ~((1 << (i - 1)) - 1)  # elements i..n
        if popcount(s1.pos & seg) > popcount(s2.pos & seg):
            return False
    return True


def descent_count(w: SignedPermutation) -> int:
    """Number of i in [n] with w(i-1) > w(i), where w(0) = 0."""
    prev = 0
    count = 0
    for x in w.images:
        if prev > x:
            count += 1
        prev = x
    return count


def enumerate_group(n: int, cap: int | None = None):
    """All 2^n * n! signed permutations, deterministic order."""
    _check_n(n, cap)
    for perm in itertools.permutations(range(1, n + 1)):
        for signs in itertools.product((1, -1), repeat=n):
            yield SignedPermutation(tuple(s * p for s, p in zip(signs, perm)))


def enumerate_ads(n: int, k: int, cap: int | None = None):
    """All admissible sets of size k: supports ascending, positive signs first."""
    _check_n(n, cap)
    if k < 0 or k > n:
        return
    for support in itertools.combinations(range(n), k):
        for signs in itertools.product((0, 1), repeat=k):
            pos = neg = 0
            for bit, s in zip(support, signs):
                if s == 0:
                    pos |= 1 << bit
                else:
                    neg |= 1 << bit
            yield AdmissibleSet(n, pos, neg)


@lru_cache(maxsize=None)
def maximal_ads(n: int) -> tuple[AdmissibleSet, ...]:
    """The 2^n maximal admissible sets, cached, ordered by positive mask."""
    return tuple(
        AdmissibleSet.from_pos_mask(n, pos) for pos in range(1 << n)
    )


@lru_cache(maxsize=None)
def nonempty_ads(n: int) -> tuple[AdmissibleSet, ...]:
    """The 3^n - 1 nonempty admissible sets in canonical (ray) order."""
    out = []
    for k in range(1, n + 1):
        out.extend(enumerate_ads(n, k, cap=max(n, DEFAULT_MAX_N)))
    return tuple(out)


@lru_cache(maxsize=None)
def all_group_elements(n: int) -> tuple[SignedPermutation, ...]:
    return tuple(enumerate_group(n, cap=max(n, DEFAULT_MAX_N)))
