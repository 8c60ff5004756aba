"""Delta-matroids from isotropic subspaces over prime fields.

Columns of an n x 2n (or n x 2n+1) matrix are labeled 1..n, 1-bar..n-bar
(and 0); the quadratic form is x_1 x_{1-bar} + ... + x_n x_{n-bar} (+ x_0^2).
Feasible sets of the represented delta-matroid are the maximal admissible
column sets whose square submatrix is invertible.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import comb

from .core import AdmissibleSet, maximal_ads
from .deltamatroid import DeltaMatroid, Matroid
from .errors import InvalidArgumentError
from .polyring import MPoly


@dataclass(frozen=True)
class FqMatrix:
    """A matrix over the prime field F_p; entries are reduced mod p."""

    p: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.p < 2:
            raise InvalidArgumentError("field characteristic must be prime")
        object.__setattr__(
            self,
            "rows",
            tuple(tuple(x % self.p for x in row) for row in self.rows),
        )
        widths = {len(r) for r in self.rows}
        if len(widths) > 1:
            raise InvalidArgumentError("ragged rows")

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def ncols(self):
        return len(self.rows[0]) if self.rows else 0

    def column_submatrix(self, cols) -> "FqMatrix":
        return FqMatrix(
            self.p, tuple(tuple(r[c] for c in cols) for r in self.rows)
        )

    def rank(self) -> int:
        m = [list(r) for r in self.rows]
        p = self.p
        rank = 0
        for col in range(self.ncols):
            piv = next(
                (r for r in range(rank, len(m)) if m[r][col] % p), None
            )
            if piv is None:
                continue
            m[rank], m[piv] = m[piv], m[rank]
            inv = pow(m[rank][col], -1, p)
            m[rank] = [(x * inv) % p for x in m[rank]]
            for r in range(len(m)):
                if r != rank and m[r][col]:
                    f = m[r][col]
                    m[r] = [(a - f * b) % p for a, b in zip(m[r], m[rank])]
            rank += 1
        return rank

    def is_square_nonsingular(self) -> bool:
        return self.nrows == self.ncols and self.rank() == self.nrows


def _column_count_n(mat: FqMatrix) -> tuple[int, bool]:
    """(n, has_extra_zero_column_label) for a 2n or 2n+1 column matrix."""
    c = mat.ncols
    if c % 2 == 0:
        return c // 2, False
    return (c - 1) // 2, True


def quadratic_form(mat: FqMatrix, row) -> int:
    """q(x) = sum x_i x_{i-bar} (+ x_0^2 in the odd-dimensional case)."""
    n, has_zero = _column_count_n(mat)
    val = sum(row[i] * row[n + i] for i in range(n))
    if has_zero:
        val += row[2 * n] ** 2
    return val % mat.p


def polarization(mat: FqMatrix, u, v) -> int:
    """B(u, v) = q(u + v) - q(u) - q(v), computed directly."""
    n, has_zero = _column_count_n(mat)
    val = sum(u[i] * v[n + i] + u[n + i] * v[i] for i in range(n))
    if has_zero:
        val += 2 * u[2 * n] * v[2 * n]
    return val % mat.p


def is_isotropic(mat: FqMatrix) -> bool:
    """Does the quadratic form vanish identically on the row span?

    In characteristic 2 the form is not determined by its polarization, so
    q on each row and the polarization on each pair are both required.
    """
    n, _ = _column_count_n(mat)
    if mat.nrows != n:
        raise InvalidArgumentError(
            f"expected {n} rows for a maximal isotropic subspace, got {mat.nrows}"
        )
    for row in mat.rows:
        if quadratic_form(mat, row) != 0:
            return False
    for u, v in itertools.combinations(mat.rows, 2):
        if polarization(mat, u, v) != 0:
            return False
    return True


def _columns_for(s: AdmissibleSet, n: int) -> list[int]:
    cols = []
    for letter in s.letters():
        cols.append(letter - 1 if letter > 0 else n + (-letter) - 1)
    return cols


def delta_from_isotropic(mat: FqMatrix) -> DeltaMatroid:
    """Feasible sets = maximal admissible column sets with invertible submatrix."""
    n, _ = _column_count_n(mat)
    if not is_isotropic(mat):
        raise InvalidArgumentError("row span is not isotropic")
    if mat.rank() != n:
        raise InvalidArgumentError("matrix does not have full row rank")
    masks = set()
    for s in maximal_ads(n):
        sub = mat.column_submatrix(_columns_for(s, n))
        if sub.is_square_nonsingular():
            masks.add(s.pos)
    return DeltaMatroid.from_masks(n, masks)


@dataclass(frozen=True)
class Graph:
    """A simple graph on vertices 1..n."""

    n: int
    edges: frozenset[frozenset[int]]

    @classmethod
    def from_pairs(cls, n, pairs) -> "Graph":
        edges = set()
        for u, v in pairs:
            if u == v:
                raise InvalidArgumentError("loops are not allowed")
            if not (1 <= u <= n and 1 <= v <= n):
                raise InvalidArgumentError("vertex outside range")
            edges.add(frozenset((u, v)))
        return cls(n, frozenset(edges))

    def adjacency(self) -> list[list[int]]:
        a = [[0] * self.n for _ in range(self.n)]
        for e in self.edges:
            u, v = sorted(e)
            a[u - 1][v - 1] = a[v - 1][u - 1] = 1
        return a


def adjacency_delta(g: Graph) -> DeltaMatroid:
    """Delta-matroid of the row span of [I_n | A_G] over F_2."""
    a = g.adjacency()
    rows = tuple(
        tuple(1 if j == i else 0 for j in range(g.n)) + tuple(a[i])
        for i in range(g.n)
    )
    return delta_from_isotropic(FqMatrix(2, rows))


# -- the circ-uniform family --------------------------------------------------------------


def circ_uniform(r: int, n: int) -> DeltaMatroid:
    """Feasible sets S + bars of the rest, over S with |S| <= r, |S| = r mod 2."""
    if not 0 <= r <= n:
        raise InvalidArgumentError("need 0 <= r <= n")
    masks = set()
    for size in range(r % 2, r + 1, 2):
        for combo in itertools.combinations(range(n), size):
            masks.add(sum(1 << i for i in combo))
    return DeltaMatroid.from_masks(n, masks)


def circ_uniform_matrix(r: int, n: int, seed: int = 0, p: int = 10007) -> FqMatrix:
    """A D_n-representation with pseudo-random general blocks, retried on
    degeneracy up to 16 times (Zariski-general entries approximated by random
    draws over a large prime field)."""
    rng = random.Random(seed)
    target = circ_uniform(r, n)
    for _ in range(16):
        a = [[rng.randrange(1, p) for _ in range(n - r)] for _ in range(r)]
        b = [[0] * r for _ in range(r)]
        for i in range(r):
            for j in range(i + 1, r):
                b[i][j] = rng.randrange(1, p)
                b[j][i] = (-b[i][j]) % p
        rows = []
        for i in range(r):
            left = [1 if j == i else 0 for j in range(r)] + list(a[i])
            right = list(b[i]) + [0] * (n - r)
            rows.append(tuple(left + right))
        for k in range(n - r):
            left = [0] * n
            right = [(-a[i][k]) % p for i in range(r)] + [
                1 if j == k else 0 for j in range(n - r)
            ]
            rows.append(tuple(left + right))
        mat = FqMatrix(p, tuple(rows))
        if is_isotropic(mat) and delta_from_isotropic(mat) == target:
            return mat
    raise InvalidArgumentError(
        f"no general-position realization found for U_circ({r},{n})"
    )


def circ_uniform_interlace(r: int, n: int) -> MPoly:
    """Closed binomial form of the interlace polynomial of circ_uniform(r, n).

    distance(X) is 0 when |X| <= r with matching parity, 1 when |X| <= r with
    the opposite parity, and |X| - r beyond.
    """
    coeffs = {0: 0, 1: 0}
    for k in range(0, r + 1):
        if (k - r) % 2 == 0:
            coeffs[0] += comb(n, k)
        else:
            coeffs[1] += comb(n, k)
    if r + 1 <= n:
        coeffs[1] += comb(n, r + 1)
    for j in range(2, n - r + 1):
        coeffs[j] = comb(n, r + j)
    return MPoly(("v",), {(k,): c for k, c in coeffs.items() if c})


def recognize_circ_uniform(d: DeltaMatroid) -> tuple[int, int] | None:
    """Detect whether a delta-matroid is circ_uniform(r, n); returns (r, n)."""
    r = max(mask.bit_count() for mask in d.feasible)
    expected = 0
    for size in range(r % 2, r + 1, 2):
        expected += comb(d.n, size)
    if len(d.feasible) != expected:
        return None
    for mask in d.feasible:
        k = mask.bit_count()
        if k > r or (k - r) % 2:
            return None
    return (r, d.n)


def zero_extend_to_b_type(mat: FqMatrix) -> FqMatrix:
    """Append the x_0 = 0 column to a D-type isotropic matrix."""
    n, has_zero = _column_count_n(mat)
    if has_zero:
        return mat
    return FqMatrix(mat.p, tuple(row + (0,) for row in mat.rows))


def matrix_matroid(mat: FqMatrix, labels) -> Matroid:
    """Column matroid of a matrix, with the given column labels."""
    labels = tuple(labels)
    if len(labels) != mat.ncols:
        raise InvalidArgumentError("label count mismatch")
    r = mat.rank()
    bases = set()
    for combo in itertools.combinations(range(mat.ncols), r):
        if mat.column_submatrix(combo).rank() == r:
            bases.add(frozenset(labels[c] for c in combo))
    return Matroid(labels, frozenset(bases))
