"""Exact sparse multivariate (Laurent) polynomials over arbitrary-precision rationals.

Terms are held in a dict mapping exponent tuples to nonzero Fractions; the
variable list is sorted by name and merged automatically across operands.
Negative exponents are permitted only when the Laurent flag is set.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .errors import InvalidArgumentError, InvalidStateError

Rat = Fraction


def generalized_binomial(a: int, k: int) -> int:
    """binom(a, k) for any integer a and k >= 0 (integer-valued)."""
    if k < 0:
        return 0
    num = 1
    for j in range(k):
        num *= a - j
    return num // factorial(k)


def _as_coeff(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise InvalidArgumentError(f"coefficient must be int or Fraction, got {type(c)}")


class MPoly:
    """A sparse exact polynomial; immutable by convention."""

    __slots__ = ("vars", "terms", "laurent")

    def __init__(self, vars=(), terms=None, laurent=False):
        self.vars = tuple(vars)
        self.terms = {}
        self.laurent = laurent
        if terms:
            for expo, coeff in terms.items():
                coeff = _as_coeff(coeff)
                if coeff == 0:
                    continue
                if len(expo) != len(self.vars):
                    raise InvalidArgumentError("exponent arity mismatch")
                if not laurent and any(e < 0 for e in expo):
                    raise InvalidStateError(
                        "negative exponent outside Laurent mode"
                    )
                self.terms[tuple(expo)] = coeff

    # -- constructors ------------------------------------------------------

    @classmethod
    def const(cls, c, laurent=False) -> "MPoly":
        c = _as_coeff(c)
        return cls((), {(): c} if c else {}, laurent)

    @classmethod
    def var(cls, name: str, laurent=False) -> "MPoly":
        return cls((name,), {(1,): Fraction(1)}, laurent)

    @classmethod
    def monomial(cls, names_exponents: dict[str, int], coeff=1, laurent=False):
        names = tuple(sorted(names_exponents))
        expo = tuple(names_exponents[v] for v in names)
        if any(e < 0 for e in expo):
            laurent = True
        return cls(names, {expo: _as_coeff(coeff)}, laurent)

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(all(e == 0 for e in expo) for expo in self.terms)

    def constant_value(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if not self.is_constant():
            raise InvalidArgumentError("polynomial is not constant")
        return next(iter(self.terms.values()))

    def canonical(self) -> "MPoly":
        """Drop variables that occur in no term (for comparison/serialization)."""
        used = [
            i
            for i, _ in enumerate(self.vars)
            if any(expo[i] for expo in self.terms)
        ]
        names = tuple(self.vars[i] for i in used)
        terms = {
            tuple(expo[i] for i in used): c for expo, c in self.terms.items()
        }
        return MPoly(names, terms, self.laurent)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MPoly):
            if isinstance(other, (int, Fraction)):
                other = MPoly.const(other)
            else:
                return NotImplemented
        a, b = self.canonical(), other.canonical()
        return a.vars == b.vars and a.terms == b.terms

    def __hash__(self):
        a = self.canonical()
        return hash((a.vars, frozenset(a.terms.items())))

    def __bool__(self):
        return not self.is_zero()

    # -- arithmetic --------------------------------------------------------

    @staticmethod
    def _aligned(f: "MPoly", g: "MPoly"):
        if f.vars == g.vars:
            return f, g
        names = tuple(sorted(set(f.vars) | set(g.vars)))
        return f._embed(names), g._embed(names)

    def _embed(self, names: tuple[str, ...]) -> "MPoly":
        if names == self.vars:
            return self
        index = {v: j for j, v in enumerate(names)}
        pos = [index[v] for v in self.vars]
        terms = {}
        for expo, c in self.terms.items():
            new = [0] * len(names)
            for p, e in zip(pos, expo):
                new[p] = e
            terms[tuple(new)] = c
        return MPoly(names, terms, self.laurent)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(other, self.laurent)
        f, g = MPoly._aligned(self, other)
        terms = dict(f.terms)
        for expo, c in g.terms.items():
            s = terms.get(expo, Fraction(0)) + c
            if s:
                terms[expo] = s
            else:
                terms.pop(expo, None)
        return MPoly(f.vars, terms, f.laurent or g.laurent)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(
            self.vars, {e: -c for e, c in self.terms.items()}, self.laurent
        )

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(other, self.laurent)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _as_coeff(other)
            if c == 0:
                return MPoly(self.vars, {}, self.laurent)
            return MPoly(
                self.vars,
                {e: c * v for e, v in self.terms.items()},
                self.laurent,
            )
        f, g = MPoly._aligned(self, other)
        terms = {}
        for e1, c1 in f.terms.items():
            for e2, c2 in g.terms.items():
                expo = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(expo, Fraction(0)) + c1 * c2
                if s:
                    terms[expo] = s
                else:
                    terms.pop(expo, None)
        return MPoly(f.vars, terms, f.laurent or g.laurent)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise InvalidArgumentError("exponent must be an integer")
        if k < 0:
            if len(self.terms) != 1:
                raise InvalidArgumentError(
                    "negative powers only defined for monomials"
                )
            expo, c = next(iter(self.terms.items()))
            inv = MPoly(
                self.vars, {tuple(-e for e in expo): Fraction(1) / c}, True
            )
            return inv ** (-k)
        result = MPoly.const(1, self.laurent)
        base = self
        while k:
            if k & 1:
                result = result * base
            base_needed = k > 1
            if base_needed:
                base = base * base
            k >>= 1
        return result

    # -- queries -----------------------------------------------------------

    def degree(self, names=None) -> int:
        """Max total degree, optionally counted only over ``names``."""
        if not self.terms:
            return 0
        if names is None:
            return max(sum(expo) for expo in self.terms)
        idx = [i for i, v in enumerate(self.vars) if v in set(names)]
        return max(sum(expo[i] for i in idx) for expo in self.terms)

    def truncate_degree(self, d: int, names=None) -> "MPoly":
        """Drop monomials of total degree > d (in ``names`` if given)."""
        if d < 0:
            raise InvalidArgumentError("truncation degree must be >= 0")
        if names is None:
            keep = {e: c for e, c in self.terms.items() if sum(e) <= d}
        else:
            idx = [i for i, v in enumerate(self.vars) if v in set(names)]
            keep = {
                e: c
                for e, c in self.terms.items()
                if sum(e[i] for i in idx) <= d
            }
        return MPoly(self.vars, keep, self.laurent)

    def homogeneous_part(self, d: int, names=None) -> "MPoly":
        if names is None:
            keep = {e: c for e, c in self.terms.items() if sum(e) == d}
        else:
            idx = [i for i, v in enumerate(self.vars) if v in set(names)]
            keep = {
                e: c
                for e, c in self.terms.items()
                if sum(e[i] for i in idx) == d
            }
        return MPoly(self.vars, keep, self.laurent)

    def is_homogeneous(self) -> bool:
        degrees = {sum(e) for e in self.terms}
        return len(degrees) <= 1

    def coefficient(self, name: str, k: int) -> "MPoly":
        """Coefficient of name**k, as a polynomial in the other variables."""
        if name not in self.vars:
            return self if k == 0 else MPoly((), {}, self.laurent)
        i = self.vars.index(name)
        names = self.vars[:i] + self.vars[i + 1 :]
        terms = {}
        for expo, c in self.terms.items():
            if expo[i] == k:
                terms[expo[:i] + expo[i + 1 :]] = c
        return MPoly(names, terms, self.laurent)

    def univariate_coeffs(self, name: str) -> list[Fraction]:
        """Dense coefficient array [c_0, c_1, ...] of a univariate polynomial."""
        other = [v for v in self.vars if v != name]
        if self.degree(other) > 0:
            raise InvalidArgumentError(
                f"polynomial involves variables besides {name}"
            )
        if name not in self.vars:
            return [self.constant_value()]
        i = self.vars.index(name)
        if any(e[i] < 0 for e in self.terms):
            raise InvalidArgumentError("Laurent polynomial has no dense form")
        d = max((e[i] for e in self.terms), default=0)
        out = [Fraction(0)] * (d + 1)
        for expo, c in self.terms.items():
            out[expo[i]] += c
        return out

    def monomials(self):
        """Yield (exponent dict, coefficient) with zero exponents omitted."""
        for expo, c in sorted(self.terms.items()):
            yield {v: e for v, e in zip(self.vars, expo) if e}, c

    # -- substitution ------------------------------------------------------

    def substitute(self, bindings: dict) -> "MPoly":
        """Replace variables by polynomials or exact rational values.

        Every bound variable is eliminated; unbound variables pass through.
        A negative exponent requires the binding to be an invertible value
        or a single monomial.
        """
        norm = {}
        for name, val in bindings.items():
            if isinstance(val, (int, Fraction)):
                norm[name] = MPoly.const(val, self.laurent)
            elif isinstance(val, MPoly):
                norm[name] = val
            else:
                raise InvalidArgumentError(
                    f"binding for {name} must be MPoly, int, or Fraction"
                )
        bound_idx = [i for i, v in enumerate(self.vars) if v in norm]
        if not bound_idx:
            return self
        free = tuple(v for v in self.vars if v not in norm)
        result = MPoly(free, {}, self.laurent)
        pow_cache: dict[tuple[str, int], MPoly] = {}
        for expo, c in self.terms.items():
            part = MPoly(
                free,
                {
                    tuple(
                        e
                        for i, e in enumerate(expo)
                        if self.vars[i] not in norm
                    ): c
                },
                self.laurent,
            )
            for i in bound_idx:
                e = expo[i]
                if e == 0:
                    continue
                key = (self.vars[i], e)
                if key not in pow_cache:
                    pow_cache[key] = norm[self.vars[i]] ** e
                part = part * pow_cache[key]
            result = result + part
        return result

    def evaluate(self, values: dict[str, Fraction]) -> Fraction:
        """Full evaluation; every occurring variable must be bound."""
        out = Fraction(0)
        for expo, c in self.terms.items():
            term = c
            for v, e in zip(self.vars, expo):
                if e == 0:
                    continue
                if v not in values:
                    raise InvalidArgumentError(f"unbound variable {v}")
                term *= Fraction(values[v]) ** e
            out += term
        return out

    # -- series ------------------------------------------------------------

    def series_inverse(self, max_deg: int, names=None) -> "MPoly":
        """Multiplicative inverse modulo degree > max_deg in ``names``.

        The degree-0 part (w.r.t. ``names``, or all variables) must be a
        nonzero constant.
        """
        if names is None:
            c0_poly = self.homogeneous_part(0)
        else:
            c0_poly = self.homogeneous_part(0, names)
        if not c0_poly.is_constant():
            raise InvalidArgumentError("series inverse needs constant 0-part")
        c0 = c0_poly.constant_value()
        if c0 == 0:
            raise InvalidArgumentError("series inverse of a non-unit")
        g = MPoly.const(1, self.laurent) - self * Fraction(1, 1) / c0
        g = g.truncate_degree(max_deg, names)
        acc = MPoly.const(1, self.laurent)
        for _ in range(max_deg):
            acc = (MPoly.const(1, self.laurent) + g * acc).truncate_degree(
                max_deg, names
            )
        return acc * (Fraction(1) / c0)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _as_coeff(other)
            if c == 0:
                raise ZeroDivisionError("division by zero")
            return self * (Fraction(1) / c)
        raise InvalidArgumentError("only division by exact scalars is supported")

    # -- display -----------------------------------------------------------

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for expo, c in sorted(self.terms.items()):
            factors = [
                f"{v}^{e}" if e != 1 else v
                for v, e in zip(self.vars, expo)
                if e
            ]
            coeff = "" if (c == 1 and factors) else str(c)
            bits.append("*".join(([coeff] if coeff else []) + factors) or "1")
        return " + ".join(bits)


def poly_ring(*names: str, laurent=False) -> tuple[MPoly, ...]:
    """Convenience: generators for the given variable names."""
    return tuple(MPoly.var(v, laurent) for v in names)
