"""Multiple Bernoulli polynomials in exact rational arithmetic.

``B_{r,n}(w, x_1..x_r)`` is ``n!`` times the coefficient of ``t^n`` in
``exp(w t) * prod_j t / (exp(x_j t) - 1)``.  Since ``t/(e^{xt}-1) =
x^{-1} sum_k B_k (x t)^k / k!``, the product ``B_{r,n} * x_1 ... x_r`` is an
honest polynomial; that numerator is what gets stored.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Monomial = tuple[int, ...]


class Poly:
    """Sparse polynomial with ``Fraction`` coefficients in a fixed number of variables."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Monomial, Fraction] | None = None):
        self.nvars = nvars
        self.terms: dict[Monomial, Fraction] = {}
        for m, c in (terms or {}).items():
            if len(m) != nvars:
                raise ValueError(f"monomial {m} has the wrong arity")
            c = Fraction(c)
            if c:
                self.terms[tuple(m)] = self.terms.get(tuple(m), Fraction(0)) + c
        self.terms = {m: c for m, c in self.terms.items() if c}

    # constructors
    @classmethod
    def const(cls, nvars: int, c) -> "Poly":
        return cls(nvars, {(0,) * nvars: Fraction(c)})

    @classmethod
    def var(cls, nvars: int, i: int) -> "Poly":
        m = [0] * nvars
        m[i] = 1
        return cls(nvars, {tuple(m): Fraction(1)})

    @classmethod
    def gens(cls, nvars: int) -> list["Poly"]:
        return [cls.var(nvars, i) for i in range(nvars)]

    # arithmetic
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials live in different rings")
            return other
        return Poly.const(self.nvars, other)

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return Poly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        other = self._coerce(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(i + j for i, j in zip(m1, m2))
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return Poly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        out = Poly.const(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            other = Poly.const(self.nvars, other) if isinstance(other, (int, Fraction)) else None
            if other is None:
                return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "Poly(0)"
        parts = [f"{c}*{m}" for m, c in sorted(self.terms.items(), reverse=True)]
        return "Poly(" + " + ".join(parts) + ")"

    def degree(self, i: int) -> int:
        return max((m[i] for m in self.terms), default=-1)

    def compose(self, subs: Sequence["Poly"]) -> "Poly":
        """Substitute ``subs[i]`` for variable ``i``; all substitutes share one ring."""
        if len(subs) != self.nvars:
            raise ValueError("need one substitute per variable")
        nv = subs[0].nvars
        powers = [[Poly.const(nv, 1)] for _ in subs]
        out = Poly(nv)
        for m, c in self.terms.items():
            term = Poly.const(nv, c)
            for i, e in enumerate(m):
                while len(powers[i]) <= e:
                    powers[i].append(powers[i][-1] * subs[i])
                term = term * powers[i][e]
            out = out + term
        return out

    def __call__(self, *values):
        """Evaluate at numbers (``Fraction``, ``int``, ``complex`` all work)."""
        if len(values) != self.nvars:
            raise ValueError("wrong number of arguments")
        total = 0
        for m, c in self.terms.items():
            t = c
            for v, e in zip(values, m):
                if e:
                    t = t * v**e
            total = total + t
        return total


@functools.lru_cache(maxsize=None)
def bernoulli_numbers(n: int) -> tuple[Fraction, ...]:
    """``B_0..B_n`` with the convention ``B_1 = -1/2`` (coefficients of ``t/(e^t-1)``)."""
    b = [Fraction(1)]
    for m in range(1, n + 1):
        b.append(-sum(math.comb(m + 1, k) * b[k] for k in range(m)) / (m + 1))
    return tuple(b)


def _series_mul(f: list[Poly], g: list[Poly], order: int) -> list[Poly]:
    nv = f[0].nvars
    out = [Poly(nv) for _ in range(order + 1)]
    for i, fi in enumerate(f):
        if not fi:
            continue
        for j in range(order + 1 - i):
            if g[j]:
                out[i + j] = out[i + j] + fi * g[j]
    return out


@dataclass(frozen=True, eq=False)
class MultiBernoulli:
    """``B_{r,n}`` stored through its numerator ``B_{r,n} * x_1 ... x_r``.

    Variables of ``numerator`` are ordered ``(w, x_1, ..., x_r)``.
    """

    r: int
    n: int
    numerator: Poly

    def __eq__(self, other) -> bool:
        return (isinstance(other, MultiBernoulli)
                and (self.r, self.n) == (other.r, other.n)
                and self.numerator == other.numerator)

    def __hash__(self) -> int:
        return hash((self.r, self.n, self.numerator))

    @property
    def coefficients(self) -> dict[Monomial, Fraction]:
        """Laurent coefficients of ``B_{r,n}`` itself (x-exponents may be -1)."""
        return {(m[0],) + tuple(e - 1 for e in m[1:]): c for m, c in self.numerator.terms.items()}

    def __call__(self, w, x: Sequence):
        return self.evaluate(w, x)

    def evaluate(self, w, x: Sequence):
        if len(x) != self.r:
            raise ValueError(f"expected {self.r} x-arguments")
        if any(v == 0 for v in x):
            raise ZeroDivisionError("multiple Bernoulli polynomial needs all x_i nonzero")
        den = 1
        for v in x:
            den = den * v
        return self.numerator(w, *x) / den

    def w_coefficients(self, x: Sequence) -> list:
        """Coefficients ``c_k`` with ``B_{r,n}(w, x) = sum_k c_k w^k``."""
        den = 1
        for v in x:
            den = den * v
        out = [0] * (self.n + 1)
        for m, c in self.numerator.terms.items():
            t = c
            for v, e in zip(x, m[1:]):
                if e:
                    t = t * v**e
            out[m[0]] = out[m[0]] + t
        return [c / den for c in out]

    def to_table(self) -> list[dict]:
        """Monomial table with exact fraction strings, for serialisation."""
        names = ["w"] + [f"x{i + 1}" for i in range(self.r)]
        rows = []
        for m, c in sorted(self.coefficients.items(), reverse=True):
            rows.append({"exponents": dict(zip(names, m)), "coefficient": str(c)})
        return rows


@functools.lru_cache(maxsize=None)
def multi_bernoulli(r: int, n: int) -> MultiBernoulli:
    if r < 0 or n < 0:
        raise ValueError("need r >= 0 and n >= 0")
    nv = r + 1
    gens = Poly.gens(nv)
    b = bernoulli_numbers(n)
    # e^{wt}
    series = [gens[0] ** k * Fraction(1, math.factorial(k)) for k in range(n + 1)]
    for j in range(1, r + 1):
        factor = [gens[j] ** k * (b[k] / math.factorial(k)) for k in range(n + 1)]
        series = _series_mul(series, factor, n)
    return MultiBernoulli(r, n, series[n] * math.factorial(n))


P2 = multi_bernoulli(2, 2)
P3 = multi_bernoulli(3, 3)
R3 = multi_bernoulli(2, 3)
B12 = multi_bernoulli(1, 2)


def _drop(p: Poly, i: int) -> Poly:
    """Embed a polynomial in ``(w, x without x_i)`` into ``(w, x_1..x_r)``."""
    nv = p.nvars + 1
    g = Poly.gens(nv)
    return p.compose([g[k] for k in range(nv) if k != i])


def difference_sides(r: int, n: int, i: int) -> tuple[Poly, Poly]:
    """Both sides of the shift identity in the cleared form.

    Left: ``N_{r,n}(w + x_i, x) - N_{r,n}(w, x)``; right:
    ``n x_i N_{r-1,n-1}(w, x without x_i)``, where ``N = B * prod x``.
    Here ``i`` is 1-based.
    """
    if r < 1 or n < 1 or not 1 <= i <= r:
        raise ValueError("need r >= 1, n >= 1 and 1 <= i <= r")
    g = Poly.gens(r + 1)
    num = multi_bernoulli(r, n).numerator
    lhs = num.compose([g[0] + g[i]] + g[1:]) - num
    rhs = n * g[i] * _drop(multi_bernoulli(r - 1, n - 1).numerator, i)
    return lhs, rhs


def check_difference(r: int, n: int, i: int, literal: bool = False) -> bool:
    """Exact test of ``B_{r,n}(w+x_i) - B_{r,n}(w) = n B_{r-1,n-1}(w, x^i)``.

    With ``literal=True`` the factor ``n`` is dropped, which is only
    correct for ``n = 1``.
    """
    lhs, rhs = difference_sides(r, n, i)
    if literal:
        g = Poly.gens(r + 1)
        rhs = g[i] * _drop(multi_bernoulli(r - 1, n - 1).numerator, i)
    return lhs == rhs


def subdivision_identity(r: int, n: int, m: int) -> bool:
    """Exact test of ``B_{r,n}(w, x) = sum_{j<m} B_{r,n}(w + j x_1, m x_1, x_2, ...)``."""
    if r < 1 or m < 1:
        raise ValueError("need r >= 1 and m >= 1")
    g = Poly.gens(r + 1)
    num = multi_bernoulli(r, n).numerator
    total = Poly(r + 1)
    for j in range(m):
        total = total + num.compose([g[0] + j * g[1], m * g[1]] + g[2:])
    # the right side has denominator m x_1 ... x_r
    return total == m * num


def is_symmetric(p: MultiBernoulli) -> bool:
    terms = p.numerator.terms
    for perm in itertools.permutations(range(p.r)):
        for m, c in terms.items():
            pm = (m[0],) + tuple(m[1 + k] for k in perm)
            if terms.get(pm) != c:
                return False
    return True


def poly_from_terms(nvars: int, terms: Iterable[tuple[Monomial, object]]) -> Poly:
    return Poly(nvars, dict(terms))
