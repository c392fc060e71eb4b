"""Theta function, elliptic gamma functions and their modular multipliers.

All infinite products are of the form

    prod_{m in N^k} (1 - exp(2 pi i (c + m . s)))^e,    Im s_i > 0,

and are evaluated by :func:`lattice_product`, which truncates to a box chosen
from a geometric bound on the neglected tail of the logarithm.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

TWO_PI_I = 2j * math.pi
POLE_ZERO_EPS = 1e-13


class DomainError(ValueError):
    """Arguments outside the domain where a product is defined."""


class TruncationError(RuntimeError):
    """The truncation box needed for the requested tolerance is too large."""


class PoleZeroError(ArithmeticError):
    """A factor of a product vanishes (to within ``POLE_ZERO_EPS``).

    ``kind`` is ``"zero"`` when the factor sits in a numerator and ``"pole"``
    when it sits in a denominator; ``index`` is the lattice index of the factor.
    """

    def __init__(self, kind: str, index: tuple[int, ...]):
        super().__init__(f"{kind} of a product at index {index}")
        self.kind = kind
        self.index = index


@dataclass(frozen=True)
class TruncationPolicy:
    tol: float = 1e-15
    max_terms: int = 4_000_000

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.max_terms < 1:
            raise ValueError("max_terms must be positive")


DEFAULT_POLICY = TruncationPolicy()


@dataclass(frozen=True)
class Factor:
    """``prod_m (1 - exp(2 pi i (c + m . steps)))^exponent`` over ``m in N^k``."""

    c: complex
    steps: tuple[complex, ...]
    exponent: int = 1

    def inverted(self) -> "Factor":
        return Factor(self.c, self.steps, -self.exponent)


def _frac(z: complex) -> complex:
    # exp(2 pi i z) only sees Re z mod 1
    return complex(z.real - math.floor(z.real), z.imag)


def _box(f: Factor, pol: TruncationPolicy) -> tuple[list[int], float]:
    """Box sizes and a bound on the log of the omitted part of the product."""
    rs = []
    for s in f.steps:
        if not s.imag > 0:
            raise DomainError("product steps need positive imaginary part")
        rs.append(math.exp(-2 * math.pi * s.imag))
    u0 = math.exp(-2 * math.pi * f.c.imag)
    k = len(rs)
    if k == 0:
        return [], 0.0
    inv = [1.0 / (1.0 - r) for r in rs]
    allinv = math.prod(inv)
    share = pol.tol / k
    sizes = []
    for r, iv in zip(rs, inv):
        # u0 r^J / (1-r) * prod 1/(1-r_l) <= share / 2, and u0 r^J <= 1/2
        target = min(share / (2 * allinv), 0.5 * (1 - r) / iv)
        need = math.log(target / u0) / math.log(r) if u0 > target else 0.0
        sizes.append(max(1, int(math.ceil(need)) + 1))
    while True:
        out_max = max(u0 * r**j for r, j in zip(rs, sizes))
        tail = sum(u0 * r**j * iv for r, j, iv in zip(rs, sizes, inv)) * allinv
        if out_max <= 0.5:
            bound = tail / (1.0 - out_max)
            if bound <= pol.tol:
                return sizes, bound
        sizes = [j + 1 for j in sizes]


def lattice_product(factors: Sequence[Factor], pol: TruncationPolicy = DEFAULT_POLICY,
                    full_output: bool = False):
    """Evaluate a product of :class:`Factor` terms.

    A vanishing numerator factor makes the value exactly zero; a vanishing
    denominator factor raises :class:`PoleZeroError`.
    """
    log_sum = 0j
    bound = 0.0
    zero_at = None
    for f in factors:
        f = Factor(_frac(complex(f.c)), tuple(_frac(complex(s)) for s in f.steps), f.exponent)
        sizes, b = _box(f, pol)
        n = math.prod(sizes)
        if n > pol.max_terms:
            raise TruncationError(f"needs {n} terms, cap is {pol.max_terms}")
        bound += abs(f.exponent) * b
        if sizes:
            grids = np.meshgrid(*[np.arange(j, dtype=float) for j in sizes], indexing="ij")
            arg = np.full(grids[0].shape, f.c, dtype=complex)
            for g, s in zip(grids, f.steps):
                arg = arg + g * s
        else:
            arg = np.array([f.c])
        one_minus = 1.0 - np.exp(TWO_PI_I * arg)
        small = np.abs(one_minus) < POLE_ZERO_EPS
        if small.any():
            idx = tuple(int(i) for i in np.argwhere(small)[0])
            if f.exponent < 0:
                raise PoleZeroError("pole", idx)
            zero_at = idx
            continue
        log_sum += f.exponent * np.sum(np.log(one_minus))
    value = 0j if zero_at is not None else cmath.exp(log_sum)
    return (value, bound) if full_output else value


def _check_nonreal(*taus: complex) -> None:
    for t in taus:
        if complex(t).imag == 0:
            raise DomainError("modular parameters must have nonzero imaginary part")


# --------------------------------------------------------------------------
# theta

def theta_factors(z: complex, tau: complex) -> list[Factor]:
    z, tau = complex(z), complex(tau)
    _check_nonreal(tau)
    if tau.imag > 0:
        return [Factor(tau - z, (tau,)), Factor(z, (tau,))]
    # theta0(z, tau) = 1 / theta0(-z, -tau)
    return [f.inverted() for f in theta_factors(-z, -tau)]


def theta0(z: complex, tau: complex, pol: TruncationPolicy = DEFAULT_POLICY,
           full_output: bool = False):
    """``theta0(z, tau) = prod_j (1 - e^{2 pi i((j+1) tau - z)})(1 - e^{2 pi i(j tau + z)})``."""
    return lattice_product(theta_factors(z, tau), pol, full_output)


# --------------------------------------------------------------------------
# elliptic gamma

def gamma_factors(z: complex, tau: complex, sigma: complex) -> list[Factor]:
    z, tau, sigma = complex(z), complex(tau), complex(sigma)
    _check_nonreal(tau, sigma)
    if tau.imag > 0 and sigma.imag > 0:
        return [Factor(tau + sigma - z, (tau, sigma)), Factor(z, (tau, sigma), -1)]
    if tau.imag < 0 and sigma.imag > 0:
        return [Factor(z - tau, (-tau, sigma)), Factor(sigma - z, (-tau, sigma), -1)]
    if tau.imag > 0 and sigma.imag < 0:
        return gamma_factors(z, sigma, tau)
    # both negative: Gamma(z, tau, sigma) = Gamma(z - tau - sigma, -tau, -sigma)
    return gamma_factors(z - tau - sigma, -tau, -sigma)


def elliptic_gamma(z: complex, tau: complex, sigma: complex,
                   pol: TruncationPolicy = DEFAULT_POLICY, full_output: bool = False):
    """Elliptic gamma function on all four sign chambers of ``(Im tau, Im sigma)``."""
    return lattice_product(gamma_factors(z, tau, sigma), pol, full_output)


def elliptic_gamma_reflected(z: complex, tau: complex, sigma: complex,
                             pol: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """Gamma via the reflection rules only, never the mixed-chamber product.

    Independent route used to cross-check :func:`elliptic_gamma`.
    """
    z, tau, sigma = complex(z), complex(tau), complex(sigma)
    _check_nonreal(tau, sigma)
    if tau.imag > 0 and sigma.imag > 0:
        return elliptic_gamma(z, tau, sigma, pol)
    if tau.imag < 0:
        return 1 / elliptic_gamma_reflected(z - tau, -tau, sigma, pol)
    return 1 / elliptic_gamma_reflected(z - sigma, tau, -sigma, pol)


def multiple_gamma(n: int, z: complex, taus: Sequence[complex],
                   pol: TruncationPolicy = DEFAULT_POLICY, full_output: bool = False):
    """Multiple elliptic gamma ``G_n(z, tau_0..tau_n)``, all ``Im tau_i > 0``."""
    taus = tuple(complex(t) for t in taus)
    if n < 0 or len(taus) != n + 1:
        raise ValueError("G_n takes n + 1 modular parameters")
    if any(t.imag <= 0 for t in taus):
        raise DomainError("multiple gamma is only implemented for Im tau_i > 0")
    z = complex(z)
    factors = [Factor(sum(taus) - z, taus), Factor(z, taus, (-1) ** n)]
    return lattice_product(factors, pol, full_output)


def narukawa_sides(r: int, w: complex, x: Sequence[complex],
                   pol: TruncationPolicy = DEFAULT_POLICY) -> tuple[complex, complex]:
    """``prod_k G_{r-2}(w/x_k, (x_j/x_k)_{j != k})`` versus ``exp(-2 pi i B_{r,r}(w,x)/r!)``.

    The parameters after ``x_k`` are taken in cyclic order.  Only ``r = 2, 3``
    are supported, since only ``G_0`` and ``G_1`` extend beyond the upper
    half-planes.
    """
    from .bernoulli import multi_bernoulli

    if r not in (2, 3):
        raise ValueError("only r = 2 and r = 3 are supported")
    w = complex(w)
    x = [complex(v) for v in x]
    lhs = 1 + 0j
    for k in range(r):
        others = [x[(k + j) % r] / x[k] for j in range(1, r)]
        if r == 2:
            lhs *= theta0(w / x[k], others[0], pol)
        else:
            lhs *= elliptic_gamma(w / x[k], others[0], others[1], pol)
    rhs = cmath.exp(-TWO_PI_I * multi_bernoulli(r, r).evaluate(w, x) / math.factorial(r))
    return lhs, rhs


def narukawa_check(r: int, w: complex, x: Sequence[complex],
                   pol: TruncationPolicy = DEFAULT_POLICY) -> float:
    """Relative deviation between the two sides of :func:`narukawa_sides`."""
    lhs, rhs = narukawa_sides(r, w, x, pol)
    return relative_deviation(lhs, rhs)


def relative_deviation(lhs: complex, rhs: complex) -> float:
    scale = max(abs(lhs), abs(rhs))
    return abs(lhs - rhs) / scale if scale else 0.0


# --------------------------------------------------------------------------
# SL(2, Z) multipliers

SL2 = tuple[tuple[int, int], tuple[int, int]]
S_MATRIX: SL2 = ((0, -1), (1, 0))
T_MATRIX: SL2 = ((1, 1), (0, 1))


def _mul2(g: SL2, h: SL2) -> SL2:
    (a, b), (c, d) = g
    (e, f), (p, q) = h
    return ((a * e + b * p, a * f + b * q), (c * e + d * p, c * f + d * q))


def sl2_inverse(g: SL2) -> SL2:
    (a, b), (c, d) = g
    if a * d - b * c != 1:
        raise ValueError("matrix is not in SL(2, Z)")
    return ((d, -b), (-c, a))


def sl2_word(g: SL2) -> list[tuple[str, int]]:
    """Write ``g`` as a word in ``S``, ``T^k`` and ``-I`` (Euclid on the bottom row).

    Returns a list like ``[("T", 2), ("S", 1), ("T", -1), ("-I", 1)]`` whose
    ordered product is ``g``.
    """
    (a, b), (c, d) = g
    if a * d - b * c != 1:
        raise ValueError("matrix is not in SL(2, Z)")
    word: list[tuple[str, int]] = []
    h = ((a, b), (c, d))
    while h[1][0] != 0:
        (a, b), (c, d) = h
        q = a // c
        if q:
            word.append(("T", q))
        # h = T^q S h'  with  h' = S^{-1} T^{-q} h
        word.append(("S", 1))
        a2, b2 = a - q * c, b - q * d
        h = ((c, d), (-a2, -b2))
    (a, b), (_, d) = h
    if a == -1:
        word.append(("-I", 1))
        b = -b
    if b:
        word.append(("T", b))
    return word


def word_product(word: Sequence[tuple[str, int]]) -> SL2:
    out: SL2 = ((1, 0), (0, 1))
    for sym, k in word:
        if sym == "S":
            out = _mul2(out, S_MATRIX)
        elif sym == "T":
            out = _mul2(out, ((1, k), (0, 1)))
        else:
            out = _mul2(out, ((-1, 0), (0, -1)))
    return out


def n_value(g: SL2) -> int:
    """The homomorphism SL(2, Z) -> Z/12 with ``T -> 1`` and ``S -> -3``."""
    total = 0
    for sym, k in sl2_word(g):
        total += {"S": -3, "T": k, "-I": 6}[sym]
    return total % 12


def q_polynomial(g: SL2, z: complex, tau: complex) -> complex:
    """Exponent ``Q`` with ``theta0(g^-1 (z, tau)) = exp(pi i Q) theta0(z, tau)``.

    Here ``g^-1 = ((a, b), (c, d))`` acts by ``(z, tau) -> (z, a tau + b) / (c tau + d)``.
    """
    (a, b), (c, d) = sl2_inverse(g)
    j = c * tau + d
    if j == 0:
        raise DomainError("c tau + d vanishes")
    return (c * z * z / j + z / j - z - (a * tau + b) / (6 * j) + tau / 6
            - n_value(g) / 6)


def act_sl2(g: SL2, z: complex, tau: complex) -> tuple[complex, complex]:
    """``g . (z, tau) = (z, a tau + b) / (c tau + d)`` for ``g = ((a, b), (c, d))``."""
    (a, b), (c, d) = g
    j = c * tau + d
    if j == 0:
        raise DomainError("c tau + d vanishes")
    return z / j, (a * tau + b) / j


def theta_multiplier(g: SL2, z: complex, tau: complex) -> complex:
    """``phi`` with ``theta0(z, tau) = phi * theta0(g^-1 (z, tau))``."""
    _check_nonreal(complex(tau))
    return cmath.exp(-1j * math.pi * q_polynomial(g, complex(z), complex(tau)))


def translation_multiplier(m: int, z: complex, tau: complex) -> complex:
    """``phi`` with ``theta0(z, tau) = phi * theta0(z + m tau + n, tau)`` for any integer ``n``."""
    return cmath.exp(TWO_PI_I * m * z + 1j * math.pi * m * (m - 1) * tau + 1j * math.pi * m)
