"""Gamma functions of wedges, theta products and the gerbe cocycle.

Points are passed as ``(w, x)`` with ``w`` complex and ``x`` a complex triple.
Every function here is invariant under ``(w, x) -> (lambda w, lambda x)``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from . import lattice as L
from .bernoulli import P3
from .lattice import Framing, GroupElement, LatticeError, Vec, pair
from .special import (
    DEFAULT_POLICY,
    TWO_PI_I,
    DomainError,
    PoleZeroError,
    TruncationPolicy,
    elliptic_gamma,
    theta0,
)


def _require_domain(a: Vec, x) -> None:
    if not L.in_domain(a, x):
        raise DomainError(f"x is not in the domain of {a}")


# --------------------------------------------------------------------------
# gamma functions of wedges

def wedge_gamma_factors(a, b, w: complex, x) -> list[tuple[complex, complex, complex]]:
    """Arguments ``(z, tau, sigma)`` of the elliptic gammas whose product is ``Gamma_{a,b}``."""
    wd = L.wedge(L.vec(a), L.vec(b))
    alpha, beta = wd.complements
    gx = pair(wd.gamma, x)
    tau, sigma = pair(alpha, x) / gx, pair(beta, x) / gx
    return [((w + pair(d, x)) / gx, tau, sigma) for d in wd.fundamental_set]


def wedge_gamma(a, b, w: complex, x, pol: TruncationPolicy = DEFAULT_POLICY,
                check_domain: bool = True) -> complex:
    """``Gamma_{a,b}(w, x)`` as a product of ``mod(a, b)`` elliptic gammas."""
    a, b = L.vec(a), L.vec(b)
    w = complex(w)
    x = tuple(complex(c) for c in x)
    if check_domain:
        _require_domain(a, x)
        _require_domain(b, x)
    if a == b:
        return 1 + 0j
    if L.wedge(a, b).modulus == 0:
        raise DomainError("the domains of a and -a do not meet")
    out = 1 + 0j
    for z, tau, sigma in wedge_gamma_factors(a, b, w, x):
        out *= elliptic_gamma(z, tau, sigma, pol)
    return out


def cone_classes(a, b, w: complex, x, cutoff: float = 1e-16):
    """Representatives of the cone classes ``C_{+-}`` and ``C_{-+}`` modulo ``Z gamma``.

    Classes correspond to pairs ``(p, q) = (d(a), d(b))`` with ``q = r p mod s``.
    Only classes whose factor exceeds ``cutoff`` in modulus are listed.
    Returns two integer arrays of shape (n, 3).
    """
    wd = L.wedge(L.vec(a), L.vec(b))
    nf = wd.normal_form
    alpha, beta = wd.complements
    gx = pair(wd.gamma, x)
    tau_i = (pair(alpha, x) / gx).imag
    sig_i = (pair(beta, x) / gx).imag
    if not (tau_i < 0 < sig_i):
        raise DomainError("x is not in the intersection of the two domains")
    s, r = nf.s, nf.r
    # |factor| = exp(2 pi (p Im tau + q Im sigma)/s + 2 pi Im(w / gamma(x)) * sign)
    reach = (-math.log(cutoff) / (2 * math.pi) + abs((w / gx).imag) + 1) * s
    pmax = int(reach / -tau_i) + 2
    qmax = int(reach / sig_i) + 2
    ps = np.arange(-pmax, pmax + 1)
    qs = np.arange(-qmax, qmax + 1)
    P, Q = np.meshgrid(ps, qs, indexing="ij")
    P, Q = P.ravel(), Q.ravel()
    keep = ((Q - r * P) % s == 0) & (P * -tau_i + np.abs(Q) * sig_i <= reach)
    # classes with p = q = 0 belong to neither cone
    plus_minus = keep & (P > 0) & (Q <= 0)
    minus_plus = keep & (P <= 0) & (Q > 0)
    g = np.array(nf.g, dtype=object)

    def lift(mask):
        p, q = P[mask], Q[mask]
        coords = np.stack([p, (q - r * p) // s, np.zeros_like(p)], axis=1).astype(object)
        return np.array((coords @ g).tolist(), dtype=np.int64).reshape(-1, 3)

    return lift(plus_minus), lift(minus_plus)


def wedge_gamma_direct(a, b, w: complex, x, cutoff: float = 1e-16) -> complex:
    """Brute-force ``Gamma_{a,b}`` as a product over lattice points of two cones."""
    a, b = L.vec(a), L.vec(b)
    w = complex(w)
    x = tuple(complex(c) for c in x)
    _require_domain(a, x)
    _require_domain(b, x)
    if a == b:
        return 1 + 0j
    gx = pair(L.wedge(a, b).gamma, x)
    pm, mp = cone_classes(a, b, w, x, cutoff)
    xv = np.array(x)
    num = 1 - np.exp(-TWO_PI_I * (pm @ xv - w) / gx)
    den = 1 - np.exp(TWO_PI_I * (mp @ xv - w) / gx)
    if np.any(np.abs(den) < 1e-13):
        raise PoleZeroError("pole", ())
    return complex(np.exp(np.sum(np.log(num)) - np.sum(np.log(den))))


# --------------------------------------------------------------------------
# theta products attached to a framing

def delta_factors(a, mu, w: complex, x, framing: Framing = L.STANDARD_FRAMING):
    """``(exponent, z, tau)`` for each theta factor of ``Delta_a(mu)``."""
    a1, a2, a3 = framing(a)
    x1, x2, x3 = pair(a1, x), pair(a2, x), pair(a3, x)
    m = pair(L.vec(mu), L.vec(a))
    tau = x2 / x3
    if m >= 0:
        return [(1, (w + j * x1) / x3, tau) for j in range(m)]
    return [(-1, (w + j * x1) / x3, tau) for j in range(m, 0)]


def delta(a, mu, w: complex, x, framing: Framing = L.STANDARD_FRAMING,
          pol: TruncationPolicy = DEFAULT_POLICY, check_domain: bool = True) -> complex:
    """``Delta_a(mu; w, x)``, a product of ``mu(a)`` theta functions (reciprocals if negative)."""
    a = L.vec(a)
    w = complex(w)
    x = tuple(complex(c) for c in x)
    if check_domain:
        _require_domain(a, x)
    out = 1 + 0j
    for e, z, tau in delta_factors(a, mu, w, x, framing):
        t = theta0(z, tau, pol)
        if e < 0 and t == 0:
            raise PoleZeroError("pole", ())
        out = out * t if e > 0 else out / t
    return out


def delta_group(a, el: GroupElement, w: complex, x, framing: Framing = L.STANDARD_FRAMING,
                pol: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """``Delta_a((g, mu)) = Delta_a(mu o g^-1)``."""
    return delta(a, L.pullback(el.mu, L.inverse(el.g)), w, x, framing, pol)


def poly_Pa(a, mu, nu, w, x, framing: Framing = L.STANDARD_FRAMING):
    """Exponent with ``Delta_a(mu+nu) = e^{2 pi i P} Delta_a(mu) Delta_a(nu; w + mu(x))``.

    Exact when ``w`` and ``x`` are rational.
    """
    basis = framing(a)
    m = L.framing_coordinates(basis, mu)
    n = L.framing_coordinates(basis, nu)
    x1, x2, x3 = (pair(v, x) for v in basis)
    half = Fraction(1, 2)
    return (n[0] * m[1]) * (w + (2 * m[0] + n[0] - 1) * half * x1
                            + (m[1] - 1) * half * x2 + half * x3) / x3


def translation_coboundary(a, lam, mu, nu, w, x, framing: Framing = L.STANDARD_FRAMING):
    """Alternating sum ``P(mu,nu; w+lam(x)) - P(lam+mu,nu) + P(lam,mu+nu) - P(lam,mu)``.

    Its vanishing modulo integers is the cocycle property of the translation
    part of the cocycle.
    """
    P = poly_Pa
    return (P(a, mu, nu, w + pair(lam, x), x, framing)
            - P(a, L.add(lam, mu), nu, w, x, framing)
            + P(a, lam, L.add(mu, nu), w, x, framing)
            - P(a, lam, mu, w, x, framing))


def phi_a_translation(a, mu, nu, w, x, framing: Framing = L.STANDARD_FRAMING) -> complex:
    """Closed form ``exp(-2 pi i P_a(mu, nu))`` on pairs of translations."""
    return cmath.exp(-TWO_PI_I * complex(poly_Pa(a, mu, nu, w, x, framing)))


# --------------------------------------------------------------------------
# the cubic P_{a,b,c}

@dataclass(frozen=True)
class PolyPabc:
    """``P_{a,b,c}`` as a sum of shifted copies of ``P_3``.

    ``terms`` lists ``(sign, shift, (alpha, beta, gamma))``: each contributes
    ``sign * P_3(w + shift(x), alpha(x), beta(x), gamma(x))``.
    """

    triple: tuple[Vec, Vec, Vec]
    terms: tuple

    def w_coefficients(self, x) -> list:
        """Coefficients of ``w^0 .. w^3`` at the point ``x``."""
        out = [0, 0, 0, 0]
        for sign, d, (al, be, ga) in self.terms:
            c = P3.w_coefficients([pair(al, x), pair(be, x), pair(ga, x)])
            s = pair(d, x)
            # expand c_k (w + s)^k
            for k, ck in enumerate(c):
                for j in range(k + 1):
                    out[j] = out[j] + sign * ck * math.comb(k, j) * s ** (k - j)
        return out

    def __call__(self, w, x):
        c = self.w_coefficients(x)
        return ((c[3] * w + c[2]) * w + c[1]) * w + c[0]

    @property
    def is_zero(self) -> bool:
        return not self.terms


def poly_Pabc(a, b, c) -> PolyPabc:
    a, b, c = L.vec(a), L.vec(b), L.vec(c)
    for v in (a, b, c):
        if not L.is_primitive(v):
            raise LatticeError(f"{v} is not primitive")
    dt = L.det3(a, b, c)
    if dt == 0:
        return PolyPabc((a, b, c), ())
    if dt < 0:
        inner = poly_Pabc(b, a, c)
        return PolyPabc((a, b, c), tuple((-s, d, v) for s, d, v in inner.terms))
    alpha, _ = L.direction_vector(b, c)
    beta, _ = L.direction_vector(c, a)
    gamma, _ = L.direction_vector(a, b)
    terms = tuple((1, d, (alpha, beta, gamma)) for d in L.fundamental_set3(a, b, c))
    return PolyPabc((a, b, c), terms)


def cocycle_phi_abc(a, b, c, w: complex, x) -> complex:
    """``exp(-(pi i / 3) P_{a,b,c}(w, x))``."""
    p = poly_Pabc(a, b, c)
    if p.is_zero:
        return 1 + 0j
    x = tuple(complex(v) for v in x)
    return cmath.exp(-1j * math.pi / 3 * p(complex(w), x))


def three_term_sides(a, b, c, w, x, pol: TruncationPolicy = DEFAULT_POLICY):
    """``Gamma_{a,b} Gamma_{b,c}`` versus ``phi_{a,b,c} Gamma_{a,c}``."""
    lhs = wedge_gamma(a, b, w, x, pol) * wedge_gamma(b, c, w, x, pol)
    rhs = cocycle_phi_abc(a, b, c, w, x) * wedge_gamma(a, c, w, x, pol)
    return lhs, rhs


# --------------------------------------------------------------------------
# ratio-defined cocycle components

def cocycle_phi_ab(a, b, el: GroupElement, w: complex, x, framing: Framing = L.STANDARD_FRAMING,
                   pol: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """``Delta_a(g) Gamma_{a,b} / (Gamma_{g^-1 a, g^-1 b}(g^-1 y) Delta_b(g))``."""
    a, b = L.vec(a), L.vec(b)
    inv = el.inverse()
    w2, x2 = inv.act(w, x)
    num = delta_group(a, el, w, x, framing, pol) * wedge_gamma(a, b, w, x, pol)
    den = (wedge_gamma(inv.act_vector(a), inv.act_vector(b), w2, x2, pol)
           * delta_group(b, el, w, x, framing, pol))
    return num / den


def cocycle_phi_a(a, el1: GroupElement, el2: GroupElement, w: complex, x,
                  framing: Framing = L.STANDARD_FRAMING,
                  pol: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """``Delta_a(g) Delta_{g^-1 a}(h; g^-1 y) / Delta_a(gh)``."""
    a = L.vec(a)
    w2, x2 = el1.inverse().act(w, x)
    a2 = el1.inverse().act_vector(a)
    num = (delta_group(a, el1, w, x, framing, pol)
           * delta_group(a2, el2, w2, x2, framing, pol))
    return num / delta_group(a, el1 @ el2, w, x, framing, pol)


def exp_quadratic_deviation(f: Callable[[complex], complex], w0: complex, h: complex,
                            ts: Sequence[int] = tuple(range(-10, 0)) + tuple(range(3, 13))) -> float:
    """Test that ``f(w0 + t h)`` is the exponential of a polynomial of degree <= 2 in ``t``.

    The values at ``t = 0, 1, 2`` determine the candidate; integer Lagrange
    weights make the prediction independent of logarithm branches.  Returns
    the largest relative deviation over ``ts``.
    """
    logs = [cmath.log(f(w0 + k * h)) for k in range(3)]
    worst = 0.0
    for t in ts:
        l0 = (t - 1) * (t - 2) // 2
        l1 = -t * (t - 2)
        l2 = t * (t - 1) // 2
        pred = l0 * logs[0] + l1 * logs[1] + l2 * logs[2]
        actual = cmath.log(f(w0 + t * h))
        worst = max(worst, abs(cmath.exp(pred - actual) - 1))
    return worst
