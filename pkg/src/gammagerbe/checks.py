"""Registry of identity checks.

Each check draws one configuration from a :class:`~gammagerbe.sampling.Stream`
and returns a list of items, each either a ``(lhs, rhs)`` pair or a
:class:`Dev` carrying precomputed deviations.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from . import bernoulli as B
from . import hermitian as H
from . import lattice as L
from . import special as S
from . import wedge as W
from .lattice import E1, E2, E3, GroupElement, pair
from .sampling import (
    Resample,
    Stream,
    point_in_domains,
    random_group_element,
    random_primitive,
    random_sl2,
    random_sl3,
    wedge_with_modulus,
)


@dataclass(frozen=True)
class Dev:
    abs: float
    rel: float


def exact(ok: bool) -> Dev:
    return Dev(0.0, 0.0) if ok else Dev(1.0, 1.0)


@dataclass(frozen=True)
class IdentitySpec:
    name: str
    description: str
    evaluate: Callable[[Stream], list]
    samples: int = 20
    tol: float = 1e-8


REGISTRY: dict[str, IdentitySpec] = {}


def register(name: str, description: str, samples: int = 20, tol: float = 1e-8):
    def deco(fn):
        if name in REGISTRY:
            raise ValueError(f"duplicate check {name}")
        REGISTRY[name] = IdentitySpec(name, description, fn, samples, tol)
        return fn
    return deco


TWO_PI_I = S.TWO_PI_I


def _rational(st: Stream, lo: int = -9, hi: int = 9, nonzero: bool = False) -> Fraction:
    while True:
        v = Fraction(st.randint(lo, hi), st.randint(1, 6))
        if v or not nonzero:
            return v


def _nonreal_ratio(st: Stream, n: int) -> tuple:
    """``n`` complex numbers whose pairwise ratios are safely nonreal."""
    for _ in range(200):
        x = tuple(st.complex_normal() for _ in range(n))
        if all(abs((x[i] / x[j]).imag) >= 0.1 and abs(x[i] / x[j]) < 8
               for i in range(n) for j in range(n) if i != j):
            return x
    raise Resample("no generic point")


# --------------------------------------------------------------------------
# Bernoulli polynomials

def _reference_p2(w, x1, x2):
    return (w * w - (x1 + x2) * w + (x1 * x1 + x2 * x2 + 3 * x1 * x2) / 6) / (x1 * x2)


def _reference_p3(w, x1, x2, x3):
    p = x1 * x2 * x3
    s1 = x1 + x2 + x3
    return (w**3 / p - 3 * s1 / (2 * p) * w**2
            + (x1**2 + x2**2 + x3**2 + 3 * x1 * x2 + 3 * x2 * x3 + 3 * x1 * x3) / (2 * p) * w
            - Fraction(1, 4) * s1 * (1 / x1 + 1 / x2 + 1 / x3))


def _reference_r3(z, t, s):
    return (z**3 / (t * s) - Fraction(3, 2) * (1 / t + 1 / s) * z**2
            + (t / (2 * s) + s / (2 * t) + Fraction(3, 2)) * z - (t + s) / 4)


def _reference_b12(z, t):
    return z * z / t - z + t / 6


@register("bernoulli-closed-forms", "B_{2,2}, B_{3,3}, B_{2,3}, B_{1,2} against their closed forms (exact)",
          samples=20, tol=1e-300)
def _bernoulli_closed_forms(st):
    w = _rational(st)
    x = [_rational(st, nonzero=True) for _ in range(3)]
    return [
        (B.P2.evaluate(w, x[:2]), _reference_p2(w, *x[:2])),
        (B.P3.evaluate(w, x), _reference_p3(w, *x)),
        (B.R3.evaluate(w, x[:2]), _reference_r3(w, *x[:2])),
        (B.B12.evaluate(w, x[:1]), _reference_b12(w, x[0])),
    ]


@register("bernoulli-difference", "shift identity B_{r,n}(w+x_i)-B_{r,n}(w) = n B_{r-1,n-1}, r<=4, n<=5 (exact)",
          samples=20, tol=1e-300)
def _bernoulli_difference(st):
    r = st.randint(1, 4)
    n = st.randint(1, 5)
    i = st.randint(1, r)
    return [exact(B.check_difference(r, n, i))]


@register("bernoulli-subdivision", "distribution relation in the first period, r<=4, n<=5 (exact)",
          samples=20, tol=1e-300)
def _bernoulli_subdivision(st):
    return [exact(B.subdivision_identity(st.randint(1, 4), st.randint(0, 5), st.randint(1, 4)))]


@register("bernoulli-symmetry", "B_{r,n} symmetric in x and homogeneous of degree n-r", samples=10, tol=1e-12)
def _bernoulli_symmetry(st):
    r, n = st.randint(1, 4), st.randint(0, 6)
    p = B.multi_bernoulli(r, n)
    w = st.complex_normal()
    x = [st.complex_normal() for _ in range(r)]
    lam = st.scale()
    out = [exact(B.is_symmetric(p))]
    out.append((p.evaluate(lam * w, [lam * v for v in x]), lam ** (n - r) * p.evaluate(w, x)))
    return out


# --------------------------------------------------------------------------
# theta

@register("theta-functional", "theta0: periods, quasi-period, extension to Im tau < 0",
          samples=100, tol=1e-10)
def _theta_functional(st):
    z = st.complex_normal(0.4)
    tau = st.nonreal()
    th = S.theta0
    t = th(z, tau)
    if abs(t) < 1e-8:
        raise Resample("near a zero")
    return [
        (th(z + 1, tau), t),
        (th(z, tau + 1), t),
        (th(z + tau, tau), -cmath.exp(-TWO_PI_I * z) * t),
        (th(z, -tau) * th(-z, tau), 1),
        (th(z, -tau) * th(z + tau, tau), 1),
    ]


@register("theta-modular", "theta0(w/x2,x1/x2) theta0(w/x1,x2/x1) = exp(-pi i P_2(w,x))",
          samples=50, tol=1e-9)
def _theta_modular(st):
    x = _nonreal_ratio(st, 2)
    w = st.complex_normal(0.5) * abs(x[0])
    lhs = S.theta0(w / x[1], x[0] / x[1]) * S.theta0(w / x[0], x[1] / x[0])
    return [(lhs, cmath.exp(-1j * math.pi * B.P2.evaluate(w, x)))]


@register("theta-multiplier", "theta0(z,tau) = exp(-pi i Q(g;z,tau)) theta0(g^-1 (z,tau)) via S/T words",
          samples=50, tol=1e-9)
def _theta_multiplier(st):
    g = random_sl2(st, st.randint(1, 4))
    z = st.complex_normal(0.4)
    tau = st.nonreal(0.5, 1.5)
    z2, t2 = S.act_sl2(S.sl2_inverse(g), z, tau)
    if abs(t2.imag) < 0.02:
        raise Resample("image too close to the real axis")
    out = [exact(S.word_product(S.sl2_word(g)) == g)]
    out.append((S.theta0(z, tau), S.theta_multiplier(g, z, tau) * S.theta0(z2, t2)))
    m = st.randint(-3, 3)
    n = st.randint(-3, 3)
    out.append((S.theta0(z, tau), S.translation_multiplier(m, z, tau) * S.theta0(z + m * tau + n, tau)))
    return out


# --------------------------------------------------------------------------
# elliptic gamma

def _zts(st):
    return st.complex_normal(0.4), st.nonreal(), st.nonreal()


@register("gamma-difference", "Gamma(z+tau) = theta0(z,sigma) Gamma, Gamma(z+sigma) = theta0(z,tau) Gamma",
          samples=100)
def _gamma_difference(st):
    z, tau, sigma = _zts(st)
    G = S.elliptic_gamma
    g = G(z, tau, sigma)
    return [(G(z + tau, tau, sigma), S.theta0(z, sigma) * g),
            (G(z + sigma, tau, sigma), S.theta0(z, tau) * g)]


@register("gamma-symmetry", "Gamma symmetric in (tau, sigma) and 1-periodic in each argument", samples=100)
def _gamma_symmetry(st):
    z, tau, sigma = _zts(st)
    G = S.elliptic_gamma
    g = G(z, tau, sigma)
    return [(G(z, sigma, tau), g), (G(z + 1, tau, sigma), g),
            (G(z, tau + 1, sigma), g), (G(z, tau, sigma + 1), g)]


@register("gamma-reflection", "Gamma(z,tau,sigma) Gamma(-z,-sigma,-tau) = 1 and the extension rules",
          samples=100)
def _gamma_reflection(st):
    z, tau, sigma = _zts(st)
    G = S.elliptic_gamma
    g = G(z, tau, sigma)
    return [(g * G(-z, -sigma, -tau), 1),
            (g * G(z - tau, -tau, sigma), 1),
            (g * G(z - sigma, tau, -sigma), 1)]


@register("gamma-chambers", "mixed-chamber product agrees with the reflection rules", samples=100)
def _gamma_chambers(st):
    z, tau, sigma = _zts(st)
    return [(S.elliptic_gamma(z, tau, sigma), S.elliptic_gamma_reflected(z, tau, sigma))]


@register("gamma-three-term", "Gamma(z,tau,sigma) = Gamma(z,tau,tau+sigma) Gamma(z+sigma,tau+sigma,sigma)",
          samples=100)
def _gamma_three_term(st):
    z, tau, sigma = _zts(st)
    if abs((tau + sigma).imag) < 0.1:
        raise Resample("tau + sigma too close to the real axis")
    G = S.elliptic_gamma
    return [(G(z, tau, sigma), G(z, tau, tau + sigma) * G(z + sigma, tau + sigma, sigma))]


@register("gamma-modular", "cyclic product of three gammas = exp(-pi i P_3(w,x)/3)", samples=100)
def _gamma_modular(st):
    x = _nonreal_ratio(st, 3)
    w = st.complex_normal(0.5) * abs(x[0])
    lhs, rhs = S.narukawa_sides(3, w, x)
    return [(lhs, rhs)]


@register("multiple-gamma", "G_0 = theta0, G_1 = Gamma and the difference equation of G_1, G_2",
          samples=30)
def _multiple_gamma(st):
    z = st.complex_normal(0.4)
    taus = [st.upper(0.4, 1.2) for _ in range(3)]
    G = S.multiple_gamma
    out = [(G(0, z, taus[:1]), S.theta0(z, taus[0])),
           (G(1, z, taus[:2]), S.elliptic_gamma(z, *taus[:2]))]
    n = st.randint(1, 2)
    ts = taus[: n + 1]
    i = st.randint(0, n)
    rest = ts[:i] + ts[i + 1:]
    out.append((G(n, z + ts[i], ts), G(n - 1, z, rest) * G(n, z, ts)))
    return out


@register("narukawa", "prod_k G_{r-2}(w/x_k, x_j/x_k) = exp(-2 pi i B_{r,r}(w,x)/r!), r = 2, 3",
          samples=50)
def _narukawa(st):
    r = st.randint(2, 3)
    x = _nonreal_ratio(st, r)
    w = st.complex_normal(0.5) * abs(x[0])
    return [S.narukawa_sides(r, w, x)]


# --------------------------------------------------------------------------
# lattice

@register("lattice-invariants", "direction vector, normal form, complements and fundamental sets (exact)",
          samples=50, tol=1e-300)
def _lattice_invariants(st):
    a, b = random_primitive(st, 4), random_primitive(st, 4)
    wd = L.Wedge(a, b)
    out = []
    gam, s = wd.gamma, wd.modulus
    c = L.cross(a, b)
    out.append(exact(s == 0 if gam is None else c == L.scale(s, gam)))
    gba, sba = L.direction_vector(b, a)
    out.append(exact(sba == s and (gam is None or gba == L.neg(gam))))
    nf = wd.normal_form
    ga, gb = L.apply(nf.g, a), L.apply(nf.g, b)
    out.append(exact(L.det(nf.g) == 1 and ga == E1))
    if s == 0:
        out.append(exact(gb == (E1 if nf.kind == "parallel_plus" else L.neg(E1))))
        return out
    out.append(exact(gb == (nf.r, nf.s, 0) and 0 <= nf.r < nf.s and math.gcd(nf.r, nf.s) == 1))
    al, be = wd.complements
    out.append(exact(pair(al, b) == 0 and pair(be, a) == 0 and pair(al, a) == s and pair(be, b) == s))
    fs = wd.fundamental_set
    comp = nf.completion
    keys = {(pair(d, a), pair(d, b)) for d in fs}
    out.append(exact(len(fs) == s and len(keys) == s
                     and all(0 <= pair(d, a) < s and 0 <= pair(d, b) < s and pair(d, comp) == 0
                             for d in fs)))
    return out


@register("domain-invariance", "U_a is invariant under rescaling and moves with SL(3,Z) (exact)",
          samples=100, tol=1e-300)
def _domain_invariance(st):
    a = random_primitive(st)
    x = tuple(st.complex_normal() for _ in range(3))
    g = random_sl3(st)
    lam = st.scale()
    inside = L.in_domain(a, x)
    return [exact(L.in_domain(a, tuple(lam * c for c in x)) == inside),
            exact(L.in_domain(L.apply(g, a), L.apply(g, x)) == inside)]


@register("group-action", "(g,mu) acts on the left: act(gh, p) = act(g, act(h, p))", samples=100, tol=1e-12)
def _group_action(st):
    g, h = random_group_element(st), random_group_element(st)
    w = st.complex_normal()
    x = tuple(st.complex_normal() for _ in range(3))
    w1, x1 = (g @ h).act(w, x)
    w2, x2 = g.act(*h.act(w, x))
    wi, xi = g.inverse().act(*g.act(w, x))
    return [(w1, w2)] + list(zip(x1, x2)) + [(wi, w)] + list(zip(xi, x))


# --------------------------------------------------------------------------
# wedges

def _triple_sides(st, a, b, c):
    w, x = point_in_domains(st, (a, b, c))
    G = W.wedge_gamma
    lhs = G(a, b, w, x) * G(b, c, w, x) * G(c, a, w, x)
    return [(lhs, W.cocycle_phi_abc(a, b, c, w, x)), W.three_term_sides(a, b, c, w, x)]


@register("inversion", "Gamma_{a,b} Gamma_{b,a} = 1 and Gamma_{a,a} = 1", samples=50, tol=1e-9)
def _inversion(st):
    a = random_primitive(st, 2)
    b = random_primitive(st, 2)
    if L.wedge(a, b).modulus == 0:
        raise Resample("dependent pair")
    w, x = point_in_domains(st, (a, b))
    return [(W.wedge_gamma(a, b, w, x) * W.wedge_gamma(b, a, w, x), 1),
            (W.wedge_gamma(a, a, w, x), 1)]


@register("three-term-e1e2e3", "Gamma_{a,b} Gamma_{b,c} Gamma_{c,a} = exp(-pi i P_{a,b,c}/3) for (e1,e2,e3)",
          samples=50)
def _three_e123(st):
    return _triple_sides(st, E1, E2, E3)


@register("three-term-coplanar", "Gamma_{a,b} Gamma_{b,c} = Gamma_{a,c} for (e1, e1-e2, e2)", samples=50)
def _three_coplanar(st):
    return _triple_sides(st, E1, (1, -1, 0), E2)


@register("three-term-four-factor", "three-term relation for (e1, e1+2e2, e3), a four-factor relation",
          samples=50)
def _three_four(st):
    return _triple_sides(st, E1, (1, 2, 0), E3)


@register("three-term-random", "three-term relation for random SL(3,Z)-moved triples", samples=30)
def _three_random(st):
    g = random_sl3(st, 2)
    base = st.choice([(E1, E2, E3), (E1, (1, 2, 0), E3), (E1, (1, -1, 0), E2), ((1, 0, 0), (0, 1, 0), (1, 1, 3))])
    a, b, c = (L.apply(g, v) for v in base)
    if st.uniform() < 0.5:
        a, b = b, a
    return _triple_sides(st, a, b, c)


@register("wedge-oracle", "finite product for Gamma_{a,b} equals the direct cone product, moduli <= 3",
          samples=30)
def _wedge_oracle(st):
    a, b, _ = wedge_with_modulus(st, st.randint(1, 3))
    w, x = point_in_domains(st, (a, b))
    return [(W.wedge_gamma(a, b, w, x), W.wedge_gamma_direct(a, b, w, x))]


@register("wedge-equivariance", "Gamma_{ga,gb}(w,x) = Gamma_{a,b}(w,g^-1 x)", samples=30)
def _wedge_equivariance(st):
    a, b, _ = wedge_with_modulus(st, st.randint(1, 3))
    g = random_sl3(st, 2)
    ga, gb = L.apply(g, a), L.apply(g, b)
    w, x = point_in_domains(st, (ga, gb))
    return [(W.wedge_gamma(ga, gb, w, x), W.wedge_gamma(a, b, w, L.apply(L.inverse(g), x)))]


@register("pabc-exact", "P_{a,b,c}: equivariance, antisymmetry, leading term (exact)", samples=20,
          tol=1e-300)
def _pabc_exact(st):
    a, b, c = random_primitive(st, 2), random_primitive(st, 2), random_primitive(st, 2)
    g = random_sl3(st, 2)
    w = _rational(st)
    x = tuple(_rational(st, nonzero=True) for _ in range(3))
    p = W.poly_Pabc(a, b, c)
    involved = []
    if L.det3(a, b, c):
        involved = [L.direction_vector(b, c)[0], L.direction_vector(c, a)[0], L.direction_vector(a, b)[0]]
        if any(pair(v, x) == 0 for v in involved):
            raise Resample("pole of P_abc")
    gi_x = L.apply(L.inverse(g), x)
    out = [(W.poly_Pabc(*(L.apply(g, v) for v in (a, b, c)))(w, x) if not p.is_zero else 0,
            p(w, gi_x) if not p.is_zero else 0)]
    out.append((W.poly_Pabc(b, a, c)(w, x) if not p.is_zero else 0, -p(w, x) if not p.is_zero else 0))
    out.append((W.poly_Pabc(b, c, a)(w, x) if not p.is_zero else 0, p(w, x) if not p.is_zero else 0))
    if involved and L.det3(a, b, c) > 0:
        al, be, ga = involved
        lead = Fraction(abs(L.det3(al, be, ga))) / (pair(al, x) * pair(be, x) * pair(ga, x))
        out.append((p.w_coefficients(x)[3], lead))
    return out


@register("delta-composition", "Delta_a(mu+nu) = exp(2 pi i P_a(mu,nu)) Delta_a(mu) Delta_a(nu; w+mu(x))",
          samples=50)
def _delta_composition(st):
    a = random_primitive(st, 2)
    mu, nu = st.covector(2), st.covector(2)
    w, x = point_in_domains(st, (a,))
    D = W.delta
    rhs = (cmath.exp(TWO_PI_I * complex(W.poly_Pa(a, mu, nu, w, x)))
           * D(a, mu, w, x) * D(a, nu, w + pair(mu, x), x))
    return [(D(a, L.add(mu, nu), w, x), rhs), (D(a, (0, 0, 0), w, x), 1)]


@register("cocycle-phi-a-translation", "ratio-defined phi_a on translations equals exp(-2 pi i P_a)",
          samples=50)
def _phi_a_translation(st):
    a = random_primitive(st, 2)
    mu, nu = st.covector(2), st.covector(2)
    w, x = point_in_domains(st, (a,))
    g, h = GroupElement.translation(mu), GroupElement.translation(nu)
    return [(W.cocycle_phi_a(a, g, h, w, x), W.phi_a_translation(a, mu, nu, w, x))]


@register("translation-3-cocycle", "coboundary of P_a on translations is the integer -n1 m2 l3 (exact)",
          samples=20, tol=1e-300)
def _translation_3_cocycle(st):
    a = random_primitive(st, 2)
    basis = L.framing_of(a)
    lam, mu, nu = st.covector(3), st.covector(3), st.covector(3)
    x = tuple(_rational(st, nonzero=True) for _ in range(3))
    if any(pair(v, x) == 0 for v in basis):
        raise Resample("degenerate rational point")
    w = _rational(st)
    psi = -W.translation_coboundary(a, lam, mu, nu, w, x)
    l, m, n = (L.framing_coordinates(basis, v) for v in (lam, mu, nu))
    return [(psi, -n[0] * m[1] * l[2]), exact(psi.denominator == 1)]


def _phi_ab_pair(st):
    base = st.choice([(E1, E2), (E1, (1, 2, 0)), (E2, E1)])
    g = random_sl3(st, 1)
    return L.apply(g, base[0]), L.apply(g, base[1])


@register("cocycle-phi-ab", "ratio-defined phi_{a,b}(g) is exp of a polynomial of degree <= 2 in w",
          samples=50)
def _phi_ab(st):
    a, b = _phi_ab_pair(st)
    el = random_group_element(st, 1, 2)
    w, x = point_in_domains(st, (a, b, el.inverse().act_vector(a), el.inverse().act_vector(b)))
    _, x2 = el.inverse().act(w, x)
    if not (L.in_domain(el.inverse().act_vector(a), x2)):
        raise Resample("outside domain")
    h = 0.05 * st.complex_normal() * math.sqrt(sum(abs(c) ** 2 for c in x))
    dev = W.exp_quadratic_deviation(lambda u: W.cocycle_phi_ab(a, b, el, u, x), w, h)
    return [Dev(dev, dev)]


@register("cocycle-phi-ab-compat", "phi_{a,b}(g) phi_{b,c}(g) / phi_{a,c}(g) matches phi_{a,b,c} at y and g^-1 y",
          samples=50)
def _phi_ab_compat(st):
    el = random_group_element(st, 1, 2)
    a, b, c = E1, E2, E3
    w, x = point_in_domains(st, (a, b, c))
    gi = el.inverse()
    w2, x2 = gi.act(w, x)
    a2, b2, c2 = (gi.act_vector(v) for v in (a, b, c))
    P = W.cocycle_phi_ab
    lhs = P(a, b, el, w, x) * P(b, c, el, w, x) / P(a, c, el, w, x)
    rhs = W.cocycle_phi_abc(a, b, c, w, x) / W.cocycle_phi_abc(a2, b2, c2, w2, x2)
    return [(lhs, rhs)]


@register("cocycle-phi-a-general", "ratio-defined phi_a(g,h) is exp of a polynomial of degree <= 2 in w",
          samples=50)
def _phi_a_general(st):
    a = random_primitive(st, 2)
    g, h = random_group_element(st, 1, 2), random_group_element(st, 1, 2)
    w, x = point_in_domains(st, (a,))
    step = 0.05 * st.complex_normal() * math.sqrt(sum(abs(c) ** 2 for c in x))
    dev = W.exp_quadratic_deviation(lambda u: W.cocycle_phi_a(a, g, h, u, x), w, step)
    return [Dev(dev, dev)]


@register("scaling-invariance", "Gamma_{a,b}, Delta_a, phi_{a,b,c}, h_{a,b}, h_a invariant under (w,x) -> lambda (w,x)",
          samples=30)
def _scaling(st):
    a, b, c = E1, (1, 2, 0), E3
    w, x = point_in_domains(st, (a, b, c))
    lam = st.scale()
    lw, lx = lam * w, tuple(lam * v for v in x)
    mu = st.covector(2)
    return [(W.wedge_gamma(a, b, lw, lx), W.wedge_gamma(a, b, w, x)),
            (W.delta(b, mu, lw, lx), W.delta(b, mu, w, x)),
            (W.cocycle_phi_abc(a, b, c, lw, lx), W.cocycle_phi_abc(a, b, c, w, x)),
            (H.h_ab(a, b, lw, lx), H.h_ab(a, b, w, x)),
            (H.h_a(b, mu, lw, lx), H.h_a(b, mu, w, x))]


# --------------------------------------------------------------------------
# hermitian structure

@register("theta-norm-invariance", "h2 |theta0|^2 is invariant under ISL(2,Z)", samples=50, tol=1e-9)
def _theta_norm(st):
    g = random_sl2(st, st.randint(1, 3))
    z = st.complex_normal(0.4)
    tau = st.nonreal(0.5, 1.5)
    z2, t2 = S.act_sl2(g, z, tau)
    if abs(t2.imag) < 0.02:
        raise Resample("image too close to the real axis")
    m, n = st.randint(-2, 2), st.randint(-2, 2)
    base = H.norm_theta(z, tau)
    return [(H.norm_theta(z2, t2), base), (H.norm_theta(z + m * tau + n, tau), base)]


@register("hermitian-cocycle", "h_{a,b} h_{b,a} = 1 and h_{a,b} h_{b,c} h_{c,a} = |phi_{a,b,c}|^-2",
          samples=50)
def _hermitian_cocycle(st):
    base = st.choice([(E1, E2, E3), (E1, (1, 2, 0), E3), (E1, (1, -1, 0), E2), (E1, E2, (1, 1, 3))])
    g = random_sl3(st, 1)
    a, b, c = (L.apply(g, v) for v in base)
    w, x = point_in_domains(st, (a, b, c))
    hab = H.h_ab(a, b, w, x)
    return [(hab * H.h_ab(b, a, w, x), 1),
            (hab * H.h_ab(b, c, w, x) * H.h_ab(c, a, w, x), abs(W.cocycle_phi_abc(a, b, c, w, x)) ** -2)]


@register("metric-shift", "||Gamma_{a,b}(w+mu(x))||^2 ||Delta_b(mu)||^2 = ||Gamma_{a,b}||^2 ||Delta_a(mu)||^2",
          samples=30)
def _metric_shift(st):
    a, b = _phi_ab_pair(st)
    mu = st.covector(2)
    w, x = point_in_domains(st, (a, b))
    lhs = H.norm_gamma(a, b, w + pair(mu, x), x) * H.norm_delta(b, mu, w, x)
    rhs = H.norm_gamma(a, b, w, x) * H.norm_delta(a, mu, w, x)
    return [(lhs, rhs)]


@register("metric-composition", "||Delta_a(mu+nu)||^2 = ||Delta_a(mu)||^2 ||Delta_a(nu; w+mu(x))||^2",
          samples=30)
def _metric_composition(st):
    a = random_primitive(st, 2)
    mu, nu = st.covector(2), st.covector(2)
    w, x = point_in_domains(st, (a,))
    N = H.norm_delta
    return [(N(a, L.add(mu, nu), w, x), N(a, mu, w, x) * N(a, nu, w + pair(mu, x), x))]


@register("metric-equivariance", "||Delta_a(mu o g^-1; w, x)||^2 = ||Delta_{g^-1 a}(mu; w, g^-1 x)||^2",
          samples=30)
def _metric_equivariance(st):
    a = random_primitive(st, 2)
    g = random_sl3(st, 2)
    mu = st.covector(2)
    w, x = point_in_domains(st, (a,))
    gi = L.inverse(g)
    lhs = H.norm_delta(a, L.pullback(mu, gi), w, x)
    rhs = H.norm_delta(L.apply(gi, a), mu, w, L.apply(gi, x))
    return [(lhs, rhs)]


@register("metric-framing", "||Delta_a||^2 does not depend on the framing", samples=30)
def _framing(st):
    a = random_primitive(st, 2)
    mu = st.covector(2)
    twist = L.Framing((st.randint(-2, 2), st.randint(-2, 2)),
                      st.choice([((1, 0), (0, 1)), ((1, 1), (0, 1)), ((0, -1), (1, 0)), ((2, 1), (1, 1))]))
    w, x = point_in_domains(st, (a,))
    _, a2, a3 = twist(a)
    if abs((pair(a2, x) / pair(a3, x)).imag) < 0.05:
        raise Resample("twisted framing badly conditioned")
    return [(H.norm_delta(a, mu, w, x), H.norm_delta(a, mu, w, x, twist))]


@register("metric-group-ab", "h_{g^-1a,g^-1b}(g^-1 y) h_b(g;y) = |phi_{a,b}(g;y)|^2 h_a(g;y) h_{a,b}(y)", samples=30)
def _metric_group_ab(st):
    a, b = _phi_ab_pair(st)
    el = random_group_element(st, 1, 2)
    gi = el.inverse()
    w, x = point_in_domains(st, (a, b))
    w2, x2 = gi.act(w, x)
    lhs = H.h_ab(gi.act_vector(a), gi.act_vector(b), w2, x2) * H.h_a_group(b, el, w, x)
    rhs = abs(W.cocycle_phi_ab(a, b, el, w, x)) ** 2 * H.h_a_group(a, el, w, x) * H.h_ab(a, b, w, x)
    return [(lhs, rhs)]


@register("metric-group-a", "h_a(g1 g2; y) = |phi_a(g1,g2;y)|^2 h_a(g1;y) h_{g1^-1 a}(g2; g1^-1 y)",
          samples=30)
def _metric_group_a(st):
    a = random_primitive(st, 2)
    g1, g2 = random_group_element(st, 1, 2), random_group_element(st, 1, 2)
    w, x = point_in_domains(st, (a,))
    w2, x2 = g1.inverse().act(w, x)
    lhs = H.h_a_group(a, g1 @ g2, w, x)
    rhs = (abs(W.cocycle_phi_a(a, g1, g2, w, x)) ** 2 * H.h_a_group(a, g1, w, x)
           * H.h_a_group(g1.inverse().act_vector(a), g2, w2, x2))
    return [(lhs, rhs)]


@register("h3-shift", "h3(z+tau,tau,sigma) = h2(z,sigma) h3(z,tau,sigma) and subdivision in tau",
          samples=50, tol=1e-12)
def _h3_shift(st):
    z, tau, sigma = _zts(st)
    n = st.randint(2, 3)
    sub = math.prod(H.h3(z + j * tau, n * tau, sigma) for j in range(n))
    return [(H.h3(z + tau, tau, sigma), H.h2(z, sigma) * H.h3(z, tau, sigma)),
            (sub, H.h3(z, tau, sigma)),
            (H.h2(-z, -tau) * H.h2(z, tau), 1)]


@register("im-product", "Im(z1..zn / w1..wn) partial fraction formula, n <= 5", samples=50, tol=1e-10)
def _im_product(st):
    n = st.randint(1, 5)
    z = [st.complex_normal() for _ in range(n)]
    w = list(_nonreal_ratio(st, n)) if n > 1 else [st.complex_normal()]
    return [H.im_product_sides(z, w)]


@register("h-ab-series", "h_{a,b} equals exp(-(2 pi/3) S'''(0)) from the cone series, moduli <= 2",
          samples=30, tol=1e-6)
def _h_ab_series(st):
    a, b, _ = wedge_with_modulus(st, st.randint(1, 2))
    w, x = point_in_domains(st, (a, b))
    d = abs(math.expm1(H.log_h_ab_series_oracle(a, b, w, x) - H.log_h_ab(a, b, w, x)))
    return [Dev(d, d)]


@register("h-ab-well-defined", "h_{a,b} unchanged by alpha -> n alpha + m gamma, beta -> n' beta + m' gamma",
          samples=20, tol=1e-12)
def _h_ab_well_defined(st):
    a, b, _ = wedge_with_modulus(st, st.randint(1, 2))
    wd = L.wedge(a, b)
    al, be = wd.complements
    g = wd.gamma
    n, m, n2, m2 = st.randint(1, 3), st.randint(-2, 2), st.randint(1, 3), st.randint(-2, 2)
    alt = (L.add(L.scale(n, al), L.scale(m, g)), L.add(L.scale(n2, be), L.scale(m2, g)))
    w, x = point_in_domains(st, (a, b))
    return [(H.h_ab(a, b, w, x, complements=alt), H.h_ab(a, b, w, x))]


def _matrix_dev(C, Cfd) -> Dev:
    scale = np.abs(C).max()
    d = float(np.abs(C - Cfd).max())
    return Dev(d, d / scale if scale else d)


@register("curvature-h2", "closed form of dbar d log h2 against finite differences", samples=20, tol=1e-5)
def _curv_h2(st):
    z, tau = st.complex_normal(0.5), st.nonreal()
    return [_matrix_dev(H.curvature_h2(z, tau),
                        H.wirtinger_hessian_fd(lambda u: H.log_h2(*u), [z, tau]))]


@register("curvature-h3", "closed form of dbar d log h3 against finite differences", samples=20, tol=1e-5)
def _curv_h3(st):
    z, tau, sigma = _zts(st)
    return [_matrix_dev(H.curvature_h3(z, tau, sigma),
                        H.wirtinger_hessian_fd(lambda u: H.log_h3(*u), [z, tau, sigma]))]


@register("curvature-hab", "pullback formula for dbar d log h_{a,b} against finite differences",
          samples=10, tol=1e-5)
def _curv_hab(st):
    a, b, _ = wedge_with_modulus(st, st.randint(1, 2), length=1)
    w, x = point_in_domains(st, (a, b))
    C = H.curvature_hab(a, b, w, x)
    Cfd = H.wirtinger_hessian_fd(lambda u: H.log_h_ab(a, b, u[0], u[1:], check_domain=False), [w, *x])
    return [_matrix_dev(C, Cfd)]


@register("fibre-integral", "c_1 integrates to 1 over each fibre C/(Z + tau Z)", samples=3, tol=1e-3)
def _fibre(st):
    tau = st.nonreal()
    return [(H.fibre_integral_c1(tau, st.complex_normal()), 1.0)]
