"""Hermitian metrics for the theta bundle and the gamma gerbe.

``h2`` and ``h3`` depend only on imaginary parts and are built from the
exact multiple Bernoulli polynomials ``B_{1,2}`` and ``B_{2,3}``.  Curvature
forms are returned as matrices ``C`` with ``dbar d log h = sum_kl C[k, l]
du_k ^ d(conj u_l)``.
"""

from __future__ import annotations

import math
from typing import Callable, Sequence

import numpy as np

from . import lattice as L
from .bernoulli import B12, R3
from .lattice import Framing, GroupElement, pair
from .special import DomainError, theta0
from .wedge import _require_domain, delta, delta_group, wedge_gamma


def _imag_nonzero(*vals: complex) -> None:
    for v in vals:
        if complex(v).imag == 0:
            raise DomainError("imaginary part must be nonzero")


def log_h2(z: complex, tau: complex) -> float:
    _imag_nonzero(tau)
    return -2 * math.pi * float(B12.evaluate(complex(z).imag, [complex(tau).imag]))


def h2(z: complex, tau: complex) -> float:
    """``exp(-2 pi B_{1,2}(Im z, Im tau))``."""
    return math.exp(log_h2(z, tau))


def log_h3(z: complex, tau: complex, sigma: complex) -> float:
    _imag_nonzero(tau, sigma)
    return -2 * math.pi / 3 * float(
        R3.evaluate(complex(z).imag, [complex(tau).imag, complex(sigma).imag]))


def h3(z: complex, tau: complex, sigma: complex) -> float:
    """``exp(-(2 pi / 3) B_{2,3}(Im z, Im tau, Im sigma))``."""
    return math.exp(log_h3(z, tau, sigma))


# --------------------------------------------------------------------------
# gerbe metric

def _wedge_data(a, b, x):
    wd = L.wedge(L.vec(a), L.vec(b))
    alpha, beta = wd.complements
    return wd, alpha, beta


def log_h_ab(a, b, w: complex, x, complements=None, check_domain: bool = True) -> float:
    """``log h_{a,b}``; ``complements`` may override the covectors ``(alpha, beta)``.

    Any ``alpha = n alpha_0 + m gamma`` with ``n > 0`` (and likewise for
    ``beta``) is allowed; the fundamental set is then enumerated afresh.
    """
    a, b = L.vec(a), L.vec(b)
    x = tuple(complex(c) for c in x)
    if check_domain:
        _require_domain(a, x)
        _require_domain(b, x)
    if a == b:
        return 0.0
    wd, alpha, beta = _wedge_data(a, b, x)
    if wd.modulus == 0:
        raise DomainError("the domains of a and -a do not meet")
    if complements is None:
        reps = wd.fundamental_set
    else:
        alpha, beta = (L.vec(v) for v in complements)
        reps = _fundamental_set_for(wd, alpha, beta)
    gx = pair(wd.gamma, x)
    tau, sigma = pair(alpha, x) / gx, pair(beta, x) / gx
    return sum(log_h3((w + pair(d, x)) / gx, tau, sigma) for d in reps)


def _fundamental_set_for(wd: L.Wedge, alpha, beta) -> list:
    """Classes mod ``Z gamma`` of covectors with ``0 <= d(a) < alpha(a)``, ``0 <= d(b) < beta(b)``."""
    nf = wd.normal_form
    r, s = nf.r, nf.s
    A, B = pair(alpha, wd.a), pair(beta, wd.b)
    if pair(alpha, wd.b) != 0 or pair(beta, wd.a) != 0 or A <= 0 or B <= 0:
        raise ValueError("complements must vanish on the other vector and be positive")
    out = []
    for p in range(A):
        for q in range(B):
            if (q - r * p) % s == 0:
                out.append(L.pullback((p, (q - r * p) // s, 0), nf.g))
    return out


def h_ab(a, b, w: complex, x, complements=None) -> float:
    return math.exp(log_h_ab(a, b, w, x, complements))


def log_h_a(a, mu, w: complex, x, framing: Framing = L.STANDARD_FRAMING) -> float:
    a = L.vec(a)
    x = tuple(complex(c) for c in x)
    _require_domain(a, x)
    a1, a2, a3 = framing(a)
    x1, x2, x3 = pair(a1, x), pair(a2, x), pair(a3, x)
    m = pair(L.vec(mu), a)
    tau = x2 / x3
    if m >= 0:
        return sum(log_h2((w + j * x1) / x3, tau) for j in range(m))
    return -sum(log_h2((w + j * x1) / x3, tau) for j in range(m, 0))


def h_a(a, mu, w: complex, x, framing: Framing = L.STANDARD_FRAMING) -> float:
    return math.exp(log_h_a(a, mu, w, x, framing))


def h_a_group(a, el: GroupElement, w: complex, x, framing: Framing = L.STANDARD_FRAMING) -> float:
    return h_a(a, L.pullback(el.mu, L.inverse(el.g)), w, x, framing)


def norm_gamma(a, b, w: complex, x) -> float:
    """``h_{a,b} |Gamma_{a,b}|^2``."""
    return h_ab(a, b, w, x) * abs(wedge_gamma(a, b, w, x)) ** 2


def norm_delta(a, mu, w: complex, x, framing: Framing = L.STANDARD_FRAMING) -> float:
    """``h_a |Delta_a|^2`` for a covector ``mu``."""
    return h_a(a, mu, w, x, framing) * abs(delta(a, mu, w, x, framing)) ** 2


def norm_delta_group(a, el: GroupElement, w: complex, x,
                     framing: Framing = L.STANDARD_FRAMING) -> float:
    return h_a_group(a, el, w, x, framing) * abs(delta_group(a, el, w, x, framing)) ** 2


def norm_theta(z: complex, tau: complex) -> float:
    """``h2 |theta0|^2``, invariant under ISL(2, Z)."""
    return h2(z, tau) * abs(theta0(z, tau)) ** 2


# --------------------------------------------------------------------------
# series representation of h_{a,b}

def cone_series(a, b, w: complex, x, t: np.ndarray) -> np.ndarray:
    """``-t^2 sum_{C_{+-}/Z gamma} exp(t Im((w - d(x)) / gamma(x)))`` for real ``t < 0``.

    Classes are labelled by ``(p, q) = (d(a), d(b))`` with ``p >= 1``,
    ``q <= 0`` and ``q = r p mod s``; the sum over ``q`` is geometric and is
    summed in closed form, the sum over ``p`` is truncated.
    """
    wd, alpha, beta = _wedge_data(a, b, x)
    nf = wd.normal_form
    r, s = nf.r, nf.s
    gx = pair(wd.gamma, x)
    im_tau = (pair(alpha, x) / gx).imag
    im_sigma = (pair(beta, x) / gx).imag
    c = (complex(w) / gx).imag
    t = np.asarray(t, dtype=float)
    if np.any(t >= 0):
        raise ValueError("the cone series converges only for t < 0")
    # p-terms decay like exp(t * p * |Im tau| / s)
    pmax = int(math.ceil(40.0 * s / (-t.max() * -im_tau))) + s
    p = np.arange(1, pmax + 1)
    q0 = -((-r * p) % s)
    expo = c - (p * im_tau + q0 * im_sigma) / s
    terms = np.exp(np.outer(t, expo))
    return -t**2 * terms.sum(axis=1) / (1 - np.exp(t * im_sigma))


def h_ab_series_oracle(a, b, w: complex, x, nodes: int = 16,
                       interval: tuple[float, float] | None = None) -> float:
    """``exp(-(2 pi / 3) S'''(0))`` with ``S`` the cone series."""
    return math.exp(log_h_ab_series_oracle(a, b, w, x, nodes, interval))


def log_h_ab_series_oracle(a, b, w: complex, x, nodes: int = 16,
                           interval: tuple[float, float] | None = None) -> float:
    """``-(2 pi / 3) S'''(0)``.

    The cone series factors as ``S(t) = e^{ct} V(t) W(t)``: ``c = Im(w/gamma(x))``,
    ``W(t) = t / (1 - e^{t Im sigma})`` is the summed geometric series along
    ``beta`` and ``V(t) = -t sum_p e^{t d_p}`` is the truncated sum over the
    remaining cone direction.  ``V`` is sampled at Chebyshev nodes of
    ``u = t |Im tau|`` in ``interval`` (where it converges) and continued to
    ``u = 0`` by interpolation; the Taylor coefficients of the other two
    factors are known exactly.  Few nodes keep rounding noise from being
    amplified by the extrapolation.
    """
    from .bernoulli import bernoulli_numbers

    wd, alpha, beta = _wedge_data(a, b, x)
    nf = wd.normal_form
    r, s = nf.r, nf.s
    gx = pair(wd.gamma, x)
    im_tau = (pair(alpha, x) / gx).imag
    im_sigma = (pair(beta, x) / gx).imag
    if not im_tau < 0 < im_sigma:
        raise DomainError("x is not in the intersection of the two domains")
    c = (complex(w) / gx).imag
    if interval is None:
        # keep every exponential rate of V at most ~2 across the interval
        span = 2.0 * -im_tau / max(-im_tau, im_sigma)
        interval = (-span, -0.01 * span)
    lo, hi = interval
    k = np.arange(nodes)
    u = (lo + hi) / 2 + (hi - lo) / 2 * np.cos(math.pi * (k + 0.5) / nodes)
    t = u / -im_tau
    # p-terms decay like exp(t p |Im tau| / s) = exp(u p / s)
    pmax = int(math.ceil(40.0 * s / -hi)) + s
    V = np.zeros(nodes)
    for start in range(1, pmax + 1, 1 << 16):
        p = np.arange(start, min(start + (1 << 16), pmax + 1))
        q0 = -((-r * p) % s)
        d = -(p * im_tau + q0 * im_sigma) / s
        V -= t * np.exp(np.outer(t, d)).sum(axis=1)
    fit = np.polynomial.Chebyshev.fit(u, V, nodes - 1, domain=[lo, hi])
    v = [float(fit.deriv(j)(0.0)) / math.factorial(j) * (-im_tau) ** j if j else float(fit(0.0))
         for j in range(4)]
    e = [c**j / math.factorial(j) for j in range(4)]
    bn = bernoulli_numbers(3)
    wc = [-float(bn[j]) * im_sigma ** (j - 1) / math.factorial(j) for j in range(4)]
    s3 = sum(e[i] * v[j] * wc[3 - i - j] for i in range(4) for j in range(4 - i))
    return -2 * math.pi / 3 * 6 * s3


# --------------------------------------------------------------------------
# Im of products

def im_product_sides(z: Sequence[complex], w: Sequence[complex]) -> tuple[float, float]:
    """Both sides of the partial-fraction formula for ``Im(z_1..z_n / w_1..w_n)``."""
    n = len(z)
    if len(w) != n or n == 0:
        raise ValueError("need two nonempty lists of equal length")
    for i in range(n):
        for j in range(i):
            if (w[i] * complex(w[j]).conjugate()).imag == 0:
                raise DomainError("w_i / w_j must be nonreal for i != j")
    lhs = (np.prod(np.asarray(z, complex)) / np.prod(np.asarray(w, complex))).imag
    rhs = 0.0
    for j in range(n):
        num = math.prod((zi / w[j]).imag for zi in z)
        den = math.prod((w[i] / w[j]).imag for i in range(n) if i != j)
        rhs += num / den
    return float(lhs), rhs


def im_product_identity_check(z: Sequence[complex], w: Sequence[complex]) -> float:
    lhs, rhs = im_product_sides(z, w)
    scale = max(abs(lhs), abs(rhs))
    return abs(lhs - rhs) / scale if scale else 0.0


# --------------------------------------------------------------------------
# curvature

def curvature_h2(z: complex, tau: complex) -> np.ndarray:
    """Coefficients of ``dbar d log h2`` in the basis ``(dz, dtau)``."""
    _imag_nonzero(tau)
    zeta, t = complex(z).imag, complex(tau).imag
    # (pi / t) (dz - (zeta/t) dtau) ^ conj(same)
    v = np.array([1.0, -zeta / t])
    return math.pi / t * np.outer(v, v).astype(complex)


def first_chern_form_h2(z: complex, tau: complex) -> np.ndarray:
    """``c_1 = (i / 2 pi) dbar d log h2``."""
    return 1j / (2 * math.pi) * curvature_h2(z, tau)


def hessian_r3(zeta: float, t: float, s: float) -> np.ndarray:
    """Hessian of ``B_{2,3}(zeta, t, s)`` in ``(zeta, t, s)``."""
    rzz = 6 * zeta / (t * s) - 3 * (1 / t + 1 / s)
    rzt = -3 * zeta**2 / (t**2 * s) + 3 * zeta / t**2 + 1 / (2 * s) - s / (2 * t**2)
    rzs = -3 * zeta**2 / (t * s**2) + 3 * zeta / s**2 + 1 / (2 * t) - t / (2 * s**2)
    rtt = 2 * zeta**3 / (t**3 * s) - 3 * zeta**2 / t**3 + s * zeta / t**3
    rss = 2 * zeta**3 / (t * s**3) - 3 * zeta**2 / s**3 + t * zeta / s**3
    rts = zeta**3 / (t**2 * s**2) - zeta / (2 * s**2) - zeta / (2 * t**2)
    return np.array([[rzz, rzt, rzs], [rzt, rtt, rts], [rzs, rts, rss]])


def curvature_h3(z: complex, tau: complex, sigma: complex) -> np.ndarray:
    """Coefficients of ``dbar d log h3`` in the basis ``(dz, dtau, dsigma)``.

    For a function of imaginary parts only, ``d^2/du d(conj u) = (1/4) d^2/dy^2``,
    so the coefficients are ``(pi / 6)`` times the Hessian of ``B_{2,3}``.
    """
    _imag_nonzero(tau, sigma)
    h = hessian_r3(complex(z).imag, complex(tau).imag, complex(sigma).imag)
    return (math.pi / 6 * h).astype(complex)


def _pullback_jacobian(a, b, d, w: complex, x) -> np.ndarray:
    """Holomorphic Jacobian of ``(w, x) -> ((w + d(x))/g(x), alpha(x)/g(x), beta(x)/g(x))``."""
    wd, alpha, beta = _wedge_data(a, b, x)
    g = np.array(wd.gamma, dtype=float)
    gx = pair(wd.gamma, x)
    rows = []
    for num_cov, shift in ((np.array(d, float), w), (np.array(alpha, float), 0), (np.array(beta, float), 0)):
        n = shift + pair(num_cov, x)
        # d(n/gx) = dn/gx - n dgx/gx^2
        dw = (1.0 if shift is w else 0.0) / gx
        dx = num_cov / gx - n * g / gx**2
        rows.append(np.concatenate([[dw], dx]))
    return np.array(rows, dtype=complex)


def curvature_hab(a, b, w: complex, x) -> np.ndarray:
    """Coefficients of ``dbar d log h_{a,b}`` in the basis ``(dw, dx_1, dx_2, dx_3)``."""
    a, b = L.vec(a), L.vec(b)
    x = tuple(complex(c) for c in x)
    w = complex(w)
    out = np.zeros((4, 4), dtype=complex)
    if a == b:
        return out
    wd, alpha, beta = _wedge_data(a, b, x)
    gx = pair(wd.gamma, x)
    tau, sigma = pair(alpha, x) / gx, pair(beta, x) / gx
    for d in wd.fundamental_set:
        J = _pullback_jacobian(a, b, d, w, x)
        C = curvature_h3((w + pair(d, x)) / gx, tau, sigma)
        out += J.T @ C @ J.conj()
    return out


def wirtinger_hessian_fd(f: Callable[[np.ndarray], float], u: Sequence[complex],
                         step: float = 1e-4) -> np.ndarray:
    """Central finite-difference estimate of ``-d^2 f / du_k d(conj u_l)``.

    This is the coefficient matrix of ``dbar d f``, the quantity returned by
    the ``curvature_*`` functions.
    """
    u = np.asarray(u, dtype=complex)
    n = len(u)
    # real coordinates (x_1, y_1, ..., x_n, y_n)
    r = np.empty(2 * n)
    r[0::2], r[1::2] = u.real, u.imag

    def g(v):
        return f(v[0::2] + 1j * v[1::2])

    H = np.empty((2 * n, 2 * n))
    e = np.eye(2 * n) * step
    f0 = g(r)
    for i in range(2 * n):
        H[i, i] = (g(r + e[i]) - 2 * f0 + g(r - e[i])) / step**2
        for j in range(i):
            H[i, j] = H[j, i] = (g(r + e[i] + e[j]) - g(r + e[i] - e[j])
                                 - g(r - e[i] + e[j]) + g(r - e[i] - e[j])) / (4 * step**2)
    C = np.empty((n, n), dtype=complex)
    for k in range(n):
        for l in range(n):
            xx = H[2 * k, 2 * l]
            yy = H[2 * k + 1, 2 * l + 1]
            xy = H[2 * k, 2 * l + 1]
            yx = H[2 * k + 1, 2 * l]
            C[k, l] = -0.25 * (xx + yy + 1j * (xy - yx))
    return C


def fibre_integral_c1(tau: complex, z0: complex = 0j, grid: int = 200) -> float:
    """Integral of ``c_1`` over the period parallelogram ``z0 + [0,1] + [0,1] tau``.

    Midpoint rule on a ``grid x grid`` mesh of the unit square pulled back by
    ``(u, v) -> z0 + u + v tau``; the area element is ``Im(tau) du dv``.
    """
    _imag_nonzero(tau)
    tau = complex(tau)
    mid = (np.arange(grid) + 0.5) / grid
    U, V = np.meshgrid(mid, mid, indexing="ij")
    Z = z0 + U + V * tau
    # c_1 restricted to a fibre: (i / 2 pi) C_zz dz ^ dzbar, and dz ^ dzbar = -2i dx ^ dy
    t = tau.imag
    coeff = np.vectorize(lambda zz: curvature_h2(zz, tau)[0, 0].real)(Z)
    density = coeff / math.pi  # (i / 2pi)(-2i) = 1 / pi
    return float(np.sum(density) * t / grid**2)
