"""Reproducible sample streams and domain-aware point samplers.

Every sample is drawn from its own Philox-4x64 stream.  The 128-bit key is
``(seed, crc32(check name))`` and the counter starts at ``(slot, 0, 0, 0)``,
so a stream depends only on ``(seed, name, slot)``.  Uniform doubles are
``(next_uint64 >> 11) * 2**-53``; a standard complex normal uses two uniforms
``u1, u2`` via ``r = sqrt(-2 log(1 - u1))``, ``z = r (cos 2 pi u2 + i sin 2 pi u2)``.
"""

from __future__ import annotations

import cmath
import math
import zlib
from typing import Sequence

import numpy as np

from . import lattice as L
from .lattice import GroupElement, Vec, pair


class Resample(Exception):
    """Raised by a sampler or evaluator to request a fresh draw."""


OMEGA = cmath.exp(2j * math.pi / 3)


class Stream:
    def __init__(self, name: str, seed: int, slot: int):
        key = [seed & (2**64 - 1), zlib.crc32(name.encode())]
        self._bits = np.random.Philox(key=key, counter=[slot, 0, 0, 0])

    def uniform(self) -> float:
        return (int(self._bits.random_raw()) >> 11) * 2.0**-53

    def normal(self) -> float:
        return self.complex_normal().real

    def complex_normal(self, scale: float = 1.0) -> complex:
        u1, u2 = self.uniform(), self.uniform()
        r = math.sqrt(-2.0 * math.log(1.0 - u1))
        return scale * complex(r * math.cos(2 * math.pi * u2), r * math.sin(2 * math.pi * u2))

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in ``[lo, hi]``."""
        return lo + min(int(self.uniform() * (hi - lo + 1)), hi - lo)

    def choice(self, items: Sequence):
        return items[self.randint(0, len(items) - 1)]

    def covector(self, bound: int = 3) -> Vec:
        return tuple(self.randint(-bound, bound) for _ in range(3))  # type: ignore[return-value]

    def upper(self, lo: float = 0.3, hi: float = 1.5) -> complex:
        """A point of the upper half-plane with ``lo <= Im <= hi``."""
        return complex(self.uniform() - 0.5, lo + (hi - lo) * self.uniform())

    def nonreal(self, lo: float = 0.3, hi: float = 1.5) -> complex:
        t = self.upper(lo, hi)
        return t if self.uniform() < 0.5 else t.conjugate()

    def scale(self) -> complex:
        """A random nonzero rescaling factor of moderate size."""
        return cmath.rect(0.5 + self.uniform(), 2 * math.pi * self.uniform())


# --------------------------------------------------------------------------
# group elements

def random_sl3(st: Stream, length: int = 4) -> L.Mat:
    """Product of ``length`` random elementary matrices ``I +- E_ij``."""
    g = L.IDENTITY
    for _ in range(length):
        i = st.randint(0, 2)
        j = (i + st.randint(1, 2)) % 3
        e = [list(r) for r in L.IDENTITY]
        e[i][j] = st.choice((-1, 1))
        g = L.matmul(g, L.mat(e))
    return g


def random_sl2(st: Stream, length: int = 4):
    g = ((1, 0), (0, 1))
    for _ in range(length):
        k = st.choice((-2, -1, 1, 2))
        e = ((1, k), (0, 1)) if st.uniform() < 0.5 else ((1, 0), (k, 1))
        (a, b), (c, d) = g
        (p, q), (r, s) = e
        g = ((a * p + b * r, a * q + b * s), (c * p + d * r, c * q + d * s))
    if st.uniform() < 0.25:
        g = tuple(tuple(-v for v in row) for row in g)
    return g


def random_group_element(st: Stream, length: int = 3, bound: int = 2) -> GroupElement:
    return GroupElement(random_sl3(st, length), st.covector(bound))


def random_primitive(st: Stream, bound: int = 3) -> Vec:
    while True:
        v = st.covector(bound)
        if L.is_primitive(v):
            return v


# --------------------------------------------------------------------------
# points

MARGIN = 0.1
CEILING = 12.0


def _conditioned(vectors: Sequence[Vec], x) -> bool:
    """Keep the modular parameters of all involved products away from the real axis."""
    for i, a in enumerate(vectors):
        if not L.in_domain(a, x):
            return False
        _, a2, a3 = L.framing_of(a)
        t = (pair(a2, x) / pair(a3, x)).imag
        if not MARGIN <= t <= CEILING:
            return False
        for b in vectors[:i]:
            if b == a:
                continue
            wd = L.wedge(a, b)
            if wd.modulus == 0:
                return False
            al, be = wd.complements
            gx = pair(wd.gamma, x)
            for v in ((pair(al, x) / gx).imag, (pair(be, x) / gx).imag):
                if not MARGIN <= abs(v) <= CEILING:
                    return False
    return True


def point_in_domains(st: Stream, vectors: Sequence[Sequence[int]], tries: int = 400,
                     spread: float = 0.25):
    """A point ``(w, x)`` with ``x`` in the domain of every vector, well conditioned.

    For three independent vectors the search starts from ``a + wbar b + w c``
    (``w`` a primitive cube root of unity), which lies in all three domains
    when ``det(a, b, c) > 0``; otherwise plain rejection sampling is used.
    """
    vecs = [L.vec(v) for v in vectors]
    distinct = list(dict.fromkeys(vecs))
    seed = None
    if len(distinct) >= 3:
        for i in range(len(distinct)):
            for j in range(len(distinct)):
                for k in range(len(distinct)):
                    a, b, c = distinct[i], distinct[j], distinct[k]
                    if L.det3(a, b, c) > 0:
                        seed = tuple(a[m] + OMEGA.conjugate() * b[m] + OMEGA * c[m]
                                     for m in range(3))
                        break
                if seed:
                    break
            if seed:
                break
    for _ in range(tries):
        if seed is not None:
            norm = math.sqrt(sum(abs(c) ** 2 for c in seed))
            x = tuple(c + spread * norm * st.complex_normal() for c in seed)
        else:
            x = tuple(st.complex_normal() for _ in range(3))
        if _conditioned(distinct, x):
            lam = st.scale()
            w = st.complex_normal(0.5) * math.sqrt(sum(abs(c) ** 2 for c in x))
            return lam * w, tuple(lam * c for c in x)
    raise Resample("no well-conditioned point found")


def wedge_with_modulus(st: Stream, s: int, length: int = 2) -> tuple[Vec, Vec, L.Mat]:
    """A random ``SL(3, Z)`` image of the normal-form wedge ``(e1, r e1 + s e2)``."""
    rs = [r for r in range(s) if math.gcd(r, s) == 1]
    r = st.choice(rs)
    g = random_sl3(st, length)
    return L.apply(g, L.E1), L.apply(g, (r, s, 0)), g
