"""Integer algebra on the lattice Z^3 and its dual.

Vectors of the lattice and covectors of the dual lattice are plain integer
triples; a covector ``d`` pairs with a vector ``v`` as ``sum(d_i * v_i)``.
Matrices are 3-tuples of rows and act on column vectors from the left.
Python integers are unbounded, so nothing here can overflow.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

Vec = tuple[int, int, int]
Mat = tuple[Vec, Vec, Vec]

IDENTITY: Mat = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
E1: Vec = (1, 0, 0)
E2: Vec = (0, 1, 0)
E3: Vec = (0, 0, 1)


class LatticeError(ValueError):
    """Raised when lattice data violates a precondition."""


# --------------------------------------------------------------------------
# small exact linear algebra

def vec(v: Iterable[int]) -> Vec:
    t = tuple(int(c) for c in v)
    if len(t) != 3:
        raise LatticeError(f"expected an integer triple, got {t!r}")
    return t  # type: ignore[return-value]


def pair(d: Sequence, v: Sequence):
    """Pairing of a covector with a vector (works for complex vectors too)."""
    return d[0] * v[0] + d[1] * v[1] + d[2] * v[2]


def add(u: Vec, v: Vec) -> Vec:
    return (u[0] + v[0], u[1] + v[1], u[2] + v[2])


def sub(u: Vec, v: Vec) -> Vec:
    return (u[0] - v[0], u[1] - v[1], u[2] - v[2])


def scale(k: int, v: Vec) -> Vec:
    return (k * v[0], k * v[1], k * v[2])


def neg(v: Vec) -> Vec:
    return (-v[0], -v[1], -v[2])


def cross(u: Sequence, v: Sequence) -> tuple:
    """The covector ``x -> det(u, v, x)``."""
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def det3(u: Sequence, v: Sequence, w: Sequence):
    """Determinant of the matrix with rows (or columns) u, v, w."""
    return pair(cross(u, v), w)


def content(v: Sequence[int]) -> int:
    return math.gcd(math.gcd(abs(v[0]), abs(v[1])), abs(v[2]))


def is_primitive(v: Sequence[int]) -> bool:
    return content(v) == 1


def mat(rows: Iterable[Iterable[int]]) -> Mat:
    m = tuple(vec(r) for r in rows)
    if len(m) != 3:
        raise LatticeError("expected a 3x3 matrix")
    return m  # type: ignore[return-value]


def transpose(m: Mat) -> Mat:
    return tuple(tuple(m[i][j] for i in range(3)) for j in range(3))  # type: ignore[return-value]


def matmul(m: Mat, n: Mat) -> Mat:
    nt = transpose(n)
    return tuple(tuple(pair(r, c) for c in nt) for r in m)  # type: ignore[return-value]


def det(m: Mat) -> int:
    return det3(m[0], m[1], m[2])


def apply(m: Mat, v: Sequence):
    """Matrix times column vector; entries of ``v`` may be complex."""
    return tuple(pair(r, v) for r in m)


def pullback(d: Sequence[int], m: Mat) -> Vec:
    """The covector ``d o m``, i.e. the row vector ``d @ m``."""
    return tuple(sum(d[i] * m[i][j] for i in range(3)) for j in range(3))  # type: ignore[return-value]


def inverse(m: Mat) -> Mat:
    """Exact inverse of a determinant-one integer matrix."""
    if det(m) != 1:
        raise LatticeError("matrix is not in SL(3, Z)")
    c0, c1, c2 = transpose(m)
    # rows of the inverse are the cofactor covectors
    return (cross(c1, c2), cross(c2, c0), cross(c0, c1))  # type: ignore[return-value]


# --------------------------------------------------------------------------
# unimodular reduction

def _reduce_to_axis(v: list[int], u: list[list[int]], rows: Sequence[int]) -> int:
    """Euclid on the entries ``v[rows]`` with determinant-one row operations.

    The same operations are applied to the rows of ``u``.  On return all
    entries but one vanish; the index of the surviving row is returned.
    """
    while True:
        live = [i for i in rows if v[i] != 0]
        if len(live) <= 1:
            return live[0] if live else rows[0]
        p = min(live, key=lambda i: (abs(v[i]), i))
        for i in live:
            if i != p:
                q = v[i] // v[p]
                v[i] -= q * v[p]
                u[i] = [x - q * y for x, y in zip(u[i], u[p])]


def _rotate(v: list[int], u: list[list[int]], i: int, j: int) -> None:
    """Replace rows (i, j) by (j, -i); a determinant-one move."""
    v[i], v[j] = v[j], -v[i]
    u[i], u[j] = u[j], [-x for x in u[i]]


def _negate(v: list[int], u: list[list[int]], i: int, j: int) -> None:
    for k in (i, j):
        v[k] = -v[k]
        u[k] = [-x for x in u[k]]


def _unimodular_to_e1(a: Vec) -> tuple[list[int], list[list[int]]]:
    v = list(a)
    u = [list(r) for r in IDENTITY]
    k = _reduce_to_axis(v, u, (0, 1, 2))
    if k != 0:
        _rotate(v, u, 0, k)
    if v[0] == -1:
        _negate(v, u, 0, 1)
    assert v == [1, 0, 0]
    return v, u


# --------------------------------------------------------------------------
# wedges

@dataclass(frozen=True)
class NormalForm:
    """SL(3, Z) normal form of a wedge.

    ``kind`` is ``"parallel_plus"``, ``"parallel_minus"`` or ``"general"``;
    ``g`` maps ``(a, b)`` to ``(e1, e1)``, ``(e1, -e1)`` or
    ``(e1, r e1 + s e2)`` with ``0 <= r < s`` and ``gcd(r, s) = 1``.
    """

    kind: str
    r: int
    s: int
    g: Mat

    @property
    def completion(self) -> Vec:
        """The vector ``g^-1 e3``; completes a general wedge to an oriented basis."""
        return transpose(inverse(self.g))[2]


def direction_vector(a: Sequence[int], b: Sequence[int]) -> tuple[Vec | None, int]:
    """Return ``(gamma, s)`` with ``det(a, b, x) = s * gamma(x)``.

    ``gamma`` is primitive and ``s >= 1`` for independent ``a, b``; for
    dependent vectors the result is ``(None, 0)``.
    """
    a, b = vec(a), vec(b)
    for v in (a, b):
        if not is_primitive(v):
            raise LatticeError(f"{v} is not primitive")
    c = cross(a, b)
    s = content(c)
    if s == 0:
        return None, 0
    return tuple(x // s for x in c), s  # type: ignore[return-value]


def normal_form(a: Sequence[int], b: Sequence[int]) -> NormalForm:
    a, b = vec(a), vec(b)
    if not (is_primitive(a) and is_primitive(b)):
        raise LatticeError("wedge vectors must be primitive")
    _, u = _unimodular_to_e1(a)
    w = list(apply(tuple(map(tuple, u)), b))  # type: ignore[arg-type]
    k = _reduce_to_axis(w, u, (1, 2))
    if k == 2:
        _rotate(w, u, 1, 2)
    if w[1] < 0:
        _negate(w, u, 1, 2)
    s = w[1]
    if s == 0:
        kind = "parallel_plus" if w[0] == 1 else "parallel_minus"
        return NormalForm(kind, 0, 0, mat(u))
    q = w[0] // s
    w[0] -= q * s
    u[0] = [x - q * y for x, y in zip(u[0], u[1])]
    return NormalForm("general", w[0], s, mat(u))


class Wedge:
    """An ordered pair of primitive lattice vectors with derived invariants."""

    __slots__ = ("a", "b", "gamma", "modulus", "_nf")

    def __init__(self, a: Sequence[int], b: Sequence[int]):
        self.a, self.b = vec(a), vec(b)
        self.gamma, self.modulus = direction_vector(self.a, self.b)
        self._nf: NormalForm | None = None

    def __repr__(self) -> str:
        return f"Wedge({self.a}, {self.b})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Wedge) and (self.a, self.b) == (other.a, other.b)

    def __hash__(self) -> int:
        return hash((self.a, self.b))

    @property
    def normal_form(self) -> NormalForm:
        if self._nf is None:
            self._nf = normal_form(self.a, self.b)
        return self._nf

    @property
    def general(self) -> bool:
        return self.modulus > 0

    def _require_general(self) -> NormalForm:
        if not self.general:
            raise LatticeError(f"{self!r} is degenerate (modulus 0)")
        return self.normal_form

    @property
    def complements(self) -> tuple[Vec, Vec]:
        """Covectors ``alpha, beta`` with ``alpha(b) = beta(a) = 0`` and
        ``alpha(a) = beta(b) = modulus``, normalised to vanish on the
        completion vector."""
        nf = self._require_general()
        alpha = pullback((nf.s, -nf.r, 0), nf.g)
        beta = pullback((0, 1, 0), nf.g)
        return alpha, beta

    def canonical_lift(self, d: Sequence[int]) -> Vec:
        """Representative of ``d`` modulo ``Z gamma`` vanishing on the completion."""
        c = self._require_general().completion
        d = vec(d)
        return sub(d, scale(pair(d, c), self.gamma))  # gamma(c) == 1

    @property
    def fundamental_set(self) -> list[Vec]:
        """One covector per class of ``F / Z gamma``; there are ``modulus`` of them."""
        nf = self._require_general()
        r, s = nf.r, nf.s
        return [pullback((j, -((j * r) // s), 0), nf.g) for j in range(s)]


@functools.lru_cache(maxsize=4096)
def wedge(a: Vec, b: Vec) -> Wedge:
    """Cached :class:`Wedge` constructor for hashable triples."""
    return Wedge(a, b)


def complement_covectors(a: Sequence[int], b: Sequence[int]) -> tuple[Vec, Vec]:
    return wedge(vec(a), vec(b)).complements


def fundamental_set(a: Sequence[int], b: Sequence[int]) -> list[Vec]:
    return wedge(vec(a), vec(b)).fundamental_set


def fundamental_set3(a: Sequence[int], b: Sequence[int], c: Sequence[int]) -> list[Vec]:
    """Covectors d with ``0 <= d(a) < alpha(a)``, ``0 <= d(b) < beta(b)`` and
    ``0 <= d(c) < gamma(c)``, where alpha, beta, gamma are the direction
    vectors of ``(b, c)``, ``(c, a)`` and ``(a, b)``."""
    a, b, c = vec(a), vec(b), vec(c)
    dt = det3(a, b, c)
    if dt <= 0:
        raise LatticeError("triple must be linearly independent and positively oriented")
    alpha, _ = direction_vector(b, c)
    beta, _ = direction_vector(c, a)
    gamma, _ = direction_vector(a, b)
    # d = n M^-1 with M = (a | b | c); rows of adj(M) are the cofactors below
    cof = (cross(b, c), cross(c, a), cross(a, b))
    out = []
    for n0 in range(pair(alpha, a)):
        for n1 in range(pair(beta, b)):
            for n2 in range(pair(gamma, c)):
                num = tuple(n0 * cof[0][j] + n1 * cof[1][j] + n2 * cof[2][j] for j in range(3))
                if all(x % dt == 0 for x in num):
                    out.append(tuple(x // dt for x in num))
    return out  # type: ignore[return-value]


# --------------------------------------------------------------------------
# framings and domains

class Framing:
    """Deterministic choice of an oriented dual basis for each primitive vector.

    The basis ``(alpha1, alpha2, alpha3)`` assigned to ``a`` satisfies
    ``alpha1(a) = 1``, ``alpha2(a) = alpha3(a) = 0`` and has determinant one.
    A framing can be modified by a shift of ``alpha1`` inside ``H(a)`` and an
    SL(2, Z) change of the basis ``(alpha2, alpha3)``; see :meth:`twisted`.
    """

    def __init__(self, shift: tuple[int, int] = (0, 0),
                 sl2: tuple[tuple[int, int], tuple[int, int]] = ((1, 0), (0, 1))):
        (p, q), (r, s) = sl2
        if p * s - q * r != 1:
            raise LatticeError("sl2 twist must have determinant one")
        self.shift = tuple(shift)
        self.sl2 = ((p, q), (r, s))
        self._cache: dict[Vec, Mat] = {}

    def __repr__(self) -> str:
        return f"Framing(shift={self.shift}, sl2={self.sl2})"

    def twisted(self, shift=(0, 0), sl2=((1, 0), (0, 1))) -> "Framing":
        return Framing(shift, sl2)

    def __call__(self, a: Sequence[int]) -> Mat:
        a = vec(a)
        hit = self._cache.get(a)
        if hit is not None:
            return hit
        if not is_primitive(a):
            raise LatticeError(f"{a} is not primitive")
        _, u = _unimodular_to_e1(a)
        a1, a2, a3 = (tuple(r) for r in u)
        (p, q), (r, s) = self.sl2
        b2 = add(scale(p, a2), scale(q, a3))
        b3 = add(scale(r, a2), scale(s, a3))
        b1 = add(a1, add(scale(self.shift[0], b2), scale(self.shift[1], b3)))
        basis = (b1, b2, b3)
        self._cache[a] = basis  # type: ignore[assignment]
        return basis  # type: ignore[return-value]


STANDARD_FRAMING = Framing()


def framing_of(a: Sequence[int]) -> Mat:
    return STANDARD_FRAMING(a)


def in_domain(a: Sequence[int], x: Sequence[complex]) -> bool:
    """Membership of ``x`` in the open set ``U_a^+``."""
    _, a2, a3 = framing_of(a)
    return (pair(a2, x) * pair(a3, x).conjugate()).imag > 0


def framing_coordinates(basis: Mat, mu: Sequence[int]) -> Vec:
    """Coordinates ``m`` with ``mu = sum m_i alpha_i`` in the given basis."""
    # mu = m @ basis and the basis has determinant one, so m is integral
    return pullback(mu, inverse(basis))


# --------------------------------------------------------------------------
# the affine group ISL(3, Z)

@dataclass(frozen=True)
class GroupElement:
    """Element ``(g, mu)`` of SL(3, Z) x| Z^3 acting by ``(w, x) -> (w - mu(x), g x)``.

    Composition follows from the action: ``(g, mu)(h, nu) = (gh, mu o h + nu)``.
    """

    g: Mat = IDENTITY
    mu: Vec = (0, 0, 0)

    def __post_init__(self):
        object.__setattr__(self, "g", mat(self.g))
        object.__setattr__(self, "mu", vec(self.mu))
        if det(self.g) != 1:
            raise LatticeError("linear part must have determinant one")

    @classmethod
    def translation(cls, mu: Sequence[int]) -> "GroupElement":
        return cls(IDENTITY, vec(mu))

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(matmul(self.g, other.g), add(pullback(self.mu, other.g), other.mu))

    def inverse(self) -> "GroupElement":
        gi = inverse(self.g)
        return GroupElement(gi, neg(pullback(self.mu, gi)))

    @property
    def is_translation(self) -> bool:
        return self.g == IDENTITY

    def act(self, w: complex, x: Sequence[complex]) -> tuple[complex, tuple]:
        return w - pair(self.mu, x), apply(self.g, x)

    def act_vector(self, a: Sequence[int]) -> Vec:
        return apply(self.g, vec(a))  # type: ignore[return-value]


@dataclass(frozen=True)
class HomPoint:
    """A point ``(w, x)`` of C x C^3 up to common complex rescaling."""

    w: complex
    x: tuple

    def __post_init__(self):
        object.__setattr__(self, "w", complex(self.w))
        object.__setattr__(self, "x", tuple(complex(c) for c in self.x))
        x = self.x
        if all(abs((x[i] * x[j].conjugate()).imag) == 0 for i in range(3) for j in range(i)):
            raise LatticeError("x lies in C . R^3")

    def scaled(self, lam: complex) -> "HomPoint":
        return HomPoint(lam * self.w, tuple(lam * c for c in self.x))


def group_act(el: GroupElement, p: HomPoint) -> HomPoint:
    w, x = el.act(p.w, p.x)
    return HomPoint(w, x)


# --------------------------------------------------------------------------
# enumeration helpers

def primitive_vectors(bound: int) -> list[Vec]:
    """All primitive vectors with entries in ``[-bound, bound]``."""
    r = range(-bound, bound + 1)
    return [(i, j, k) for i in r for j in r for k in r if math.gcd(math.gcd(i, j), k) == 1]


def euler_phi(n: int) -> int:
    return sum(1 for r in range(n) if math.gcd(r, n) == 1)
