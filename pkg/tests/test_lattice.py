import itertools
import math

import pytest

from gammagerbe import lattice as L
from gammagerbe.lattice import E1, E2, E3, GroupElement


def test_primitivity():
    assert L.is_primitive((2, 3, 0))
    assert not L.is_primitive((2, 4, 6))
    assert not L.is_primitive((0, 0, 0))


def test_direction_vector_standard_wedge():
    assert L.direction_vector(E1, E2) == ((0, 0, 1), 1)
    assert L.direction_vector(E1, E1) == (None, 0)
    assert L.direction_vector(E1, (-1, 0, 0)) == (None, 0)


def test_direction_vector_modulus_two():
    gamma, s = L.direction_vector(E1, (1, -2, 0))
    assert s == 2 and gamma == (0, 0, -1)


def test_non_primitive_rejected():
    with pytest.raises(L.LatticeError):
        L.direction_vector((2, 0, 0), E2)


@pytest.mark.parametrize("a,b", [(E1, E2), (E1, (1, 2, 0)), ((2, 1, 1), (1, 1, 0)), ((1, 3, 5), (2, -1, 4))])
def test_normal_form_maps_wedge(a, b):
    nf = L.normal_form(a, b)
    assert L.det(nf.g) == 1
    assert L.apply(nf.g, a) == E1
    assert L.apply(nf.g, b) == (nf.r, nf.s, 0)
    assert 0 <= nf.r < nf.s and math.gcd(nf.r, nf.s) == 1
    assert nf.s == L.direction_vector(a, b)[1]


def test_normal_form_parallel():
    assert L.normal_form(E2, E2).kind == "parallel_plus"
    assert L.normal_form(E2, (0, -1, 0)).kind == "parallel_minus"


def test_complements_and_fundamental_set():
    wd = L.Wedge(E1, (1, 2, 0))
    al, be = wd.complements
    a, b = wd.a, wd.b
    assert L.pair(al, b) == 0 and L.pair(be, a) == 0
    assert L.pair(al, a) == 2 and L.pair(be, b) == 2
    assert len(wd.fundamental_set) == 2


def test_fundamental_set_size_exhaustive_small():
    vs = [v for v in itertools.product(range(-2, 3), repeat=3) if L.is_primitive(v)]
    for a in vs[::3]:
        for b in vs[::2]:
            wd = L.Wedge(a, b)
            if wd.general:
                assert len(wd.fundamental_set) == wd.modulus


def test_fundamental_set3_e123():
    assert L.fundamental_set3(E1, E2, E3) == [(0, 0, 0)]


def test_framing_basis():
    for a in [E1, (1, 2, 0), (3, -5, 7)]:
        a1, a2, a3 = L.framing_of(a)
        assert L.pair(a1, a) == 1 and L.pair(a2, a) == 0 and L.pair(a3, a) == 0
        assert L.det((a1, a2, a3)) == 1


def test_framing_coordinates_roundtrip():
    basis = L.framing_of((1, 2, 3))
    mu = (4, -1, 7)
    m = L.framing_coordinates(basis, mu)
    back = tuple(sum(m[i] * basis[i][j] for i in range(3)) for j in range(3))
    assert back == mu


def test_in_domain_orientation(xstar):
    assert L.in_domain(E1, xstar)
    assert not L.in_domain((-1, 0, 0), xstar)


def test_group_composition_is_left_action():
    g = GroupElement(((1, 1, 0), (0, 1, 0), (0, 0, 1)), (1, 0, 2))
    h = GroupElement(((1, 0, 0), (0, 1, 0), (1, 0, 1)), (0, -1, 1))
    w, x = 0.3 + 0.1j, (1 + 0j, 0.2 + 1j, -0.5 + 0.3j)
    w1, x1 = (g @ h).act(w, x)
    w2, x2 = g.act(*h.act(w, x))
    assert abs(w1 - w2) < 1e-14 and max(abs(p - q) for p, q in zip(x1, x2)) < 1e-14
    assert (g @ g.inverse()) == GroupElement()


def test_inverse_integer_matrix():
    m = ((2, 1, 0), (1, 1, 0), (0, 3, 1))
    assert L.matmul(m, L.inverse(m)) == L.IDENTITY


def test_euler_phi():
    assert [L.euler_phi(n) for n in range(1, 8)] == [1, 1, 2, 2, 4, 2, 6]
