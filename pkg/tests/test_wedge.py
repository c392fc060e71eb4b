import pytest

from gammagerbe import lattice as L
from gammagerbe import wedge as W
from gammagerbe.lattice import E1, E2, E3, GroupElement
from gammagerbe.special import DomainError
from conftest import rel

W0 = 0.17 + 0.11j


def test_inversion(xstar):
    assert rel(W.wedge_gamma(E1, E2, W0, xstar) * W.wedge_gamma(E2, E1, W0, xstar), 1) < 1e-12
    assert W.wedge_gamma(E1, E1, W0, xstar) == 1


def test_domain_violation(xstar):
    with pytest.raises(DomainError):
        W.wedge_gamma((-1, 0, 0), E2, W0, xstar)


@pytest.mark.parametrize("triple", [(E1, E2, E3), (E1, (1, 2, 0), E3)])
def test_three_term(xstar, triple):
    a, b, c = triple
    lhs = W.wedge_gamma(a, b, W0, xstar) * W.wedge_gamma(b, c, W0, xstar) * W.wedge_gamma(c, a, W0, xstar)
    assert rel(lhs, W.cocycle_phi_abc(a, b, c, W0, xstar)) < 1e-11


@pytest.mark.parametrize("b", [E2, (1, 2, 0)])
def test_oracle(xstar, b):
    assert rel(W.wedge_gamma(E1, b, W0, xstar), W.wedge_gamma_direct(E1, b, W0, xstar)) < 1e-11


def test_pabc_e123_is_p3():
    from fractions import Fraction as F
    from gammagerbe.bernoulli import P3
    x = (F(2), F(-3), F(5))
    assert W.poly_Pabc(E1, E2, E3)(F(1, 3), x) == P3.evaluate(F(1, 3), x)
    assert W.poly_Pabc(E1, E1, E2).is_zero
    assert W.cocycle_phi_abc(E1, E1, E2, 0.1, (1, 1j, 2)) == 1


def test_pa_vanishes():
    assert W.poly_Pa(E1, (1, 0, 0), (0, 1, 0), 0.1, (1, 1j, 2)) == 0


def test_translation_cocycle_integer():
    from fractions import Fraction as F
    x = (F(2), F(-3, 2), F(5, 7))
    psi = -W.translation_coboundary(E1, (1, 2, 3), (0, 1, -1), (2, 0, 1), F(1, 5), x)
    assert psi.denominator == 1
    # framing of e1 is the standard basis: l = (1,2,3), m = (0,1,-1), n = (2,0,1)
    assert psi == -2 * 1 * 3


def test_delta_composition(xstar):
    mu, nu = (1, 2, -1), (0, 1, 1)
    lhs = W.delta(E1, L.add(mu, nu), W0, xstar)
    import cmath
    rhs = (cmath.exp(2j * cmath.pi * complex(W.poly_Pa(E1, mu, nu, W0, xstar)))
           * W.delta(E1, mu, W0, xstar) * W.delta(E1, nu, W0 + L.pair(mu, xstar), xstar))
    assert rel(lhs, rhs) < 1e-11


def test_phi_ab_identity_is_one(xstar):
    assert rel(W.cocycle_phi_ab(E1, E2, GroupElement(), W0, xstar), 1) < 1e-14


def test_exp_quadratic_detects_cubic():
    import cmath
    assert W.exp_quadratic_deviation(lambda w: cmath.exp(w * w), 0.1, 0.05) < 1e-10
    assert W.exp_quadratic_deviation(lambda w: cmath.exp(w ** 3), 0.1, 0.05) > 1e-3
