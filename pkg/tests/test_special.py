import cmath

import pytest

from gammagerbe import special as S
from conftest import rel


def test_theta_zero_at_lattice():
    assert S.theta0(0, 1j) == 0


def test_theta_quasi_period():
    z, tau = 0.13 + 0.05j, 0.2 + 0.9j
    assert rel(S.theta0(z + tau, tau), -cmath.exp(-2j * cmath.pi * z) * S.theta0(z, tau)) < 1e-12


def test_theta_real_tau_rejected():
    with pytest.raises(S.DomainError):
        S.theta0(0.1, 1.0)


def test_gamma_pole_signalled():
    with pytest.raises(S.PoleZeroError):
        S.elliptic_gamma(0, 1j, 1.2j)


def test_gamma_difference():
    z, t, s = 0.1 + 0.2j, 0.3 + 0.8j, -0.2 + 1.1j
    assert rel(S.elliptic_gamma(z + s, t, s), S.theta0(z, t) * S.elliptic_gamma(z, t, s)) < 1e-12


@pytest.mark.parametrize("signs", [(1, -1), (-1, 1), (-1, -1)])
def test_chambers_agree(signs):
    t, s = complex(0.2, 0.7 * signs[0]), complex(-0.1, 0.9 * signs[1])
    z = 0.3 - 0.1j
    assert rel(S.elliptic_gamma(z, t, s), S.elliptic_gamma_reflected(z, t, s)) < 1e-12


def test_tail_bound_reported():
    v, b = S.elliptic_gamma(0.1, 1j, 1j, full_output=True)
    assert 0 <= b < 1e-14


def test_truncation_cap():
    pol = S.TruncationPolicy(max_terms=10)
    with pytest.raises(S.TruncationError):
        S.elliptic_gamma(0.1, 0.01j, 0.01j, pol)


def test_sl2_word_roundtrip():
    g = ((5, 2), (2, 1))
    assert S.word_product(S.sl2_word(g)) == g


@pytest.mark.parametrize("g", [S.S_MATRIX, S.T_MATRIX, ((-1, 0), (0, -1)), ((2, 1), (3, 2))])
def test_theta_multiplier(g):
    z, tau = 0.17 + 0.05j, 0.1 + 1.1j
    z2, t2 = S.act_sl2(S.sl2_inverse(g), z, tau)
    assert rel(S.theta0(z, tau), S.theta_multiplier(g, z, tau) * S.theta0(z2, t2)) < 1e-11


def test_multiple_gamma_base_cases():
    z = 0.2 + 0.1j
    assert rel(S.multiple_gamma(0, z, [0.9j]), S.theta0(z, 0.9j)) < 1e-14
    assert rel(S.multiple_gamma(1, z, [0.9j, 0.1 + 0.7j]), S.elliptic_gamma(z, 0.9j, 0.1 + 0.7j)) < 1e-14


@pytest.mark.parametrize("r", [2, 3])
def test_narukawa(r):
    x = [1.0, 0.3 + 0.9j, -0.8 + 0.4j][:r]
    assert S.narukawa_check(r, 0.21 + 0.1j, x) < 1e-11
