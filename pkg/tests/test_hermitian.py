import pytest

from gammagerbe import hermitian as H
from gammagerbe import wedge as W
from gammagerbe.lattice import E1, E2, E3
from conftest import rel

W0 = 0.17 + 0.11j


def test_h2_reflection():
    z, t = 0.3 + 0.2j, 0.1 + 0.8j
    assert abs(H.h2(z, t) * H.h2(-z, -t) - 1) < 1e-14


def test_theta_norm_invariant_under_translation():
    z, t = 0.3 + 0.2j, 0.1 + 0.8j
    assert rel(H.norm_theta(z + t + 2, t), H.norm_theta(z, t)) < 1e-12


def test_hermitian_cocycle(xstar):
    hab = H.h_ab(E1, E2, W0, xstar)
    assert rel(hab * H.h_ab(E2, E1, W0, xstar), 1) < 1e-13
    prod = hab * H.h_ab(E2, E3, W0, xstar) * H.h_ab(E3, E1, W0, xstar)
    assert rel(prod, abs(W.cocycle_phi_abc(E1, E2, E3, W0, xstar)) ** -2) < 1e-12


@pytest.mark.parametrize("b", [E2, (1, 2, 0)])
def test_series_oracle(xstar, b):
    assert abs(H.log_h_ab_series_oracle(E1, b, W0, xstar) - H.log_h_ab(E1, b, W0, xstar)) < 1e-6


@pytest.mark.parametrize("n", range(1, 6))
def test_im_product(n):
    z = [0.3 + 1j, -1 + 0.2j, 0.5 - 0.7j, 2 + 0.1j, -0.4 - 1j][:n]
    w = [1 + 0.1j, 0.2 + 1j, -1 + 0.5j, -0.3 - 1j, 0.8 - 0.6j][:n]
    lhs, rhs = H.im_product_sides(z, w)
    assert abs(lhs - rhs) < 1e-10 * max(1, abs(lhs))


def test_curvature_h2_matches_fd():
    z, t = 0.2 + 0.1j, 0.3 + 0.9j
    C = H.curvature_h2(z, t)
    Cfd = H.wirtinger_hessian_fd(lambda u: H.log_h2(*u), [z, t])
    assert abs(C - Cfd).max() < 1e-5 * abs(C).max()


def test_curvature_h3_matches_fd():
    z, t, s = 0.2 + 0.1j, 0.3 + 0.9j, -0.1 - 0.7j
    C = H.curvature_h3(z, t, s)
    Cfd = H.wirtinger_hessian_fd(lambda u: H.log_h3(*u), [z, t, s])
    assert abs(C - Cfd).max() < 1e-5 * abs(C).max()


def test_fibre_integral():
    import time
    t0 = time.perf_counter()
    assert abs(H.fibre_integral_c1(0.2 + 1.1j) - 1) < 1e-3
    assert time.perf_counter() - t0 < 10
