from fractions import Fraction as F

import pytest

from gammagerbe import bernoulli as B


def test_bernoulli_numbers():
    assert B.bernoulli_numbers(4) == (1, F(-1, 2), F(1, 6), 0, F(-1, 30))


def test_b10_is_one():
    assert B.multi_bernoulli(1, 0).evaluate(F(3), [F(2)]) == F(1, 2)


def test_b12_closed_form():
    z, t = F(2, 3), F(5, 7)
    assert B.B12.evaluate(z, [t]) == z * z / t - z + t / 6


def test_p2_closed_form():
    w, x1, x2 = F(1, 2), F(3), F(-2, 5)
    expect = (w * w - (x1 + x2) * w + (x1 * x1 + x2 * x2 + 3 * x1 * x2) / 6) / (x1 * x2)
    assert B.P2.evaluate(w, [x1, x2]) == expect


@pytest.mark.parametrize("r", range(1, 5))
@pytest.mark.parametrize("n", range(1, 6))
def test_difference_relation(r, n):
    for i in range(1, r + 1):
        assert B.check_difference(r, n, i)


def test_difference_relation_without_factor_n_fails():
    assert B.check_difference(2, 1, 1, literal=True)
    assert not B.check_difference(2, 3, 1, literal=True)


@pytest.mark.parametrize("r", range(1, 5))
@pytest.mark.parametrize("m", [2, 3])
def test_subdivision(r, m):
    for n in range(0, 6):
        assert B.subdivision_identity(r, n, m)


def test_symmetry_and_table():
    p = B.multi_bernoulli(3, 4)
    assert B.is_symmetric(p)
    rows = p.to_table()
    assert all(set(r) == {"exponents", "coefficient"} for r in rows)


def test_zero_argument_rejected():
    with pytest.raises(ZeroDivisionError):
        B.P2.evaluate(1, [0, 1])


def test_w_coefficients_match_evaluate():
    x = [F(2), F(-3), F(5, 2)]
    c = B.P3.w_coefficients(x)
    w = F(7, 3)
    assert sum(ck * w**k for k, ck in enumerate(c)) == B.P3.evaluate(w, x)
