import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from horotile.algebra import (
    LAMBDA,
    DyadicRes,
    GoldenInt,
    GoldenRational,
    dyadic_add,
    dyadic_div,
    dyadic_inv_odd,
    dyadic_neg,
    dyadic_scale,
    golden_mul,
    pi_m,
    sigma_m,
)


def test_modular_add():
    assert dyadic_add(DyadicRes(5, 4), DyadicRes(13, 4)) == DyadicRes(2, 4)


def test_neg_zero():
    assert dyadic_neg(DyadicRes(0, 16)) == DyadicRes(0, 16)


def test_scale_is_repeated_add():
    rng = random.Random(0)
    for _ in range(1000):
        x = DyadicRes(rng.randrange(1 << 16), 16)
        assert dyadic_scale(3, x) == x + x + x


def test_precision_mismatch():
    with pytest.raises(ValueError):
        DyadicRes(1, 4) + DyadicRes(1, 5)


@pytest.mark.parametrize("bad", [0, 65])
def test_precision_bounds(bad):
    with pytest.raises(ValueError):
        DyadicRes(1, bad)


def test_inverse_examples():
    assert dyadic_inv_odd(DyadicRes(3, 4)) == DyadicRes(11, 4)
    assert dyadic_inv_odd(DyadicRes(1, 16)) == DyadicRes(1, 16)
    with pytest.raises(ValueError):
        dyadic_inv_odd(DyadicRes(2, 8))


def test_every_unit_mod_256_inverts():
    for u in range(1, 256, 2):
        x = DyadicRes(u, 8)
        assert x * dyadic_inv_odd(x) == DyadicRes(1, 8)


def test_division_examples():
    assert dyadic_div(DyadicRes(3, 16), 3) == DyadicRes(1, 16)
    assert dyadic_div(DyadicRes(1, 4), 3) == DyadicRes(11, 4)
    assert dyadic_div(DyadicRes(1, 5), 5) == DyadicRes(13, 5)
    with pytest.raises(ValueError):
        dyadic_div(DyadicRes(1, 8), 4)


def test_divide_by_three_exhaustive():
    for v in range(256):
        x = DyadicRes(v, 8)
        q = dyadic_div(x, 3)
        assert q + q + q == x


def test_pi_sigma():
    x = DyadicRes(5, 4)
    assert pi_m(x, 2) == Fraction(1, 4)
    assert sigma_m(x, 2) == DyadicRes(1, 2)
    assert all(pi_m(DyadicRes(0, 8), m) == 0 for m in range(9))
    # at m = N there are no integer digits left
    assert sigma_m(x, 4) is None


@given(st.integers(0, 1000), st.integers(11, 32))
def test_pi_of_small_integer(e, n):
    x = DyadicRes(e, n)
    for m in range(n + 1):
        if (1 << m) > e:
            assert pi_m(x, m) == Fraction(e, 1 << m)


@pytest.mark.parametrize("n", [4, 8, 16, 32])
@given(data=st.data())
def test_ring_axioms(n, data):
    v = st.integers(0, (1 << n) - 1)
    x, y, z = (DyadicRes(data.draw(v), n) for _ in range(3))
    assert (x + y) + z == x + (y + z)
    assert x * y == y * x
    assert x * (y + z) == x * y + x * z


@given(st.integers(0, 1 << 20), st.integers(0, 1 << 20), st.integers(1, 11))
def test_truncation_commutes(a, b, m):
    x, y = DyadicRes(a, 12), DyadicRes(b, 12)
    assert (x * y).truncate(m) == x.truncate(m) * y.truncate(m)
    assert (x + y).truncate(m) == x.truncate(m) + y.truncate(m)


def test_json_roundtrip_and_bits():
    x = DyadicRes(6, 4)
    assert x.bits() == "0110"
    assert DyadicRes.from_json(x.to_json()) == x
    assert DyadicRes(15, 4).signed() == -1


def test_golden_products():
    assert golden_mul(LAMBDA, LAMBDA) == GoldenInt(1, 1)
    assert GoldenInt(1, 0) * GoldenInt(4, -7) == GoldenInt(4, -7)
    assert GoldenInt(2, 3) * GoldenInt(5, -1) == GoldenInt(7, 10)


@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50))
def test_golden_sign_and_rational_part(p, q, r, s):
    u, v = GoldenInt(p, q), GoldenInt(r, s)
    prod = u * v
    assert prod.sign() == (float(prod) > 0) - (float(prod) < 0) or abs(float(prod)) < 1e-9
    assert prod.is_rational() == (prod.q == 0)
    assert u.norm() == (u * u.conjugate()).p and (u * u.conjugate()).q == 0


def test_golden_rational_field():
    x = GoldenRational(GoldenInt(3, 2), 7)
    assert x * x.inverse() == GoldenRational(1)
    inv_lam = GoldenRational(LAMBDA).inverse()
    assert inv_lam == GoldenRational(GoldenInt(-1, 1))
    assert GoldenRational(GoldenInt(4, 0), 6).as_fraction() == Fraction(2, 3)
    assert GoldenRational(GoldenInt(0, 1)) > GoldenRational(GoldenInt(1, 0))
