import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from horotile.geom import (
    INF,
    HPoint,
    Horoball,
    Isometry,
    apply_cusp,
    apply_horoball,
    apply_point,
    ball_area,
    compose,
    hyp_distance,
    invert,
    to_disk,
)
from horotile.treeaction import C_MAT, L_MAT

S = Isometry(0, 1, -1, 0)


def random_word_matrix(rng, length):
    g = Isometry.identity()
    for _ in range(length):
        g = compose(g, rng.choice([C_MAT, L_MAT, invert(L_MAT), S]))
    return g


def test_parabolic_power():
    assert compose(L_MAT, L_MAT) == Isometry(1, 2, 0, 1)


def test_C_has_order_three():
    assert compose(C_MAT, compose(C_MAT, C_MAT)).is_identity()


def test_inverse_words():
    rng = random.Random(1)
    for _ in range(100):
        g = random_word_matrix(rng, rng.randint(1, 10))
        assert compose(g, invert(g)).is_identity()


def test_sign_normalization():
    assert Isometry(0, -1, 1, 0) == Isometry(0, 1, -1, 0)
    g = Isometry(-2, -1, -1, -1)
    assert g.c > 0


def test_det_and_kind_errors():
    with pytest.raises(ValueError):
        Isometry(1, 1, 1, 1)
    with pytest.raises(TypeError):
        compose(L_MAT, Isometry(1, 0, 0, 1, kind="G"))


def test_point_images():
    z = apply_point(L_MAT, HPoint(0, 1))
    assert (z.x, z.y) == (1, 1)
    assert apply_cusp(C_MAT, Fraction(0)) == 1
    assert apply_cusp(S, INF) == 0
    assert apply_cusp(C_MAT, Fraction(1)) is INF


def test_horoball_images():
    assert apply_horoball(S, Horoball.at_infinity(1)) == Horoball(0, 1)
    assert apply_horoball(L_MAT, Horoball(0, 1)) == Horoball(1, 1)
    assert apply_horoball(Isometry(1, 0, 2, 1), Horoball.at_infinity(1)) == Horoball(Fraction(1, 2), Fraction(1, 4))


def test_horoball_equivariance():
    rng = random.Random(2)
    h0 = Horoball(Fraction(1, 3), Fraction(1, 9))
    for _ in range(100):
        g = random_word_matrix(rng, rng.randint(0, 8))
        h = random_word_matrix(rng, rng.randint(0, 8))
        assert apply_horoball(compose(g, h), h0) == apply_horoball(g, apply_horoball(h, h0))


def test_distances():
    i = HPoint(0, 1)
    assert hyp_distance(i, i) == 0
    assert hyp_distance(i, HPoint(0, 2)) == pytest.approx(math.log(2), abs=1e-15)
    with pytest.raises(ValueError):
        hyp_distance(i, HPoint(0, 0))


@given(st.integers(0, 10_000), st.floats(-3, 3), st.floats(0.1, 3), st.floats(-3, 3), st.floats(0.1, 3))
def test_distance_invariance(seed, x1, y1, x2, y2):
    g = random_word_matrix(random.Random(seed), 6)
    z1, z2 = HPoint(x1, y1), HPoint(x2, y2)
    d = hyp_distance(z1, z2)
    assert hyp_distance(apply_point(g, z1), apply_point(g, z2)) == pytest.approx(d, rel=1e-9, abs=1e-10)


def test_ball_area():
    assert ball_area(0) == 0
    r = 1e-4
    assert ball_area(r) / (math.pi * r * r) == pytest.approx(1, abs=1e-6)
    assert ball_area(math.log(2)) == pytest.approx(math.pi / 2, rel=1e-14)


def test_cayley():
    assert abs(to_disk(HPoint(0, 1))) < 1e-15
    # boundary to boundary; (z - i)/(z + i) sends 0 to -1
    w = to_disk(HPoint(0, 0))
    assert w == pytest.approx(-1) and abs(w) == pytest.approx(1)
    assert to_disk(HPoint.infinity()) == 1
