import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from horotile.algebra import DyadicRes
from horotile.geom import apply_cusp
from horotile.treeaction import (
    LabelPair,
    LabelQuad,
    Word,
    act_C_tri,
    act_L_pent,
    act_L_tri,
    act_P_pent,
    act_word_pent,
    act_word_tri,
    coset_index_E,
    exponent_sums,
    free_check,
    in_symmetry_kernel,
    matrix_of_word,
    orbit_pent_size,
    orbit_tri,
    orbit_tri_size,
    pent_lattice_det,
    random_E_word,
    random_word,
    same_E_coset,
)


def pair(a, b, w, n=16):
    return LabelPair.of(a, b, w, n)


def test_L_and_C_examples():
    assert act_L_tri(pair(0, 0, 0)).values() == (1, 0)
    assert act_C_tri(pair(2, 5, 7, 4)).values() == (0, 2)


def test_C_cubed_exhaustive():
    for a, b, w in itertools.product(range(16), repeat=3):
        s = pair(a, b, w, 4)
        assert act_word_tri("C^3", s) == s


def test_word_parsing():
    assert Word.parse("L^4 C L^2 C^2") == Word.parse("L4CL2C2") == Word.parse("LLLLCLLCC")
    assert Word.parse("L^2 L^-2").letters == ()


def test_composite_examples():
    assert act_word_tri("L^4 C L^2 C^2", pair(2, 5, 0)).values() == (5, 5)
    s = pair(2, 5, 0)
    assert act_word_tri("C L^2 C^2", s).values() == (1, 7)
    assert act_word_tri("L^2 C L^4 C^2", s).values() == (2, 8)
    assert act_word_tri("R^2", s).values() == (3, 3)


def test_matrices():
    assert matrix_of_word("C^3").is_identity()
    assert apply_cusp(matrix_of_word("L"), 5) == 6
    assert matrix_of_word("R^2").entries() == (1, 0, 2, 1)


@given(st.integers(0, 2**32), st.integers(0, 2**16 - 1), st.integers(0, 2**16 - 1), st.integers(0, 2**16 - 1))
def test_functoriality(seed, a, b, w):
    rng = random.Random(seed)
    u, v = random_word(rng, 6), random_word(rng, 6)
    s = pair(a, b, w)
    assert act_word_tri(u * v, s) == act_word_tri(u, act_word_tri(v, s))


@settings(max_examples=300)
@given(st.integers(0, 2**32))
def test_fixed_sums_preserved(seed):
    rng = random.Random(seed)
    s = pair(rng.randrange(1 << 16), rng.randrange(1 << 16), rng.randrange(1 << 16))
    t = act_word_tri(random_word(rng, 10), s)
    assert t.a + t.b + t.c == s.w
    q = LabelQuad.of(*(rng.randrange(1 << 16) for _ in range(5)), rng.randrange(-5, 6), 16)
    r = act_word_pent(random_word(rng, 10, ("P", "L")), q)
    assert sum(r.quintuple(), DyadicRes(0, 16)) == q.w


def test_pentagonal_examples():
    q = LabelQuad.of(0, 0, 0, 0, 0, 1, 16)
    assert act_L_pent(q).values() == (1, 1, 0, (1 << 16) - 1)
    rng = random.Random(3)
    for _ in range(1000):
        q = LabelQuad.of(*(rng.randrange(16) for _ in range(5)), rng.randrange(4), 4)
        r = q
        for _ in range(5):
            r = act_P_pent(r)
        assert r == q


def test_pentagonal_L2():
    rng = random.Random(4)
    for _ in range(200):
        a, b, c, d, w = (rng.randrange(1 << 16) for _ in range(5))
        k = rng.randrange(-3, 4)
        got = act_word_pent("L^2", LabelQuad.of(a, b, c, d, w, k, 16)).values()
        assert got == tuple(x % (1 << 16) for x in (a + 2, b - 1 + k, c - k, d - k))


@pytest.mark.parametrize("n,size", [(1, 4), (2, 16), (6, 4096)])
def test_tri_orbits(n, size):
    assert orbit_tri_size(n, 0) == size
    assert orbit_tri_size(n, 1) == size


def test_orbit_set_matches_size():
    orb = orbit_tri(3, 5)
    assert len(orb) == 64
    assert all(isinstance(p, LabelPair) for p in orb)


@pytest.mark.parametrize("n,k,size", [(1, 0, 16), (2, 1, 256), (3, 2, 4096)])
def test_pent_orbits(n, k, size):
    assert orbit_pent_size(n, 0, k) == size


@pytest.mark.parametrize("k,det", [(1, 5), (2, 5), (3, 125)])
def test_lattice_det(k, det):
    assert pent_lattice_det(k) == det


def test_lattice_det_closed_form_range():
    for k in range(-10, 11):
        d = pent_lattice_det(k)
        assert d == 5 * ((k - 2) * (k - 1) * k * (k + 1) + 1) and d % 2 == 1


def test_exponent_sums():
    assert exponent_sums("L^2 R^2 L^-2 R^-2") == (0, 0)
    assert in_symmetry_kernel("L^2 R^2 L^-2 R^-2")
    assert exponent_sums("L^2") == (2, 0)
    with pytest.raises(ValueError):
        exponent_sums("L")


def test_kernel_words_fix_pairs():
    rng = random.Random(5)
    found = 0
    while found < 200:
        w = random_E_word(rng, rng.randint(2, 12))
        if not in_symmetry_kernel(w):
            continue
        found += 1
        s = pair(rng.randrange(1 << 16), rng.randrange(1 << 16), rng.randrange(1 << 16))
        assert act_word_tri(w, s) == s


def test_free_small():
    r = free_check(4)
    assert r["pass"] and r["identity_words"] == 0
    assert r["words_checked"] == 4 + 12 + 36 + 108


def test_index6():
    r = coset_index_E(10)
    assert r["index"] == 6 and r["stabilized"] and not r["anomalies"]


def test_same_coset():
    assert same_E_coset("L^2", "R^2")
    assert same_E_coset("L", "L^3")
    assert not same_E_coset("L", "L^2")
