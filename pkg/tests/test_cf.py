import random

import pytest
from hypothesis import given, strategies as st

from horotile.algebra import GoldenInt
from horotile.cf import (
    CFSequence,
    cf_coefficients,
    cf_denominators,
    check_cf_properties,
    first_reduction_violation,
    hecke_entry_scan,
    random_reduced_sequence,
)

LAM = GoldenInt(0, 1)


def test_first_denominators():
    seq = CFSequence((0, 1, 1), (1, 1))
    q = cf_denominators(seq)
    assert q[0] == 1 and q[1] == LAM and q[2] == GoldenInt(2, 1)
    assert cf_coefficients(seq) == [(0, 1), (1, 0), (1, 2)]


def test_first_coefficient_pair():
    for r1 in range(1, 6):
        assert cf_coefficients(CFSequence((0, r1), (1,)))[1] == (r1, 0)


def test_reduction_rule():
    bad = CFSequence((0, 1, 1), (1, -1))
    assert first_reduction_violation(bad) == 1
    with pytest.raises(ValueError):
        cf_denominators(bad)
    # eps r = +1 after r = 1 is allowed
    assert CFSequence((0, 1, 1), (1, 1)).reduced


def test_validation():
    with pytest.raises(ValueError):
        CFSequence((0, 0), (1,))
    with pytest.raises(ValueError):
        CFSequence((0, 1), (2,))
    with pytest.raises(ValueError):
        CFSequence((0, 1, 1), (1,))


@given(st.integers(0, 2**32))
def test_recursions_agree(seed):
    seq = random_reduced_sequence(random.Random(seed), 20)
    q = cf_denominators(seq)
    for (a, b), qn in zip(cf_coefficients(seq), q):
        assert GoldenInt(b, a) == qn


def test_properties_random():
    rng = random.Random(7)
    for _ in range(1000):
        seq = random_reduced_sequence(rng, 20)
        r = check_cf_properties(seq)
        assert r["pass"], r


def test_constant_two_minus():
    seq = CFSequence((0,) + (2,) * 12, (-1,) * 12)
    assert check_cf_properties(seq)["pass"]
    a = [x for x, _ in cf_coefficients(seq)]
    assert all(a[i] < a[i + 1] for i in range(len(a) - 1))


def test_hecke_scan_small():
    r = hecke_entry_scan(6)
    assert r["pass"] and set(r["rational_entries_found"]) <= {-1, 0, 1}
    assert {-1, 0, 1} <= set(r["rational_entries_found"])


@pytest.mark.slow
def test_hecke_scan_12():
    r6, r12 = hecke_entry_scan(6), hecke_entry_scan(12)
    assert r12["pass"] and r12["elements_seen"] > r6["elements_seen"]
    assert r12["rational_entries_found"] == r6["rational_entries_found"]
