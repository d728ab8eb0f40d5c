"""Both kernel backends must agree on every output."""
import os

import numpy as np
import pytest

from horotile import _kernels_py, kernels
from horotile.treeaction import _E_INV, _E_WEIGHTS, E_LETTERS, _E_matrices, tri_affine

compiled = pytest.importorskip("horotile._kernels")


@pytest.mark.skipif(os.environ.get("HOROTILE_PURE_PYTHON") == "1", reason="fallback forced")
def test_selected_backend_is_compiled():
    assert kernels.BACKEND == "cython"


@pytest.mark.parametrize("n,w", [(1, 0), (3, 1), (5, 7)])
def test_orbit_tri_agrees(n, w):
    a, ca = compiled.orbit_tri(n, w)
    b, cb = _kernels_py.orbit_tri(n, w)
    assert ca == cb and np.array_equal(a, b)


@pytest.mark.parametrize("n,w,k", [(1, 0, 0), (2, 5, 3)])
def test_orbit_pent_agrees(n, w, k):
    a, ca = compiled.orbit_pent(n, w, k)
    b, cb = _kernels_py.orbit_pent(n, w, k)
    assert ca == cb and np.array_equal(a, b)


def test_word_walk_agrees():
    args = (_E_matrices(), _E_INV, _E_WEIGHTS, 7, 0, True)
    assert compiled.walk_reduced_words(*args) == _kernels_py.walk_reduced_words(*args)
    mats = np.array([tri_affine(w) for w in E_LETTERS], dtype=np.int64)
    args = (mats, _E_INV, _E_WEIGHTS, 7, 256, False)
    assert compiled.walk_reduced_words(*args) == _kernels_py.walk_reduced_words(*args)


def test_walk_finds_identity():
    # C has order 3, so C C C is an identity word (letters: C, C^-1)
    c = np.array([[[0, 1], [-1, 1]], [[1, -1], [1, 0]]], dtype=np.int64)
    for mod in (compiled, _kernels_py):
        words, idents, *_, first = mod.walk_reduced_words(c, [1, 0], [[1, 0], [-1, 0]], 3, 0, True)
        assert idents == 2 and first == (0, 0, 0)
