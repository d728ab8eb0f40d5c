"""Acceptance criteria 1-10.

Each test prints one ``PASS``/``FAIL`` line with its wall time, straight to the
terminal, bypassing pytest capture.  Also runnable as a script.
"""
from __future__ import annotations

import math
import random
import sys
import time
from contextlib import contextmanager

import pytest

from horotile import _kernels_py, density, kernels
from horotile.algebra import DyadicRes, dyadic_div
from horotile.cf import check_cf_properties, hecke_entry_scan, random_reduced_sequence
from horotile.cli import conjugacy_checks, dyadic_checks, ford_checks
from horotile.geom import HPoint
from horotile.tiling import build_degenerate, cusp_field, enumerate_hecke
from horotile.treeaction import (
    check_identities,
    coset_index_E,
    free_check,
    kernel_action_check,
    pent_lattice_det,
)


_capsys = None


@pytest.fixture(autouse=True)
def _terminal(capsys):
    global _capsys
    _capsys = capsys
    yield
    _capsys = None


def _say(line: str) -> None:
    if _capsys is None:
        print(line, flush=True)
        return
    with _capsys.disabled():
        print(line, flush=True)


@contextmanager
def _criterion(num: int, title: str, budget: float | None = None):
    """Print PASS/FAIL for the block; a time budget overrun counts as FAIL."""
    t0 = time.perf_counter()
    ok, err = True, None
    try:
        yield
    except AssertionError as exc:
        ok, err = False, exc
    dt = time.perf_counter() - t0
    if budget is not None and dt >= budget:
        ok = False
        err = err or AssertionError(f"took {dt:.2f}s, budget {budget}s")
    line = f"criterion {num:2d} {'PASS' if ok else 'FAIL'} {dt:7.2f}s  {title}"
    _say(line)
    if err is not None:
        raise err


def test_c01_triangular_transitivity():
    with _criterion(1, f"triangular orbit = 4^N, N=1..6 [{kernels.BACKEND}]", budget=10):
        for n in range(1, 7):
            for w in (0, 1, 7):
                size = int(kernels.orbit_tri(n, w)[1])
                assert size == 4 ** n, (n, w, size)


def test_c02_pentagonal_transitivity():
    with _criterion(2, f"pentagonal orbit = 16^N, N=1..3 [{kernels.BACKEND}]", budget=30):
        for n in range(1, 4):
            for k in range(4):
                for w in (0, 5):
                    size = int(kernels.orbit_pent(n, w, k)[1])
                    assert size == 16 ** n, (n, k, w, size)


def test_c01_c02_backends_agree():
    """Compiled and fallback kernels return identical orbit data (not a numbered criterion)."""
    if kernels.BACKEND == "python":
        pytest.skip("compiled extension not built")
    for n in range(1, 5):
        for w in (0, 1, 7):
            a, b = kernels.orbit_tri(n, w), _kernels_py.orbit_tri(n, w)
            assert bytes(a[0]) == bytes(b[0]) and int(a[1]) == int(b[1])
    for n in (1, 2):
        for k in range(4):
            a, b = kernels.orbit_pent(n, 5, k), _kernels_py.orbit_pent(n, 5, k)
            assert bytes(a[0]) == bytes(b[0]) and int(a[1]) == int(b[1])


def test_c03_determinant():
    with _criterion(3, "lattice determinant, k in [-10, 10]"):
        for k in range(-10, 11):
            got = pent_lattice_det(k)
            assert got == 5 * ((k - 2) * (k - 1) * k * (k + 1) + 1) and got % 2 == 1, k


def test_c04_composite_identities():
    with _criterion(4, "composite identities, exhaustive mod 2^4, 1000 random mod 2^16"):
        r = check_identities(4, 1000, 16, seed=0)
        assert r["pass"], r["identities"]
        assert len(r["identities"]) == 8


def test_c05_index_free_kernel():
    with _criterion(5, "index 6, freeness to length 12, kernel acts trivially mod 2^8"):
        idx = coset_index_E(10)
        assert idx["index"] == 6 and idx["stabilized"] and not idx["anomalies"], idx
        free = free_check(12)
        assert free["pass"] and free["identity_words"] == 0
        ker = kernel_action_check(12, 8)
        assert ker["pass"] and ker["zero_sum_words"] > 0


def test_c06_conjugacy():
    with _criterion(6, "conjugate_shift validity, equivariance, divide by 3 and 5"):
        for r in conjugacy_checks(seed=42, words=100, precision=12):
            assert r["pass"], r


def test_c07_projections():
    with _criterion(7, "pi_m on integers and on 1/3 (period 2, non-convergent)"):
        for r in dyadic_checks(16):
            assert r["pass"], r
        third = dyadic_div(DyadicRes(1, 16), 3)
        assert third * 3 == DyadicRes(1, 16)


def test_c08_ford_hecke():
    with _criterion(8, "Ford q <= 50 exact; Hecke length 8 disjoint and golden"):
        for r in ford_checks(50):
            assert r["pass"], r
        p = enumerate_hecke(8)
        assert not p.overlaps
        assert cusp_field(p) == "golden"


def test_c09_hecke_entries_and_cf():
    with _criterion(9, "Hecke entries in {-1,0,1} to length 12; CF properties on 10^4 sequences"):
        scan = hecke_entry_scan(12)
        assert scan["pass"] and set(scan["rational_entries_found"]) <= {-1, 0, 1}
        rng = random.Random(2024)
        for _ in range(10_000):
            seq = random_reduced_sequence(rng, 20)
            r = check_cf_properties(seq)
            assert r["pass"], (seq, r)


def test_c10_densities():
    with _criterion(10, "hexagonal, gap, 3/pi closed forms and MC; full tiling density 1"):
        assert abs(density.hexagonal_disk_density() - math.pi / math.sqrt(12)) < 1e-12
        assert abs(density.hexagon_voronoi_density(1.0) - math.pi / math.sqrt(12)) < 1e-12
        hexa = density.hexagon_mc(10**6, 42)
        assert abs(hexa.value - math.pi / math.sqrt(12)) < 4 * hexa.stderr
        assert abs(density.ideal_gap_area() - (math.pi - 3)) < 1e-12
        gap = density.gap_area_mc(10**6, 42)
        assert abs(gap.value - (math.pi - 3)) < 4 * gap.stderr
        assert abs(density.horoball_triangle_density() - 3 / math.pi) < 1e-12
        assert abs(density.cusp_area_quadrature() * 3 / density.triangle_area_quadrature() - 3 / math.pi) < 1e-12
        full = density.degenerate_tiling_oracle(build_degenerate([0] * 8, 8))
        for r in (0.5, 1.0, 2.0):
            assert density.relative_density(full, HPoint(0.0, 1.0), r, 10**5, 42).value == 1.0
        assert density.relative_density(density.full_oracle(), HPoint(0.0, 1.0), 3.0, 10**5, 1).value == 1.0


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
