"""Monte-Carlo and closed-form density estimates.

Relative density of a region A in a ball B_r(p) is area(A ∩ B_r(p)) / area(B_r(p)).
Points are drawn in intrinsic polar coordinates about the centre, so mapping
the oracle, the centre and the sampling frame by one isometry reproduces the
same estimate.
"""
from __future__ import annotations

import csv
import io
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Callable, Sequence

import numpy as np
from scipy import integrate

from .geom import HPoint, Horoball, Isometry, invert

BATCH = 1 << 16  # fixed batch size: results do not depend on the thread count


class WindowError(ValueError):
    """The sampled ball leaves the region where the oracle is defined."""


@dataclass(frozen=True)
class DensityEstimate:
    value: float
    samples: int
    radius: float
    stderr: float
    seed: int

    @classmethod
    def from_hits(cls, hits: int, samples: int, radius: float, seed: int) -> "DensityEstimate":
        v = hits / samples
        return cls(v, samples, radius, math.sqrt(v * (1.0 - v) / samples), seed)


# -- oracles --------------------------------------------------------------------------


class RegionOracle:
    """Vectorized membership predicate on half-plane (or Euclidean) points.

    ``window`` is (xlo, xhi, ylo, yhi) with None for an unbounded side, or
    None when the oracle is defined everywhere.
    """

    def __init__(self, contains: Callable[[np.ndarray, np.ndarray], np.ndarray],
                 window: tuple | None = None, name: str = "region"):
        self._contains = contains
        self.window = window
        self.name = name

    def contains(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.asarray(self._contains(np.asarray(x, float), np.asarray(y, float)), dtype=bool)

    def covers(self, z: complex) -> bool:
        return bool(self.contains(np.array([z.real]), np.array([z.imag]))[0])

    def check_window(self, x: np.ndarray, y: np.ndarray) -> None:
        if self.window is None:
            return
        xlo, xhi, ylo, yhi = self.window
        bad = np.zeros(x.shape, bool)
        if xlo is not None:
            bad |= x < xlo
        if xhi is not None:
            bad |= x > xhi
        if ylo is not None:
            bad |= y < ylo
        if yhi is not None:
            bad |= y > yhi
        if bad.any():
            raise WindowError(f"{int(bad.sum())} sample points fall outside the window of {self.name}")

    def transformed(self, g: Isometry) -> "RegionOracle":
        """The oracle of g(A); the window check is dropped (it lives in the old frame)."""
        a, b, c, d = (float(e) for e in invert(g).entries())
        base = self

        def contains(x, y):
            z = x + 1j * y
            w = (a * z + b) / (c * z + d)
            return base.contains(w.real, w.imag)

        return RegionOracle(contains, None, f"{self.name} moved")

    def union(self, other: "RegionOracle") -> "RegionOracle":
        return RegionOracle(lambda x, y: self.contains(x, y) | other.contains(x, y),
                            self.window or other.window, f"{self.name}+{other.name}")


def full_oracle() -> RegionOracle:
    return RegionOracle(lambda x, y: np.ones(x.shape, bool), None, "full")


def empty_oracle() -> RegionOracle:
    return RegionOracle(lambda x, y: np.zeros(x.shape, bool), None, "empty")


def halfplane_oracle(x0: float = 0.0) -> RegionOracle:
    """{Re z > x0}: bounded by a vertical geodesic, so it halves any ball centred on it."""
    return RegionOracle(lambda x, y: x > x0, None, "halfplane")


def horoball_oracle(horoballs: Sequence[Horoball], window: tuple | None = None) -> RegionOracle:
    finite = [(float(h.tangent), float(h.size)) for h in horoballs if not h.at_inf]
    heights = [float(h.size) for h in horoballs if h.at_inf]
    xs = np.array([f[0] for f in finite])
    ds = np.array([f[1] for f in finite])

    def contains(x, y):
        hit = np.zeros(x.shape, bool)
        for h in heights:
            hit |= y >= h
        # (x - x0)^2 + y^2 <= d y is the closed disk of diameter d tangent at x0
        for x0, d in zip(xs, ds):
            hit |= (x - x0) ** 2 + y * y <= d * y
        return hit

    return RegionOracle(contains, window, "horoballs")


def packing_oracle(packing) -> RegionOracle:
    """Horoball oracle over a packing, windowed to its tangent-point range."""
    finite = [h for h in packing.horoballs if not h.at_inf]
    if finite:
        lo = min(float(h.tangent) for h in finite)
        hi = max(float(h.tangent) for h in finite)
        dmin = min(float(h.size) for h in finite)
        window = (lo, hi, dmin, None)
    else:
        window = None
    return horoball_oracle(packing.horoballs, window)


def ideal_triangle_oracle() -> RegionOracle:
    """The three unit Ford horoballs at 0, 1 and infinity, restricted to the triangle (0, 1, inf)."""
    balls = horoball_oracle([Horoball.at_infinity(1), Horoball(0, 1), Horoball(1, 1)])

    def contains(x, y):
        inside = (x > 0) & (x < 1) & ((x - 0.5) ** 2 + y * y > 0.25)
        return inside & balls.contains(x, y)

    return RegionOracle(contains, None, "ideal-triangle")


def hexagonal_packing_oracle(radius: float = 1.0) -> RegionOracle:
    """Euclidean disks of the given radius on the triangular lattice with spacing 2 radius."""
    if radius <= 0:
        raise ValueError("radius must be positive")
    r = float(radius)
    h = math.sqrt(3.0) * r

    def contains(x, y):
        # lattice rows at y = j h, shifted by r on odd rows; nearest point is in row j or j+1
        best = np.full(x.shape, np.inf)
        j0 = np.floor(y / h)
        for dj in (0.0, 1.0):
            j = j0 + dj
            shift = np.where(np.mod(j, 2) == 1, r, 0.0)
            i = np.round((x - shift) / (2 * r))
            dx = x - (2 * r * i + shift)
            dy = y - j * h
            best = np.minimum(best, dx * dx + dy * dy)
        return best <= r * r

    return RegionOracle(contains, None, "hexagonal")


def degenerate_tiling_oracle(t) -> RegionOracle:
    """Union of the cores of a degenerate tiling, defined on its retained strips."""
    m = t.prongs
    ylo, yhi = float(m) ** (-t.depth), float(m) ** (t.depth + 1)

    def contains(x, y):
        j = np.floor(np.log(y) / math.log(m) + 1e-12).astype(np.int64)
        off = np.zeros(x.shape)
        for jj in np.unique(j):
            off[j == jj] = float(t.offset(int(jj)))
        width = np.power(float(m), j + 1)
        n = np.floor((x - off) / width)
        x0 = off + n * width
        # the core over [x0, x0 + width] x [m^j, m^(j+1)] exists for every n
        return (x >= x0) & (x <= x0 + width) & (y >= width / m) & (y <= width * (1 + 1e-12))

    return RegionOracle(contains, (None, None, ylo, yhi), "degenerate-tiling")


# -- sampling --------------------------------------------------------------------------


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("HOROTILE_THREADS", "1")))
    except ValueError:
        return 1


def _frame(center: HPoint, frame: Isometry | None, euclidean: bool):
    if frame is not None or euclidean:
        return frame
    if center.is_boundary:
        raise ValueError("centre must be an interior point")
    return None


def _ball_points(rng: np.random.Generator, n: int, r: float, center: HPoint,
                 frame: Isometry | None, euclidean: bool):
    u, theta = rng.random(n), rng.random(n) * 2 * math.pi
    if euclidean:
        rho = r * np.sqrt(u)
        return center.x + rho * np.cos(theta), center.y + rho * np.sin(theta)
    # radial density proportional to sinh(rho) on [0, r]
    # cosh(rho) = 1 + u (cosh r - 1), written stably
    rho = 2.0 * np.arcsinh(np.sqrt(u) * math.sinh(r / 2.0))
    zeta = np.tanh(rho / 2) * np.exp(1j * theta)
    z = 1j * (1 + zeta) / (1 - zeta)
    if frame is None:
        z = center.x + center.y * z
    else:
        a, b, c, d = (float(e) for e in frame.entries())
        z = (a * z + b) / (c * z + d)
    return z.real, z.imag


def relative_density(oracle: RegionOracle, center: HPoint, r: float, samples: int, seed: int,
                     euclidean: bool = False, frame: Isometry | None = None) -> DensityEstimate:
    """Covered fraction of B_r(center).

    ``frame`` (an isometry taking i to the centre) fixes the sampling
    orientation; by default it is z -> y0 z + x0.
    """
    if r <= 0:
        raise ValueError("radius must be positive")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    frame = _frame(center, frame, euclidean)
    sizes = [BATCH] * (samples // BATCH) + ([samples % BATCH] if samples % BATCH else [])
    seqs = np.random.SeedSequence(seed).spawn(len(sizes))

    def run(i):
        rng = np.random.default_rng(seqs[i])
        x, y = _ball_points(rng, sizes[i], r, center, frame, euclidean)
        oracle.check_window(x, y)
        return int(oracle.contains(x, y).sum())

    workers = min(_threads(), len(sizes))
    if workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            hits = sum(ex.map(run, range(len(sizes))))
    else:
        hits = sum(run(i) for i in range(len(sizes)))
    return DensityEstimate.from_hits(hits, samples, r, seed)


def density_curve(oracle: RegionOracle, center: HPoint, radii: Sequence[float], samples: int, seed: int,
                  euclidean: bool = False, frame: Isometry | None = None) -> list[DensityEstimate]:
    """D at each radius; the same seed at every radius. No limit is asserted."""
    radii = list(radii)
    if any(b <= a for a, b in zip(radii, radii[1:])):
        raise ValueError("radii must be increasing")
    return [relative_density(oracle, center, r, samples, seed, euclidean, frame) for r in radii]


def curve_to_csv(curve: Sequence[DensityEstimate]) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(["radius", "estimate", "stderr", "samples", "seed"])
    for e in curve:
        wr.writerow([repr(e.radius), repr(e.value), repr(e.stderr), e.samples, e.seed])
    return buf.getvalue()


def curve_to_json(curve: Sequence[DensityEstimate]) -> str:
    rows = [{"radius": e.radius, "estimate": e.value, "stderr": e.stderr,
             "samples": e.samples, "seed": e.seed} for e in curve]
    return json.dumps(rows, sort_keys=True) + "\n"


# -- closed forms ----------------------------------------------------------------------


def ideal_triangle_area() -> float:
    return math.pi


def ideal_gap_area() -> float:
    """Area of the ideal triangle (0, 1, inf) outside its three unit horoballs."""
    return math.pi - 3.0


def horoball_triangle_density() -> float:
    """Fraction of the ideal triangle covered by its three horoballs: 3 / pi."""
    return 3.0 / math.pi


def cusp_area_quadrature() -> float:
    """Area of the triangle's corner inside the horoball at 0, by numerical quadrature."""

    def integrand(x):
        return 1.0 / math.sqrt(x - x * x) - 1.0 / (0.5 + math.sqrt(0.25 - x * x))

    val, _ = integrate.quad(integrand, 0.0, 0.5, limit=200)
    return val


def triangle_area_quadrature() -> float:
    val, _ = integrate.quad(lambda x: 1.0 / math.sqrt(x - x * x), 0.0, 1.0, limit=200)
    return val


@dataclass(frozen=True)
class GapEstimate:
    value: float
    stderr: float
    samples: int
    seed: int
    subregions: tuple  # area estimates of the parts nearest to inf, 0 and 1

    def to_dict(self) -> dict:
        return asdict(self)


def gap_area_mc(samples: int, seed: int) -> GapEstimate:
    """Hyperbolic area of the gap inside the ideal triangle (0, 1, inf), by sampling the triangle."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = np.random.default_rng(seed)
    counts = np.zeros(3, dtype=np.int64)
    done = 0
    while done < samples:
        n = min(BATCH, samples - done)
        u, v = rng.random(n), rng.random(n)
        # x has density 1/(pi sqrt(x - x^2)); y | x has density f/y^2 on (f, inf)
        x = (1.0 - np.cos(math.pi * u)) / 2.0
        y = np.sqrt(x - x * x) / (1.0 - v)
        gap = (y < 1) & (x * x + y * y > y) & ((x - 1) ** 2 + y * y > y)
        # the horoball that is hyperbolically nearest has the largest normalized height
        h = np.stack([y, y / (x * x + y * y), y / ((x - 1) ** 2 + y * y)])
        near = np.argmax(h, axis=0)
        counts += np.bincount(near[gap], minlength=3)
        done += n
    p = float(counts.sum()) / samples
    return GapEstimate(
        math.pi * p,
        math.pi * math.sqrt(p * (1 - p) / samples),
        samples,
        seed,
        tuple(float(math.pi * c / samples) for c in counts),
    )


def hexagonal_disk_density() -> float:
    return math.pi / math.sqrt(12.0)


def hexagon_voronoi_density(radius: float) -> float:
    """Disk area over the area of its circumscribed regular hexagon (its Voronoi cell)."""
    if radius <= 0:
        raise ValueError("radius must be positive")
    return math.pi * radius * radius / (2.0 * math.sqrt(3.0) * radius * radius)


def hexagon_mc(samples: int, seed: int, radius: float = 1.0) -> DensityEstimate:
    """Fraction of uniform points in the hexagonal cell that land in the inscribed disk."""
    if radius <= 0:
        raise ValueError("radius must be positive")
    rng = np.random.default_rng(seed)
    r = float(radius)
    half_w = 2 * r / math.sqrt(3.0)  # circumradius
    normals = [(math.cos(t), math.sin(t)) for t in (math.pi / 2, math.pi / 6, -math.pi / 6)]
    hits = got = 0
    while got < samples:
        n = min(BATCH, 2 * (samples - got) + 16)
        x = (rng.random(n) * 2 - 1) * half_w
        y = (rng.random(n) * 2 - 1) * r
        keep = np.ones(n, bool)
        for nx, ny in normals:
            keep &= np.abs(x * nx + y * ny) <= r
        x, y = x[keep], y[keep]
        x, y = x[: samples - got], y[: samples - got]
        hits += int((x * x + y * y <= r * r).sum())
        got += len(x)
    return DensityEstimate.from_hits(hits, samples, r, seed)
