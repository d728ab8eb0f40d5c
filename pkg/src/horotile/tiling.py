"""Finite approximants of the modified binary tilings.

A packing is explored through its dual tree: a *state* is a group element g,
and the polygon of g has cusps g(x_0), ..., g(x_{n-1}) where x is the base
list (INF, 1, 0) for triangles or (INF, lam, 1, 1/lam, 0) for pentagons.
Right multiplication by the rotation (C or P) and the step L moves between
states, and the dyadic labels of the polygon move by the matching label
action.  Slot 0 of a state always holds the horoball whose index is ``a``.
"""
from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import LAMBDA, DyadicRes, GoldenInt, GoldenRational, is_golden
from .cf import g5_ball
from .geom import (
    INF,
    Horoball,
    Isometry,
    apply_complex,
    apply_cusp,
    apply_horoball,
    compose,
    cusp_sort_key,
    power,
)
from .treeaction import C_MAT, L5_MAT, L_MAT, P_MAT

INV_LAMBDA = GoldenRational(GoldenInt(-1, 1))  # 1/lam = lam - 1


@dataclass(frozen=True)
class Model:
    name: str
    n: int
    rot: Isometry
    step: Isometry
    base_cusps: tuple
    slot: object  # horocyclic width of one polygon along {y >= 1}

    @property
    def kind(self) -> str:
        return self.rot.kind


TRIANGULAR = Model("triangular", 3, C_MAT, L_MAT, (INF, Fraction(1), Fraction(0)), 1)
PENTAGONAL = Model(
    "pentagonal", 5, P_MAT, L5_MAT, (INF, GoldenRational(LAMBDA), Fraction(1), INV_LAMBDA, Fraction(0)), LAMBDA
)
MODELS = {m.name: m for m in (TRIANGULAR, PENTAGONAL)}


def polygon_cusps(model: Model, g: Isometry) -> tuple:
    return tuple(apply_cusp(g, x) for x in model.base_cusps)


# -- exact horoball predicates ------------------------------------------------------


def horoball_relation(h1: Horoball, h2: Horoball) -> str:
    """'overlap', 'tangent' or 'disjoint' (interiors), decided exactly."""
    if h1.at_inf and h2.at_inf:
        return "overlap"
    if h2.at_inf:
        h1, h2 = h2, h1
    if h1.at_inf:
        d = h2.size - h1.size
        s = d.sign() if isinstance(d, GoldenRational) else (d > 0) - (d < 0)
    else:
        # disks tangent to the axis touch iff (x1 - x2)^2 == d1 d2
        dx = h1.tangent - h2.tangent
        d = h1.size * h2.size - dx * dx
        s = d.sign() if isinstance(d, GoldenRational) else (d > 0) - (d < 0)
    return {1: "overlap", 0: "tangent", -1: "disjoint"}[s]


def tangent(h1: Horoball, h2: Horoball) -> bool:
    return horoball_relation(h1, h2) == "tangent"


def _float_bounds(h: Horoball):
    if h.at_inf:
        return None
    x, d = float(h.tangent), float(h.size)
    return x, d


def pairwise_relations(horoballs: list[Horoball]) -> dict:
    """Exact relation for every pair that could touch; others are disjoint.

    Pairs are pruned with a float bound (|x1 - x2| <= sqrt(d1 d2)) carrying a
    wide margin, then decided exactly.
    """
    finite = [(i, *_float_bounds(h)) for i, h in enumerate(horoballs) if not h.at_inf]
    finite.sort(key=lambda t: t[1])
    xs = [t[1] for t in finite]
    dmax = max((t[2] for t in finite), default=0.0)
    rel = {}
    import bisect

    for pos, (i, x, d) in enumerate(finite):
        reach = math.sqrt(d * dmax) * (1 + 1e-9) + 1e-12
        hi = bisect.bisect_right(xs, x + reach)
        for j_pos in range(pos + 1, hi):
            j = finite[j_pos][0]
            r = horoball_relation(horoballs[i], horoballs[j])
            if r != "disjoint":
                rel[(min(i, j), max(i, j))] = r
    infs = [i for i, h in enumerate(horoballs) if h.at_inf]
    for i in infs:
        for j, h in enumerate(horoballs):
            if j != i:
                r = horoball_relation(horoballs[i], h)
                if r != "disjoint":
                    rel[(min(i, j), max(i, j))] = r
    return rel


# -- packings -------------------------------------------------------------------------


@dataclass
class HoroPacking:
    model: Model
    horoballs: list  # sorted by tangent point
    adjacency: list  # index pairs of tangent horoballs
    polygons: list = field(default_factory=list)  # cusp tuples in state order
    states: list = field(default_factory=list)  # state isometry per polygon
    overlaps: list = field(default_factory=list)  # index pairs with overlapping interiors

    def __post_init__(self):
        self.index_of = {h.tangent: i for i, h in enumerate(self.horoballs)}

    def horoball_at(self, cusp) -> Horoball:
        return self.horoballs[self.index_of[cusp]]

    def contains(self, cusp) -> bool:
        return cusp in self.index_of

    def cusps(self) -> list:
        return [h.tangent for h in self.horoballs]


def _build_packing(model: Model, horoballs, accept=None) -> HoroPacking:
    horoballs = sorted(set(horoballs), key=lambda h: cusp_sort_key(h.tangent))
    rel = pairwise_relations(horoballs)
    adjacency = sorted(p for p, r in rel.items() if r == "tangent")
    overlaps = sorted(p for p, r in rel.items() if r == "overlap")
    packing = HoroPacking(model, horoballs, adjacency, overlaps=overlaps)
    polys, states = _walk_polygons(model, packing, accept)
    packing.polygons = polys
    packing.states = states
    return packing


def _neighbor_moves(model: Model):
    """Right multipliers X^j L (j = 0..n-1) leading to the n neighbouring polygons."""
    return [compose(power(model.rot, j), model.step) for j in range(model.n)]


def _walk_polygons(model: Model, packing: HoroPacking, accept=None):
    ident = Isometry.identity(model.kind)
    start = polygon_cusps(model, ident)
    if not all(packing.contains(c) for c in start):
        return [], []
    moves = _neighbor_moves(model)
    seen = {frozenset(start)}
    polys, states = [start], [ident]
    queue = deque([ident])
    while queue:
        g = queue.popleft()
        for mv in moves:
            h = compose(g, mv)
            cusps = polygon_cusps(model, h)
            key = frozenset(cusps)
            if key in seen or not all(packing.contains(c) for c in cusps):
                continue
            if accept is not None and not accept(cusps):
                continue
            seen.add(key)
            polys.append(cusps)
            states.append(h)
            queue.append(h)
    return polys, states


def enumerate_ford(q_max: int, window=(0, 1)) -> HoroPacking:
    """Ford horoballs p/q (q <= q_max, p/q in window) plus {y >= 1}."""
    if q_max < 1:
        raise ValueError("q_max must be >= 1")
    lo, hi = Fraction(window[0]), Fraction(window[1])
    if lo > hi:
        raise ValueError("empty window")
    balls = [Horoball.at_infinity(1)]
    for q in range(1, q_max + 1):
        for p in range(math.floor(lo * q), math.ceil(hi * q) + 1):
            if math.gcd(p, q) == 1 and lo <= Fraction(p, q) <= hi:
                balls.append(Horoball(Fraction(p, q), Fraction(1, q * q)))
    return _build_packing(TRIANGULAR, balls)


def _golden_pair_to_int(x) -> GoldenInt:
    return GoldenInt(*x)


def enumerate_hecke(max_word_len: int, window=None) -> HoroPacking:
    """Images of {y >= 1} under G5 elements of word length <= max_word_len."""
    if max_word_len < 1:
        raise ValueError("max_word_len must be >= 1")
    elements, _ = g5_ball(max_word_len)
    balls = set()
    for m in elements:
        a, _, c, _ = (_golden_pair_to_int(x) for x in m)
        g = Isometry(a, _golden_pair_to_int(m[1]), c, _golden_pair_to_int(m[3]), kind="G")
        balls.add(apply_horoball(g, Horoball.at_infinity(1)))
    if window is not None:
        lo, hi = window
        balls = {h for h in balls if h.at_inf or lo <= h.tangent <= hi}
    return _build_packing(PENTAGONAL, balls)


def cusp_field(packing: HoroPacking) -> str:
    """'rational' if every tangent point is in Q or infinity, 'golden' if some lie in Q(lam) \\ Q."""
    if not packing.horoballs:
        raise ValueError("empty packing has no cusp set")
    golden = False
    for h in packing.horoballs:
        x = h.tangent
        if x is INF or isinstance(x, Fraction):
            continue
        if isinstance(x, GoldenRational) and not x.is_rational():
            golden = True
            continue
        raise ValueError(f"cusp {x!r} outside Q(lam)")
    return "golden" if golden else "rational"


# -- labels -------------------------------------------------------------------------


def _act_L(model: Model, labels: tuple, w: DyadicRes, k: int) -> tuple:
    if model.n == 3:
        a, b, c = labels
        return (a + 1, c, b - 1)
    a, b, c, d, e = labels
    return (a + 1, e + k, d, c - k, b - 1)


def _rotate(labels: tuple, j: int) -> tuple:
    """Labels after right multiplication by the rotation j times."""
    n = len(labels)
    return tuple(labels[(i - j) % n] for i in range(n))


def _full_labels(model: Model, base, w: DyadicRes) -> tuple:
    base = tuple(x if isinstance(x, DyadicRes) else DyadicRes(x, w.precision) for x in base)
    if len(base) != model.n - 1:
        raise ValueError(f"{model.name} base needs {model.n - 1} labels")
    last = w
    for x in base:
        if x.precision != w.precision:
            raise ValueError("precision mismatch between base labels and w")
        last = last - x
    return base + (last,)


class InconsistentLabels(RuntimeError):
    pass


@dataclass
class LabeledApprox:
    packing: HoroPacking
    w: DyadicRes
    k: int
    base: tuple  # full label tuple of the base polygon
    labels: list  # per polygon, tuple of DyadicRes in state order
    horoball_index: dict  # cusp -> (DyadicRes, polygon number, slot)
    depth: int

    @property
    def model(self) -> Model:
        return self.packing.model

    @property
    def precision(self) -> int:
        return self.w.precision

    def index(self, cusp) -> DyadicRes:
        return self.horoball_index[cusp][0]

    def label_at(self, poly: int, cusp) -> DyadicRes:
        return self.labels[poly][self.packing.polygons[poly].index(cusp)]


def assign_indices(packing: HoroPacking, w, base, k: int = 0, depth: int | None = None) -> LabeledApprox:
    """Propagate dyadic labels from the base polygon through the packing's tree."""
    model = packing.model
    if model.n == 3 and k:
        raise ValueError("the k-rule only applies to pentagonal packings")
    if not isinstance(w, DyadicRes):
        raise TypeError("w must be a DyadicRes")
    if not packing.polygons:
        raise ValueError("packing does not contain the base polygon")
    full = _full_labels(model, base, w)
    moves = [j for j in range(model.n)]
    pos = {frozenset(c): i for i, c in enumerate(packing.polygons)}
    labels: list = [None] * len(packing.polygons)
    labels[0] = full
    queue = deque([0])
    rot_pows = [power(model.rot, j) for j in moves]
    while queue:
        i = queue.popleft()
        g, lab = packing.states[i], labels[i]
        for j in moves:
            h = compose(compose(g, rot_pows[j]), model.step)
            cusps = polygon_cusps(model, h)
            key = frozenset(cusps)
            if key not in pos:
                continue
            new = _act_L(model, _rotate(lab, j), w, k)
            t = pos[key]
            if labels[t] is None:
                # store in the polygon's own state order
                mine = dict(zip(cusps, new))
                labels[t] = tuple(mine[c] for c in packing.polygons[t])
                queue.append(t)
            else:
                have = dict(zip(packing.polygons[t], labels[t]))
                if any(have[c] != v for c, v in zip(cusps, new)):
                    raise InconsistentLabels(f"conflicting labels at polygon {t}")
    if any(x is None for x in labels):
        raise ValueError("packing polygons are not connected to the base")
    index = {}
    for p, (cusps, lab) in enumerate(zip(packing.polygons, labels)):
        for slot, (c, x) in enumerate(zip(cusps, lab)):
            if c not in index:
                index[c] = (x, p, slot)
    return LabeledApprox(packing, w, k, full, labels, index, w.precision if depth is None else depth)


def validate(t: LabeledApprox) -> list[str]:
    """Problems with the fixed-sum and neighbour (k-)rule; empty list means valid."""
    problems = []
    model, n, k = t.model, t.model.n, t.k
    edge_owner = {}
    for p, cusps in enumerate(t.packing.polygons):
        total = t.w * 0
        for x in t.labels[p]:
            total = total + x
        if total != t.w:
            problems.append(f"polygon {p}: labels sum to {total}, expected {t.w}")
        for i in range(n):
            edge_owner[(cusps[i], cusps[(i + 1) % n])] = (p, i)
        if polygon_cusps(model, t.packing.states[p]) != tuple(cusps):
            problems.append(f"polygon {p}: state does not map the base polygon onto its cusps")
    for (A, B), (p, i) in edge_owner.items():
        if (B, A) not in edge_owner:
            continue
        q, i2 = edge_owner[(B, A)]
        mine = _rotate(t.labels[p], -i)  # A first
        theirs = _rotate(t.labels[q], -(i2 + 1))  # A first in the neighbour, B last
        if model.n == 3:
            a, b, c = mine
            expect = (a + 1, c, b - 1)
        else:
            a, b, c, d, e = mine
            expect = (a + 1, e + k, d, c - k, b - 1)
        if theirs != expect:
            problems.append(f"polygons {p} -> {q}: neighbour labels break the rule")
    for c, (x, p, slot) in t.horoball_index.items():
        if t.packing.polygons[p][slot] != c or t.labels[p][slot] != x:
            problems.append(f"horoball {c}: index does not match its reference polygon")
    return problems


def conjugate_shift(t: LabeledApprox, e) -> LabeledApprox:
    """Add e to every dyadic index; the fixed sum becomes w + n e."""
    if not isinstance(e, DyadicRes):
        e = DyadicRes(e, t.precision)
    if e.precision != t.precision:
        raise ValueError("precision mismatch")
    n = t.model.n
    labels = [tuple(x + e for x in lab) for lab in t.labels]
    index = {c: (x + e, p, s) for c, (x, p, s) in t.horoball_index.items()}
    return LabeledApprox(
        t.packing, t.w + e * n, t.k, tuple(x + e for x in t.base), labels, index, t.depth
    )


# -- tiles ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TilePlacement:
    """A binary-tile core in row ``row`` of a horoball.

    In the horoball's normalized frame (horoball = {y >= 1}, reference
    polygon over [0, slot]) the core is the rectangle
    [start*slot, (start + 2^(row+1))*slot] x [2^row, 2^(row+1)]; the
    normalizer carries it to the packing.  ``bits`` are the low row+1 digits
    of the host index that fix the lateral position.
    """

    normalizer: Isometry
    row: int
    start: int
    bits: int
    slot: object = 1

    def frame_vertices(self) -> list[complex]:
        s = float(self.slot)
        x0 = self.start * s
        x1 = (self.start + (2 << self.row)) * s
        y0, y1 = float(1 << self.row), float(2 << self.row)
        return [complex(x0, y0), complex(x1, y0), complex(x1, y1), complex(x0, y1)]

    def core_vertices(self) -> list[complex]:
        return [apply_complex(self.normalizer, z) for z in self.frame_vertices()]


def layer_tiles(h: Horoball, index: DyadicRes, rows: int, normalizer: Isometry | None = None,
                slot=1, span: int | None = None) -> list[TilePlacement]:
    """Cores in rows 0..rows-1 of horoball h over ``span`` consecutive polygon slots.

    Slot j (j = 0 at the reference polygon) carries index + j.  Bit 0 of the
    slot's index picks the left (0) or right (1) prong of the row-0 tile over
    it; bit m picks which half of its row-m ancestor the row-(m-1) tile
    hangs from.  So the row-m tile over slot j starts at j - ((index + j) mod 2^(m+1)).
    """
    if rows > index.precision:
        raise ValueError(f"rows={rows} exceeds index precision {index.precision}")
    if normalizer is None:
        normalizer = Isometry.identity("G" if is_golden(slot) else "Z")
    if apply_horoball(normalizer, Horoball.at_infinity(1)) != h:
        raise ValueError("normalizer does not carry {y >= 1} onto the horoball")
    span = (1 << rows) if span is None else span
    out = []
    seen = set()
    for m in range(rows):
        width = 2 << m
        for j in range(span):
            v = (index.value + j) % width
            start = j - v
            if (m, start) in seen:
                continue
            seen.add((m, start))
            out.append(TilePlacement(normalizer, m, start, index.value % width, slot))
    return out


def _normalizer(t: LabeledApprox, poly: int, slot: int) -> Isometry:
    """State with the given slot rotated into slot 0."""
    model = t.model
    j = (model.n - slot) % model.n
    return compose(t.packing.states[poly], power(model.rot, j))


@dataclass(frozen=True)
class DegenerateTiling:
    """Binary tiling by cores alone; strip j is y in [m^j, m^(j+1)], tile width m^(j+1).

    ``choices[j-1]`` (a digit in 0..m-1) picks the offset of strip j >= 1 among
    the m fillings compatible with strip j-1; strips below 0 are forced.
    """

    choices: tuple
    depth: int
    prongs: int = 2

    def offset(self, j: int) -> int:
        # strips above the recorded choices continue with digit 0
        j = min(j, len(self.choices))
        if j <= 0:
            return 0
        return sum(self.choices[i - 1] * self.prongs ** i for i in range(1, j + 1))

    def cores(self, xlo, xhi, jlo: int | None = None, jhi: int | None = None) -> list[tuple]:
        """Exact rectangles (x0, x1, y0, y1) of strips jlo..jhi meeting [xlo, xhi]."""
        m = self.prongs
        jlo = -self.depth if jlo is None else jlo
        jhi = self.depth if jhi is None else jhi
        out = []
        for j in range(jlo, jhi + 1):
            width = Fraction(m) ** (j + 1)
            y0, y1 = Fraction(m) ** j, Fraction(m) ** (j + 1)
            off = self.offset(j)
            n0 = math.floor((Fraction(xlo) - off) / width)
            n1 = math.ceil((Fraction(xhi) - off) / width)
            for nn in range(n0, n1):
                x0 = off + nn * width
                out.append((x0, x0 + width, y0, y1))
        return out

    def strip_of(self, y) -> int | None:
        """j with y == m^j exactly, else None."""
        y = Fraction(y)
        if y <= 0:
            return None
        m = self.prongs
        j = 0
        while y >= m:
            y /= m
            j += 1
        while y < 1:
            y *= m
            j -= 1
        return j if y == 1 else None

    def is_core(self, x0, x1, y0, y1) -> bool:
        j = self.strip_of(y0)
        if j is None:
            return False
        m = self.prongs
        width = Fraction(m) ** (j + 1)
        if y1 != y0 * m or x1 - x0 != width:
            return False
        return ((Fraction(x0) - self.offset(j)) / width).denominator == 1


def build_degenerate(choices, depth: int, prongs: int = 2) -> DegenerateTiling:
    choices = tuple(int(c) for c in choices)
    if depth > len(choices):
        raise ValueError("depth exceeds the number of choices")
    if any(not 0 <= c < prongs for c in choices):
        raise ValueError(f"choices must be digits in [0, {prongs})")
    return DegenerateTiling(choices[:depth], depth, prongs)


def check_cover(t: DegenerateTiling, xlo, xhi, jlo: int, jhi: int) -> dict:
    """Exact check that cores tile the window [xlo, xhi] x [m^jlo, m^(jhi+1)]."""
    xlo, xhi = Fraction(xlo), Fraction(xhi)
    rects = t.cores(xlo, xhi, jlo, jhi)
    clipped = []
    for x0, x1, y0, y1 in rects:
        a, b = max(x0, xlo), min(x1, xhi)
        if a < b:
            clipped.append((a, b, y0, y1))
    area = sum((b - a) * (y1 - y0) for a, b, y0, y1 in clipped)
    m = Fraction(t.prongs)
    target = (xhi - xlo) * (m ** (jhi + 1) - m ** jlo)
    overlaps = 0
    clipped.sort()
    for i, r in enumerate(clipped):
        for s in clipped[i + 1:]:
            if s[0] >= r[1]:
                break
            if s[2] < r[3] and r[2] < s[3]:
                overlaps += 1
    return {"tiles": len(clipped), "area": area, "window_area": target, "overlaps": overlaps,
            "pass": overlaps == 0 and area == target}


def is_dilation_invariant(t: DegenerateTiling, factor, xlo, xhi, jlo: int, jhi: int) -> bool:
    """Does z -> factor z map the cores of the window onto cores of the tiling?"""
    factor = Fraction(factor)
    return all(
        t.is_core(x0 * factor, x1 * factor, y0 * factor, y1 * factor)
        for x0, x1, y0, y1 in t.cores(xlo, xhi, jlo, jhi)
    )


def dilation_symmetries(t: DegenerateTiling, max_factor: int, window=(-8, 8)) -> list[int]:
    """Integer factors f <= max_factor with z -> f z a symmetry on the test window."""
    jr = max(1, t.depth // 3)
    return [f for f in range(2, max_factor + 1)
            if is_dilation_invariant(t, f, window[0], window[1], -jr, jr)]


# -- truncation ------------------------------------------------------------------------


def theta_N(t, N: int) -> dict:
    """Keep rows 0..N-1 of every horoball; degenerate tilings give the empty packing."""
    if N < 1:
        raise ValueError("N must be >= 1")
    if isinstance(t, DegenerateTiling):
        return {}
    out = {}
    for c, (x, p, slot) in sorted(t.horoball_index.items(), key=lambda kv: cusp_sort_key(kv[0])):
        norm = _normalizer(t, p, slot)
        h = t.packing.horoball_at(c)
        out[c] = layer_tiles(h, x, min(N, x.precision), norm, t.model.slot, span=1 << N)
    return out


# -- JSON ----------------------------------------------------------------------------------


def cusp_to_json(x):
    if x is INF:
        return "inf"
    if isinstance(x, Fraction):
        return {"p": x.numerator, "q": x.denominator}
    return x.to_json()


def cusp_from_json(d):
    if d == "inf":
        return INF
    if "goldenP" in d:
        v = GoldenRational(GoldenInt(d["goldenP"], d["goldenQ"]), d["den"])
        return v.as_fraction() if v.is_rational() else v
    return Fraction(d["p"], d["q"])


def _scalar_to_json(x):
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return {"p": x.numerator, "q": x.denominator}
    if isinstance(x, GoldenInt):
        return x.to_json()
    return cusp_to_json(x)


def _scalar_from_json(d):
    if isinstance(d, int):
        return d
    if "goldenP" in d:
        return cusp_from_json(d)
    if set(d) == {"p", "q"} and isinstance(d["q"], int) and "kind" not in d:
        return d
    raise ValueError(f"bad scalar {d!r}")


def to_json(t: LabeledApprox) -> dict:
    pk = t.packing
    hidx = {h.tangent: i for i, h in enumerate(pk.horoballs)}
    horoballs = []
    for h in pk.horoballs:
        entry = {"tangent": cusp_to_json(h.tangent)}
        entry["height" if h.at_inf else "diameter"] = cusp_to_json(h.size)
        if h.tangent in t.horoball_index:
            x, p, s = t.horoball_index[h.tangent]
            entry["index"] = x.to_json()
            entry["ref"] = [p, s]
        horoballs.append(entry)
    polygons = []
    for cusps, lab, g in zip(pk.polygons, t.labels, pk.states):
        polygons.append({
            "horoballs": [hidx[c] for c in cusps],
            "indices": [x.to_json() for x in lab],
            "state": [e.to_json() if isinstance(e, GoldenInt) else e for e in g.entries()],
        })
    return {
        "model": t.model.name,
        "w": t.w.to_json(),
        "k": t.k,
        "precision": t.precision,
        "base": {"labels": [x.to_json() for x in t.base], "polygon": 0, "edge": [0, 1]},
        "horoballs": horoballs,
        "adjacency": [list(p) for p in pk.adjacency],
        "polygons": polygons,
        "depth": t.depth,
    }


def dumps(t: LabeledApprox) -> str:
    return json.dumps(to_json(t), sort_keys=True, separators=(",", ":")) + "\n"


def from_json(d: dict) -> LabeledApprox:
    model = MODELS[d["model"]]
    prec = int(d["precision"])
    w = DyadicRes.from_json(d["w"])
    if w.precision != prec:
        raise ValueError("precision mismatch between w and file")
    balls = []
    for e in d["horoballs"]:
        x = cusp_from_json(e["tangent"])
        size = cusp_from_json(e["height"] if "height" in e else e["diameter"])
        balls.append(Horoball(x, size))
    pk = HoroPacking(model, balls, [tuple(p) for p in d.get("adjacency", [])])
    polys, labels, states = [], [], []
    for p in d["polygons"]:
        polys.append(tuple(balls[i].tangent for i in p["horoballs"]))
        lab = tuple(DyadicRes.from_json(x) for x in p["indices"])
        if any(x.precision != prec for x in lab):
            raise ValueError("precision mismatch in polygon labels")
        labels.append(lab)
        ent = [GoldenInt.from_json(e) if isinstance(e, dict) else e for e in p["state"]]
        states.append(Isometry(*ent, kind=model.kind))
    pk.polygons, pk.states = polys, states
    index = {}
    for h, e in zip(balls, d["horoballs"]):
        if "index" in e:
            p, s = e["ref"]
            index[h.tangent] = (DyadicRes.from_json(e["index"]), p, s)
    base = tuple(DyadicRes.from_json(x) for x in d["base"]["labels"])
    return LabeledApprox(pk, w, int(d["k"]), base, labels, index, int(d["depth"]))


def loads(text: str) -> LabeledApprox:
    return from_json(json.loads(text))
