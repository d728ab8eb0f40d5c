"""Group actions on dyadic labels of the trivalent and 5-valent trees.

A triangular state carries labels (a, b) with c = w - a - b implied; a
pentagonal state carries (a, b, c, d) with e = w - a - b - c - d.  Words act
on labels as composed functions: the rightmost letter acts first, so
``act_word_tri("L^4 C L^2 C^2", s)`` applies C^2, then L^2, C and L^4.
"""
from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass

import numpy as np

from . import kernels
from .algebra import LAMBDA, DyadicRes
from .geom import Isometry, compose, invert, power

# -- labels -------------------------------------------------------------------


@dataclass(frozen=True)
class LabelPair:
    a: DyadicRes
    b: DyadicRes
    w: DyadicRes

    def __post_init__(self):
        if not self.a.precision == self.b.precision == self.w.precision:
            raise ValueError("labels must share one precision")

    @classmethod
    def of(cls, a: int, b: int, w: int, precision: int) -> "LabelPair":
        return cls(DyadicRes(a, precision), DyadicRes(b, precision), DyadicRes(w, precision))

    @property
    def precision(self) -> int:
        return self.w.precision

    @property
    def c(self) -> DyadicRes:
        return self.w - self.a - self.b

    def values(self) -> tuple[int, int]:
        return (self.a.value, self.b.value)

    def triple(self) -> tuple[DyadicRes, DyadicRes, DyadicRes]:
        return (self.a, self.b, self.c)


@dataclass(frozen=True)
class LabelQuad:
    a: DyadicRes
    b: DyadicRes
    c: DyadicRes
    d: DyadicRes
    w: DyadicRes
    k: int = 0

    def __post_init__(self):
        if len({x.precision for x in (self.a, self.b, self.c, self.d, self.w)}) != 1:
            raise ValueError("labels must share one precision")

    @classmethod
    def of(cls, a, b, c, d, w, k, precision) -> "LabelQuad":
        return cls(*(DyadicRes(x, precision) for x in (a, b, c, d, w)), k=k)

    @property
    def precision(self) -> int:
        return self.w.precision

    @property
    def e(self) -> DyadicRes:
        return self.w - self.a - self.b - self.c - self.d

    def values(self) -> tuple[int, int, int, int]:
        return (self.a.value, self.b.value, self.c.value, self.d.value)

    def quintuple(self):
        return (self.a, self.b, self.c, self.d, self.e)


# -- words ----------------------------------------------------------------------

SYMBOLS = ("C", "L", "P", "R")
_TOKEN = re.compile(r"\s*([CLPR])\s*(?:\^?\s*\{?\s*([+-]?\d+)\s*\}?)?")


class Word:
    """A reduced word: tuple of (symbol, nonzero exponent), adjacent symbols distinct."""

    __slots__ = ("letters",)

    def __init__(self, letters=()):
        out: list[list] = []
        for sym, exp in letters:
            if sym not in SYMBOLS:
                raise ValueError(f"unknown generator {sym!r}")
            if exp == 0:
                continue
            if out and out[-1][0] == sym:
                out[-1][1] += exp
                if out[-1][1] == 0:
                    out.pop()
            else:
                out.append([sym, int(exp)])
        self.letters = tuple((s, e) for s, e in out)

    @classmethod
    def parse(cls, text: str) -> "Word":
        """Parse e.g. ``"L^4 C L^2 C^2"``, ``"L4CL2C2"`` or ``"LLLLCLLCC"``."""
        pos, letters = 0, []
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse word {text!r} at offset {pos}")
            letters.append((m.group(1), int(m.group(2)) if m.group(2) else 1))
            pos = m.end()
        return cls(letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word((s, -e) for s, e in reversed(self.letters))

    def symbols(self) -> set[str]:
        return {s for s, _ in self.letters}

    def __len__(self):
        return len(self.letters)

    def __eq__(self, other):
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __repr__(self):
        return f"Word({str(self)!r})"

    def __str__(self):
        if not self.letters:
            return "1"
        return " ".join(s if e == 1 else f"{s}^{e}" for s, e in self.letters)


def _as_word(word) -> Word:
    return word if isinstance(word, Word) else Word.parse(word)


def expand_R(word: Word) -> Word:
    """Replace R by C^2 L (so R^2 = C^2 L C^2 L)."""
    out = []
    for s, e in word.letters:
        if s == "R":
            unit = [("C", 2), ("L", 1)] if e > 0 else [("L", -1), ("C", -2)]
            out.extend(unit * abs(e))
        else:
            out.append((s, e))
    return Word(out)


# -- triangular actions ---------------------------------------------------------


def act_L_tri(s: LabelPair) -> LabelPair:
    return LabelPair(s.a + 1, s.c, s.w)


def act_C_tri(s: LabelPair) -> LabelPair:
    return LabelPair(s.c, s.a, s.w)


def act_Linv_tri(s: LabelPair) -> LabelPair:
    # L: (a, b) -> (a + 1, w - a - b); solve for the preimage
    a = s.a - 1
    return LabelPair(a, s.w - a - s.b, s.w)


def act_Cinv_tri(s: LabelPair) -> LabelPair:
    return act_C_tri(act_C_tri(s))


_TRI = {("L", 1): act_L_tri, ("L", -1): act_Linv_tri, ("C", 1): act_C_tri, ("C", -1): act_Cinv_tri}


def act_word_tri(word, s: LabelPair) -> LabelPair:
    word = expand_R(_as_word(word))
    if word.symbols() - {"C", "L"}:
        raise ValueError(f"triangular words use C, L (and R); got {word}")
    for sym, exp in reversed(word.letters):
        f = _TRI[(sym, 1 if exp > 0 else -1)]
        for _ in range(abs(exp)):
            s = f(s)
    return s


# -- pentagonal actions ---------------------------------------------------------


def act_L_pent(s: LabelQuad) -> LabelQuad:
    k = s.k
    return LabelQuad(s.a + 1, s.e + k, s.d, s.c - k, s.w, k)


def act_P_pent(s: LabelQuad) -> LabelQuad:
    return LabelQuad(s.e, s.a, s.b, s.c, s.w, s.k)


def act_Linv_pent(s: LabelQuad) -> LabelQuad:
    k = s.k
    a, d, c, e = s.a - 1, s.c, s.d + k, s.b - k
    b = s.w - a - c - d - e
    return LabelQuad(a, b, c, d, s.w, k)


def act_Pinv_pent(s: LabelQuad) -> LabelQuad:
    return LabelQuad(s.b, s.c, s.d, s.e, s.w, s.k)


_PENT = {("L", 1): act_L_pent, ("L", -1): act_Linv_pent, ("P", 1): act_P_pent, ("P", -1): act_Pinv_pent}


def act_word_pent(word, s: LabelQuad) -> LabelQuad:
    word = _as_word(word)
    if word.symbols() - {"P", "L"}:
        raise ValueError(f"pentagonal words use P, L; got {word}")
    for sym, exp in reversed(word.letters):
        f = _PENT[(sym, 1 if exp > 0 else -1)]
        for _ in range(abs(exp)):
            s = f(s)
    return s


# -- matrices -------------------------------------------------------------------

C_MAT = Isometry(0, 1, -1, 1)
L_MAT = Isometry(1, 1, 0, 1)
P_MAT = Isometry(0, 1, -1, LAMBDA)
L5_MAT = Isometry(1, LAMBDA, 0, 1)
S5_MAT = Isometry(0, 1, -1, 0, kind="G")

_MATS = {
    "PSL2Z": {"C": C_MAT, "L": L_MAT},
    "G5": {"P": P_MAT, "L": L5_MAT},
}


def matrix_of_word(word, group: str = "PSL2Z") -> Isometry:
    if group not in _MATS:
        raise ValueError(f"unknown group {group!r}")
    word = _as_word(word)
    if group == "PSL2Z":
        word = expand_R(word)
    gens = _MATS[group]
    bad = word.symbols() - set(gens)
    if bad:
        raise ValueError(f"symbols {sorted(bad)} not in {group}")
    out = Isometry.identity("Z" if group == "PSL2Z" else "G")
    for sym, exp in word.letters:
        out = compose(out, power(gens[sym], exp))
    return out


# -- orbits -----------------------------------------------------------------------


def orbit_tri_size(N: int, w) -> int:
    return int(kernels.orbit_tri(N, _int(w))[1])


def orbit_tri(N: int, w) -> set[LabelPair]:
    """Orbit of (0, 0) under L, C and inverses, labels mod 2**N."""
    seen, _ = kernels.orbit_tri(N, _int(w))
    mask = (1 << N) - 1
    wv = _int(w)
    return {LabelPair.of(int(t) & mask, int(t) >> N, wv, N) for t in np.flatnonzero(seen)}


def orbit_pent_size(N: int, w, k: int) -> int:
    return int(kernels.orbit_pent(N, _int(w), k)[1])


def orbit_pent(N: int, w, k: int) -> set[LabelQuad]:
    seen, _ = kernels.orbit_pent(N, _int(w), k)
    mask = (1 << N) - 1
    wv = _int(w)
    return {
        LabelQuad.of(int(t) & mask, (int(t) >> N) & mask, (int(t) >> 2 * N) & mask, int(t) >> 3 * N, wv, k, N)
        for t in np.flatnonzero(seen)
    }


def _int(w) -> int:
    return w.value if isinstance(w, DyadicRes) else int(w)


def pent_lattice_rows(k: int) -> list[list[int]]:
    return [
        [2, k - 1, -k, -k],
        [k - 1, 2, k - 1, -k],
        [-k, k - 1, 2, k - 1],
        [-k, -k, k - 1, 2],
    ]


def _det(m: list[list[int]]) -> int:
    # Laplace expansion along the first row; exact on ints
    if len(m) == 1:
        return m[0][0]
    total = 0
    for j, x in enumerate(m[0]):
        if x:
            minor = [row[:j] + row[j + 1:] for row in m[1:]]
            total += (-1) ** j * x * _det(minor)
    return total


def pent_lattice_det(k: int) -> int:
    det = _det(pent_lattice_rows(k))
    closed = 5 * ((k - 2) * (k - 1) * k * (k + 1) + 1)
    if det != closed:
        raise AssertionError(f"det {det} != closed form {closed} at k={k}")
    return det


# -- the subgroup E = <L^2, R^2> ------------------------------------------------------------


def exponent_sums(word) -> tuple[int, int]:
    """Total exponents of L and R in a word over L^{+-2}, R^{+-2}."""
    word = _as_word(word)
    sums = {"L": 0, "R": 0}
    for sym, exp in word.letters:
        if sym not in sums or exp % 2:
            raise ValueError(f"word {word} is not over L^(+-2), R^(+-2)")
        sums[sym] += exp
    return sums["L"], sums["R"]


def in_symmetry_kernel(word) -> bool:
    return exponent_sums(word) == (0, 0)


def tri_affine(word) -> np.ndarray:
    """Integer affine matrix of a word's label action on (a, b, w, 1).

    Computed by composing the generator actions symbolically, not from
    any closed form.
    """
    word = expand_R(_as_word(word))
    m = np.eye(4, dtype=np.int64)
    for sym, exp in word.letters:
        g = _AFF[(sym, 1 if exp > 0 else -1)]
        for _ in range(abs(exp)):
            m = m @ g
    return m


def _affine_from_action(f) -> np.ndarray:
    # evaluate the action on basis states at huge precision: coefficients are small ints
    n = 62
    half = 1 << (n - 1)

    def ev(a, b, w):
        s = f(LabelPair.of(a, b, w, n))
        return [x - (1 << n) if x >= half else x for x in s.values()]

    base = ev(0, 0, 0)
    cols = [np.subtract(ev(*e), base) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
    m = np.eye(4, dtype=np.int64)
    m[0:2, 0:3] = np.array(cols).T
    m[0:2, 3] = base
    return m


_AFF = {key: _affine_from_action(f) for key, f in _TRI.items()}

LAMBDA_BASIS = ((2, -1), (1, -2))


def in_lambda_lattice(k: int, l: int) -> bool:
    # (k, l) = x (2, -1) + y (1, -2) solvable over Z iff k = l (mod 3)
    return (k - l) % 3 == 0


def _coset_key(m: np.ndarray):
    """E-coset invariant of a label action: linear part plus translation mod the lattice."""
    lin = tuple(m[0:2, 0:3].ravel().tolist())
    k, l = int(m[0, 3]), int(m[1, 3])
    return lin, (k - l) % 3


def _is_pure_translation(m: np.ndarray) -> bool:
    return m[0, 0] == 1 and m[1, 1] == 1 and m[0, 1] == 0 and m[1, 0] == 0 and m[0, 2] == 0 and m[1, 2] == 0


def coset_index_E(max_len: int = 10) -> dict:
    """Index of E = <L^2, R^2> in PSL(2, Z) by enumeration.

    Elements are enumerated breadth-first as words in C, L; g and h are in
    one coset iff g h^-1 acts on labels as a translation in the lattice
    spanned by (2, -1), (1, -2).  Coset classes are merged with union-find.
    """
    if max_len < 1:
        raise ValueError("max_len must be positive")
    gens = [
        (C_MAT, _AFF[("C", 1)]),
        (invert(C_MAT), _AFF[("C", -1)]),
        (L_MAT, _AFF[("L", 1)]),
        (invert(L_MAT), _AFF[("L", -1)]),
    ]
    ident = Isometry.identity()
    elements = {ident: np.eye(4, dtype=np.int64)}
    frontier = [ident]
    counts = []
    anomalies = []
    parent: dict = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    # union-find over elements, keyed by the exact coset invariant
    rep_of_key: dict = {}

    def add(g, m):
        parent[g] = g
        if _is_pure_translation(m) and not in_lambda_lattice(int(m[0, 3]), int(m[1, 3])):
            anomalies.append({"element": repr(g), "translation": [int(m[0, 3]), int(m[1, 3])]})
        key = _coset_key(m)
        if key in rep_of_key:
            parent[find(g)] = find(rep_of_key[key])
        else:
            rep_of_key[key] = g

    add(ident, elements[ident])
    for _ in range(max_len):
        nxt = []
        for g in frontier:
            mg = elements[g]
            for gm, am in gens:
                h = compose(g, gm)
                if h not in elements:
                    elements[h] = mg @ am
                    add(h, elements[h])
                    nxt.append(h)
        frontier = nxt
        counts.append(len({find(x) for x in parent}))
    stable = len(counts) >= 3 and counts[-1] == counts[-2] == counts[-3]
    return {
        "index": counts[-1],
        "counts_by_length": counts,
        "elements": len(elements),
        "stabilized": stable,
        "anomalies": anomalies,
    }


def same_E_coset(g_word, h_word) -> bool:
    """True iff g h^-1 acts as a lattice translation (i.e. lies in E)."""
    m = tri_affine(_as_word(g_word) * _as_word(h_word).inverse())
    return _is_pure_translation(m) and in_lambda_lattice(int(m[0, 3]), int(m[1, 3]))


# letters of E in the order L^2, L^-2, R^2, R^-2
E_LETTERS = (Word.parse("L^2"), Word.parse("L^-2"), Word.parse("R^2"), Word.parse("R^-2"))
_E_INV = (1, 0, 3, 2)
_E_WEIGHTS = ((2, 0), (-2, 0), (0, 2), (0, -2))


def _E_matrices() -> np.ndarray:
    out = []
    for w in E_LETTERS:
        g = matrix_of_word(w)
        out.append([[g.a, g.b], [g.c, g.d]])
    return np.array(out, dtype=np.int64)


def free_check(max_len: int) -> dict:
    """Exhaust reduced words in L^{+-2}, R^{+-2} up to max_len; none may be +-I."""
    if max_len < 2:
        raise ValueError("max_len must be >= 2")
    words, idents, _, _, _, first = kernels.walk_reduced_words(
        _E_matrices(), _E_INV, _E_WEIGHTS, max_len, 0, True
    )
    violations = []
    if first is not None:
        violations.append(str(Word(l for i in first for l in E_LETTERS[i].letters)))
    return {
        "max_len": max_len,
        "words_checked": int(words),
        "identity_words": int(idents),
        "violations": violations,
        "pass": idents == 0,
        "backend": kernels.BACKEND,
    }


def kernel_action_check(max_len: int, precision: int = 8) -> dict:
    """Label actions of all reduced words in L^{+-2}, R^{+-2} up to max_len, mod 2**precision.

    An affine map on (Z/2^N)^3 is the identity function iff its coefficients
    reduce to the identity, so comparing symbolic actions mod 2^N covers
    every label pair at once.
    """
    mats = np.array([tri_affine(w) for w in E_LETTERS], dtype=np.int64)
    words, _, zs, zs_moving, nz_fixing, _ = kernels.walk_reduced_words(
        mats, _E_INV, _E_WEIGHTS, max_len, 1 << precision, False
    )
    return {
        "max_len": max_len,
        "precision": precision,
        "words": int(words),
        "zero_sum_words": int(zs),
        "zero_sum_words_moving_some_pair": int(zs_moving),
        "nonzero_sum_words_fixing_all_pairs": int(nz_fixing),
        "pass": zs_moving == 0 and nz_fixing == 0,
    }


def random_E_word(rng: random.Random, length: int) -> Word:
    letters, last = [], None
    for _ in range(length):
        choices = [i for i in range(4) if last is None or i != _E_INV[last]]
        i = rng.choice(choices)
        letters.extend(E_LETTERS[i].letters)
        last = i
    return Word(letters)


def random_word(rng: random.Random, length: int, symbols=("C", "L")) -> Word:
    return Word((rng.choice(symbols), rng.choice((-2, -1, 1, 2))) for _ in range(length))


def all_E_words(max_len: int):
    """Yield every nonempty reduced word over L^{+-2}, R^{+-2} up to max_len."""
    for n in range(1, max_len + 1):
        for idx in itertools.product(range(4), repeat=n):
            if any(idx[i + 1] == _E_INV[idx[i]] for i in range(n - 1)):
                continue
            yield Word(l for i in idx for l in E_LETTERS[i].letters)


# -- composite identities -------------------------------------------------------

TRI_IDENTITIES = {
    "L^2": lambda a, b: (a + 2, b - 1),
    "C L^2 C^2": lambda a, b: (a - 1, b + 2),
    "L^4 C L^2 C^2": lambda a, b: (a + 3, b),
    "L^2 C L^4 C^2": lambda a, b: (a, b + 3),
}

PENT_IDENTITIES = {
    "L^2": lambda a, b, c, d, k: (a + 2, b - 1 + k, c - k, d - k),
    "P L^2 P^4": lambda a, b, c, d, k: (a + k - 1, b + 2, c - 1 + k, d - k),
    "P^2 L^2 P^3": lambda a, b, c, d, k: (a - k, b + k - 1, c + 2, d + k - 1),
    "P^3 L^2 P^2": lambda a, b, c, d, k: (a - k, b - k, c + k - 1, d + 2),
}


def _pent_affine(f, k: int) -> np.ndarray:
    """6x6 affine matrix of a pentagonal generator action on (a, b, c, d, w, 1) at fixed k."""
    n = 62
    half = 1 << (n - 1)

    def ev(*v):
        s = f(LabelQuad.of(*v, k, n))
        return [x - (1 << n) if x >= half else x for x in s.values()]

    base = ev(0, 0, 0, 0, 0)
    cols = [np.subtract(ev(*row), base) for row in np.eye(5, dtype=int).tolist()]
    m = np.eye(6, dtype=np.int64)
    m[0:4, 0:5] = np.array(cols).T
    m[0:4, 5] = base
    return m


def pent_affine(word, k: int) -> np.ndarray:
    word = _as_word(word)
    gens = {key: _pent_affine(f, k) for key, f in _PENT.items()}
    m = np.eye(6, dtype=np.int64)
    for sym, exp in word.letters:
        g = gens[(sym, 1 if exp > 0 else -1)]
        for _ in range(abs(exp)):
            m = m @ g
    return m


def check_identities(exhaustive_precision: int = 4, randoms: int = 1000,
                     random_precision: int = 16, seed: int = 0) -> dict:
    """Verify the composite label identities.

    Triangular: every (a, b, w) mod 2^n through the library actions.
    Pentagonal: every (a, b, c, d, w, k) mod 2^n through affine maps read
    off the library actions (direct evaluation of 2^24 states is too slow).
    Both: ``randoms`` random states at ``random_precision``, direct.
    """
    n = exhaustive_precision
    mod = 1 << n
    report = {}
    for word, f in TRI_IDENTITIES.items():
        bad = 0
        for a, b, w in itertools.product(range(mod), repeat=3):
            got = act_word_tri(word, LabelPair.of(a, b, w, n)).values()
            if got != tuple(x % mod for x in f(a, b)):
                bad += 1
        report[f"tri {word}"] = {"exhaustive_failures": bad}
    grid = np.indices((mod,) * 5).reshape(5, -1).astype(np.int64)
    ones = np.ones((1, grid.shape[1]), dtype=np.int64)
    states = np.vstack([grid, ones])
    for word, f in PENT_IDENTITIES.items():
        bad = 0
        for k in range(mod):
            got = (pent_affine(word, k) @ states)[0:4] % mod
            want = np.array(f(*grid[0:4], k)) % mod
            bad += int(np.any(got != want, axis=0).sum())
        report[f"pent {word}"] = {"exhaustive_failures": bad}
    rng = random.Random(seed)
    m = 1 << random_precision
    for word, f in TRI_IDENTITIES.items():
        bad = 0
        for _ in range(randoms):
            a, b, w = (rng.randrange(m) for _ in range(3))
            got = act_word_tri(word, LabelPair.of(a, b, w, random_precision)).values()
            bad += got != tuple(x % m for x in f(a, b))
        report[f"tri {word}"]["random_failures"] = bad
    for word, f in PENT_IDENTITIES.items():
        bad = 0
        for _ in range(randoms):
            v = [rng.randrange(m) for _ in range(5)]
            k = rng.randrange(-m // 2, m // 2)
            got = act_word_pent(word, LabelQuad.of(*v, k, random_precision)).values()
            bad += got != tuple(x % m for x in f(*v[:4], k))
        report[f"pent {word}"]["random_failures"] = bad
    ok = all(r["exhaustive_failures"] == 0 and r["random_failures"] == 0 for r in report.values())
    return {"identities": report, "pass": ok}
