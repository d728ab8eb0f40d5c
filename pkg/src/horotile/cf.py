"""Rosen continued fractions for G5 and the rational-entry scan of G5 matrices."""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .algebra import GoldenInt

LAMBDA = GoldenInt(0, 1)


@dataclass(frozen=True)
class CFSequence:
    """Coefficients r_0, r_1, ... and signs eps_1, eps_2, ...

    ``eps[i - 1]`` is eps_i, so ``len(eps) == len(r) - 1``.
    """

    r: tuple
    eps: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "r", tuple(int(x) for x in self.r))
        object.__setattr__(self, "eps", tuple(int(x) for x in self.eps))
        if len(self.eps) != len(self.r) - 1:
            raise ValueError("need exactly one sign per coefficient r_1..r_n")
        if not self.r or self.r[0] < 0 or any(x < 1 for x in self.r[1:]):
            raise ValueError("need r_0 >= 0 and r_i >= 1")
        if any(e not in (1, -1) for e in self.eps):
            raise ValueError("signs must be +-1")

    def __len__(self):
        return len(self.r) - 1

    def eps_at(self, i: int) -> int:
        return self.eps[i - 1]

    @property
    def reduced(self) -> bool:
        return first_reduction_violation(self) is None


def first_reduction_violation(seq: CFSequence) -> int | None:
    """Smallest n >= 1 with r_n == 1 and eps_{n+1} r_{n+1} == -1, else None."""
    for n in range(1, len(seq)):
        if seq.r[n] == 1 and seq.eps_at(n + 1) * seq.r[n + 1] == -1:
            return n
    return None


def _check(seq: CFSequence, n: int) -> None:
    if not 0 <= n <= len(seq):
        raise ValueError(f"n={n} outside [0, {len(seq)}]")
    bad = first_reduction_violation(seq)
    if bad is not None:
        raise ValueError(f"sequence not reduced: r_{bad} = 1 followed by eps*r = -1")


def cf_denominators(seq: CFSequence, n: int | None = None) -> list[GoldenInt]:
    """Q_0..Q_n from Q_n = r_n lam Q_{n-1} + eps_n Q_{n-2}, Q_{-1} = 0, Q_0 = 1."""
    n = len(seq) if n is None else n
    _check(seq, n)
    prev, cur = GoldenInt(0), GoldenInt(1)
    out = [cur]
    for i in range(1, n + 1):
        prev, cur = cur, LAMBDA * cur * seq.r[i] + prev * seq.eps_at(i)
        out.append(cur)
    return out


def cf_coefficients(seq: CFSequence, n: int | None = None) -> list[tuple[int, int]]:
    """(a_i, b_i) with Q_i = a_i lam + b_i, from the integer recursion."""
    n = len(seq) if n is None else n
    _check(seq, n)
    a2, b2 = 0, 0  # index -1
    a1, b1 = 0, 1  # index 0
    out = [(a1, b1)]
    for i in range(1, n + 1):
        r, e = seq.r[i], seq.eps_at(i)
        a = r * (a1 + b1) + e * a2
        b = r * a1 + e * b2
        a2, b2, a1, b1 = a1, b1, a, b
        out.append((a, b))
    return out


def check_cf_properties(seq: CFSequence, n: int | None = None) -> dict:
    """Check a_i >= a_{i-1}, b_i >= 0, a_i >= b_{i-1} and a_i != 0 for 1 <= i <= n."""
    n = len(seq) if n is None else n
    coeffs = cf_coefficients(seq, n)
    for i in range(1, n + 1):
        a, b = coeffs[i]
        a_prev, b_prev = coeffs[i - 1]
        for name, ok in (
            ("alpha", a >= a_prev),
            ("beta", b >= 0),
            ("gamma", a >= b_prev),
            ("nonzero", a != 0),
        ):
            if not ok:
                return {"pass": False, "violation": {"property": name, "index": i, "a": a, "b": b}}
    return {"pass": True, "violation": None, "n": n}


def random_reduced_sequence(rng: random.Random, length: int, r_max: int = 5) -> CFSequence:
    """Random reduced sequence; offending (eps, r) pairs are resampled."""
    r = [0]
    eps: list[int] = []
    for i in range(1, length + 1):
        while True:
            ri, ei = rng.randint(1, r_max), rng.choice((1, -1))
            if not (i > 1 and r[-1] == 1 and ei * ri == -1):
                break
        r.append(ri)
        eps.append(ei)
    return CFSequence(tuple(r), tuple(eps))


# -- G5 entry scan -----------------------------------------------------------------

# Z[lam] entries as (p, q) int pairs: the hot loop avoids object overhead


def _gmul(x, y):
    p, q = x
    r, s = y
    return (p * r + q * s, p * s + q * r + q * s)


def _gadd(x, y):
    return (x[0] + y[0], x[1] + y[1])


def _gsign(x) -> int:
    return GoldenInt(*x).sign()


def _mat_mul(m, n):
    a, b, c, d = m
    e, f, g, h = n
    return (
        _gadd(_gmul(a, e), _gmul(b, g)),
        _gadd(_gmul(a, f), _gmul(b, h)),
        _gadd(_gmul(c, e), _gmul(d, g)),
        _gadd(_gmul(c, f), _gmul(d, h)),
    )


def _normalize(m):
    a, b, c, d = m
    sc = _gsign(c)
    if sc < 0 or (sc == 0 and _gsign(d) < 0):
        return tuple((-x[0], -x[1]) for x in m)
    return m


G5_GENERATORS = {
    "T": ((1, 0), (0, 1), (0, 0), (1, 0)),  # z -> z + lam
    "T^-1": ((1, 0), (0, -1), (0, 0), (1, 0)),
    "S": ((0, 0), (1, 0), (-1, 0), (0, 0)),  # z -> -1/z
}


def g5_ball(max_word_len: int):
    """Breadth-first ball of G5 elements (canonical PSL matrices) by word length.

    Returns (elements dict matrix -> length, sizes per length).
    """
    ident = ((1, 0), (0, 0), (0, 0), (1, 0))
    seen = {ident: 0}
    frontier = [ident]
    sizes = [1]
    gens = list(G5_GENERATORS.values())
    for length in range(1, max_word_len + 1):
        nxt = []
        for m in frontier:
            for g in gens:
                h = _normalize(_mat_mul(m, g))
                if h not in seen:
                    seen[h] = length
                    nxt.append(h)
        frontier = nxt
        sizes.append(len(seen))
    return seen, sizes


def hecke_entry_scan(max_word_len: int) -> dict:
    """Collect every rational (lam-free) matrix entry of G5 elements up to a word length."""
    if max_word_len < 1:
        raise ValueError("max_word_len must be >= 1")
    elements, sizes = g5_ball(max_word_len)
    rational = set()
    for m in elements:
        for p, q in m:
            if q == 0:
                rational.add(p)
                rational.add(-p)  # PSL: the sign of a representative is a convention
    found = sorted(rational)
    return {
        "max_word_len": max_word_len,
        "elements_seen": len(elements),
        "ball_sizes": sizes,
        "rational_entries_found": found,
        "pass": set(found) <= {-1, 0, 1},
    }
