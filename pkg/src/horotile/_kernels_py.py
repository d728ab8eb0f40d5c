"""Pure-Python kernels; same interface as the compiled ``_kernels`` module."""
from collections import deque

import numpy as np

BACKEND = "python"


def orbit_tri(nbits, w):
    """BFS orbit of (0, 0) under L, C and inverses, labels mod 2**nbits.

    State (a, b) is encoded as a + (b << nbits). Returns (visited uint8 array, size).
    """
    m = 1 << nbits
    mask = m - 1
    w &= mask
    seen = np.zeros(m * m, dtype=np.uint8)
    seen[0] = 1
    count = 1
    queue = deque([0])
    while queue:
        s = queue.popleft()
        a = s & mask
        b = s >> nbits
        c = (w - a - b) & mask
        for na, nb in (
            ((a + 1) & mask, c),  # L
            (c, a),  # C
            ((a - 1) & mask, (w - a + 1 - b) & mask),  # L^-1
            (b, c),  # C^-1 = C^2
        ):
            t = na | (nb << nbits)
            if not seen[t]:
                seen[t] = 1
                count += 1
                queue.append(t)
    return seen, count


def orbit_pent(nbits, w, k):
    """BFS orbit of (0, 0, 0, 0) under L, P and inverses, labels mod 2**nbits."""
    m = 1 << nbits
    mask = m - 1
    w &= mask
    k &= mask
    sh = nbits
    seen = np.zeros(1 << (4 * nbits), dtype=np.uint8)
    seen[0] = 1
    count = 1
    queue = deque([0])
    while queue:
        s = queue.popleft()
        a = s & mask
        b = (s >> sh) & mask
        c = (s >> (2 * sh)) & mask
        d = s >> (3 * sh)
        e = (w - a - b - c - d) & mask
        # inverse of L: a = a'-1, d = c', c = d'+k, e = b'-k, b from the sum
        ia = (a - 1) & mask
        id_ = c
        ic = (d + k) & mask
        ie = (b - k) & mask
        ib = (w - ia - ic - id_ - ie) & mask
        for q in (
            ((a + 1) & mask, (e + k) & mask, d, (c - k) & mask),  # L
            (e, a, b, c),  # P
            (ia, ib, ic, id_),  # L^-1
            (b, c, d, e),  # P^-1
        ):
            t = q[0] | (q[1] << sh) | (q[2] << (2 * sh)) | (q[3] << (3 * sh))
            if not seen[t]:
                seen[t] = 1
                count += 1
                queue.append(t)
    return seen, count


def _matmul(x, y, n, modulus):
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        xi = x[i]
        oi = out[i]
        for j in range(n):
            s = 0
            for t in range(n):
                s += xi[t] * y[t][j]
            oi[j] = s % modulus if modulus else s
    return out


def _is_identity(m, n, modulus, projective):
    for sgn in ((1, -1) if projective else (1,)):
        ok = True
        for i in range(n):
            for j in range(n):
                target = sgn if i == j else 0
                v = m[i][j]
                if modulus:
                    if (v - target) % modulus:
                        ok = False
                        break
                elif v != target:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return True
    return False


def walk_reduced_words(gens, inverse, weights, max_len, modulus, projective):
    """Enumerate nonempty reduced words of length <= max_len over ``gens``.

    ``inverse[i]`` is the index of the inverse letter; ``weights[i]`` a pair
    of integers summed along the word. Matrices multiply in written order.
    Returns (words, identity_words, zero_sum_words, zero_sum_nonidentity,
    nonzero_sum_identity, first_identity) where first_identity is a tuple of
    letter indices or None.
    """
    gens = np.asarray(gens, dtype=np.int64)
    k, n, _ = gens.shape
    g = [gens[i].tolist() for i in range(k)]
    inv = [int(x) for x in inverse]
    wts = [tuple(int(v) for v in row) for row in np.asarray(weights)]
    stats = [0, 0, 0, 0, 0]
    first = [None]
    word = []

    def rec(m, last, s0, s1, depth):
        for i in range(k):
            if last >= 0 and i == inv[last]:
                continue
            mm = _matmul(m, g[i], n, modulus)
            t0, t1 = s0 + wts[i][0], s1 + wts[i][1]
            word.append(i)
            ident = _is_identity(mm, n, modulus, projective)
            stats[0] += 1
            if ident:
                stats[1] += 1
                if first[0] is None:
                    first[0] = tuple(word)
            if t0 == 0 and t1 == 0:
                stats[2] += 1
                if not ident:
                    stats[3] += 1
            elif ident:
                stats[4] += 1
            if depth + 1 < max_len:
                rec(mm, i, t0, t1, depth + 1)
            word.pop()

    ident0 = [[int(i == j) for j in range(n)] for i in range(n)]
    if max_len > 0:
        rec(ident0, -1, 0, 0, 0)
    return (*stats, first[0])
