# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: orbit BFS over dense label encodings, reduced-word walks."""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint8_t, uint64_t

cnp.import_array()

BACKEND = "cython"


def orbit_tri(int nbits, long long w):
    cdef uint64_t m = (<uint64_t>1) << nbits
    cdef uint64_t mask = m - 1
    cdef uint64_t ww = (<uint64_t>w) & mask
    cdef cnp.ndarray[uint8_t, ndim=1] seen_arr = np.zeros(m * m, dtype=np.uint8)
    cdef uint8_t[:] seen = seen_arr
    cdef cnp.ndarray[uint64_t, ndim=1] queue_arr = np.empty(m * m, dtype=np.uint64)
    cdef uint64_t[:] queue = queue_arr
    cdef uint64_t head = 0, tail = 0, count = 1
    cdef uint64_t s, a, b, c, t
    cdef uint64_t nxt[8]
    cdef int j
    seen[0] = 1
    queue[tail] = 0
    tail += 1
    while head < tail:
        s = queue[head]
        head += 1
        a = s & mask
        b = s >> nbits
        c = (ww - a - b) & mask
        nxt[0] = (a + 1) & mask; nxt[1] = c
        nxt[2] = c; nxt[3] = a
        nxt[4] = (a - 1) & mask; nxt[5] = (ww - a + 1 - b) & mask
        nxt[6] = b; nxt[7] = c
        for j in range(4):
            t = nxt[2 * j] | (nxt[2 * j + 1] << nbits)
            if not seen[t]:
                seen[t] = 1
                count += 1
                queue[tail] = t
                tail += 1
    return seen_arr, count


def orbit_pent(int nbits, long long w, long long k):
    cdef uint64_t m = (<uint64_t>1) << nbits
    cdef uint64_t mask = m - 1
    cdef uint64_t ww = (<uint64_t>w) & mask
    cdef uint64_t kk = (<uint64_t>k) & mask
    cdef uint64_t size = (<uint64_t>1) << (4 * nbits)
    cdef cnp.ndarray[uint8_t, ndim=1] seen_arr = np.zeros(size, dtype=np.uint8)
    cdef uint8_t[:] seen = seen_arr
    cdef cnp.ndarray[uint64_t, ndim=1] queue_arr = np.empty(size, dtype=np.uint64)
    cdef uint64_t[:] queue = queue_arr
    cdef uint64_t head = 0, tail = 0, count = 1
    cdef uint64_t s, a, b, c, d, e, t, ia, ib, ic, id_, ie
    cdef uint64_t q[16]
    cdef int j
    seen[0] = 1
    queue[tail] = 0
    tail += 1
    while head < tail:
        s = queue[head]
        head += 1
        a = s & mask
        b = (s >> nbits) & mask
        c = (s >> (2 * nbits)) & mask
        d = s >> (3 * nbits)
        e = (ww - a - b - c - d) & mask
        ia = (a - 1) & mask
        id_ = c
        ic = (d + kk) & mask
        ie = (b - kk) & mask
        ib = (ww - ia - ic - id_ - ie) & mask
        q[0] = (a + 1) & mask; q[1] = (e + kk) & mask; q[2] = d; q[3] = (c - kk) & mask
        q[4] = e; q[5] = a; q[6] = b; q[7] = c
        q[8] = ia; q[9] = ib; q[10] = ic; q[11] = id_
        q[12] = b; q[13] = c; q[14] = d; q[15] = e
        for j in range(4):
            t = (q[4 * j] | (q[4 * j + 1] << nbits)
                 | (q[4 * j + 2] << (2 * nbits)) | (q[4 * j + 3] << (3 * nbits)))
            if not seen[t]:
                seen[t] = 1
                count += 1
                queue[tail] = t
                tail += 1
    return seen_arr, count


cdef inline int64_t _red(int64_t v, int64_t modulus) nogil:
    if modulus:
        v = v % modulus
        if v < 0:
            v += modulus
    return v


cdef bint _is_identity(int64_t[:, :] m, int n, int64_t modulus, bint projective) nogil:
    cdef int i, j, sgn_i
    cdef int64_t target, v
    cdef bint ok
    for sgn_i in range(2 if projective else 1):
        ok = True
        for i in range(n):
            for j in range(n):
                target = 0
                if i == j:
                    target = 1 if sgn_i == 0 else -1
                v = m[i, j] - target
                if modulus:
                    v = _red(v, modulus)
                if v != 0:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return True
    return False


def walk_reduced_words(gens, inverse, weights, int max_len, long long modulus, bint projective):
    cdef cnp.ndarray[int64_t, ndim=3] g_arr = np.ascontiguousarray(gens, dtype=np.int64)
    cdef int64_t[:, :, :] g = g_arr
    cdef int k = g_arr.shape[0]
    cdef int n = g_arr.shape[1]
    cdef cnp.ndarray[int64_t, ndim=1] inv_arr = np.ascontiguousarray(inverse, dtype=np.int64)
    cdef int64_t[:] inv = inv_arr
    cdef cnp.ndarray[int64_t, ndim=2] wt_arr = np.ascontiguousarray(weights, dtype=np.int64)
    cdef int64_t[:, :] wt = wt_arr
    # stack of partial products, letters, sums and next-letter cursor per depth
    cdef cnp.ndarray[int64_t, ndim=3] st_arr = np.zeros((max_len + 1, n, n), dtype=np.int64)
    cdef int64_t[:, :, :] st = st_arr
    cdef cnp.ndarray[int64_t, ndim=1] letter_arr = np.full(max_len + 1, -1, dtype=np.int64)
    cdef int64_t[:] letter = letter_arr
    cdef cnp.ndarray[int64_t, ndim=1] cursor_arr = np.zeros(max_len + 1, dtype=np.int64)
    cdef int64_t[:] cursor = cursor_arr
    cdef cnp.ndarray[int64_t, ndim=2] sums_arr = np.zeros((max_len + 1, 2), dtype=np.int64)
    cdef int64_t[:, :] sums = sums_arr
    cdef int64_t words = 0, idents = 0, zs = 0, zs_nonid = 0, nz_id = 0
    cdef int depth, i, r, c, t
    cdef int64_t acc
    cdef bint ident
    first = None
    if max_len <= 0:
        return (0, 0, 0, 0, 0, None)
    for r in range(n):
        for c in range(n):
            st[0, r, c] = 1 if r == c else 0
    depth = 0
    cursor[0] = 0
    while depth >= 0:
        if cursor[depth] >= k:
            depth -= 1
            continue
        i = <int>cursor[depth]
        cursor[depth] += 1
        if depth > 0 and i == inv[letter[depth]]:
            continue
        # product at depth + 1
        for r in range(n):
            for c in range(n):
                acc = 0
                for t in range(n):
                    acc += st[depth, r, t] * g[i, t, c]
                st[depth + 1, r, c] = _red(acc, modulus)
        letter[depth + 1] = i
        sums[depth + 1, 0] = sums[depth, 0] + wt[i, 0]
        sums[depth + 1, 1] = sums[depth, 1] + wt[i, 1]
        words += 1
        ident = _is_identity(st[depth + 1], n, modulus, projective)
        if ident:
            idents += 1
            if first is None:
                first = []
                for t in range(1, depth + 2):
                    first.append(int(letter[t]))
                first = tuple(first)
        if sums[depth + 1, 0] == 0 and sums[depth + 1, 1] == 0:
            zs += 1
            if not ident:
                zs_nonid += 1
        elif ident:
            nz_id += 1
        if depth + 1 < max_len:
            depth += 1
            cursor[depth] = 0
    return (words, idents, zs, zs_nonid, nz_id, first)
