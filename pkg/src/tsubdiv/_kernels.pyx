# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the functions in ``_pykernels``.

Rows are packed little-endian into ``uint64`` words.  The small-instance
search handles ``n <= 64`` (one word per row) and mirrors the pure-Python
search, including the matcher's visiting order, so both backends return the
same certificates.
"""
import numpy as np

from libc.stdint cimport uint64_t, int64_t
from posix.time cimport clock_gettime, timespec, CLOCK_MONOTONIC

cdef extern from *:
    int __builtin_popcountll(unsigned long long x) nogil
    int __builtin_ctzll(unsigned long long x) nogil

cdef enum:
    MAXN = 64
    INF = 1 << 30
    CLOCK_EVERY = 1024
    C_PRESENT = 1
    C_ABSENT = 0
    C_INCONCLUSIVE = -1
    C_SWEEP_DONE = 0
    C_SWEEP_FOUND_ABSENT = 1
    C_SWEEP_BUDGET = 2

PRESENT = C_PRESENT
ABSENT = C_ABSENT
INCONCLUSIVE = C_INCONCLUSIVE
SWEEP_DONE = C_SWEEP_DONE
SWEEP_FOUND_ABSENT = C_SWEEP_FOUND_ABSENT
SWEEP_BUDGET = C_SWEEP_BUDGET


cdef inline double _now() nogil:
    cdef timespec ts
    clock_gettime(CLOCK_MONOTONIC, &ts)
    return ts.tv_sec + ts.tv_nsec * 1e-9


def directed_counts(const uint64_t[:, ::1] out_w, const uint64_t[:, ::1] in_w,
                    const int64_t[::1] us, const int64_t[::1] vs,
                    const uint64_t[::1] mask):
    """``counts[a, b] = |out(us[a]) & in(vs[b]) & mask|`` over packed rows."""
    cdef Py_ssize_t nu = us.shape[0], nv = vs.shape[0], nw = out_w.shape[1]
    res_arr = np.zeros((nu, nv), dtype=np.int64)
    cdef int64_t[:, ::1] res = res_arr
    cdef Py_ssize_t a, b, w
    cdef const uint64_t* ra
    cdef const uint64_t* rb
    cdef const uint64_t* m = &mask[0]
    cdef int64_t s
    with nogil:
        for a in range(nu):
            ra = &out_w[us[a], 0]
            for b in range(nv):
                rb = &in_w[vs[b], 0]
                s = 0
                for w in range(nw):
                    s += __builtin_popcountll(ra[w] & rb[w] & m[w])
                res[a, b] = s
    return res_arr


cdef struct Search:
    int n
    int k
    uint64_t outs[MAXN]
    uint64_t ins[MAXN]
    int base[MAXN]
    int64_t tuples
    int64_t max_tuples
    double deadline
    int status
    int npairs
    uint64_t cands[MAXN]
    int conn[MAXN]
    # matcher scratch
    int order[MAXN]
    int pair_left[MAXN]
    int pair_right[MAXN]
    int dist[MAXN]
    int queue[MAXN]


cdef bint _dfs(Search* s, int u) nogil:
    cdef uint64_t rest = s.cands[s.order[u]]
    cdef int r, w
    while rest:
        r = __builtin_ctzll(rest)
        rest &= rest - 1
        w = s.pair_right[r]
        if w < 0 or (s.dist[w] == s.dist[u] + 1 and _dfs(s, w)):
            s.pair_left[u] = r
            s.pair_right[r] = u
            return True
    s.dist[u] = INF
    return False


cdef bint _match(Search* s) nogil:
    """Greedy seed plus Hopcroft-Karp phases; fills ``s.conn`` on success."""
    cdef int L = s.npairs, n = s.n
    cdef int i, j, u, w, r, head, tail, key
    cdef uint64_t rest
    cdef bint found
    # stable insertion sort of pair indices by candidate count
    for i in range(L):
        s.order[i] = i
    for i in range(1, L):
        key = s.order[i]
        j = i - 1
        while j >= 0 and __builtin_popcountll(s.cands[s.order[j]]) > __builtin_popcountll(s.cands[key]):
            s.order[j + 1] = s.order[j]
            j -= 1
        s.order[j + 1] = key
    for i in range(L):
        s.pair_left[i] = -1
    for i in range(n):
        s.pair_right[i] = -1
    for u in range(L):
        rest = s.cands[s.order[u]]
        while rest:
            r = __builtin_ctzll(rest)
            rest &= rest - 1
            if s.pair_right[r] < 0:
                s.pair_left[u] = r
                s.pair_right[r] = u
                break
    while True:
        head = 0
        tail = 0
        for u in range(L):
            if s.pair_left[u] < 0:
                s.dist[u] = 0
                s.queue[tail] = u
                tail += 1
            else:
                s.dist[u] = INF
        found = False
        while head < tail:
            u = s.queue[head]
            head += 1
            rest = s.cands[s.order[u]]
            while rest:
                r = __builtin_ctzll(rest)
                rest &= rest - 1
                w = s.pair_right[r]
                if w < 0:
                    found = True
                elif s.dist[w] == INF:
                    s.dist[w] = s.dist[u] + 1
                    s.queue[tail] = w
                    tail += 1
        if not found:
            break
        for u in range(L):
            if s.pair_left[u] < 0:
                _dfs(s, u)
    for u in range(L):
        if s.pair_left[u] < 0:
            return False
    for u in range(L):
        s.conn[s.order[u]] = s.pair_left[u]
    return True


cdef bint _rec(Search* s, int depth, uint64_t basemask) nogil:
    cdef int v, i, j, p
    cdef uint64_t bit, mask, c
    cdef bint ok
    for v in range(s.n):
        bit = (<uint64_t>1) << v
        if basemask & bit:
            continue
        mask = basemask | bit
        ok = True
        for i in range(depth):
            if not (s.outs[s.base[i]] & s.ins[v] & ~mask):
                ok = False
                break
        if not ok:
            continue
        s.base[depth] = v
        if depth + 1 < s.k:
            if _rec(s, depth + 1, mask):
                return True
            if s.status == C_INCONCLUSIVE:
                return False
            continue
        if (s.max_tuples >= 0 and s.tuples >= s.max_tuples) or (
                s.deadline > 0 and s.tuples % CLOCK_EVERY == 0
                and _now() > s.deadline):
            s.status = C_INCONCLUSIVE
            return False
        s.tuples += 1
        p = 0
        ok = True
        for i in range(s.k):
            for j in range(i + 1, s.k):
                c = s.outs[s.base[i]] & s.ins[s.base[j]] & ~mask
                if not c:
                    ok = False
                s.cands[p] = c
                p += 1
        s.npairs = p
        if ok and _match(s):
            s.status = C_PRESENT
            return True
    return False


cdef void _run(Search* s) nogil:
    s.tuples = 0
    s.status = C_ABSENT
    s.npairs = s.k * (s.k - 1) // 2
    if s.n < s.k + s.npairs:
        return
    _rec(s, 0, 0)


def find_subdivision_small(const uint64_t[::1] out_rows, const uint64_t[::1] in_rows,
                           int n, int k, int64_t max_tuples=-1, double deadline=0.0):
    """Exact search for ``n <= 64``; same contract as ``_pykernels.search``."""
    if n > MAXN or n < 0:
        raise ValueError("small kernel handles 0 <= n <= 64")
    cdef Search s
    cdef int i
    s.n = n
    s.k = k
    s.max_tuples = max_tuples
    s.deadline = deadline
    for i in range(n):
        s.outs[i] = out_rows[i]
        s.ins[i] = in_rows[i]
    with nogil:
        _run(&s)
    if s.status == C_PRESENT:
        return (C_PRESENT, tuple([s.base[i] for i in range(k)]),
                [s.conn[i] for i in range(s.npairs)], s.tuples)
    return s.status, (), [], s.tuples


cdef void _decode(Search* s, uint64_t pattern) nogil:
    cdef int i, j, e = 0
    for i in range(s.n):
        s.outs[i] = 0
        s.ins[i] = 0
    for i in range(s.n):
        for j in range(i + 1, s.n):
            if (pattern >> e) & 1:
                s.outs[i] |= (<uint64_t>1) << j
                s.ins[j] |= (<uint64_t>1) << i
            else:
                s.outs[j] |= (<uint64_t>1) << i
                s.ins[i] |= (<uint64_t>1) << j
            e += 1


def sweep_small(int n, int k, uint64_t start, uint64_t stop, bint early_exit=True,
                int64_t max_tuples=-1, double deadline=0.0):
    """Compiled twin of ``_pykernels.sweep_small``."""
    if n > 11:
        raise ValueError("pattern sweep handles n <= 11")
    cdef Search s
    cdef uint64_t p = start
    cdef int64_t present = 0, tuples = 0
    cdef int64_t first_absent = -1
    cdef int reason = C_SWEEP_DONE
    s.n = n
    s.k = k
    s.deadline = deadline
    with nogil:
        while p < stop:
            if deadline > 0 and (p - start) % 256 == 0 and _now() > deadline:
                reason = C_SWEEP_BUDGET
                break
            if max_tuples >= 0 and max_tuples - tuples == 0:
                reason = C_SWEEP_BUDGET
                break
            s.max_tuples = -1 if max_tuples < 0 else max_tuples - tuples
            _decode(&s, p)
            _run(&s)
            tuples += s.tuples
            if s.status == C_INCONCLUSIVE:
                reason = C_SWEEP_BUDGET
                break
            if s.status == C_PRESENT:
                present += 1
            else:
                if first_absent < 0:
                    first_absent = <int64_t>p
                if early_exit:
                    p += 1
                    reason = C_SWEEP_FOUND_ABSENT
                    break
            p += 1
    return reason, int(p), present, first_absent, tuples
