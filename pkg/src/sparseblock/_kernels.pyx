# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: tree-walk enumeration, planar counting, Wick sums.

Semantics match ``_pykernels`` exactly; tests compare the two.
"""

from libc.stdlib cimport malloc, free
from libc.string cimport memset

cdef enum:
    MAXL = 64


cdef struct WalkState:
    int L
    int irreducible_only
    int nlab
    int nvert
    int depth
    int word[MAXL]
    int path_lab[MAXL]
    int path_vert[MAXL + 1]
    # children of each vertex, stored as (label, child) in flat arrays
    int nchild[MAXL + 1]
    int child_lab[MAXL + 1][MAXL]
    int child_vert[MAXL + 1][MAXL]
    # scratch
    int relabel[MAXL + 1]
    int first[MAXL + 1]
    int last[MAXL + 1]


cdef int rotation_status(WalkState* st) nogil:
    cdef int L = st.L
    cdef int r, i, s, t, nxt, cmp
    cdef int* w = st.word
    for r in range(1, L):
        memset(st.relabel, 0, sizeof(int) * (MAXL + 1))
        nxt = 1
        cmp = 0
        for i in range(L):
            s = w[(r + i) % L]
            t = st.relabel[s]
            if t == 0:
                t = nxt
                st.relabel[s] = nxt
                nxt += 1
            if t != w[i]:
                cmp = -1 if t < w[i] else 1
                break
        if cmp < 0:
            return 0
        if cmp == 0:
            return r
    return L


cdef int irreducible(WalkState* st) nogil:
    cdef int L = st.L
    cdef int i, j, s, lo, hi
    cdef int* w = st.word
    for i in range(st.nlab + 1):
        st.first[i] = -1
    for i in range(L):
        s = w[i]
        if st.first[s] < 0:
            st.first[s] = i
        st.last[s] = i
    for i in range(L):
        lo = L
        hi = -1
        for j in range(i, L):
            s = w[j]
            if st.first[s] < lo:
                lo = st.first[s]
            if st.last[s] > hi:
                hi = st.last[s]
            if lo < i:
                break
            if hi == j and not (i == 0 and j == L - 1):
                return 0
    return 1


cdef void walk_rec(WalkState* st, int t, list out):
    cdef int r = st.L - t
    cdef int size, lab, c, k, v, n
    if r == 0:
        size = rotation_status(st)
        if size == 0:
            return
        if st.irreducible_only and not irreducible(st):
            return
        out.append((tuple([st.word[k] for k in range(st.L)]), size))
        return
    v = st.path_vert[st.depth]
    if st.depth > 0:
        lab = st.path_lab[st.depth - 1]
        st.word[t] = lab
        st.depth -= 1
        walk_rec(st, t + 1, out)
        st.depth += 1
        st.path_lab[st.depth - 1] = lab
        st.path_vert[st.depth] = v
    if st.depth + 1 <= r - 1:
        n = st.nchild[v]
        for k in range(n):
            lab = st.child_lab[v][k]
            st.word[t] = lab
            st.path_lab[st.depth] = lab
            st.path_vert[st.depth + 1] = st.child_vert[v][k]
            st.depth += 1
            walk_rec(st, t + 1, out)
            st.depth -= 1
        st.nlab += 1
        lab = st.nlab
        c = st.nvert
        st.nvert += 1
        st.nchild[c] = 0
        st.child_lab[v][n] = lab
        st.child_vert[v][n] = c
        st.nchild[v] = n + 1
        st.word[t] = lab
        st.path_lab[st.depth] = lab
        st.path_vert[st.depth + 1] = c
        st.depth += 1
        walk_rec(st, t + 1, out)
        st.depth -= 1
        st.nchild[v] = n
        st.nvert -= 1
        st.nlab -= 1


def tree_walk_orbits(int p, bint irreducible_only=False):
    """All orbit representatives of closed tree walks of length ``2p``."""
    if 2 * p > MAXL:
        raise ValueError(f"order {2 * p} exceeds compiled limit {MAXL}")
    cdef WalkState* st = <WalkState*> malloc(sizeof(WalkState))
    if st == NULL:
        raise MemoryError()
    cdef list out = []
    try:
        memset(st, 0, sizeof(WalkState))
        st.L = 2 * p
        st.irreducible_only = irreducible_only
        st.nvert = 1
        st.path_vert[0] = 0
        if p > 0:
            walk_rec(st, 0, out)
    finally:
        free(st)
    return out


def planar_count(word):
    """Non-crossing perfect matchings of ``word`` pairing equal labels."""
    cdef int L = len(word)
    if L % 2:
        return 0
    if L > MAXL:
        raise ValueError(f"word length {L} exceeds compiled limit {MAXL}")
    cdef int w[MAXL]
    cdef long long N[MAXL + 1][MAXL + 1]
    cdef int i, j, k, length, a
    cdef long long total, left
    for i in range(L):
        w[i] = word[i]
    for i in range(L + 1):
        N[i][i] = 1
    for length in range(2, L + 1, 2):
        for i in range(0, L - length + 1):
            j = i + length
            total = 0
            a = w[i]
            for k in range(i + 1, j, 2):
                if w[k] == a:
                    left = N[i + 1][k]
                    if left:
                        total += left * N[k + 1][j]
            N[i][j] = total
    return N[0][L]


cdef struct WickState:
    int L
    int w[MAXL]
    int used[MAXL]
    int other[2 * MAXL]
    long long counts[MAXL + 2]


cdef inline int link(WickState* st, int u, int v, int* rec) nogil:
    # returns 1 when the join closes a loop
    cdef int a, b
    if st.other[u] == v:
        rec[0] = -1
        return 1
    a = st.other[u]
    b = st.other[v]
    st.other[a] = b
    st.other[b] = a
    rec[0] = a
    rec[1] = u
    rec[2] = b
    rec[3] = v
    return 0


cdef inline void unlink(WickState* st, int* rec) nogil:
    if rec[0] >= 0:
        st.other[rec[0]] = rec[1]
        st.other[rec[2]] = rec[3]


cdef void wick_rec(WickState* st, int start, int loops) nogil:
    cdef int i = start
    cdef int j, lab, ri, ci, rj, cj, c1, c2
    cdef int r1[4]
    cdef int r2[4]
    while i < st.L and st.used[i]:
        i += 1
    if i == st.L:
        st.counts[loops] += 1
        return
    st.used[i] = 1
    lab = st.w[i]
    ri = 2 * i
    ci = 2 * i + 1
    for j in range(i + 1, st.L):
        if st.used[j] or st.w[j] != lab:
            continue
        st.used[j] = 1
        rj = 2 * j
        cj = 2 * j + 1
        c1 = link(st, ri, rj, r1)
        c2 = link(st, ci, cj, r2)
        wick_rec(st, i + 1, loops + c1 + c2)
        unlink(st, r2)
        unlink(st, r1)
        c1 = link(st, ri, cj, r1)
        c2 = link(st, ci, rj, r2)
        wick_rec(st, i + 1, loops + c1 + c2)
        unlink(st, r2)
        unlink(st, r1)
        st.used[j] = 0
    st.used[i] = 0


def wick_loop_counts(word):
    """Histogram of index-loop counts over all Wick contractions of ``tr W``."""
    cdef int L = len(word)
    if L > MAXL:
        raise ValueError(f"word length {L} exceeds compiled limit {MAXL}")
    if L == 0:
        return [1, 0]
    cdef WickState* st = <WickState*> malloc(sizeof(WickState))
    if st == NULL:
        raise MemoryError()
    cdef int k, c, r
    try:
        memset(st, 0, sizeof(WickState))
        st.L = L
        for k in range(L):
            st.w[k] = word[k]
            c = 2 * k + 1
            r = 2 * ((k + 1) % L)
            st.other[c] = r
            st.other[r] = c
        with nogil:
            wick_rec(st, 0, 0)
        return [st.counts[k] for k in range(L + 2)]
    finally:
        free(st)
