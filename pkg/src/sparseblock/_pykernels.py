"""Pure-Python implementations of the hot loops.

These mirror ``_kernels.pyx`` one-for-one and are used when the compiled
extension is unavailable (or ``SPARSEBLOCK_PURE_PYTHON=1``).
"""

from __future__ import annotations


def _rotation_status(w, L):
    """Compare ``w`` against its canonical rotations.

    Returns the orbit size if ``w`` is the lexicographically least canonical
    rotation, otherwise 0.
    """
    for r in range(1, L):
        relabel = {}
        nxt = 1
        cmp = 0
        for i in range(L):
            s = w[(r + i) % L]
            t = relabel.get(s)
            if t is None:
                t = relabel[s] = nxt
                nxt += 1
            if t != w[i]:
                cmp = -1 if t < w[i] else 1
                break
        if cmp < 0:
            return 0
        if cmp == 0:
            return r
    return L


def _irreducible(w, L):
    first = {}
    last = {}
    for i, s in enumerate(w):
        first.setdefault(s, i)
        last[s] = i
    for i in range(L):
        lo = L
        hi = -1
        for j in range(i, L):
            s = w[j]
            if first[s] < lo:
                lo = first[s]
            if last[s] > hi:
                hi = last[s]
            if lo < i:
                break
            if hi == j and not (i == 0 and j == L - 1):
                return False
    return True


def tree_walk_orbits(p: int, irreducible_only: bool = False):
    """All orbit representatives of closed tree walks of length ``2p``.

    Returns a list of ``(word, orbit_size)`` with ``word`` a tuple.
    """
    L = 2 * p
    word = [0] * L
    out = []
    children = [[]]  # per vertex: list of (label, child)
    path_labels = []
    path_verts = [0]
    state = {"nlab": 0}

    def emit():
        w = tuple(word)
        size = _rotation_status(w, L)
        if size == 0:
            return
        if irreducible_only and not _irreducible(w, L):
            return
        out.append((w, size))

    def rec(t):
        r = L - t
        if r == 0:
            emit()
            return
        depth = len(path_labels)
        v = path_verts[-1]
        if depth > 0:
            lab = path_labels.pop()
            path_verts.pop()
            word[t] = lab
            rec(t + 1)
            path_labels.append(lab)
            path_verts.append(v)
        if depth + 1 <= r - 1:
            for lab, c in children[v]:
                word[t] = lab
                path_labels.append(lab)
                path_verts.append(c)
                rec(t + 1)
                path_labels.pop()
                path_verts.pop()
            state["nlab"] += 1
            lab = state["nlab"]
            c = len(children)
            children.append([])
            children[v].append((lab, c))
            word[t] = lab
            path_labels.append(lab)
            path_verts.append(c)
            rec(t + 1)
            path_labels.pop()
            path_verts.pop()
            children[v].pop()
            children.pop()
            state["nlab"] -= 1

    if L > 0:
        rec(0)
    return out


def planar_count(w) -> int:
    """Non-crossing perfect matchings of ``w`` pairing equal labels."""
    L = len(w)
    if L % 2:
        return 0
    # N[i][j]: matchings of the half-open interval w[i:j]
    N = [[0] * (L + 1) for _ in range(L + 1)]
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


def wick_loop_counts(w):
    """Histogram of index-loop counts over all Wick contractions of ``tr W``.

    Each matched pair of equal labels contributes the two propagator terms;
    entry ``k`` of the result counts the global term choices producing ``k``
    closed index loops (i.e. a factor ``d**k``).
    """
    L = len(w)
    counts = [0] * (L + 2)
    if L == 0:
        counts[0] = 1
        return counts
    # slot 2k: row index of position k; slot 2k+1: column index
    other = [0] * (2 * L)
    for k in range(L):
        c = 2 * k + 1
        r = 2 * ((k + 1) % L)
        other[c] = r
        other[r] = c
    used = [False] * L

    def link(u, v):
        # join chain ends u and v; returns undo record
        if other[u] == v:
            return None
        a = other[u]
        b = other[v]
        other[a] = b
        other[b] = a
        return (a, u, b, v)

    def unlink(rec):
        if rec is not None:
            a, u, b, v = rec
            other[a] = u
            other[b] = v

    def rec(start, loops):
        i = start
        while i < L and used[i]:
            i += 1
        if i == L:
            counts[loops] += 1
            return
        used[i] = True
        lab = w[i]
        for j in range(i + 1, L):
            if used[j] or w[j] != lab:
                continue
            used[j] = True
            ri, ci, rj, cj = 2 * i, 2 * i + 1, 2 * j, 2 * j + 1
            for u1, v1, u2, v2 in ((ri, rj, ci, cj), (ri, cj, ci, rj)):
                r1 = link(u1, v1)
                r2 = link(u2, v2)
                rec(i + 1, loops + (r1 is None) + (r2 is None))
                unlink(r2)
                unlink(r1)
            used[j] = False
        used[i] = False

    rec(0, 0)
    return counts
