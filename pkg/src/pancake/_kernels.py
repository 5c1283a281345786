"""Numba kernels for rank-indexed traversal of the prefix-reversal graph.

Inside the kernels permutations are int64 arrays with 0-based values;
the public modules convert at the boundary.  The level-synchronous BFS
writes only the single value ``level + 1`` into unseen slots, so
concurrent writers are idempotent and the resulting distance field is
byte-identical for any thread count.
"""

from __future__ import annotations

import numpy as np
from numba import config, njit, prange

# The default TBB layer is version-sensitive; workqueue is always available
# and the BFS contract does not depend on the layer.
config.THREADING_LAYER = "workqueue"

UNSEEN = 255

FACTORIALS = np.array(
    [
        1,
        1,
        2,
        6,
        24,
        120,
        720,
        5040,
        40320,
        362880,
        3628800,
        39916800,
        479001600,
        6227020800,
        87178291200,
        1307674368000,
        20922789888000,
        355687428096000,
        6402373705728000,
        121645100408832000,
        2432902008176640000,
    ],
    dtype=np.int64,
)


@njit(cache=True)
def _rank_perm(perm, n, fact):
    r = np.int64(0)
    for k in range(n):
        c = 0
        pk = perm[k]
        for j in range(k + 1, n):
            if perm[j] < pk:
                c += 1
        r += c * fact[n - 1 - k]
    return r


@njit(cache=True)
def _unrank_perm(r, n, fact, avail, out):
    for k in range(n):
        avail[k] = k
    m = n
    for k in range(n):
        f = fact[n - 1 - k]
        d = r // f
        r -= d * f
        out[k] = avail[d]
        for j in range(d, m - 1):
            avail[j] = avail[j + 1]
        m -= 1


@njit(parallel=True, cache=True)
def bfs_sweep(dist, level, n, fact, nchunks):
    """Expand every vertex at ``level``; returns the number of writes.

    The count may overshoot under contention but is only used as a
    "frontier non-empty" signal; dist itself is deterministic.
    """
    total = fact[n]
    chunk = (total + nchunks - 1) // nchunks
    wrote = 0
    for c in prange(nchunks):
        lo = c * chunk
        hi = lo + chunk
        if hi > total:
            hi = total
        perm = np.empty(n, np.int64)
        work = np.empty(n, np.int64)
        avail = np.empty(n, np.int64)
        local = 0
        for r0 in range(lo, hi):
            if dist[r0] != level:
                continue
            _unrank_perm(r0, n, fact, avail, perm)
            for i in range(2, n + 1):
                for j in range(i):
                    work[j] = perm[i - 1 - j]
                for j in range(i, n):
                    work[j] = perm[j]
                rr = _rank_perm(work, n, fact)
                if dist[rr] == UNSEEN:
                    dist[rr] = level + 1
                    local += 1
        wrote += local
    return wrote


@njit(cache=True)
def _bfs_serial_from(n, fact, src, dist, queue):
    """Plain queue BFS over the whole graph; fills dist (int16, -1 unseen)."""
    perm = np.empty(n, np.int64)
    work = np.empty(n, np.int64)
    avail = np.empty(n, np.int64)
    dist[src] = 0
    queue[0] = src
    head = 0
    tail = 1
    while head < tail:
        r0 = queue[head]
        head += 1
        d = dist[r0]
        _unrank_perm(r0, n, fact, avail, perm)
        for i in range(2, n + 1):
            for j in range(i):
                work[j] = perm[i - 1 - j]
            for j in range(i, n):
                work[j] = perm[j]
            rr = _rank_perm(work, n, fact)
            if dist[rr] < 0:
                dist[rr] = d + 1
                queue[tail] = rr
                tail += 1


@njit(parallel=True, cache=True)
def all_eccentricities(n, fact):
    """Eccentricity of every vertex (all-sources BFS; small n only)."""
    total = fact[n]
    ecc = np.zeros(total, np.int64)
    for src in prange(total):
        dist = np.full(total, -1, np.int16)
        queue = np.empty(total, np.int64)
        _bfs_serial_from(n, fact, src, dist, queue)
        best = 0
        for r in range(total):
            if dist[r] > best:
                best = dist[r]
        ecc[src] = best
    return ecc


@njit(parallel=True, cache=True)
def pair_distances(n, fact, us, vs):
    """d(u, v) for each pair, by a fresh BFS from each source."""
    m = us.shape[0]
    total = fact[n]
    out = np.empty(m, np.int64)
    for t in prange(m):
        dist = np.full(total, -1, np.int16)
        queue = np.empty(total, np.int64)
        _bfs_serial_from(n, fact, us[t], dist, queue)
        out[t] = dist[vs[t]]
    return out


@njit(cache=True)
def minseg_table(perms, invs, fact):
    """Minimum position gap realizing each quotient along a Hamiltonian order.

    perms[k] is the k-th vertex of the order (0-based values), invs[k] its
    inverse.  Entry w of the result is the least m - k over pairs k < m
    with perms[k]^-1 . perms[m] = w; the identity gets 0 by convention.
    Scanning gaps in ascending order and start indices in ascending order
    fixes the tie-break (smallest gap, then smallest start).
    """
    total, n = perms.shape
    minseg = np.full(total, -1, np.int64)
    w = np.empty(n, np.int64)
    minseg[0] = 0  # identity has rank 0
    filled = 1
    for g in range(1, total):
        if filled == total:
            break
        for k in range(total - g):
            ui = invs[k]
            vrow = perms[k + g]
            for j in range(n):
                w[j] = ui[vrow[j]]
            rw = _rank_perm(w, n, fact)
            if minseg[rw] < 0:
                minseg[rw] = g
                filled += 1
    return minseg


@njit(cache=True)
def _bisect(a, x):
    lo = 0
    hi = a.shape[0]
    while lo < hi:
        mid = (lo + hi) // 2
        if a[mid] < x:
            lo = mid + 1
        else:
            hi = mid
    if lo < a.shape[0] and a[lo] == x:
        return lo
    return -1


@njit(parallel=True, cache=True)
def member_neighbors(mem, n, fact):
    """Adjacency of the induced subgraph on the sorted rank array ``mem``.

    Returns an (m, n-1) array of member indices, -1 where the reversal
    image falls outside the member set.
    """
    m = mem.shape[0]
    nbr = np.full((m, n - 1), -1, np.int64)
    for idx in prange(m):
        perm = np.empty(n, np.int64)
        work = np.empty(n, np.int64)
        avail = np.empty(n, np.int64)
        _unrank_perm(mem[idx], n, fact, avail, perm)
        for i in range(2, n + 1):
            for j in range(i):
                work[j] = perm[i - 1 - j]
            for j in range(i, n):
                work[j] = perm[j]
            rr = _rank_perm(work, n, fact)
            nbr[idx, i - 2] = _bisect(mem, rr)
    return nbr


@njit(cache=True)
def component_labels(nbr):
    m = nbr.shape[0]
    deg = nbr.shape[1]
    label = np.full(m, -1, np.int64)
    stack = np.empty(m, np.int64)
    c = 0
    for s in range(m):
        if label[s] >= 0:
            continue
        label[s] = c
        stack[0] = s
        top = 1
        while top > 0:
            top -= 1
            v = stack[top]
            for e in range(deg):
                u = nbr[v, e]
                if u >= 0 and label[u] < 0:
                    label[u] = c
                    stack[top] = u
                    top += 1
        c += 1
    return label, c


@njit(cache=True)
def induced_sssp(nbr, src):
    """BFS distances from one member inside the induced subgraph (-1 = unreachable)."""
    m = nbr.shape[0]
    deg = nbr.shape[1]
    dist = np.full(m, -1, np.int32)
    queue = np.empty(m, np.int64)
    dist[src] = 0
    queue[0] = src
    head = 0
    tail = 1
    while head < tail:
        v = queue[head]
        head += 1
        d = dist[v]
        for e in range(deg):
            u = nbr[v, e]
            if u >= 0 and dist[u] < 0:
                dist[u] = d + 1
                queue[tail] = u
                tail += 1
    return dist


@njit(cache=True)
def induced_multi_source(nbr, seeds):
    """BFS from a seed set inside the induced subgraph (-1 = unreachable)."""
    m = nbr.shape[0]
    deg = nbr.shape[1]
    dist = np.full(m, -1, np.int32)
    queue = np.empty(m, np.int64)
    tail = 0
    for t in range(seeds.shape[0]):
        s = seeds[t]
        if dist[s] < 0:
            dist[s] = 0
            queue[tail] = s
            tail += 1
    head = 0
    while head < tail:
        v = queue[head]
        head += 1
        d = dist[v]
        for e in range(deg):
            u = nbr[v, e]
            if u >= 0 and dist[u] < 0:
                dist[u] = d + 1
                queue[tail] = u
                tail += 1
    return dist


@njit(parallel=True, cache=True)
def all_pairs_max_dist(nbr):
    """Max finite pairwise distance in the induced subgraph (brute force)."""
    m = nbr.shape[0]
    best = 0
    for s in prange(m):
        dist = induced_sssp(nbr, s)
        local = 0
        for v in range(m):
            if dist[v] > local:
                local = dist[v]
        best = max(best, local)
    return best
