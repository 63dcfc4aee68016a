"""Compiled state-sum kernel.

Walks a contiguous block of Gray-code positions and tallies, per multicurve
key, how many states have ``b`` B-smoothings and ``|s|_t`` contractible
circles.  Circles through the flipped crossing are retraced incrementally;
regions, bridges and homology classes are recomputed per state.

A key is ``[k, row_1, ..., row_k]`` where each noncontractible circle gives
a row ``[class..., separating, chi_low, chi_high]``, rows sorted.
"""

import numpy as np
from numba import njit

OK = 0
TABLE_FULL = 1


@njit(cache=True, inline="always")
def _partner(h, bits, over):
    v = h // 4
    s = over[v] + bits[v]
    return 4 * v + (2 * s + 3 - (h % 4) + 8) % 4


@njit(cache=True)
def _trace(h, cid, bits, over, opp, circ):
    x = h
    while True:
        circ[x] = cid
        circ[opp[x]] = cid
        x = _partner(opp[x], bits, over)
        if x == h:
            break


@njit(cache=True)
def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


@njit(cache=True)
def _row_less(a, b, w):
    for i in range(w):
        if a[i] < b[i]:
            return True
        if a[i] > b[i]:
            return False
    return False


@njit(cache=True, nogil=True)
def run_block(opp, over, face_of, nfaces, dw, rank, chi_f, start, stop,
              keys, keylen, counts):
    """Tally states at Gray positions ``[start, stop)``.

    Returns ``(status, buckets_used)``.
    """
    n = opp.shape[0]
    c = n // 4
    maxcirc = 2 * c + 4
    rw = rank + 3
    width = keys.shape[1]
    cap = keys.shape[0]

    bits = np.zeros(c, np.int64)
    g = start ^ (start >> 1)
    b = 0
    for v in range(c):
        bits[v] = (g >> v) & 1
        b += bits[v]

    circ = -np.ones(n, np.int64)
    rep = -np.ones(maxcirc, np.int64)
    alive = np.zeros(maxcirc, np.bool_)
    free = np.empty(maxcirc, np.int64)
    nfree = 0
    for k in range(maxcirc - 1, -1, -1):
        free[nfree] = k
        nfree += 1

    for h in range(n):
        if circ[h] == -1:
            nfree -= 1
            k = free[nfree]
            _trace(h, k, bits, over, opp, circ)
            rep[k] = h
            alive[k] = True

    parent = np.empty(nfaces, np.int64)
    chans = np.empty(nfaces, np.int64)
    lab = np.empty(nfaces, np.int64)
    rchi = np.empty(nfaces, np.int64)
    cl = np.empty(maxcirc, np.int64)   # circle -> left region
    cr = np.empty(maxcirc, np.int64)
    ids = np.empty(maxcirc, np.int64)
    deg = np.empty(nfaces + 1, np.int64)
    adj_node = np.empty(2 * maxcirc, np.int64)
    adj_edge = np.empty(2 * maxcirc, np.int64)
    fill = np.empty(nfaces, np.int64)
    disc = np.empty(nfaces, np.int64)
    low = np.empty(nfaces, np.int64)
    sub = np.empty(nfaces, np.int64)
    stk = np.empty(nfaces, np.int64)
    stk_e = np.empty(nfaces, np.int64)
    stk_i = np.empty(nfaces, np.int64)
    side = np.empty(maxcirc, np.int64)
    rows = np.zeros((maxcirc, rw), np.int64)
    key = np.zeros(width, np.int64)
    hom = np.zeros(max(rank, 1), np.int64)
    used = 0

    for pos in range(start, stop):
        if pos != start:
            v = 0
            while not (pos >> v) & 1:
                v += 1
            o1 = circ[4 * v]
            o2 = -1
            for i in range(1, 4):
                if circ[4 * v + i] != o1:
                    o2 = circ[4 * v + i]
            bits[v] ^= 1
            b += 1 if bits[v] else -1
            for i in range(4):
                h = 4 * v + i
                if circ[h] == o1 or circ[h] == o2:
                    nfree -= 1
                    k = free[nfree]
                    _trace(h, k, bits, over, opp, circ)
                    rep[k] = h
                    alive[k] = True
            alive[o1] = False
            free[nfree] = o1
            nfree += 1
            if o2 != -1:
                alive[o2] = False
                free[nfree] = o2
                nfree += 1

        nc = 0
        for k in range(maxcirc):
            if alive[k]:
                ids[nc] = k
                nc += 1

        nt = nc
        nnc = 0
        if rank > 0:
            # regions: faces joined through channels
            for f in range(nfaces):
                parent[f] = f
                chans[f] = 0
            for v in range(c):
                s = over[v] + bits[v]
                fa = face_of[4 * v + s % 4]
                fb = face_of[4 * v + (s + 2) % 4]
                ra = _find(parent, fa)
                rb = _find(parent, fb)
                if ra != rb:
                    parent[rb] = ra
            nr = 0
            for f in range(nfaces):
                lab[f] = -1
            for f in range(nfaces):
                r = _find(parent, f)
                if lab[r] == -1:
                    lab[r] = nr
                    rchi[nr] = 0
                    nr += 1
                rchi[lab[r]] += 1
            for v in range(c):
                s = over[v] + bits[v]
                rchi[lab[_find(parent, face_of[4 * v + s % 4])]] -= 1

            # region graph with circles as edges (CSR adjacency)
            for r in range(nr + 1):
                deg[r] = 0
            for j in range(nc):
                h = rep[ids[j]]
                a = lab[_find(parent, face_of[h])]
                z = lab[_find(parent, face_of[opp[h]])]
                cl[j] = a
                cr[j] = z
                deg[a + 1] += 1
                deg[z + 1] += 1
            for r in range(nr):
                deg[r + 1] += deg[r]
            for r in range(nr):
                fill[r] = deg[r]
            for j in range(nc):
                a = cl[j]
                z = cr[j]
                adj_node[fill[a]] = z
                adj_edge[fill[a]] = j
                fill[a] += 1
                adj_node[fill[z]] = a
                adj_edge[fill[z]] = j
                fill[z] += 1

            # bridges with subtree Euler characteristics (region graph is connected)
            for r in range(nr):
                disc[r] = -1
                sub[r] = rchi[r]
            for j in range(nc):
                side[j] = -1 << 40
            t = 0
            disc[0] = 0
            low[0] = 0
            t = 1
            sp = 0
            stk[0] = 0
            stk_e[0] = -1
            stk_i[0] = deg[0]
            while sp >= 0:
                u = stk[sp]
                if stk_i[sp] < deg[u + 1]:
                    idx = stk_i[sp]
                    stk_i[sp] += 1
                    w = adj_node[idx]
                    e = adj_edge[idx]
                    if e == stk_e[sp]:
                        continue
                    if disc[w] == -1:
                        disc[w] = t
                        low[w] = t
                        t += 1
                        sp += 1
                        stk[sp] = w
                        stk_e[sp] = e
                        stk_i[sp] = deg[w]
                    elif disc[w] < low[u]:
                        low[u] = disc[w]
                else:
                    sp -= 1
                    if sp >= 0:
                        p = stk[sp]
                        if low[u] < low[p]:
                            low[p] = low[u]
                        sub[p] += sub[u]
                        if low[u] > disc[p]:
                            side[stk_e[sp + 1]] = sub[u]

            nt = 0
            for j in range(nc):
                sj = side[j]
                sep = sj != (-1 << 40)
                if sep and (sj == 1 or chi_f - sj == 1):
                    nt += 1
                    continue
                # noncontractible: homology class along the circle
                for i in range(rank):
                    hom[i] = 0
                h0 = rep[ids[j]]
                x = h0
                while True:
                    for i in range(rank):
                        hom[i] += dw[x, i]
                    x = _partner(opp[x], bits, over)
                    if x == h0:
                        break
                sgn = 0
                for i in range(rank):
                    if hom[i] != 0:
                        sgn = 1 if hom[i] > 0 else -1
                        break
                for i in range(rank):
                    rows[nnc, i] = sgn * hom[i]
                if sep:
                    rows[nnc, rank] = 1
                    lo = sj
                    hi = chi_f - sj
                    if lo > hi:
                        lo, hi = hi, lo
                    rows[nnc, rank + 1] = lo
                    rows[nnc, rank + 2] = hi
                else:
                    rows[nnc, rank] = 0
                    rows[nnc, rank + 1] = 0
                    rows[nnc, rank + 2] = 0
                nnc += 1
            # insertion sort of rows
            for i in range(1, nnc):
                j = i
                while j > 0 and _row_less(rows[j], rows[j - 1], rw):
                    for q in range(rw):
                        tmp = rows[j, q]
                        rows[j, q] = rows[j - 1, q]
                        rows[j - 1, q] = tmp
                    j -= 1

        klen = 1 + nnc * rw
        key[0] = nnc
        for i in range(nnc):
            for q in range(rw):
                key[1 + i * rw + q] = rows[i, q]
        hsh = np.uint64(1469598103934665603)
        for i in range(klen):
            hsh = (hsh ^ np.uint64(key[i] & 0xFFFFFFFF)) * np.uint64(1099511628211)
        slot = np.int64(hsh % np.uint64(cap))
        while True:
            if keylen[slot] == -1:
                if 4 * (used + 1) > 3 * cap:
                    return TABLE_FULL, used
                keylen[slot] = klen
                for i in range(klen):
                    keys[slot, i] = key[i]
                used += 1
                break
            if keylen[slot] == klen:
                same = True
                for i in range(klen):
                    if keys[slot, i] != key[i]:
                        same = False
                        break
                if same:
                    break
            slot = (slot + 1) % cap
        counts[slot, b, nt] += 1
    return OK, used
