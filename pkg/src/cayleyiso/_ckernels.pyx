# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled search kernels; see ``_pykernels`` for the contract."""

import numpy as np
cimport numpy as cnp

cnp.import_array()

cdef enum:
    INF32 = 268435456  # 1 << 28, matches _pykernels.INF32


cdef inline int _imin(int a, int b) nogil:
    return a if a < b else b


def build_table(const int[:, ::1] nxt, const short[:, ::1] cost, const short[::1] flush,
                const unsigned char[::1] allowed, int rmax, int hmax, int cap):
    cdef Py_ssize_t L = allowed.shape[0]
    cdef Py_ssize_t S = nxt.shape[1]
    cdef int w = _imin(rmax, hmax) + 1
    cdef Py_ssize_t y, s, k
    cdef int r, v, best, a, lo1, hi1
    A_np = np.zeros(L + 1, dtype=np.int32)
    cdef int[::1] A = A_np
    for y in range(L - 1, -1, -1):
        A[y] = A[y + 1] + (1 if allowed[y] else 0)
    rlo_np = np.empty(L + 1, dtype=np.int32)
    rhi_np = np.empty(L + 1, dtype=np.int32)
    cdef int[::1] rlo = rlo_np
    cdef int[::1] rhi = rhi_np
    for y in range(L + 1):
        a = A[y] - hmax
        rlo[y] = a if a > 0 else 0
        rhi[y] = _imin(rmax, A[y])
    G_np = np.full((L + 1, S, w), cap, dtype=np.uint8)
    cdef unsigned char[:, :, ::1] G = G_np
    with nogil:
        for s in range(S):
            G[L, s, 0] = <unsigned char>_imin(flush[s], cap)
        for y in range(L - 1, -1, -1):
            lo1 = rlo[y + 1]
            hi1 = rhi[y + 1]
            for s in range(S):
                for r in range(rlo[y], rhi[y] + 1):
                    best = cap
                    if lo1 <= r <= hi1:
                        v = cost[0, s] + G[y + 1, nxt[0, s], r - lo1]
                        if v < best:
                            best = v
                    if allowed[y] and r >= 1 and lo1 <= r - 1 <= hi1:
                        v = cost[1, s] + G[y + 1, nxt[1, s], r - 1 - lo1]
                        if v < best:
                            best = v
                    G[y, s, r - rlo[y]] = <unsigned char>best
    return G_np, rlo_np, rhi_np


cdef inline int _bound(const unsigned char[:, :, ::1] G, const int[::1] rlo, const int[::1] rhi,
                       Py_ssize_t y, int s, int r) nogil:
    if r < rlo[y] or r > rhi[y]:
        return INF32
    return G[y, s, r - rlo[y]]


def _start_after(const unsigned char[::1] start_ok):
    cdef Py_ssize_t L = start_ok.shape[0]
    cdef Py_ssize_t y
    out_np = np.zeros(L + 1, dtype=np.uint8)
    cdef unsigned char[::1] out = out_np
    for y in range(L - 1, -1, -1):
        out[y] = 1 if (out[y + 1] or (y + 1 < L and start_ok[y + 1])) else 0
    return out_np


def dfs_table(const unsigned char[:, :, ::1] G, const int[::1] rlo, const int[::1] rhi,
              const int[:, ::1] nxt, const short[:, ::1] cost, const short[::1] flush,
              const unsigned char[::1] allowed, const unsigned char[::1] start_ok,
              int y0, int s0, int r0, int p0, bint have_first, int target):
    cdef Py_ssize_t L = allowed.shape[0]
    cdef unsigned char[::1] after = _start_after(start_ok)
    cdef Py_ssize_t D = L - y0 + 1
    st_np = np.zeros(D, dtype=np.int32)
    rs_np = np.zeros(D, dtype=np.int32)
    ps_np = np.zeros(D, dtype=np.int32)
    hf_np = np.zeros(D, dtype=np.uint8)
    br_np = np.zeros(D, dtype=np.uint8)
    bit_np = np.zeros(D, dtype=np.uint8)
    cdef int[::1] st = st_np
    cdef int[::1] rs = rs_np
    cdef int[::1] ps = ps_np
    cdef unsigned char[::1] hf = hf_np
    cdef unsigned char[::1] br = br_np
    cdef unsigned char[::1] bit = bit_np
    cdef Py_ssize_t d = 0, y, j
    cdef int s, r, p, s1, p1
    out = []
    st[0] = s0
    rs[0] = r0
    ps[0] = p0
    hf[0] = have_first
    br[0] = 0
    while d >= 0:
        y = y0 + d
        s = st[d]
        r = rs[d]
        p = ps[d]
        if y == L:
            if r == 0 and p + flush[s] <= target:
                out.append(tuple([y0 + j for j in range(d) if bit[j]]))
            d -= 1
            continue
        if br[d] == 0:
            br[d] = 1
            if allowed[y] and r > 0 and (hf[d] or start_ok[y]):
                s1 = nxt[1, s]
                p1 = p + cost[1, s]
                if p1 + _bound(G, rlo, rhi, y + 1, s1, r - 1) <= target:
                    bit[d] = 1
                    st[d + 1] = s1
                    rs[d + 1] = r - 1
                    ps[d + 1] = p1
                    hf[d + 1] = 1
                    br[d + 1] = 0
                    d += 1
                    continue
        if br[d] == 1:
            br[d] = 2
            if hf[d] or after[y]:
                s1 = nxt[0, s]
                p1 = p + cost[0, s]
                if p1 + _bound(G, rlo, rhi, y + 1, s1, r) <= target:
                    bit[d] = 0
                    st[d + 1] = s1
                    rs[d + 1] = r
                    ps[d + 1] = p1
                    hf[d + 1] = hf[d]
                    br[d + 1] = 0
                    d += 1
                    continue
        d -= 1
    return out


def dfs_local(const int[:, ::1] nxt, const short[:, ::1] cost, const short[::1] flush,
              const short[::1] pending, const unsigned char[::1] allowed,
              const unsigned char[::1] start_ok, int y0, int s0, int r0, int p0,
              bint have_first, int incumbent):
    cdef Py_ssize_t L = allowed.shape[0]
    cdef unsigned char[::1] after = _start_after(start_ok)
    A_np = np.zeros(L + 1, dtype=np.int32)
    cdef int[::1] A = A_np
    cdef Py_ssize_t y, j
    for y in range(L - 1, -1, -1):
        A[y] = A[y + 1] + (1 if allowed[y] else 0)
    cdef Py_ssize_t D = L - y0 + 1
    st_np = np.zeros(D, dtype=np.int32)
    rs_np = np.zeros(D, dtype=np.int32)
    ps_np = np.zeros(D, dtype=np.int32)
    hf_np = np.zeros(D, dtype=np.uint8)
    br_np = np.zeros(D, dtype=np.uint8)
    bit_np = np.zeros(D, dtype=np.uint8)
    cdef int[::1] st = st_np
    cdef int[::1] rs = rs_np
    cdef int[::1] ps = ps_np
    cdef unsigned char[::1] hf = hf_np
    cdef unsigned char[::1] br = br_np
    cdef unsigned char[::1] bit = bit_np
    cdef Py_ssize_t d = 0
    cdef int s, r, p, s1, p1, total
    cdef int best = incumbent
    out = []
    st[0] = s0
    rs[0] = r0
    ps[0] = p0
    hf[0] = have_first
    br[0] = 0
    while d >= 0:
        y = y0 + d
        s = st[d]
        r = rs[d]
        p = ps[d]
        if r > A[y]:
            d -= 1
            continue
        if y == L:
            total = p + flush[s]
            if total < best:
                best = total
                out = []
            if total == best:
                out.append(tuple([y0 + j for j in range(d) if bit[j]]))
            d -= 1
            continue
        if br[d] == 0:
            br[d] = 1
            if allowed[y] and r > 0 and (hf[d] or start_ok[y]):
                s1 = nxt[1, s]
                p1 = p + cost[1, s]
                if p1 + pending[s1] <= best:
                    bit[d] = 1
                    st[d + 1] = s1
                    rs[d + 1] = r - 1
                    ps[d + 1] = p1
                    hf[d + 1] = 1
                    br[d + 1] = 0
                    d += 1
                    continue
        if br[d] == 1:
            br[d] = 2
            if hf[d] or after[y]:
                s1 = nxt[0, s]
                p1 = p + cost[0, s]
                if p1 + pending[s1] <= best:
                    bit[d] = 0
                    st[d + 1] = s1
                    rs[d + 1] = r
                    ps[d + 1] = p1
                    hf[d + 1] = hf[d]
                    br[d + 1] = 0
                    d += 1
                    continue
        d -= 1
    return best, out


def sweep_holes(const int[:, ::1] nxt, const short[:, ::1] cost, const short[::1] flush,
                int s_query, int t_max, int hmax):
    cdef Py_ssize_t S = nxt.shape[1]
    cdef int H = hmax + 1
    cdef Py_ssize_t s, t
    cdef int h, v, b
    cur_np = np.full((S, H), INF32, dtype=np.int32)
    new_np = np.full((S, H), INF32, dtype=np.int32)
    out_np = np.full((t_max + 1, H), INF32, dtype=np.int32)
    cdef int[:, ::1] cur = cur_np
    cdef int[:, ::1] new = new_np
    cdef int[:, ::1] out = out_np
    cdef int[:, ::1] tmp
    for s in range(S):
        cur[s, 0] = flush[s]
    for h in range(H):
        out[0, h] = cur[s_query, h]
    with nogil:
        for t in range(1, t_max + 1):
            for s in range(S):
                for h in range(H):
                    b = INF32
                    if h <= t - 1:
                        v = cost[1, s] + cur[nxt[1, s], h]
                        if v < b:
                            b = v
                    if h >= 1:
                        v = cost[0, s] + cur[nxt[0, s], h - 1]
                        if v < b:
                            b = v
                    new[s, h] = b if b < INF32 else INF32
            tmp = cur
            cur = new
            new = tmp
            for h in range(H):
                out[t, h] = cur[s_query, h]
    return out_np
