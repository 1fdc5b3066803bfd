"""Reference (pure Python + numpy) implementation of the search kernels.

The compiled module ``_ckernels`` implements the same four functions with the
same signatures and results; this one is used when the extension is absent or
``CAYLEYISO_PURE_PYTHON=1`` is set.

Conventions shared by both backends
-----------------------------------
* Positions 0..L-1 may hold members where ``allowed[y]`` is nonzero.
* ``G[y, s, k]`` is the least cost of deciding positions y..L-1 (and flushing)
  from frontier state s with r = rlo[y] + k members still to place, saturated
  at ``cap``.  Valid r at layer y lie in [rlo[y], rhi[y]].
* ``start_ok`` marks the positions allowed to hold the first member.
"""

from __future__ import annotations

import sys
from contextlib import contextmanager

import numpy as np

INF32 = 1 << 28


@contextmanager
def _deep_recursion(depth):
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, depth + 200))
    try:
        yield
    finally:
        sys.setrecursionlimit(old)


def _suffix_allowed(allowed):
    L = len(allowed)
    A = np.zeros(L + 1, dtype=np.int64)
    for y in range(L - 1, -1, -1):
        A[y] = A[y + 1] + (1 if allowed[y] else 0)
    return A


def _start_after(start_ok):
    L = len(start_ok)
    after = np.zeros(L + 1, dtype=np.uint8)
    for y in range(L - 1, -1, -1):
        after[y] = 1 if (after[y + 1] or (y + 1 < L and start_ok[y + 1])) else 0
    return after


def build_table(nxt, cost, flush, allowed, rmax, hmax, cap):
    L = len(allowed)
    S = nxt.shape[1]
    w = min(rmax, hmax) + 1
    A = _suffix_allowed(allowed)
    rlo = np.maximum(0, A - hmax).astype(np.int32)
    rhi = np.minimum(rmax, A).astype(np.int32)
    G = np.full((L + 1, S, w), cap, dtype=np.uint8)
    G[L, :, 0] = np.minimum(flush, cap)
    c0 = cost[0].astype(np.int32)[:, None]
    c1 = cost[1].astype(np.int32)[:, None]
    for y in range(L - 1, -1, -1):
        # pad the next layer with a cap column on each side so that
        # out-of-range r indices read as infeasible
        nl = np.full((S, w + 2), cap, dtype=np.int32)
        nl[:, 1 : w + 1] = G[y + 1]
        rs = np.arange(rlo[y], rhi[y] + 1)
        if rs.size == 0:
            continue
        k0 = np.clip(rs - rlo[y + 1] + 1, 0, w + 1)
        k0[(rs < rlo[y + 1]) | (rs > rhi[y + 1])] = 0
        best = c0 + nl[nxt[0]][:, k0]
        if allowed[y]:
            r1 = rs - 1
            k1 = np.clip(r1 - rlo[y + 1] + 1, 0, w + 1)
            k1[(r1 < rlo[y + 1]) | (r1 > rhi[y + 1])] = 0
            best = np.minimum(best, c1 + nl[nxt[1]][:, k1])
        G[y, :, : rs.size] = np.minimum(best, cap)
    return G, rlo, rhi


def dfs_table(G, rlo, rhi, nxt, cost, flush, allowed, start_ok, y0, s0, r0, p0, have_first, target):
    """All completions from the given node whose total cost is <= target."""
    L = len(allowed)
    after = _start_after(start_ok)
    nxt0, nxt1 = nxt[0].tolist(), nxt[1].tolist()
    c0, c1 = cost[0].tolist(), cost[1].tolist()
    fl = flush.tolist()
    lo, hi = rlo.tolist(), rhi.tolist()
    allowed = [bool(a) for a in allowed]
    start_ok = [bool(a) for a in start_ok]

    def bound(y, s, r):
        if r < lo[y] or r > hi[y]:
            return INF32
        return int(G[y, s, r - lo[y]])

    out = []
    chosen = []

    def rec(y, s, r, p, hf):
        if y == L:
            if r == 0 and p + fl[s] <= target:
                out.append(tuple(chosen))
            return
        if allowed[y] and r > 0 and (hf or start_ok[y]):
            s1, p1 = nxt1[s], p + c1[s]
            if p1 + bound(y + 1, s1, r - 1) <= target:
                chosen.append(y)
                rec(y + 1, s1, r - 1, p1, True)
                chosen.pop()
        if hf or after[y]:
            s0_, p0_ = nxt0[s], p + c0[s]
            if p0_ + bound(y + 1, s0_, r) <= target:
                rec(y + 1, s0_, r, p0_, hf)

    with _deep_recursion(L):
        rec(y0, s0, r0, p0, bool(have_first))
    return out


def dfs_local(nxt, cost, flush, pending, allowed, start_ok, y0, s0, r0, p0, have_first, incumbent):
    """Branch and bound with the cheap bound cost-so-far + pending(state).

    Returns ``(best, sets)``: the least total cost found that is <= incumbent
    and every completion attaining it.
    """
    L = len(allowed)
    A = _suffix_allowed(allowed).tolist()
    after = _start_after(start_ok)
    nxt0, nxt1 = nxt[0].tolist(), nxt[1].tolist()
    c0, c1 = cost[0].tolist(), cost[1].tolist()
    fl = flush.tolist()
    pend = pending.tolist()
    allowed = [bool(a) for a in allowed]
    start_ok = [bool(a) for a in start_ok]
    best = [incumbent]
    out = []
    chosen = []

    def rec(y, s, r, p, hf):
        if r > A[y]:
            return
        if y == L:
            total = p + fl[s]
            if total < best[0]:
                best[0] = total
                out.clear()
            if total == best[0]:
                out.append(tuple(chosen))
            return
        if allowed[y] and r > 0 and (hf or start_ok[y]):
            s1, p1 = nxt1[s], p + c1[s]
            if p1 + pend[s1] <= best[0]:
                chosen.append(y)
                rec(y + 1, s1, r - 1, p1, True)
                chosen.pop()
        if hf or after[y]:
            s0_, p0_ = nxt0[s], p + c0[s]
            if p0_ + pend[s0_] <= best[0]:
                rec(y + 1, s0_, r, p0_, hf)

    with _deep_recursion(L):
        rec(y0, s0, r0, p0, bool(have_first))
    return best[0], out


def sweep_holes(nxt, cost, flush, s_query, t_max, hmax):
    """Least cost of t more positions from ``s_query`` leaving exactly h holes.

    Returns an int32 array R with R[t, h] for 0 <= t <= t_max, 0 <= h <= hmax;
    unreachable combinations hold INF32.  Every position is allowed.
    """
    S = nxt.shape[1]
    H = hmax + 1
    c0 = cost[0].astype(np.int64)[:, None]
    c1 = cost[1].astype(np.int64)[:, None]
    cur = np.full((S, H), INF32, dtype=np.int64)
    cur[:, 0] = flush
    out = np.full((t_max + 1, H), INF32, dtype=np.int32)
    out[0] = np.minimum(cur[s_query], INF32)
    hs = np.arange(H)
    for t in range(1, t_max + 1):
        new = np.full((S, H), INF32, dtype=np.int64)
        # member at this position: same holes, needs r = t - h >= 1
        take = c1 + cur[nxt[1]]
        ok = hs <= t - 1
        new[:, ok] = take[:, ok]
        # hole at this position
        if H > 1:
            skip = c0 + cur[nxt[0]][:, :-1]
            new[:, 1:] = np.minimum(new[:, 1:], skip)
        np.minimum(new, INF32, out=new)
        cur = new
        out[t] = cur[s_query]
    return out
