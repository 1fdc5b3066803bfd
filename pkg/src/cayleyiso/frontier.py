"""Finite-state encodings of boundary costs for a left-to-right sweep.

Positions 0, 1, 2, ... are decided one at a time (member or not).  Both the
edge and the vertex boundary are local: whether a position contributes only
depends on positions at distance <= M = max|d| from it.  A sweep therefore
only needs to remember a window of the last M positions, and the boundary
becomes a sum of per-step transition costs plus a final flush.

edge
    window = membership bits.  Deciding y settles every pair (y - m, y) with
    m = |d|: cost [y-m in A, y not in A] if +m is a step, and
    [y in A, y-m not in A] if -m is a step.

vertex
    window = one code per position: 0 non-member not (yet) reached,
    1 non-member reached from some member, 2 member.  A non-member can only
    be reached from positions within distance M, so once it leaves the window
    its status is final and it is charged 1 if reached.

States are numbered in discovery order from the empty window (id 0); only
states reachable from the empty window are materialised.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import UsageError

MAX_STATES = 1 << 18


@dataclass(frozen=True, eq=False)
class Frontier:
    kind: str
    offsets: tuple[int, ...]
    width: int
    nxt: np.ndarray  # (2, S) int32, next state on bit 0 / bit 1
    cost: np.ndarray  # (2, S) int16
    flush: np.ndarray  # (S,) int16, cost of closing the sweep from this state
    pending: np.ndarray  # (S,) int16, cost already certain to be paid later

    @property
    def n_states(self) -> int:
        return self.nxt.shape[1]


def _edge_frontier(offsets: tuple[int, ...]) -> Frontier:
    M = max(abs(d) for d in offsets)
    if (1 << M) > MAX_STATES:
        raise UsageError(f"edge frontier needs 2^{M} states; max|b| too large for the table")
    mags = sorted({abs(d) for d in offsets})
    plus = {m: int(m in offsets) for m in mags}
    minus = {m: int(-m in offsets) for m in mags}
    S = 1 << M
    s = np.arange(S, dtype=np.int64)
    mask = S - 1
    nxt = np.empty((2, S), dtype=np.int32)
    cost = np.zeros((2, S), dtype=np.int16)
    pending = np.zeros(S, dtype=np.int16)
    # bit m-1 of s is the membership of position y - m
    for bit in (0, 1):
        nxt[bit] = ((s << 1) | bit) & mask
        for m in mags:
            old = (s >> (m - 1)) & 1
            if bit == 0:
                cost[bit] += (plus[m] * old).astype(np.int16)
            else:
                cost[bit] += (minus[m] * (1 - old)).astype(np.int16)
    for m in mags:
        if plus[m]:
            pending += np.array([bin(int(v) & ((1 << m) - 1)).count("1") for v in s], dtype=np.int16)
    flush = np.zeros(S, dtype=np.int16)
    cur = s.copy()
    for _ in range(M):
        flush += cost[0][cur]
        cur = nxt[0][cur]
    return Frontier("edge", offsets, M, nxt, cost, flush, pending)


def _vertex_frontier(offsets: tuple[int, ...]) -> Frontier:
    M = max(abs(d) for d in offsets)
    fwd = [d for d in offsets if d > 0]  # y is reached from y - d
    back = [-d for d in offsets if d < 0]  # y - e is reached from y
    # code tuples are indexed by age: w[i] is position y - 1 - i
    start = (0,) * M
    index = {start: 0}
    order = [start]
    trans = []
    i = 0
    while i < len(order):
        w = order[i]
        i += 1
        row = []
        for bit in (0, 1):
            cells = list(w)
            if bit:
                for e in back:
                    if cells[e - 1] == 0:
                        cells[e - 1] = 1
                new = 2
            else:
                new = 1 if any(cells[d - 1] == 2 for d in fwd) else 0
            c = 1 if cells[M - 1] == 1 else 0
            nw = (new,) + tuple(cells[: M - 1])
            j = index.get(nw)
            if j is None:
                j = len(order)
                if j >= MAX_STATES:
                    raise UsageError("vertex frontier has too many states for the table")
                index[nw] = j
                order.append(nw)
            row.append((j, c))
        trans.append(row)
    S = len(order)
    nxt = np.array([[trans[s][b][0] for s in range(S)] for b in (0, 1)], dtype=np.int32)
    cost = np.array([[trans[s][b][1] for s in range(S)] for b in (0, 1)], dtype=np.int16)
    pending = np.array([sum(1 for c in w if c == 1) for w in order], dtype=np.int16)
    flush = np.zeros(S, dtype=np.int16)
    cur = np.arange(S)
    for _ in range(M):
        flush += cost[0][cur]
        cur = nxt[0][cur]
    # what is still in the window after M empty steps was reached from the left
    flush += pending[cur]
    return Frontier("vertex", offsets, M, nxt, cost, flush, pending)


@lru_cache(maxsize=32)
def build_frontier(offsets: tuple[int, ...], kind: str) -> Frontier:
    offsets = tuple(sorted(set(offsets)))
    if not offsets or 0 in offsets:
        raise UsageError("offsets must be nonempty and nonzero")
    if kind == "edge":
        return _edge_frontier(offsets)
    if kind == "vertex":
        return _vertex_frontier(offsets)
    raise UsageError(f"kind must be 'edge' or 'vertex', got {kind!r}")


def frontier_size(offsets: tuple[int, ...], kind: str) -> int:
    """Number of states, without building the vertex tables for huge windows."""
    M = max(abs(d) for d in offsets)
    if kind == "edge":
        return 1 << M
    return build_frontier(tuple(sorted(set(offsets))), kind).n_states


def sweep_cost(fr: Frontier, bits) -> int:
    """Total boundary of the set whose membership sequence (from position 0) is ``bits``."""
    s, total = 0, 0
    for b in bits:
        total += int(fr.cost[b][s])
        s = int(fr.nxt[b][s])
    return total + int(fr.flush[s])
