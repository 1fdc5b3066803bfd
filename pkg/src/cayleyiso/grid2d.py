"""Boundaries and row compression on the planar grids l1^2 and linf^2.

Points are pairs (x, y).  Row i of a set A is A_i = {x : (x, i) in A}.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .core import UsageError

L1_STEPS = ((1, 0), (-1, 0), (0, 1), (0, -1))
LINF_STEPS = tuple((dx, dy) for dx in (-1, 0, 1) for dy in (-1, 0, 1) if (dx, dy) != (0, 0))
NORMS = ("l1_edge", "linf_vertex")


@dataclass(frozen=True)
class GridSet:
    points: frozenset[tuple[int, int]] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "points", frozenset((int(x), int(y)) for x, y in self.points))

    @classmethod
    def of(cls, pts: Iterable[tuple[int, int]]) -> "GridSet":
        return cls(frozenset(pts))

    @classmethod
    def rectangle(cls, x0: int, x1: int, y0: int, y1: int) -> "GridSet":
        """[x0, x1] x [y0, y1]."""
        return cls(frozenset((x, y) for x in range(x0, x1 + 1) for y in range(y0, y1 + 1)))

    @classmethod
    def square(cls, k: int, lo: int = 1) -> "GridSet":
        """[lo, lo+k-1]^2; the default is [k]^2."""
        return cls.rectangle(lo, lo + k - 1, lo, lo + k - 1)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(sorted(self.points, key=lambda p: (p[1], p[0])))

    @cached_property
    def rows(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {}
        for x, y in self.points:
            out.setdefault(y, []).append(x)
        return {i: tuple(sorted(xs)) for i, xs in sorted(out.items())}

    @property
    def row_counts(self) -> dict[int, int]:
        return {i: len(xs) for i, xs in self.rows.items()}

    def shift(self, dx: int, dy: int) -> "GridSet":
        return GridSet(frozenset((x + dx, y + dy) for x, y in self.points))

    def canonical(self) -> "GridSet":
        """Translate so both minimum coordinates are 0."""
        if not self.points:
            return self
        return self.shift(-min(x for x, _ in self.points), -min(y for _, y in self.points))

    def sorted_points(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.points))

    def is_square_translate(self) -> bool:
        n = len(self.points)
        if n == 0:
            return False
        k = _isqrt_exact(n)
        if k is None:
            return False
        return self.canonical() == GridSet.square(k, lo=0)


def _isqrt_exact(n: int) -> int | None:
    import math

    k = math.isqrt(n)
    return k if k * k == n else None


def l1_edge_boundary(A: GridSet) -> frozenset[tuple[tuple[int, int], tuple[int, int]]]:
    """Directed edges (step, head) of l1^2 leaving A."""
    P = A.points
    out = set()
    for x, y in P:
        for dx, dy in L1_STEPS:
            head = (x + dx, y + dy)
            if head not in P:
                out.add(((dx, dy), head))
    return frozenset(out)


def linf_vertex_boundary(A: GridSet) -> GridSet:
    P = A.points
    return GridSet(frozenset((x + dx, y + dy) for x, y in P for dx, dy in LINF_STEPS) - P)


def boundary2d(norm: str, A: GridSet):
    """Edge boundary in l1^2 or vertex boundary in linf^2, depending on ``norm``."""
    if norm == "l1_edge":
        return l1_edge_boundary(A)
    if norm == "linf_vertex":
        return linf_vertex_boundary(A)
    raise UsageError(f"norm must be one of {NORMS}, got {norm!r}")


def boundary2d_size(norm: str, A: GridSet) -> int:
    return len(boundary2d(norm, A))


def closed_neighborhood(A: GridSet) -> GridSet:
    """N[A] = A + {0, +-1}^2."""
    return GridSet(
        frozenset((x + dx, y + dy) for x, y in A.points for dx in (-1, 0, 1) for dy in (-1, 0, 1))
    )


def compress_rows(A: GridSet) -> GridSet:
    """Left-justify every row onto [1, a_i]."""
    return GridSet(
        frozenset((x, i) for i, a in A.row_counts.items() for x in range(1, a + 1))
    )


def transpose(A: GridSet) -> GridSet:
    return GridSet(frozenset((y, x) for x, y in A.points))


def is_nested(A: GridSet) -> bool:
    """Rows occupy a contiguous range [I, J] and satisfy A_I >= A_{I+1} >= ... >= A_J."""
    if not A.points:
        raise UsageError("is_nested is undefined for the empty set")
    rows = A.rows
    lo, hi = min(rows), max(rows)
    prev = None
    for i in range(lo, hi + 1):
        cur = frozenset(rows.get(i, ()))
        if not cur:
            return False
        if prev is not None and not cur <= prev:
            return False
        prev = cur
    return True


def compression_chain(A: GridSet) -> tuple[int, int, int, int]:
    """Vertex-boundary sizes of A, C(A), C(A)^T and C(C(A)^T)."""
    C = compress_rows(A)
    CT = transpose(C)
    CCT = compress_rows(CT)
    f = lambda S: len(linf_vertex_boundary(S))  # noqa: E731
    return f(A), f(C), f(CT), f(CCT)
