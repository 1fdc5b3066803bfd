"""Finite subsets of the integers and their boundaries in Cay(Z, B).

A Cayley graph on Z is determined by a finite generator set B; the directed
edge (u, v) is present iff v - u is in B.  For a finite set A we use

    vertex boundary   (A + B) \\ A
    edge boundary     {(b, v) : b in B, v in (A + b) \\ A}

where an edge is identified by its step b and its head v (the tail is v - b).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Iterable, Iterator


class UsageError(ValueError):
    """Raised for invalid arguments (bad modulus, window too small, ...)."""


# ---------------------------------------------------------------------------
# Generator sets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GeneratorSet:
    """A finite set of nonzero integers, stored sorted."""

    elements: tuple[int, ...]

    def __post_init__(self):
        elems = tuple(sorted(set(int(b) for b in self.elements)))
        if not elems:
            raise UsageError("generator set must be nonempty")
        if 0 in elems:
            raise UsageError("0 is not allowed as a generator")
        object.__setattr__(self, "elements", elems)

    @classmethod
    def of(cls, *elements: int) -> "GeneratorSet":
        return cls(tuple(elements))

    @classmethod
    def symmetric(cls, *elements: int) -> "GeneratorSet":
        """The set +-elements."""
        return cls(tuple(elements) + tuple(-b for b in elements))

    @classmethod
    def parse(cls, text: str, sym: bool = False) -> "GeneratorSet":
        """Parse a comma separated list such as ``"1,-1,4,-4"``."""
        try:
            values = [int(tok) for tok in text.replace(" ", "").split(",") if tok]
        except ValueError as exc:
            raise UsageError(f"malformed generator list {text!r}") from exc
        if sym:
            values += [-v for v in values]
        return cls(tuple(values))

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, b) -> bool:
        return b in self.elements

    def __str__(self) -> str:
        return ",".join(str(b) for b in self.elements)

    @property
    def b_max(self) -> int:
        return max(abs(b) for b in self.elements)

    @property
    def b_plus(self) -> int:
        return max((b for b in self.elements if b > 0), default=0)

    @property
    def b_minus(self) -> int:
        return max((-b for b in self.elements if b < 0), default=0)

    @property
    def is_symmetric(self) -> bool:
        return all(-b in self.elements for b in self.elements)

    @property
    def gcd(self) -> int:
        return reduce(math.gcd, (abs(b) for b in self.elements))

    @property
    def generates_Z(self) -> bool:
        return self.gcd == 1

    @property
    def abs_sum(self) -> int:
        return sum(abs(b) for b in self.elements)

    def negated(self) -> "GeneratorSet":
        return GeneratorSet(tuple(-b for b in self.elements))


# ---------------------------------------------------------------------------
# Sets of integers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ZSet:
    """A finite set of integers kept as a strictly increasing tuple.

    Two physical encodings are supported: the sorted tuple ``members`` and a
    dense bitmask (a Python int) relative to ``min``; see :meth:`to_bits`.
    Equality and hashing are those of the underlying mathematical set.
    """

    members: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(sorted(set(int(x) for x in self.members))))

    @classmethod
    def of(cls, *members: int) -> "ZSet":
        return cls(tuple(members))

    @classmethod
    def from_iterable(cls, it: Iterable[int]) -> "ZSet":
        return cls(tuple(it))

    @classmethod
    def interval(cls, lo: int, hi: int) -> "ZSet":
        """The integer interval [lo, hi] (empty when lo > hi)."""
        return cls(tuple(range(lo, hi + 1)))

    @classmethod
    def from_bits(cls, bits: int, offset: int = 0) -> "ZSet":
        out = []
        i = 0
        while bits:
            if bits & 1:
                out.append(offset + i)
            bits >>= 1
            i += 1
        return cls(tuple(out))

    def to_bits(self) -> tuple[int, int]:
        """Return ``(offset, mask)`` with bit i of mask set iff offset + i is a member."""
        if not self.members:
            return 0, 0
        lo = self.members[0]
        mask = 0
        for x in self.members:
            mask |= 1 << (x - lo)
        return lo, mask

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, x) -> bool:
        return x in self.as_set

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.members)) + "}"

    @cached_property
    def as_set(self) -> frozenset[int]:
        return frozenset(self.members)

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def min(self) -> int:
        return self.members[0]

    @property
    def max(self) -> int:
        return self.members[-1]

    @property
    def diameter(self) -> int:
        return self.members[-1] - self.members[0] if self.members else 0

    @property
    def canonical(self) -> bool:
        return not self.members or self.members[0] == 0

    @property
    def is_interval(self) -> bool:
        return not self.members or self.diameter == len(self.members) - 1

    def shift(self, t: int) -> "ZSet":
        return ZSet(tuple(x + t for x in self.members))

    def dilate(self, k: int) -> "ZSet":
        return ZSet(tuple(k * x for x in self.members))

    def __add__(self, other: "ZSet") -> "ZSet":
        """Minkowski sum."""
        return ZSet(tuple({a + b for a in self.members for b in other.members}))

    def issubset(self, other: "ZSet") -> bool:
        return self.as_set <= other.as_set


def canonicalize(A: ZSet) -> ZSet:
    """Translate A so that its minimum is 0."""
    if not A.members:
        return A
    return A.shift(-A.members[0])


# ---------------------------------------------------------------------------
# Boundaries
# ---------------------------------------------------------------------------


def edge_boundary(G: GeneratorSet, A: ZSet) -> frozenset[tuple[int, int]]:
    """Edges leaving A, as pairs (step b, head v) with v = a + b not in A."""
    S = A.as_set
    return frozenset((b, a + b) for b in G.elements for a in A.members if a + b not in S)


def edge_boundary_size(G: GeneratorSet, A: ZSet) -> int:
    S = A.as_set
    return sum(1 for b in G.elements for a in A.members if a + b not in S)


def vertex_boundary(G: GeneratorSet, A: ZSet) -> ZSet:
    """(A + B) \\ A, not canonicalized."""
    S = A.as_set
    return ZSet(tuple({a + b for a in A.members for b in G.elements} - S))


def vertex_boundary_size(G: GeneratorSet, A: ZSet) -> int:
    S = A.as_set
    return len({a + b for a in A.members for b in G.elements} - S)


def boundary_size(G: GeneratorSet, A: ZSet, kind: str) -> int:
    if kind == "edge":
        return edge_boundary_size(G, A)
    if kind == "vertex":
        return vertex_boundary_size(G, A)
    raise UsageError(f"kind must be 'edge' or 'vertex', got {kind!r}")


def sym_vertex_boundary_size(B: Iterable[int], A: ZSet) -> int:
    """|(A +- B) \\ A| for a set of positive integers B."""
    steps = set()
    for b in B:
        steps.add(b)
        steps.add(-b)
    S = A.as_set
    return len({a + b for a in A.members for b in steps} - S)


# ---------------------------------------------------------------------------
# Residues and blocks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ResidueProfile:
    modulus: int
    counts: tuple[int, ...]

    @property
    def missing(self) -> tuple[int, ...]:
        return tuple(r for r, c in enumerate(self.counts) if c == 0)

    @property
    def full(self) -> bool:
        return all(self.counts)

    @property
    def missing_runs(self) -> tuple[tuple[int, ...], ...]:
        """Maximal runs of consecutive missing residues, read cyclically.

        Residues m-1 and 0 are adjacent, so for m = 4 and missing {0, 3} the
        single run is (3, 0).
        """
        m = self.modulus
        miss = [c == 0 for c in self.counts]
        if not any(miss):
            return ()
        if all(miss):
            return (tuple(range(m)),)
        # start scanning just after some present residue so no run wraps the scan
        start = next(r for r in range(m) if not miss[r])
        runs, cur = [], []
        for i in range(1, m + 1):
            r = (start + i) % m
            if miss[r]:
                cur.append(r)
            elif cur:
                runs.append(tuple(cur))
                cur = []
        if cur:
            runs.append(tuple(cur))
        return tuple(sorted(runs))

    @property
    def missing_consecutive_pair(self) -> bool:
        """True iff two cyclically consecutive residues are both absent."""
        if self.modulus < 2:
            return False
        return any(len(run) >= 2 for run in self.missing_runs)


def residue_profile(A: ZSet, m: int) -> ResidueProfile:
    if m <= 0:
        raise UsageError(f"modulus must be >= 1, got {m}")
    counts = [0] * m
    for x in A.members:
        counts[x % m] += 1
    return ResidueProfile(m, tuple(counts))


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[tuple[int, int], ...]  # inclusive (start, end)
    gaps: tuple[int, ...]

    @property
    def is_interval(self) -> bool:
        return len(self.blocks) <= 1


def block_decomposition(A: ZSet) -> BlockDecomposition:
    blocks = []
    for x in A.members:
        if blocks and blocks[-1][1] == x - 1:
            blocks[-1][1] = x
        else:
            blocks.append([x, x])
    gaps = tuple(blocks[i + 1][0] - blocks[i][1] - 1 for i in range(len(blocks) - 1))
    return BlockDecomposition(tuple((s, e) for s, e in blocks), gaps)


# ---------------------------------------------------------------------------
# The Euclidean embedding Z -> Z x [0, b-1]
# ---------------------------------------------------------------------------


def phi(x: int, b: int) -> tuple[int, int]:
    """x = q*b + r with 0 <= r < b, returned as (q, r)."""
    if b < 2:
        raise UsageError(f"phi needs b >= 2, got {b}")
    return divmod(x, b)


def phi_set(A: ZSet, b: int) -> frozenset[tuple[int, int]]:
    return frozenset(phi(x, b) for x in A.members)


def phi_edge(edge: tuple[int, int], b: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """Image of the directed edge (u, v) of Cay(Z, +-{1, b}) in the l1 grid.

    Steps +-b move along e1 and steps +-1 along e2, starting from phi(u).  This
    is defined on edges: phi'(-1, 0) = ((-1, b-1), (-1, b)) is not (phi(-1), phi(0)).
    """
    u, v = edge
    q, r = phi(u, b)
    step = v - u
    if step == b:
        return (q, r), (q + 1, r)
    if step == -b:
        return (q, r), (q - 1, r)
    if step == 1:
        return (q, r), (q, r + 1)
    if step == -1:
        return (q, r), (q, r - 1)
    raise UsageError(f"edge {edge} is not a +-1 or +-{b} step")


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------


def interval(n: int) -> ZSet:
    """[n] = {1, ..., n}."""
    return ZSet.interval(1, n)


def grid_square(k: int, b: int) -> ZSet:
    """[k] + b[k] = {i + b*j : 1 <= i, j <= k}."""
    return ZSet(tuple(i + b * j for i in range(1, k + 1) for j in range(1, k + 1)))


@dataclass(frozen=True)
class NonNestingInstance:
    b: int
    k: int
    n1: int
    n2: int


def non_nesting_instance(b: int) -> NonNestingInstance:
    """Sizes n1 = k^2 < n2 = (b+1)(k-1) with k = (b-2)/2 whose optimizers cannot nest."""
    if b % 2 or b < 10:
        raise UsageError(f"b must be even and >= 10, got {b}")
    k = (b - 2) // 2
    n1, n2 = k * k, (b + 1) * (k - 1)
    # k < (b-1)/2 and sqrt(n2) > (b+1)/2, in integer form
    assert 2 * k < b - 1
    assert 4 * n2 > (b + 1) ** 2
    return NonNestingInstance(b, k, n1, n2)


def construct(kind: str, *params: int):
    """Dispatch to :func:`interval`, :func:`grid_square` or :func:`non_nesting_instance`."""
    if kind == "interval":
        return interval(*params)
    if kind == "grid_square":
        return grid_square(*params)
    if kind == "non_nesting":
        return non_nesting_instance(*params)
    raise UsageError(f"unknown construction {kind!r}")
