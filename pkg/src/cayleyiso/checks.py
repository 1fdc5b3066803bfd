"""Seeded randomized checks of the boundary inequalities.

Each suite draws random sets, keeps those meeting the hypothesis and checks
the conclusion exactly (square roots are compared after squaring).  A suite
returns a :class:`SuiteResult`; ``run_all`` runs every suite with one seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .certify import epsilon_of
from .core import (
    GeneratorSet,
    ZSet,
    edge_boundary,
    edge_boundary_size,
    phi_edge,
    phi_set,
    residue_profile,
    sym_vertex_boundary_size,
    vertex_boundary,
    vertex_boundary_size,
)
from .grid2d import (
    GridSet,
    closed_neighborhood,
    compress_rows,
    is_nested,
    l1_edge_boundary,
    linf_vertex_boundary,
    transpose,
)

EPSILON_MATRIX = (
    GeneratorSet.of(2, 3),
    GeneratorSet.symmetric(1, 4),
    GeneratorSet.symmetric(1, 9, 10, 11),
    GeneratorSet.of(3, 5),
)


@dataclass
class SuiteResult:
    name: str
    trials: int
    checked: int = 0  # draws that met the hypothesis
    failures: int = 0
    counterexample: object = None
    notes: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.failures == 0 and self.checked > 0

    def fail(self, example):
        self.failures += 1
        if self.counterexample is None:
            self.counterexample = example


def _draws(res: SuiteResult, max_factor: int = 50):
    """Draw indices until ``res.trials`` draws met the hypothesis (or a hard cap)."""
    t = 0
    while res.checked < res.trials and t < max_factor * res.trials:
        yield t
        t += 1
    res.notes["draws"] = t


# -- random set generators ---------------------------------------------------


def random_grid_set(rng: random.Random, max_points: int = 12, side: int = 16) -> GridSet:
    k = rng.randint(1, max_points)
    cells = rng.sample(range(side * side), k)
    return GridSet.of((c % side, c // side) for c in cells)


def random_blocky_set(rng: random.Random, span: int) -> ZSet:
    """A union of a few random runs in [0, span), with occasional holes punched in."""
    pts = set()
    for _ in range(rng.randint(1, 3)):
        lo = rng.randrange(span)
        pts.update(range(lo, min(span, lo + rng.randint(1, span))))
    for _ in range(rng.randint(0, 3)):
        pts.discard(rng.randrange(span))
    if not pts:
        pts.add(0)
    return ZSet.from_iterable(pts)


def random_sparse_set(rng: random.Random, max_size: int = 30, lo: int = -100, hi: int = 100) -> ZSet:
    k = rng.randint(1, max_size)
    return ZSet.from_iterable(rng.sample(range(lo, hi + 1), k))


# -- planar suites -----------------------------------------------------------


def suite_neighborhood_compression(rng, trials=10_000) -> SuiteResult:
    """|N[C(A)]| <= |N[A]|."""
    res = SuiteResult("neighborhood_compression", trials)
    for _ in _draws(res):
        A = random_grid_set(rng)
        res.checked += 1
        if len(closed_neighborhood(compress_rows(A))) > len(closed_neighborhood(A)):
            res.fail(A.sorted_points())
    return res


def suite_compression_chain(rng, trials=10_000) -> SuiteResult:
    """|dA| >= |dC(A)| = |dC(A)^T| >= |dC(C(A)^T)|, the last set nested and above 4(sqrt n + 1)."""
    res = SuiteResult("compression_chain", trials)
    for _ in _draws(res):
        A = random_grid_set(rng)
        C = compress_rows(A)
        CT = transpose(C)
        CCT = compress_rows(CT)
        f = lambda S: len(linf_vertex_boundary(S))  # noqa: E731
        a, c, ct, cct = f(A), f(C), f(CT), f(CCT)
        n = len(A)
        # 4(sqrt n + 1) <= d  <=>  d >= 4 and (d - 4)^2 >= 16 n
        floor_ok = cct >= 4 and (cct - 4) ** 2 >= 16 * n
        res.checked += 1
        if not (a >= c == ct >= cct and is_nested(CCT) and floor_ok):
            res.fail(A.sorted_points())
    return res


# -- residue inequalities on Z -----------------------------------------------


def _equality_iff_interval(res: SuiteResult, A: ZSet, value: int, bound: int):
    if value < bound or (value == bound) != A.is_interval:
        res.fail((A.members, value, bound))


def suite_full_residue_edge(rng, trials=10_000) -> SuiteResult:
    """A full mod every |b| => |d_e A| >= sum |b|, equality iff interval (+-1 in B)."""
    res = SuiteResult("full_residue_edge", trials)
    intervals = 0
    for t in _draws(res):
        b = rng.randint(2, 8)
        extra = rng.sample(range(2, 9), rng.randint(0, 1))
        G = GeneratorSet.symmetric(1, b, *extra)
        span = 3 * G.b_max
        A = ZSet.interval(0, rng.randint(G.b_max, span)) if t % 5 == 0 else random_blocky_set(rng, span)
        if not all(residue_profile(A, abs(g)).full for g in G):
            continue
        res.checked += 1
        intervals += A.is_interval
        _equality_iff_interval(res, A, edge_boundary_size(G, A), G.abs_sum)
    res.notes["intervals"] = intervals
    return res


def _residue_gens(rng, b: int) -> tuple[int, ...]:
    middle = [x for x in range(2, b - 1) if rng.random() < 0.3]
    return tuple(sorted({1, b - 1, b, *middle}))


def suite_full_residue_vertex(rng, trials=10_000) -> SuiteResult:
    """B in Z+ with 1, b-1, b = max B; A full mod b => |(A+-B) \\ A| >= 2b, equality iff interval."""
    res = SuiteResult("full_residue_vertex", trials)
    for t in _draws(res):
        b = rng.randint(2, 9)
        B = _residue_gens(rng, b)
        A = ZSet.interval(0, rng.randint(b - 1, 3 * b)) if t % 5 == 0 else random_blocky_set(rng, 3 * b)
        if not residue_profile(A, b).full:
            continue
        res.checked += 1
        _equality_iff_interval(res, A, sym_vertex_boundary_size(B, A), 2 * b)
    return res


def suite_one_missing_residue(rng, trials=10_000) -> SuiteResult:
    """Same B; A missing exactly one residue mod b => same bound and equality case."""
    res = SuiteResult("one_missing_residue", trials)
    for t in _draws(res):
        b = rng.randint(3, 9)
        B = _residue_gens(rng, b)
        if t % 5 == 0:
            lo = rng.randint(1, b)
            A = ZSet.interval(lo, lo + b - 2)  # the only intervals missing exactly one class
        else:
            A = random_blocky_set(rng, 3 * b)
            r = rng.randrange(b)
            A = ZSet.from_iterable(x for x in A if x % b != r)
        if A.size == 0 or len(residue_profile(A, b).missing) != 1:
            continue
        res.checked += 1
        _equality_iff_interval(res, A, sym_vertex_boundary_size(B, A), 2 * b)
    return res


def suite_no_consecutive_missing(rng, trials=10_000) -> SuiteResult:
    """B = {1, b-1, b, b+1}, no two cyclically adjacent classes missing => >= 2(b+1), equality iff interval."""
    res = SuiteResult("no_consecutive_missing", trials)
    for t in _draws(res):
        b = rng.randint(3, 9)
        B = (1, b - 1, b, b + 1)
        if t % 5 == 0:
            A = ZSet.interval(0, rng.randint(b - 2, 3 * b))
        else:
            A = random_blocky_set(rng, 3 * b)
            for r in rng.sample(range(b), rng.randint(0, b // 2)):
                A = ZSet.from_iterable(x for x in A if x % b != r)
        if A.size == 0 or residue_profile(A, b).missing_consecutive_pair:
            continue
        res.checked += 1
        _equality_iff_interval(res, A, sym_vertex_boundary_size(B, A), 2 * (b + 1))
    return res


# -- embeddings --------------------------------------------------------------


def suite_embedding(rng, trials=10_000, b_range=(4, 9)) -> SuiteResult:
    """phi' maps edge boundaries onto l1 edge boundaries, phi maps vertex boundaries onto linf ones.

    Each draw is checked for both maps: edges after removing residue 0 mod b,
    vertices after removing residues 0 and b - 1.
    """
    res = SuiteResult("embedding", trials)
    for _ in _draws(res):
        b = rng.randint(*b_range)
        A = random_blocky_set(rng, 4 * b)
        Ae = ZSet.from_iterable(x for x in A if x % b != 0)
        Av = ZSet.from_iterable(x for x in A if x % b not in (0, b - 1))
        if not Ae.size or not Av.size:
            continue
        res.checked += 1
        G = GeneratorSet.symmetric(1, b)
        img = {phi_edge((v - s, v), b) for s, v in edge_boundary(G, Ae)}
        img = {((h[0] - t[0], h[1] - t[1]), h) for t, h in img}
        target = l1_edge_boundary(GridSet.of(phi_set(Ae, b)))
        if img != set(target) or len(img) != edge_boundary_size(G, Ae):
            res.fail(("edge", b, Ae.members))
        G = GeneratorSet.symmetric(1, b - 1, b, b + 1)
        img = phi_set(vertex_boundary(G, Av), b)
        target = linf_vertex_boundary(GridSet.of(phi_set(Av, b))).points
        if img != target or len(img) != vertex_boundary_size(G, Av):
            res.fail(("vertex", b, Av.members))
    return res


# -- expansion constant ------------------------------------------------------


def suite_epsilon(rng, trials=10_000, matrix=EPSILON_MATRIX) -> SuiteResult:
    """A missing a class mod some |b| => |(A+B) \\ A| >= eps(B) |A|."""
    res = SuiteResult("epsilon", trials)
    consts = [(G, epsilon_of(G).epsilon) for G in matrix]
    for t in _draws(res):
        G, eps = consts[t % len(consts)]
        A = random_sparse_set(rng)
        if all(residue_profile(A, abs(g)).full for g in G):
            continue
        res.checked += 1
        if vertex_boundary_size(G, A) * eps.denominator < eps.numerator * A.size:
            res.fail((str(G), A.members))
    return res


SUITES = {
    "neighborhood_compression": suite_neighborhood_compression,
    "compression_chain": suite_compression_chain,
    "full_residue_edge": suite_full_residue_edge,
    "full_residue_vertex": suite_full_residue_vertex,
    "one_missing_residue": suite_one_missing_residue,
    "no_consecutive_missing": suite_no_consecutive_missing,
    "embedding": suite_embedding,
    "epsilon": suite_epsilon,
}


def run_all(seed: int = 0, trials: int = 10_000, names=None) -> list[SuiteResult]:
    out = []
    for name, fn in SUITES.items():
        if names and name not in names:
            continue
        out.append(fn(random.Random(f"{seed}:{name}"), trials))
    return out
