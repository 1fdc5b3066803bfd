"""Rooted residue witnesses, the expansion constant eps(B) and interval thresholds.

A witness for modulus m is a finite tree in the directed Cayley graph
Cay(Z, B), rooted at 0, that contains a vertex of every residue class mod m.
If A misses some residue r mod m, then translating the witness so that a
vertex lands on every a in A, at least one vertex falls outside A; counting
gives |(A+B) \\ A| >= |A| / width(T).  Taking the worst modulus over B yields
eps(B), and with it a size beyond which intervals are provably optimal.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .core import GeneratorSet, UsageError, ZSet, boundary_size


@dataclass(frozen=True)
class Witness:
    modulus: int
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]  # (u, u + g) with g in B
    representatives: tuple[int, ...]  # representatives[r] is congruent to r mod m

    @property
    def width(self) -> int:
        return max(self.vertices) - min(self.vertices)

    def to_dict(self) -> dict:
        return {
            "b": self.modulus,
            "width": self.width,
            "representatives": {str(r): v for r, v in enumerate(self.representatives)},
            "path_edges": [list(e) for e in self.edges],
        }


def _require_generating(B: GeneratorSet):
    if not B.generates_Z:
        raise UsageError(f"generators {B} do not generate Z (gcd = {B.gcd})")


def rooted_witness(B: GeneratorSet, m: int) -> Witness:
    """Breadth-first search from 0 over Cay(Z, B) until every class mod m is seen.

    Generators are tried in ascending order and the first vertex found in each
    class becomes its representative; the witness is the union of the BFS tree
    paths from 0 to the representatives.
    """
    _require_generating(B)
    if m < 1:
        raise UsageError("modulus must be >= 1")
    parent = {0: None}
    reps: dict[int, int] = {0: 0}
    q = deque([0])
    gens = sorted(B)
    while len(reps) < m:
        u = q.popleft()
        for g in gens:
            v = u + g
            if v in parent:
                continue
            parent[v] = u
            q.append(v)
            reps.setdefault(v % m, v)
    verts, edges = {0}, set()
    for v in reps.values():
        while parent[v] is not None:
            u = parent[v]
            edges.add((u, v))
            verts.add(v)
            v = u
    return Witness(m, tuple(sorted(verts)), tuple(sorted(edges)), tuple(reps[r] for r in range(m)))


def check_witness(T: Witness, B: GeneratorSet) -> bool:
    """Rooted at 0, edges are B-steps, every vertex reachable, every class represented."""
    vs = set(T.vertices)
    if 0 not in vs:
        return False
    steps = set(B)
    out: dict[int, list[int]] = {}
    for u, v in T.edges:
        if v - u not in steps or u not in vs or v not in vs:
            return False
        out.setdefault(u, []).append(v)
    seen, stack = {0}, [0]
    while stack:
        for v in out.get(stack.pop(), ()):
            if v not in seen:
                seen.add(v)
                stack.append(v)
    if seen != vs:
        return False
    m = T.modulus
    return len(T.representatives) == m and all(
        v in vs and v % m == r for r, v in enumerate(T.representatives)
    )


def witness_path(T: Witness, v: int) -> list[int]:
    """Generator sequence along the tree from 0 to v."""
    into = {b: a for a, b in T.edges}
    steps = []
    while v != 0:
        if v not in into:
            raise UsageError(f"{v} is not reachable in the witness")
        u = into[v]
        steps.append(v - u)
        v = u
    return steps[::-1]


def integer_combination(T: Witness, B: GeneratorSet, x: int) -> dict[int, int]:
    """Coefficients c with sum(c[g] * g) = x, built from the witness.

    Walk to the representative of x mod m along the tree, then correct by a
    multiple of a generator of absolute value m.
    """
    m = T.modulus
    c: dict[int, int] = {}
    rep = T.representatives[x % m]
    for g in witness_path(T, rep):
        c[g] = c.get(g, 0) + 1
    rest = x - rep
    if rest:
        g = m if m in B else -m
        if g not in B:
            raise UsageError(f"no generator of absolute value {m}")
        c[g] = c.get(g, 0) + rest // g
    return {g: k for g, k in sorted(c.items()) if k}


@dataclass(frozen=True)
class CertifiedConstant:
    generator: GeneratorSet
    epsilon: Fraction
    witnesses: dict = field(default_factory=dict)  # modulus -> Witness

    @property
    def degenerate(self) -> bool:
        return not self.witnesses


def epsilon_of(B: GeneratorSet) -> CertifiedConstant:
    """eps(B) = min over |b| >= 2 of 1 / width(witness mod |b|); 1 if there is no such b."""
    _require_generating(B)
    mods = sorted({abs(b) for b in B if abs(b) >= 2})
    wit = {m: rooted_witness(B, m) for m in mods}
    if not wit:
        return CertifiedConstant(B, Fraction(1), {})
    eps = min(Fraction(1, T.width) for T in wit.values())
    return CertifiedConstant(B, eps, wit)


def threshold_from_epsilon(B: GeneratorSet, eps: Fraction, kind: str) -> int:
    """Least N at which the counting argument closes, for a given eps."""
    eps = Fraction(eps)
    if eps <= 0:
        raise UsageError("epsilon must be positive")
    p, q = eps.numerator, eps.denominator
    if kind == "edge":
        s = B.abs_sum
        return max(B.b_max, q * s // p + 1)  # eps * N > s
    if kind == "vertex":
        s = B.b_plus + B.b_minus
        need = q * (3 * s + 2)  # eps * N >= 3s + 2
        return max(B.b_plus, B.b_minus, -(-need // p))
    raise UsageError(f"kind must be 'edge' or 'vertex', got {kind!r}")


def certified_interval_threshold(B: GeneratorSet, kind: str, const: CertifiedConstant | None = None) -> int:
    """N_cert: intervals are optimal for every n >= N_cert."""
    const = const or epsilon_of(B)
    if const.degenerate:
        return 1
    return threshold_from_epsilon(B, const.epsilon, kind)


@dataclass(frozen=True)
class EmpiricalThreshold:
    n_max: int
    n_emp: int | None  # least N with the interval optimal on [N, n_max]
    n_emp_unique: int | None  # same, with the interval the only optimizer; None if not computed
    margins: dict  # n -> |boundary [n]| - window optimum


def empirical_interval_threshold(B: GeneratorSet, kind: str, n_max: int, policy=None,
                                 unique: bool = False, workers: int | None = None) -> EmpiricalThreshold:
    from .search import WindowPolicy, enumerate_optimizers, optimum_sweep, window_optimum

    policy = policy or WindowPolicy()
    _require_generating(B)
    if n_max < 1:
        raise UsageError("n_max must be >= 1")
    iv = {n: boundary_size(B, ZSet.interval(0, n - 1), kind) for n in range(1, n_max + 1)}
    families = {}
    if unique:
        for n in range(1, n_max + 1):
            families[n] = enumerate_optimizers(B, n, kind, policy.window(n, B.b_max), workers=workers)
        opt = {n: F.opt_value for n, F in families.items()}
    elif policy.mode == "slack":
        opt = optimum_sweep(B, kind, n_max, policy.value)
    else:
        opt = {n: window_optimum(B, n, kind, policy.window(n, B.b_max)) for n in range(1, n_max + 1)}
    margins = {n: iv[n] - opt[n] for n in range(1, n_max + 1)}

    def first_tail(ok) -> int | None:
        N = None
        for n in range(n_max, 0, -1):
            if not ok(n):
                break
            N = n
        return N

    n_emp = first_tail(lambda n: margins[n] == 0)
    n_uni = None
    if unique:
        n_uni = first_tail(lambda n: families[n].labels == ("interval",))
    return EmpiricalThreshold(n_max, n_emp, n_uni, margins)


def certificate(B: GeneratorSet) -> dict:
    """JSON-ready record of the witnesses, eps and both certified thresholds."""
    c = epsilon_of(B)
    return {
        "generators": list(B),
        "per_b": [T.to_dict() for _, T in sorted(c.witnesses.items())],
        "epsilon": {"num": c.epsilon.numerator, "den": c.epsilon.denominator},
        "N_cert_edge": certified_interval_threshold(B, "edge", c),
        "N_cert_vertex": certified_interval_threshold(B, "vertex", c),
    }


def certificate_json(B: GeneratorSet) -> str:
    return json.dumps(certificate(B), indent=2)
