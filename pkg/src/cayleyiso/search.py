"""Exact enumeration of boundary minimizers inside a window.

Sets are swept left to right over positions 0..L-1 (see ``frontier``); the
boundary is a sum of per-step costs over a finite frontier state.  A backward
dynamic program over (position, state, members left) gives the exact least
completion cost, which serves as the bound for a depth-first branch and
bound that returns *every* set attaining the optimum.

Only sets whose least element is 0 are enumerated, so each translation class
is visited once.  Results are exact inside the window [0, W-1] and carry
``window_restricted = True``.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import isqrt

import numpy as np

from . import kernels
from .core import GeneratorSet, UsageError, ZSet, block_decomposition, boundary_size
from .frontier import build_frontier
from .grid2d import NORMS, GridSet, boundary2d_size

KINDS = ("edge", "vertex")
BOUNDS = ("auto", "table", "local")
SCAN_CSV_VERSION = 1


# -- window policies ---------------------------------------------------------


@dataclass(frozen=True)
class WindowPolicy:
    """How wide a window to search at size n.

    default    W = n * (b_max + 1)
    slack:K    W = n + K
    fixed:W    W for every n (must be >= n)
    """

    mode: str = "default"
    value: int = 0

    @classmethod
    def parse(cls, text: str | None) -> "WindowPolicy":
        if text is None or text == "default":
            return cls()
        mode, _, val = text.partition(":")
        if mode not in ("slack", "fixed") or not val.lstrip("-").isdigit():
            raise UsageError(f"bad window policy {text!r}; use default, slack:K or fixed:W")
        v = int(val)
        if v < 0:
            raise UsageError("window policy value must be nonnegative")
        return cls(mode, v)

    def __str__(self) -> str:
        return "default" if self.mode == "default" else f"{self.mode}:{self.value}"

    def window(self, n: int, b_max: int) -> int:
        if self.mode == "default":
            return max(1, n * (b_max + 1))
        if self.mode == "slack":
            return n + self.value
        return self.value


# -- results -----------------------------------------------------------------


@dataclass(frozen=True)
class OptimizerFamily:
    generator: object  # GeneratorSet, or a grid norm name
    n: int
    kind: str
    window: int
    opt_value: int
    members: tuple
    labels: tuple[str, ...]
    window_restricted: bool = True

    @property
    def size(self) -> int:
        return len(self.members)

    def label_summary(self) -> tuple[str, ...]:
        return tuple(sorted({lab.split("(")[0] for lab in self.labels}))

    def to_dict(self) -> dict:
        if isinstance(self.generator, GeneratorSet):
            gen = list(self.generator)
            mem = [list(m) for m in self.members]
        else:
            gen = self.generator
            mem = [[list(p) for p in m.sorted_points()] for m in self.members]
        return {
            "generator": gen,
            "n": self.n,
            "kind": self.kind,
            "window": self.window,
            "opt_value": self.opt_value,
            "members": mem,
            "labels": list(self.labels),
            "window_restricted": self.window_restricted,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


# -- kernel driver -----------------------------------------------------------

_WORKER: dict = {}


def _worker_init(payload):
    _WORKER.clear()
    _WORKER.update(payload)


def _worker_run(node):
    w = _WORKER
    y, s, r, p, hf, prefix = node
    K = kernels.get_backend(w["backend"])
    if w["bound"] == "table":
        found = K.dfs_table(
            w["G"], w["rlo"], w["rhi"], w["nxt"], w["cost"], w["flush"],
            w["allowed"], w["start_ok"], y, s, r, p, hf, w["target"],
        )
        return w["target"], [prefix + t for t in found]
    best, found = K.dfs_local(
        w["nxt"], w["cost"], w["flush"], w["pending"], w["allowed"], w["start_ok"],
        y, s, r, p, hf, w["target"],
    )
    return best, [prefix + t for t in found]


def _expand(payload, want: int, max_depth: int = 24):
    """Split the search tree into independent subtrees (prefix nodes)."""
    nxt, cost = payload["nxt"], payload["cost"]
    allowed, start_ok = payload["allowed"], payload["start_ok"]
    L = len(allowed)
    after = kernels._pykernels._start_after(start_ok)
    target = payload["target"]
    if payload["bound"] == "table":
        G, rlo, rhi = payload["G"], payload["rlo"], payload["rhi"]

        def lb(y, s, r):
            if r < rlo[y] or r > rhi[y]:
                return kernels.INF32
            return int(G[y, s, r - rlo[y]])
    else:
        pend = payload["pending"]

        def lb(y, s, r):
            return int(pend[s])

    nodes = [(0, 0, payload["n"], 0, False, ())]
    depth = 0
    while len(nodes) < want and depth < max_depth:
        new = []
        for y, s, r, p, hf, pre in nodes:
            if y == L:
                new.append((y, s, r, p, hf, pre))
                continue
            if allowed[y] and r > 0 and (hf or start_ok[y]):
                s1, p1 = int(nxt[1, s]), p + int(cost[1, s])
                if p1 + lb(y + 1, s1, r - 1) <= target:
                    new.append((y + 1, s1, r - 1, p1, True, pre + (y,)))
            if hf or after[y]:
                s0, p0 = int(nxt[0, s]), p + int(cost[0, s])
                if p0 + lb(y + 1, s0, r) <= target:
                    new.append((y + 1, s0, r, p0, hf, pre))
        nodes = new
        depth += 1
    return nodes


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("CAYLEYISO_WORKERS", "1")))
    except ValueError:
        return 1


def _solve(fr, allowed, start_ok, n: int, incumbent: int, bound: str, workers: int | None):
    """(opt, sorted list of position tuples) over sets of n allowed positions."""
    K = kernels.get_backend()
    allowed = np.ascontiguousarray(allowed, dtype=np.uint8)
    start_ok = np.ascontiguousarray(start_ok, dtype=np.uint8)
    hmax = int(allowed.sum()) - n
    workers = default_workers() if workers is None else max(1, workers)
    payload = {
        "backend": kernels.BACKEND,
        "bound": bound,
        "n": n,
        "nxt": fr.nxt,
        "cost": fr.cost,
        "flush": fr.flush,
        "pending": fr.pending,
        "allowed": allowed,
        "start_ok": start_ok,
    }
    if bound == "table":
        if incumbent + 1 > 255:
            raise UsageError("boundary too large for the table bound; use --bound local")
        G, rlo, rhi = K.build_table(fr.nxt, fr.cost, fr.flush, allowed, n, hmax, incumbent + 1)
        opt = int(G[0, 0, n - rlo[0]])
        payload.update(G=G, rlo=rlo, rhi=rhi, target=opt)
    else:
        payload["target"] = incumbent

    if workers == 1:
        _worker_init(payload)
        try:
            best, sets = _worker_run((0, 0, n, 0, False, ()))
        finally:
            _WORKER.clear()
        return best, sorted(sets)

    nodes = _expand(payload, 8 * workers)
    results = []
    with ProcessPoolExecutor(workers, initializer=_worker_init, initargs=(payload,)) as ex:
        results = list(ex.map(_worker_run, nodes))
    best = min((b for b, s in results if s), default=payload["target"])
    sets = sorted({t for b, s in results if b == best for t in s})
    return best, sets


# -- 1-D search --------------------------------------------------------------


def _check_args(G: GeneratorSet, n: int, kind: str, W: int):
    if kind not in KINDS:
        raise UsageError(f"kind must be one of {KINDS}, got {kind!r}")
    if not G.generates_Z:
        raise UsageError(f"generators {G} do not generate Z (gcd = {G.gcd})")
    if n < 0:
        raise UsageError("n must be nonnegative")
    if W < n:
        raise UsageError(f"window W = {W} is smaller than n = {n}")


def _pick_bound(bound: str) -> str:
    if bound not in BOUNDS:
        raise UsageError(f"bound must be one of {BOUNDS}, got {bound!r}")
    return "table" if bound == "auto" else bound


def enumerate_optimizers(G: GeneratorSet, n: int, kind: str, W: int | None = None,
                         bound: str = "auto", workers: int | None = None) -> OptimizerFamily:
    """Every set A with min A = 0, A in [0, W-1], |A| = n of least boundary."""
    if W is None:
        W = WindowPolicy().window(n, G.b_max)
    _check_args(G, n, kind, W)
    if n == 0:
        return OptimizerFamily(G, 0, kind, W, 0, (ZSet(),), ("empty",))
    fr = build_frontier(tuple(G), kind)
    allowed = np.ones(W, dtype=np.uint8)
    start_ok = np.zeros(W, dtype=np.uint8)
    start_ok[0] = 1
    incumbent = boundary_size(G, ZSet.interval(0, n - 1), kind)
    opt, sets = _solve(fr, allowed, start_ok, n, incumbent, _pick_bound(bound), workers)
    members = tuple(ZSet(t) for t in sets)
    labels = tuple(classify_member(A, G) for A in members)
    return OptimizerFamily(G, n, kind, W, opt, members, labels)


def window_optimum(G: GeneratorSet, n: int, kind: str, W: int) -> int:
    """Least boundary over canonical n-sets in [0, W-1], without listing them."""
    _check_args(G, n, kind, W)
    if n == 0:
        return 0
    fr = build_frontier(tuple(G), kind)
    incumbent = boundary_size(G, ZSet.interval(0, n - 1), kind)
    cap = min(incumbent + 1, 255)
    allowed = np.ones(W, dtype=np.uint8)
    Gt, rlo, _ = kernels.build_table(fr.nxt, fr.cost, fr.flush, allowed, n, W - n, cap)
    opt = int(Gt[0, 0, n - rlo[0]])
    if opt >= cap:
        raise UsageError("boundary too large for the table bound")
    return opt


def optimum_sweep(G: GeneratorSet, kind: str, n_max: int, slack: int) -> dict[int, int]:
    """Window optimum for every n in [1, n_max] with W = n + slack, in one pass."""
    if kind not in KINDS:
        raise UsageError(f"kind must be one of {KINDS}, got {kind!r}")
    if not G.generates_Z:
        raise UsageError(f"generators {G} do not generate Z (gcd = {G.gcd})")
    if n_max < 1:
        return {}
    fr = build_frontier(tuple(G), kind)
    s1 = int(fr.nxt[1, 0])
    c1 = int(fr.cost[1, 0])
    R = kernels.sweep_holes(fr.nxt, fr.cost, fr.flush, s1, n_max + slack - 1, slack)
    return {n: c1 + int(R[n + slack - 1, slack]) for n in range(1, n_max + 1)}


def naive_optimizers(G: GeneratorSet, n: int, kind: str, W: int) -> tuple[int, tuple[ZSet, ...]]:
    """Unpruned enumeration of all canonical n-subsets of [0, W-1]; the test oracle."""
    _check_args(G, n, kind, W)
    if n == 0:
        return 0, (ZSet(),)
    best, found = None, []
    for rest in itertools.combinations(range(1, W), n - 1):
        A = ZSet((0,) + rest)
        c = boundary_size(G, A, kind)
        if best is None or c < best:
            best, found = c, [A]
        elif c == best:
            found.append(A)
    return best, tuple(sorted(found, key=lambda A: A.members))


# -- 2-D search --------------------------------------------------------------


def _grid_offsets(norm: str, stride: int) -> tuple[tuple[int, ...], str]:
    if norm == "l1_edge":
        return (-stride, -1, 1, stride), "edge"
    if norm == "linf_vertex":
        return tuple(sorted(d + e for d in (-stride, 0, stride) for e in (-1, 0, 1) if d or e)), "vertex"
    raise UsageError(f"norm must be one of {NORMS}, got {norm!r}")


def _near_square(n: int) -> GridSet:
    k = isqrt(n - 1) + 1
    return GridSet.of((i % k, i // k) for i in range(n))


def enumerate_optimizers_2d(norm: str, n: int, W: int, bound: str = "auto",
                            workers: int | None = None) -> OptimizerFamily:
    """All minimizers inside [0, W-1]^2 with both minimum coordinates 0.

    Points are laid out row by row with two empty padding columns, so the
    planar neighbourhoods become fixed offsets on a line and the 1-D kernels
    apply unchanged.
    """
    if n < 0:
        raise UsageError("n must be nonnegative")
    if n and W < isqrt(n - 1) + 1:
        raise UsageError(f"window W = {W} cannot hold {n} points near a square")
    stride = W + 2
    offsets, kind = _grid_offsets(norm, stride)
    if n == 0:
        return OptimizerFamily(norm, 0, kind, W, 0, (GridSet(),), ("empty",))
    fr = build_frontier(offsets, kind)
    L = stride * W
    pos = np.arange(L)
    allowed = (pos % stride < W).astype(np.uint8)
    start_ok = ((pos < stride) & (pos % stride < W)).astype(np.uint8)
    incumbent = boundary2d_size(norm, _near_square(n))
    opt, sets = _solve(fr, allowed, start_ok, n, incumbent, _pick_bound(bound), workers)
    found = set()
    for t in sets:
        A = GridSet.of((p % stride, p // stride) for p in t)
        if min(x for x, _ in A.points) == 0:
            found.add(A.sorted_points())
    members = tuple(GridSet.of(pts) for pts in sorted(found))
    labels = tuple("square" if A.is_square_translate() else "other" for A in members)
    return OptimizerFamily(norm, n, kind, W, opt, members, labels)


def naive_optimizers_2d(norm: str, n: int, W: int) -> tuple[int, tuple[GridSet, ...]]:
    """Brute force over canonical n-subsets of [0, W-1]^2."""
    cells = [(x, y) for y in range(W) for x in range(W)]
    best, found = None, []
    for pts in itertools.combinations(cells, n):
        if min(x for x, _ in pts) or min(y for _, y in pts):
            continue
        A = GridSet.of(pts)
        c = boundary2d_size(norm, A)
        if best is None or c < best:
            best, found = c, [A]
        elif c == best:
            found.append(A)
    return best, tuple(sorted(found, key=lambda A: A.sorted_points()))


# -- classification and nesting ----------------------------------------------


def inferred_b(G: GeneratorSet) -> int | None:
    """b for generator shapes +-{1,b} and +-{1,b-1,b,b+1}; None otherwise."""
    if not G.is_symmetric:
        return None
    mags = sorted({abs(x) for x in G})
    if len(mags) == 2 and mags[0] == 1 and mags[1] >= 2:
        return mags[1]
    if len(mags) == 4 and mags[0] == 1 and mags[1] + 2 == mags[3] and mags[2] == mags[1] + 1 and mags[1] >= 2:
        return mags[2]
    return None


def _canonical_grid_square(k: int, b: int) -> frozenset[int]:
    return frozenset(i + b * j for i in range(k) for j in range(k))


def classify_member(A: ZSet, G: GeneratorSet) -> str:
    """interval, grid_square(k,b) or other."""
    if A.size == 0:
        return "empty"
    if block_decomposition(A).is_interval:
        return "interval"
    b = inferred_b(G)
    if b is not None:
        k = isqrt(A.size)
        if k * k == A.size and A.shift(-A.min).as_set == _canonical_grid_square(k, b):
            return f"grid_square({k},{b})"
    return "other"


@dataclass(frozen=True)
class NestVerdict:
    nested: bool
    a1: ZSet | None = None
    a2: ZSet | None = None
    shift: int | None = None
    diameter_shortcut: bool = False
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "verdict": "nested_witness" if self.nested else "none",
            "A1": list(self.a1) if self.a1 is not None else None,
            "A2": list(self.a2) if self.a2 is not None else None,
            "shift": self.shift,
            "diameter_shortcut": self.diameter_shortcut,
            "detail": self.detail,
        }


def nest_check(F1: OptimizerFamily, F2: OptimizerFamily) -> NestVerdict:
    """Is some member of F1, shifted right, contained in some member of F2?"""
    if F1.generator != F2.generator or F1.kind != F2.kind:
        raise UsageError("nest_check needs families for the same generators and kind")
    if F1.n > F2.n:
        raise UsageError("nest_check needs F1.n <= F2.n")
    d1 = min(A.diameter for A in F1.members)
    d2 = max(A.diameter for A in F2.members)
    if d1 > d2:
        return NestVerdict(False, diameter_shortcut=True,
                           detail=f"min diameter {d1} of the smaller family exceeds max diameter {d2}")
    for A1 in F1.members:
        for A2 in F2.members:
            big = A2.as_set
            for t in range(0, A2.max - A1.max + 1):
                if all(x + t in big for x in A1):
                    return NestVerdict(True, A1, A2, t)
    return NestVerdict(False, detail="no member of the smaller family fits inside a member of the larger")


def window_stable(G: GeneratorSet, n: int, kind: str, W: int, **kw) -> bool:
    """Same family at W and W+1, with every member of diameter < W - 1."""
    a = enumerate_optimizers(G, n, kind, W, **kw)
    b = enumerate_optimizers(G, n, kind, W + 1, **kw)
    return (a.opt_value == b.opt_value and a.members == b.members
            and all(A.diameter < W - 1 for A in a.members))


# -- phase scans -------------------------------------------------------------


def predicted_label(G: GeneratorSet, n: int, kind: str) -> str | None:
    """Family shape forced by the known phase-transition results, if any applies."""
    b = inferred_b(G)
    if b is None or n < 1:
        return None
    two_sided = len({abs(x) for x in G}) == 4
    k = isqrt(n)
    if n == 1:
        return "interval"  # the singleton is also [1] + b[1]
    if kind == "edge" and not two_sided:
        if 4 * n > (b + 1) ** 2:
            return "interval"
        if k * k == n and 2 * k < b + 1:
            return f"grid_square({k},{b})"
    if kind == "vertex" and two_sided and n >= b:
        if 4 * n > (b - 1) ** 2:
            return "interval"
        if k * k == n and 2 * k < b - 1:
            return f"grid_square({k},{b})"
    return None


@dataclass(frozen=True)
class ScanRecord:
    n: int
    window: int
    opt_value: int
    family_size: int
    labels: tuple[str, ...]
    interval_value: int
    predicted: str | None = None
    agrees: bool | None = None

    @property
    def interval_attains(self) -> bool:
        return self.interval_value == self.opt_value


@dataclass
class ScanReport:
    generator: GeneratorSet
    kind: str
    policy: str
    records: list[ScanRecord] = field(default_factory=list)

    @property
    def transitions(self) -> list[int]:
        out = []
        for prev, cur in zip(self.records, self.records[1:]):
            if prev.labels != cur.labels:
                out.append(cur.n)
        return out

    def to_dict(self) -> dict:
        return {
            "generator": list(self.generator),
            "kind": self.kind,
            "window_policy": self.policy,
            "records": [
                {
                    "n": r.n, "window": r.window, "opt_value": r.opt_value,
                    "family_size": r.family_size, "labels": list(r.labels),
                    "interval_value": r.interval_value, "interval_attains": r.interval_attains,
                    "predicted": r.predicted, "agrees": r.agrees,
                }
                for r in self.records
            ],
            "transitions": self.transitions,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(f"# cayleyiso scan v{SCAN_CSV_VERSION} generators={','.join(map(str, self.generator))}"
                  f" kind={self.kind} window={self.policy}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "window", "opt_value", "family_size", "labels", "interval_value",
                    "interval_attains", "predicted", "agrees"])
        for r in self.records:
            w.writerow([r.n, r.window, r.opt_value, r.family_size, "|".join(r.labels), r.interval_value,
                        int(r.interval_attains), r.predicted or "", "" if r.agrees is None else int(r.agrees)])
        return buf.getvalue()


def phase_scan(G: GeneratorSet, kind: str, n_lo: int, n_hi: int, policy: WindowPolicy | None = None,
               bound: str = "auto", workers: int | None = None) -> ScanReport:
    policy = policy or WindowPolicy()
    if n_lo > n_hi:
        raise UsageError("empty n range")
    rep = ScanReport(G, kind, str(policy))
    for n in range(n_lo, n_hi + 1):
        F = enumerate_optimizers(G, n, kind, policy.window(n, G.b_max), bound=bound, workers=workers)
        pred = predicted_label(G, n, kind)
        agrees = None
        if pred is not None:
            agrees = all(lab == pred for lab in F.labels)
        rep.records.append(ScanRecord(
            n, F.window, F.opt_value, F.size, F.label_summary(),
            boundary_size(G, ZSet.interval(0, n - 1), kind) if n else 0, pred, agrees,
        ))
    return rep
