import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cayleyiso import kernels
from cayleyiso.core import GeneratorSet, UsageError, ZSet, boundary_size
from cayleyiso.frontier import build_frontier, frontier_size, sweep_cost

from conftest import BACKENDS, HAVE_CYTHON

OFFSETS = [(-4, -1, 1, 4), (-5, -4, -3, -1, 1, 3, 4, 5), (2, 3), (-3, 1, 5), (-10, -1, 1, 10)]


@pytest.mark.parametrize("offsets", OFFSETS)
@pytest.mark.parametrize("kind", ["edge", "vertex"])
@settings(max_examples=60, deadline=None)
@given(bits=st.lists(st.booleans(), max_size=28))
def test_sweep_cost_equals_boundary(offsets, kind, bits):
    fr = build_frontier(offsets, kind)
    A = ZSet.from_iterable(i for i, b in enumerate(bits) if b)
    assert sweep_cost(fr, [int(b) for b in bits]) == boundary_size(GeneratorSet(offsets), A, kind)


def test_frontier_sizes():
    assert frontier_size((-10, -1, 1, 10), "edge") == 1024
    assert frontier_size((-11, -10, -9, -1, 1, 9, 10, 11), "vertex") == 7184
    assert frontier_size((-10, -9, -8, -1, 1, 8, 9, 10), "vertex") == 3136


def test_frontier_pending_is_a_lower_bound():
    # pending[s] never exceeds the cheapest way to close the sweep from s
    for offsets in OFFSETS[:3]:
        for kind in ("edge", "vertex"):
            fr = build_frontier(offsets, kind)
            assert np.all(fr.pending <= fr.flush)


def test_frontier_rejects_bad_input():
    with pytest.raises(UsageError):
        build_frontier((0, 1), "edge")
    with pytest.raises(UsageError):
        build_frontier((1,), "face")
    with pytest.raises(UsageError):
        build_frontier((1, 30), "edge")


def _brute(fr, L, n, start0=True):
    best, found = None, []
    for combo in itertools.combinations(range(L), n):
        if start0 and combo[0] != 0:
            continue
        bits = [0] * L
        for c in combo:
            bits[c] = 1
        c = sweep_cost(fr, bits)
        if best is None or c < best:
            best, found = c, [combo]
        elif c == best:
            found.append(combo)
    return best, sorted(found)


@pytest.mark.parametrize("offsets", OFFSETS[:4])
@pytest.mark.parametrize("kind", ["edge", "vertex"])
def test_backend_search_matches_brute_force(backend, offsets, kind):
    fr = build_frontier(offsets, kind)
    L = 11
    allowed = np.ones(L, dtype=np.uint8)
    start_ok = np.zeros(L, dtype=np.uint8)
    start_ok[0] = 1
    for n in range(1, 6):
        best, found = _brute(fr, L, n)
        cap = 120
        G, rlo, rhi = backend.build_table(fr.nxt, fr.cost, fr.flush, allowed, n, L - n, cap)
        got = sorted(backend.dfs_table(G, rlo, rhi, fr.nxt, fr.cost, fr.flush, allowed, start_ok,
                                       0, 0, n, 0, False, best))
        assert got == found
        lb, lfound = backend.dfs_local(fr.nxt, fr.cost, fr.flush, fr.pending, allowed, start_ok,
                                       0, 0, n, 0, False, cap)
        assert lb == best and sorted(lfound) == found


@pytest.mark.skipif(not HAVE_CYTHON, reason="compiled kernels not built")
@pytest.mark.parametrize("offsets", OFFSETS)
@pytest.mark.parametrize("kind", ["edge", "vertex"])
def test_backends_agree_bitwise(offsets, kind):
    py, cy = kernels.get_backend("python"), kernels.get_backend("cython")
    fr = build_frontier(offsets, kind)
    rng = np.random.default_rng(7)
    L = 30
    allowed = (rng.random(L) < 0.85).astype(np.uint8)
    allowed[0] = 1
    n = 7
    hmax = int(allowed.sum()) - n
    a = py.build_table(fr.nxt, fr.cost, fr.flush, allowed, n, hmax, 60)
    b = cy.build_table(fr.nxt, fr.cost, fr.flush, allowed, n, hmax, 60)
    for x, y in zip(a, b):
        assert np.array_equal(x, y)
    ra = py.sweep_holes(fr.nxt, fr.cost, fr.flush, int(fr.nxt[1, 0]), 40, 9)
    rb = cy.sweep_holes(fr.nxt, fr.cost, fr.flush, int(fr.nxt[1, 0]), 40, 9)
    assert np.array_equal(ra, rb)


def test_sweep_holes_matches_table(backend):
    fr = build_frontier((-4, -1, 1, 4), "vertex")
    slack = 5
    R = backend.sweep_holes(fr.nxt, fr.cost, fr.flush, int(fr.nxt[1, 0]), 25, slack)
    for n in range(1, 20):
        W = n + slack
        allowed = np.ones(W, dtype=np.uint8)
        G, rlo, _ = backend.build_table(fr.nxt, fr.cost, fr.flush, allowed, n, W - n, 100)
        assert int(fr.cost[1, 0]) + int(R[W - 1, slack]) == int(G[0, 0, n - rlo[0]])


def test_backend_selection_reported():
    assert kernels.BACKEND in BACKENDS
    with pytest.raises(ValueError):
        kernels.get_backend("fortran")
