import importlib.util

import networkx as nx
import pytest

from cayleyiso import kernels


def cayley_digraph(B, lo, hi):
    """Cay(Z, B) restricted to [lo, hi], as an independent boundary oracle."""
    g = nx.DiGraph()
    g.add_nodes_from(range(lo, hi + 1))
    for u in range(lo, hi + 1):
        for b in B:
            if lo <= u + b <= hi:
                g.add_edge(u, u + b)
    return g


def oracle_edge_boundary(B, A):
    A = set(A)
    pad = max(abs(b) for b in B) + 1
    lo, hi = (min(A) - pad, max(A) + pad) if A else (0, 0)
    g = cayley_digraph(B, lo, hi)
    return {(v - u, v) for u, v in nx.edge_boundary(g, A)}


def oracle_vertex_boundary(B, A):
    A = set(A)
    if not A:
        return set()
    pad = max(abs(b) for b in B) + 1
    g = cayley_digraph(B, min(A) - pad, max(A) + pad)
    return {v for u in A for v in g.successors(u)} - A


HAVE_CYTHON = importlib.util.find_spec("cayleyiso._ckernels") is not None

BACKENDS = ["python"] + (["cython"] if HAVE_CYTHON else [])


@pytest.fixture(params=BACKENDS)
def backend(request):
    return kernels.get_backend(request.param)


# -- acceptance summary --------------------------------------------------------

_CRITERIA: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call" and not (rep.when == "setup" and rep.failed):
        return
    num, title = mark.args
    prev = _CRITERIA.get(num, (title, True, 0.0))
    _CRITERIA[num] = (title, prev[1] and rep.passed, prev[2] + rep.duration)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        title, ok, secs = _CRITERIA[num]
        terminalreporter.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {title}  ({secs:.2f} s)")
