import itertools
import json

import pytest

from cayleyiso.core import GeneratorSet, UsageError, ZSet, boundary_size, grid_square
from cayleyiso.grid2d import GridSet, boundary2d_size
from cayleyiso.search import (
    OptimizerFamily,
    WindowPolicy,
    classify_member,
    enumerate_optimizers,
    enumerate_optimizers_2d,
    inferred_b,
    naive_optimizers,
    nest_check,
    optimum_sweep,
    phase_scan,
    predicted_label,
    window_optimum,
    window_stable,
)

PM10 = GeneratorSet.symmetric(1, 10)


def brute(G, n, kind, W):
    best, found = None, []
    for rest in itertools.combinations(range(1, W), n - 1):
        A = ZSet((0,) + rest)
        c = boundary_size(G, A, kind)
        if best is None or c < best:
            best, found = c, [A]
        elif c == best:
            found.append(A)
    return best, sorted(found, key=lambda A: A.members)


# -- 1-D enumeration ---------------------------------------------------------------


def test_grid_square_optimizer_pm_1_10():
    F = enumerate_optimizers(PM10, 9, "edge", 48)
    assert F.opt_value == 12
    assert F.members == (ZSet.of(0, 1, 2, 10, 11, 12, 20, 21, 22),)
    assert F.labels == ("grid_square(3,10)",)
    assert F.window_restricted


def test_interval_optimizer_pm_1_10():
    F = enumerate_optimizers(PM10, 33, "edge", 48)
    assert F.opt_value == 22 == 2 * (10 + 1)
    assert F.members == (ZSet.interval(0, 32),)


@pytest.mark.parametrize("G", [PM10, GeneratorSet.of(2, 3), GeneratorSet.of(-3, 1, 5)])
@pytest.mark.parametrize("kind", ["edge", "vertex"])
def test_singleton(G, kind):
    F = enumerate_optimizers(G, 1, kind, 5)
    assert F.opt_value == len(G)
    assert F.members == (ZSet.of(0),)


def test_vertex_grid_square_b9():
    G = GeneratorSet.symmetric(1, 8, 9, 10)
    F = enumerate_optimizers(G, 9, "vertex", 40)
    assert F.opt_value == 16 == 4 * (3 + 1)
    assert F.members == (grid_square(3, 9).shift(-10),)


def test_vertex_pm_1_9_10_11_small_n():
    # this generator set is the b = 10 shape; for n = 9 the square [3] + 10[3] wins
    G = GeneratorSet.symmetric(1, 9, 10, 11)
    F = enumerate_optimizers(G, 9, "vertex", 32)
    assert F.opt_value == 16
    assert F.labels == ("grid_square(3,10)",)


def test_n_zero_convention():
    F = enumerate_optimizers(PM10, 0, "edge", 5)
    assert F.opt_value == 0 and F.members == (ZSet(),)


def test_errors():
    with pytest.raises(UsageError, match="smaller than n"):
        enumerate_optimizers(PM10, 10, "edge", 9)
    with pytest.raises(UsageError, match="gcd = 2"):
        enumerate_optimizers(GeneratorSet.of(2, -4), 3, "edge", 10)
    with pytest.raises(UsageError):
        enumerate_optimizers(PM10, 3, "face", 10)
    with pytest.raises(UsageError):
        enumerate_optimizers(PM10, 3, "edge", 10, bound="magic")


@pytest.mark.parametrize("G", [GeneratorSet.symmetric(1, 4), GeneratorSet.of(2, 3), GeneratorSet.of(-2, 5)])
@pytest.mark.parametrize("kind", ["edge", "vertex"])
@pytest.mark.parametrize("bound", ["table", "local"])
def test_matches_brute_force(G, kind, bound):
    for n in range(1, 7):
        W = 13
        F = enumerate_optimizers(G, n, kind, W, bound=bound)
        best, found = brute(G, n, kind, W)
        assert F.opt_value == best
        assert list(F.members) == found
        assert all(boundary_size(G, A, kind) == F.opt_value and A.min == 0 for A in F.members)


def test_naive_optimizers_matches_brute():
    G = GeneratorSet.symmetric(1, 3)
    assert naive_optimizers(G, 4, "edge", 10) == (lambda b: (b[0], tuple(b[1])))(brute(G, 4, "edge", 10))


def test_interval_upper_bound_and_window_monotone():
    G = GeneratorSet.symmetric(1, 6)
    for n in (4, 9, 12):
        prev = None
        for W in range(n, n + 25, 4):
            v = window_optimum(G, n, "edge", W)
            assert v <= boundary_size(G, ZSet.interval(0, n - 1), "edge")
            assert prev is None or v <= prev
            prev = v


def test_worker_count_does_not_change_output():
    a = enumerate_optimizers(PM10, 21, "edge", 60, workers=1)
    b = enumerate_optimizers(PM10, 21, "edge", 60, workers=3)
    c = enumerate_optimizers(PM10, 21, "edge", 60, workers=2, bound="local")
    assert a == b == c
    assert a.to_json() == b.to_json()


def test_window_optimum_and_sweep_agree():
    G = GeneratorSet.of(3, 5)
    sw = optimum_sweep(G, "vertex", 25, 7)
    for n in (1, 8, 25):
        assert sw[n] == window_optimum(G, n, "vertex", n + 7)


def test_window_stability_flag():
    assert window_stable(PM10, 9, "edge", 40)
    assert not window_stable(PM10, 9, "edge", 22)  # the square has diameter 22


def test_family_json_schema():
    d = json.loads(enumerate_optimizers(PM10, 9, "edge", 48).to_json())
    assert set(d) == {"generator", "n", "kind", "window", "opt_value", "members", "labels", "window_restricted"}
    assert d["members"] == [[0, 1, 2, 10, 11, 12, 20, 21, 22]]


# -- window policies -----------------------------------------------------------------


def test_window_policy():
    assert WindowPolicy.parse(None).window(9, 10) == 99
    assert WindowPolicy.parse("slack:20").window(9, 10) == 29
    assert WindowPolicy.parse("fixed:48").window(9, 10) == 48
    assert str(WindowPolicy.parse("slack:4")) == "slack:4"
    with pytest.raises(UsageError):
        WindowPolicy.parse("wide")


# -- 2-D --------------------------------------------------------------------------------


def brute_2d(norm, n, W):
    cells = [(x, y) for y in range(W) for x in range(W)]
    best, found = None, []
    for pts in itertools.combinations(cells, n):
        if min(x for x, _ in pts) or min(y for _, y in pts):
            continue
        A = GridSet.of(pts)
        c = boundary2d_size(norm, A)
        if best is None or c < best:
            best, found = c, [A.sorted_points()]
        elif c == best:
            found.append(A.sorted_points())
    return best, sorted(found)


def test_2d_examples():
    F = enumerate_optimizers_2d("linf_vertex", 4, 6)
    assert F.opt_value == 12 and F.members == (GridSet.square(2, lo=0),)
    F = enumerate_optimizers_2d("l1_edge", 4, 6)
    assert F.opt_value == 8 and F.members == (GridSet.square(2, lo=0),)
    for norm, v in (("linf_vertex", 8), ("l1_edge", 4)):
        F = enumerate_optimizers_2d(norm, 1, 6)
        assert F.opt_value == v and F.members == (GridSet.of([(0, 0)]),)


@pytest.mark.parametrize("norm", ["l1_edge", "linf_vertex"])
def test_2d_matches_brute_force(norm):
    for n in range(1, 6):
        F = enumerate_optimizers_2d(norm, n, 4)
        best, found = brute_2d(norm, n, 4)
        assert F.opt_value == best
        assert [A.sorted_points() for A in F.members] == found


def test_2d_window_too_small():
    with pytest.raises(UsageError):
        enumerate_optimizers_2d("l1_edge", 10, 3)


# -- classification and nesting ---------------------------------------------------------


def test_inferred_b():
    assert inferred_b(PM10) == 10
    assert inferred_b(GeneratorSet.symmetric(1, 8, 9, 10)) == 9
    assert inferred_b(GeneratorSet.of(1, 10)) is None
    assert inferred_b(GeneratorSet.symmetric(1, 3, 7)) is None


def test_classify_member():
    assert classify_member(ZSet.interval(0, 8), PM10) == "interval"
    assert classify_member(grid_square(3, 10).shift(-11), PM10) == "grid_square(3,10)"
    assert classify_member(ZSet.of(0, 1, 5), PM10) == "other"
    assert classify_member(ZSet.of(0, 1, 9, 10), GeneratorSet.symmetric(1, 8, 9, 10)) == "grid_square(2,9)"


def _family(members, n=None, G=PM10, kind="edge"):
    members = tuple(ZSet.from_iterable(m) for m in members)
    n = n or members[0].size
    return OptimizerFamily(G, n, kind, 100, 0, members, tuple("x" for _ in members))


def test_nest_check_examples():
    F16 = enumerate_optimizers(PM10, 16, "edge", 48)
    F33 = enumerate_optimizers(PM10, 33, "edge", 48)
    v = nest_check(F16, F33)
    assert not v.nested and v.diameter_shortcut
    v = nest_check(_family([range(0, 5)]), _family([range(0, 6)]))
    assert v.nested and v.shift in (0, 1)
    F = _family([range(0, 4)])
    v = nest_check(F, F)
    assert v.nested and v.shift == 0 and v.a1 == v.a2


def test_nest_check_full_scan_without_shortcut():
    v = nest_check(_family([(0, 2, 4)]), _family([(0, 1, 3, 4, 6)]))
    assert not v.nested and not v.diameter_shortcut
    v = nest_check(_family([(0, 2)]), _family([(0, 1, 3)]))
    assert v.nested and v.shift == 1


def test_nest_check_errors():
    with pytest.raises(UsageError):
        nest_check(_family([range(3)]), _family([range(3)], G=GeneratorSet.symmetric(1, 4)))
    with pytest.raises(UsageError):
        nest_check(_family([range(4)]), _family([range(3)]))


# -- scans ------------------------------------------------------------------------------


def test_phase_scan_pm_1_10():
    rep = phase_scan(PM10, "edge", 1, 36)
    by_n = {r.n: r for r in rep.records}
    assert by_n[16].labels == ("grid_square",)
    assert all(by_n[n].labels == ("interval",) for n in range(33, 37))
    assert all(r.agrees in (None, True) for r in rep.records)
    assert [r.n for r in rep.records] == list(range(1, 37))
    assert 4 in rep.transitions


def test_phase_scan_pm_1_3_all_intervals():
    rep = phase_scan(GeneratorSet.symmetric(1, 3), "edge", 9, 16)
    assert all(r.labels == ("interval",) for r in rep.records)
    assert rep.transitions == []


def test_phase_scan_single_record():
    rep = phase_scan(PM10, "edge", 1, 1)
    assert len(rep.records) == 1 and rep.transitions == []


def test_scan_csv_header_is_versioned():
    text = phase_scan(PM10, "edge", 1, 3).to_csv()
    lines = text.splitlines()
    assert lines[0].startswith("# cayleyiso scan v1 ")
    assert lines[1] == "n,window,opt_value,family_size,labels,interval_value,interval_attains,predicted,agrees"
    assert len(lines) == 5


def test_predicted_labels():
    assert predicted_label(PM10, 9, "edge") == "grid_square(3,10)"
    assert predicted_label(PM10, 31, "edge") == "interval"
    assert predicted_label(PM10, 30, "edge") is None
    G9 = GeneratorSet.symmetric(1, 8, 9, 10)
    assert predicted_label(G9, 9, "vertex") == "grid_square(3,9)"
    assert predicted_label(G9, 17, "vertex") == "interval"
    assert predicted_label(G9, 4, "vertex") is None  # n < b
