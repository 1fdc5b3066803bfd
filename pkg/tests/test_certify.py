import json
import random
from collections import deque
from fractions import Fraction

import pytest

from cayleyiso.certify import (
    Witness,
    certificate,
    certified_interval_threshold,
    check_witness,
    empirical_interval_threshold,
    epsilon_of,
    integer_combination,
    rooted_witness,
    threshold_from_epsilon,
    witness_path,
)
from cayleyiso.core import GeneratorSet, UsageError, ZSet, boundary_size, residue_profile, vertex_boundary_size
from cayleyiso.search import WindowPolicy, window_optimum


def bfs_first_hits(B, m):
    """Independent BFS: first vertex reached in each class mod m, generators ascending."""
    seen, hit, q = {0}, {0: 0}, deque([0])
    while len(hit) < m:
        u = q.popleft()
        for g in sorted(B):
            v = u + g
            if v not in seen:
                seen.add(v)
                q.append(v)
                hit.setdefault(v % m, v)
    return hit


def test_witness_two_three_mod_two():
    B = GeneratorSet.of(2, 3)
    T = rooted_witness(B, 2)
    assert T.representatives == (0, 3)
    assert {0, 3} <= set(T.vertices)
    assert T.width == 3
    assert check_witness(T, B)


def test_witness_pm1_mod5_is_valid():
    B = GeneratorSet.symmetric(1)
    T = rooted_witness(B, 5)
    assert check_witness(T, B)
    assert T.width == 4
    assert sorted(v % 5 for v in T.representatives) == list(range(5))


def test_witness_trivial_modulus():
    T = rooted_witness(GeneratorSet.of(1), 1)
    assert T.vertices == (0,) and T.width == 0


@pytest.mark.parametrize("gens", [(2, 3), (3, 5), (-4, -1, 1, 4), (-11, -10, -9, -1, 1, 9, 10, 11), (-3, 7)])
def test_witness_matches_independent_bfs(gens):
    B = GeneratorSet(gens)
    for m in sorted({abs(b) for b in B}):
        T = rooted_witness(B, m)
        assert check_witness(T, B)
        hit = bfs_first_hits(B, m)
        assert T.representatives == tuple(hit[r] for r in range(m))
        for v in T.vertices:
            assert sum(witness_path(T, v)) == v


def test_witness_errors():
    with pytest.raises(UsageError, match="gcd = 2"):
        rooted_witness(GeneratorSet.of(2, 4), 2)
    with pytest.raises(UsageError):
        rooted_witness(GeneratorSet.of(1), 0)


def test_check_witness_rejects_broken_witnesses():
    B = GeneratorSet.of(2, 3)
    T = rooted_witness(B, 3)
    assert not check_witness(Witness(3, T.vertices, T.edges[1:], T.representatives), B)
    assert not check_witness(Witness(3, T.vertices, T.edges, (0, 0, 2)), B)
    assert not check_witness(Witness(3, T.vertices + (9,), T.edges, T.representatives), B)


@pytest.mark.parametrize("gens", [(2, 3), (-4, -1, 1, 4), (3, 5), (-5, 8)])
def test_integer_combination_reconstructs_target(gens):
    B = GeneratorSet(gens)
    for m in sorted({abs(b) for b in B}):
        T = rooted_witness(B, m)
        for x in range(-60, 61):
            c = integer_combination(T, B, x)
            assert all(g in B for g in c)
            assert sum(g * k for g, k in c.items()) == x


def test_epsilon_examples():
    assert epsilon_of(GeneratorSet.of(2, 3)).epsilon == Fraction(1, 4)
    c = epsilon_of(GeneratorSet.symmetric(1, 4))
    assert c.epsilon >= Fraction(1, 4)
    assert c.epsilon == Fraction(1, max(T.width for T in c.witnesses.values()))
    d = epsilon_of(GeneratorSet.symmetric(1))
    assert d.epsilon == 1 and d.degenerate


def test_epsilon_is_exact_fraction():
    c = epsilon_of(GeneratorSet.symmetric(1, 9, 10, 11))
    assert isinstance(c.epsilon, Fraction)
    assert c.epsilon.denominator == max(T.width for T in c.witnesses.values())


def test_epsilon_soundness_sample():
    rng = random.Random(11)
    for gens in [(2, 3), (3, 5), (-4, -1, 1, 4)]:
        B = GeneratorSet(gens)
        eps = epsilon_of(B).epsilon
        for _ in range(400):
            A = ZSet.from_iterable(rng.sample(range(-40, 41), rng.randint(1, 20)))
            if all(residue_profile(A, abs(b)).full for b in B):
                continue
            assert vertex_boundary_size(B, A) >= eps * A.size


def test_thresholds_from_epsilon():
    assert threshold_from_epsilon(GeneratorSet.of(2, 3), Fraction(1, 4), "edge") == 21
    assert threshold_from_epsilon(GeneratorSet.symmetric(1, 4), Fraction(1, 4), "edge") == 41
    # vertex: eps N - 2(s+1) >= s with s = b+ + b-
    assert threshold_from_epsilon(GeneratorSet.of(2, 3), Fraction(1, 4), "vertex") == 4 * (3 * 3 + 2)
    with pytest.raises(UsageError):
        threshold_from_epsilon(GeneratorSet.of(2, 3), Fraction(0), "edge")


def test_certified_thresholds():
    assert certified_interval_threshold(GeneratorSet.of(2, 3), "edge") == 21
    for kind in ("edge", "vertex"):
        assert certified_interval_threshold(GeneratorSet.symmetric(1), kind) == 1
    N = certified_interval_threshold(GeneratorSet.symmetric(1, 4), "edge")
    assert N >= 4 and Fraction(1, 3) * N > 10


@pytest.mark.parametrize("kind", ["edge", "vertex"])
def test_threshold_soundness_two_three(kind):
    B = GeneratorSet.of(2, 3)
    N = certified_interval_threshold(B, kind)
    for n in range(N, N + 4):
        W = WindowPolicy().window(n, B.b_max)
        assert window_optimum(B, n, kind, W) == boundary_size(B, ZSet.interval(0, n - 1), kind)


def test_empirical_threshold_pm_1_10():
    e = empirical_interval_threshold(GeneratorSet.symmetric(1, 10), "edge", 40, unique=True)
    # the interval ties from n = 26 and is the only optimizer from n = 31
    assert e.n_emp == 26
    assert e.n_emp_unique == 31
    assert e.margins[25] == 2 and e.margins[40] == 0


def test_empirical_threshold_small_cases():
    assert empirical_interval_threshold(GeneratorSet.symmetric(1, 3), "edge", 20).n_emp <= 5
    assert empirical_interval_threshold(GeneratorSet.symmetric(1), "edge", 10).n_emp == 1
    e = empirical_interval_threshold(GeneratorSet.symmetric(1, 10), "edge", 25)
    assert e.n_emp is None  # the square beats the interval at n = 25


def test_empirical_sweep_matches_per_n():
    B = GeneratorSet.of(3, 5)
    a = empirical_interval_threshold(B, "vertex", 30, WindowPolicy("slack", 10))
    b = empirical_interval_threshold(B, "vertex", 30, WindowPolicy("slack", 10), unique=True)
    assert a.margins == b.margins and a.n_emp == b.n_emp


def test_certificate_json_shape():
    d = json.loads(json.dumps(certificate(GeneratorSet.of(2, 3))))
    assert set(d) == {"generators", "per_b", "epsilon", "N_cert_edge", "N_cert_vertex"}
    assert d["epsilon"] == {"num": 1, "den": 4}
    assert [p["b"] for p in d["per_b"]] == [2, 3]
    assert set(d["per_b"][0]) == {"b", "width", "representatives", "path_edges"}
    assert d["N_cert_edge"] == 21
