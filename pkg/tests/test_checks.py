import random

import pytest

from cayleyiso import checks
from cayleyiso.core import GeneratorSet


@pytest.mark.parametrize("name", sorted(checks.SUITES))
def test_suite_passes_small(name):
    res = checks.SUITES[name](random.Random(1), 300)
    assert res.ok, res.counterexample
    assert res.checked == 300


def test_run_all_is_deterministic():
    a = [(r.name, r.checked, r.notes.get("draws")) for r in checks.run_all(5, 200)]
    b = [(r.name, r.checked, r.notes.get("draws")) for r in checks.run_all(5, 200)]
    assert a == b


def test_epsilon_suite_catches_an_inflated_epsilon(monkeypatch):
    # a constant that is too large must produce counterexamples
    from fractions import Fraction

    from cayleyiso.certify import CertifiedConstant

    monkeypatch.setattr(checks, "epsilon_of", lambda G: CertifiedConstant(G, Fraction(3), {}))
    res = checks.suite_epsilon(random.Random(0), 200, matrix=(GeneratorSet.of(2, 3),))
    assert res.failures > 0


def test_residue_suite_catches_a_wrong_bound(monkeypatch):
    real = checks.sym_vertex_boundary_size
    monkeypatch.setattr(checks, "sym_vertex_boundary_size", lambda B, A: real(B, A) - 1)
    res = checks.suite_full_residue_vertex(random.Random(0), 200)
    assert res.failures > 0
