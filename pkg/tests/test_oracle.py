"""The independent verifiers themselves, including their negative controls."""

from itertools import product
from random import Random

import pytest

from igc import (
    ChartSpec,
    DomainError,
    RelativeSpec,
    oracle_bracket,
    oracle_lyndon_count,
    oracle_multiplicativity,
    oracle_quotient_lowdegree,
    vf_bracket,
)
from igc.oracle import random_kfield, random_vfield

CHART = ChartSpec(2, 4)


def test_oracle_bracket_examples():
    from igc import Poly, VField

    d0 = VField.basis(2, 0)
    x0d1 = VField([Poly.zero(2), Poly.var(2, 0)])
    assert oracle_bracket(d0, x0d1) == VField.basis(2, 1)
    assert oracle_bracket(x0d1, x0d1).is_zero()


def test_oracle_bracket_matches_vf_bracket():
    rng = Random(90)
    for _ in range(200):
        u, v = random_vfield(rng, 3), random_vfield(rng, 3)
        assert oracle_bracket(u, v) == vf_bracket(u, v)


def test_oracle_lyndon_count_values():
    assert oracle_lyndon_count(2, 3) == 2
    assert oracle_lyndon_count(1, 2) == 0
    assert oracle_lyndon_count(3, 4) == 18


def test_oracle_lyndon_count_brute_force():
    def brute(n, d):
        def lyndon(w):
            return all(w < w[k:] + w[:k] for k in range(1, len(w)))

        return sum(1 for w in product(range(n), repeat=d) if lyndon(w))

    for n in (1, 2, 3):
        for d in range(1, 6):
            assert oracle_lyndon_count(n, d) == brute(n, d)


def test_oracle_multiplicativity_passes_and_fails():
    rng = Random(91)
    nu = random_kfield(rng, CHART, 2)
    good = oracle_multiplicativity(nu, trials=4, rng=Random(92))
    assert good.passed and good.cases == 4
    bad = oracle_multiplicativity(nu, trials=4, rng=Random(92), corrupt=True)
    assert not bad.passed
    inputs, expected, got = bad.failures[0]
    assert "differ" in got


def test_oracle_multiplicativity_deterministic():
    rng = Random(93)
    nu = random_kfield(rng, CHART, 2)
    r1 = oracle_multiplicativity(nu, trials=3, rng=Random(5))
    r2 = oracle_multiplicativity(nu, trials=3, rng=Random(5))
    assert r1.failures == r2.failures and r1.cases == r2.cases


def test_quotient_examples():
    chart = ChartSpec(2, 4)
    collapse = oracle_quotient_lowdegree(RelativeSpec(chart, frozenset({0, 1})), 2)
    assert collapse.passed
    fully_free = oracle_quotient_lowdegree(RelativeSpec(chart, frozenset()), 2)
    assert fully_free.passed
    half = oracle_quotient_lowdegree(RelativeSpec(chart, frozenset({1})), 2)
    assert half.passed


def test_quotient_degree_three():
    chart = ChartSpec(2, 4)
    rep = oracle_quotient_lowdegree(RelativeSpec(chart, frozenset({1})), 3, weights=(-1, 0))
    assert rep.passed


def test_quotient_expected_ranks():
    from igc.oracle import _QuotientModel

    chart = ChartSpec(2, 4)
    # all generators vertical at weight 0: rank n * dim(A_1) = 2 * 2
    model = _QuotientModel(RelativeSpec(chart, frozenset({0, 1})), 2, 0)
    assert model.expected_dimension() == 4
    # one horizontal generator leaves no length-2 words
    model = _QuotientModel(RelativeSpec(chart, frozenset({1})), 2, 0)
    assert model.expected_dimension() == 4
    # fully free: extra dim(A_2) * 1 Lyndon word
    model = _QuotientModel(RelativeSpec(chart, frozenset()), 2, 0)
    assert model.expected_dimension() == 7


def test_quotient_guardrails():
    with pytest.raises(DomainError):
        oracle_quotient_lowdegree(RelativeSpec(ChartSpec(3, 4), frozenset()), 2)
    with pytest.raises(DomainError):
        oracle_quotient_lowdegree(RelativeSpec(CHART, frozenset()), 4)


def test_check_report_json():
    from igc import CheckReport

    rep = CheckReport("demo", cases=3)
    assert rep.passed
    rep.record("in", "want", "got")
    data = rep.to_json()
    assert data["passed"] is False and data["failures"][0]["expected"] == "want"
