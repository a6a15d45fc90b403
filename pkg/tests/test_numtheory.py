import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from divlab.errors import DivlabError, ResourceCapError
from divlab.numtheory import (
    FracPairInstance,
    FracPairSolution,
    divisor_count,
    divisor_count_table,
    divisors,
    factorize,
    frac_pair_oracle,
    frac_pair_solutions,
    lemma3_scan,
    lemma4_counts,
)


def naive_tau(n):
    return sum(1 for i in range(1, n + 1) if n % i == 0)


@pytest.mark.parametrize("n, tau", [(1, 1), (2, 2), (12, 6), (36, 9), (97, 2), (720720, 240)])
def test_divisor_count_examples(n, tau):
    assert divisor_count(n) == tau


def test_divisors_and_table_agree_with_naive():
    table = divisor_count_table(500)
    for n in range(1, 501):
        assert divisor_count(n) == naive_tau(n) == table[n]
        assert divisors(n) == [i for i in range(1, n + 1) if n % i == 0]


@settings(max_examples=200)
@given(st.integers(1, 10**6), st.integers(1, 10**6))
def test_divisor_count_multiplicative(a, b):
    if math.gcd(a, b) == 1:
        assert divisor_count(a * b) == divisor_count(a) * divisor_count(b)


@given(st.integers(1, 10**9))
def test_factorize_reconstructs(n):
    fac = factorize(n)
    assert math.prod(p**e for p, e in fac.items()) == n
    assert all(naive_tau(p) == 2 for p in fac if p < 10**4)


def test_factorize_guards(monkeypatch):
    with pytest.raises(DivlabError):
        factorize(0)
    monkeypatch.setenv("DIVLAB_CAP_MB", "1")
    with pytest.raises(ResourceCapError):
        factorize(10**12)


def naive_growth(k, limit):
    best = max((F(naive_tau(n) ** k, n), -n) for n in range(2, limit + 1))
    return best[0], -best[1]


@pytest.mark.parametrize("k, limit", [(1, 100), (2, 2000)])
def test_lemma3_against_naive(k, limit):
    scan = lemma3_scan(k, limit)
    assert (scan.ratio, scan.argmax) == naive_growth(k, limit)


def test_lemma3_frozen_values():
    # values frozen from the naive scan above and the sieve at larger limits
    assert (lemma3_scan(1, 100).ratio, lemma3_scan(1, 100).argmax) == (1, 2)
    s2 = lemma3_scan(2, 10**4)
    assert (s2.ratio, s2.argmax) == (3, 12)
    s3 = lemma3_scan(3, 10**5)
    assert (s3.ratio, s3.argmax) == (F(1536, 35), 2520)


@pytest.mark.parametrize(
    "inst, pairs",
    [
        ((1, 1, 1, 1), [(2, 2)]),
        ((1, 2, 1, 1), [(3, 6), (4, 4), (6, 3)]),
        ((3, 4, 1, 1), [(2, 4), (4, 2)]),
    ],
)
def test_frac_pair_examples(inst, pairs):
    got = frac_pair_solutions(FracPairInstance(*inst))
    assert [(p.x, p.y) for p in got] == pairs
    assert got == frac_pair_oracle(FracPairInstance(*inst))


def test_frac_pair_empty_case():
    # 5/1 = 1/x + 1/y has no solution: each term is at most 1
    assert frac_pair_solutions(FracPairInstance(5, 1, 1, 1)) == []
    assert frac_pair_oracle(FracPairInstance(5, 1, 1, 1)) == []


def test_frac_pair_rejects_bad_instances():
    with pytest.raises(DivlabError):
        FracPairInstance(2, 4, 1, 1)
    with pytest.raises(DivlabError):
        FracPairInstance(0, 1, 1, 1)


def test_half_range_oracle_matches_full_range():
    for m in range(1, 8):
        for n in range(1, 8):
            if math.gcd(m, n) != 1:
                continue
            for a in range(1, 5):
                for b in range(1, 5):
                    inst = FracPairInstance(m, n, a, b)
                    assert frac_pair_oracle(inst) == frac_pair_oracle(inst, full_range=True)


@settings(max_examples=150)
@given(st.integers(1, 40), st.integers(1, 40), st.integers(1, 40), st.integers(1, 40))
def test_solutions_satisfy_equation(m, n, a, b):
    if math.gcd(m, n) != 1:
        return
    inst = FracPairInstance(m, n, a, b)
    sols = frac_pair_solutions(inst)
    assert sols == sorted(set(sols))
    for sol in sols:
        assert F(m, n) == F(a, sol.x) + F(b, sol.y)
        assert math.gcd(a, sol.x) == 1 and math.gcd(b, sol.y) == 1
        assert (m * sol.x - a * n) * (m * sol.y - b * n) == a * b * n * n


def test_lemma4_counts_shape():
    counts = lemma4_counts(2, 1, 1, 12)
    assert sorted(counts) == [1, 3, 5, 7, 9, 11]
    for n, c in counts.items():
        assert c == len(frac_pair_oracle(FracPairInstance(2, n, 1, 1)))
    assert isinstance(FracPairSolution(1, 2), FracPairSolution)
