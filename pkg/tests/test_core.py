import math
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from divlab.core import (
    GroundSet,
    OpenInterval,
    SDivisor,
    SubsetMask,
    Union,
    check_chain_bound,
    colex_masks,
    count_divisors,
    count_predicate,
    divisor_chain,
    dominates,
    format_rational,
    is_anti_pencil,
    is_s_divisor,
    mms_count,
    normalize,
    parse_rational,
)
from divlab.errors import DivlabError, DuplicateElementError

F = Fraction


def brute_divisors(values, k, s):
    """Oracle: k-subsets (as value tuples) whose sum divides s * total, by Fraction division."""
    total = sum(map(F, values))
    return [c for c in combinations(sorted(map(F, values)), k) if (s * total / sum(c)).denominator == 1]


def mask_of(A, values):
    return SubsetMask.from_indices(A.elements.index(F(v)) for v in values)


ground_sets = st.lists(st.integers(1, 60), min_size=1, max_size=7, unique=True).map(GroundSet)


# -- parsing and types -------------------------------------------------------------


@pytest.mark.parametrize("text, value", [("3", F(3)), ("2/4", F(1, 2)), ("-5/7", F(-5, 7)), (" 11/24 ", F(11, 24))])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["1/0", "1/-2", "0.5", "1e3", "+3", "", "a/b", "1//2"])
def test_parse_rational_rejects(text):
    with pytest.raises(DivlabError):
        parse_rational(text)


def test_format_round_trip():
    for x in [F(1, 24), F(7), F(-3, 5)]:
        assert parse_rational(format_rational(x)) == x
    A = GroundSet([F(1, 24), 5, "7/3"])
    assert GroundSet.parse(str(A)) == A


def test_ground_set_sorts_and_validates():
    A = GroundSet([11, 1, 7, 5])
    assert A.elements == (1, 5, 7, 11)
    assert A.n == 4 and A.total == 24
    with pytest.raises(DuplicateElementError):
        GroundSet([1, 2, F(4, 2)])
    with pytest.raises(DivlabError):
        GroundSet([1, 0])
    with pytest.raises(DivlabError):
        GroundSet([])
    with pytest.raises(DivlabError):
        GroundSet([0.5])


def test_colex_order():
    masks = list(colex_masks(4, 2))
    assert masks == sorted(masks)
    assert [SubsetMask(m).indices() for m in masks] == [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)]
    assert len(list(colex_masks(10, 4))) == math.comb(10, 4)


# -- normalize / predicates ----------------------------------------------------------


def test_normalize_examples():
    assert normalize(GroundSet([1, 5, 7, 11])).elements == (F(1, 24), F(5, 24), F(7, 24), F(11, 24))
    assert normalize(GroundSet([F(1, 2), F(1, 3), F(1, 6)])) == GroundSet([F(1, 2), F(1, 3), F(1, 6)])
    assert normalize(GroundSet([2, 10, 14, 22])) == normalize(GroundSet([1, 5, 7, 11]))


def test_is_s_divisor_examples():
    A = GroundSet([1, 5, 7, 11])
    assert is_s_divisor(A, mask_of(A, [1, 5]), 1)
    assert not is_s_divisor(A, mask_of(A, [5, 11]), 1)
    assert is_s_divisor(A, mask_of(A, [5, 11]), 2)


def test_is_s_divisor_rejects_bad_input():
    A = GroundSet([1, 2])
    with pytest.raises(DivlabError):
        is_s_divisor(A, SubsetMask(0b100), 1)
    with pytest.raises(DivlabError):
        is_s_divisor(A, SubsetMask(1), 0)


def test_count_divisors_examples():
    rep = count_divisors(GroundSet([1, 5, 7, 11]), 2, 1)
    assert rep.count == 4 and rep.binom_target == 3 and rep.exceeds
    assert count_divisors(GroundSet([3, 8, 9]), 3, 1).count == 1
    A = GroundSet([F(1, 15), F(1, 10), F(1, 3), F(1, 2)])
    assert len(brute_divisors(A.elements, 3, 2)) == 2
    assert count_divisors(A, 3, 2).count == 2


def test_witnesses_in_colex_order():
    A = GroundSet([1, 5, 7, 11])
    rep = count_divisors(A, 2, 1, list_witnesses=True)
    assert [w.values(A) for w in rep.witnesses] == [(1, 5), (1, 7), (5, 7), (1, 11)]
    assert count_divisors(A, 2, 1).witnesses is None


@settings(max_examples=200, deadline=None)
@given(ground_sets, st.data())
def test_count_matches_brute_force(A, data):
    k = data.draw(st.integers(1, A.n))
    s = data.draw(st.integers(1, 4))
    assert count_divisors(A, k, s).count == len(brute_divisors(A.elements, k, s))


# -- anti-pencils --------------------------------------------------------------------


@pytest.mark.parametrize(
    "values, k, expected",
    [([1, 2, 3, 54], 2, True), ([1, 5, 7, 11], 2, False), ([1, 2, 5], 1, True)],
)
def test_anti_pencil_examples(values, k, expected):
    assert is_anti_pencil(GroundSet(values), k, 1) is expected


def brute_anti_pencil(values, k, s):
    top = max(values)
    divs = set(brute_divisors(values, k, s))
    base = set(combinations(sorted(map(F, values))[:-1], k))
    return divs == base and all(top not in c for c in divs)


@settings(max_examples=200, deadline=None)
@given(ground_sets, st.data())
def test_anti_pencil_matches_definition(A, data):
    k = data.draw(st.integers(1, A.n))
    s = data.draw(st.integers(1, 3))
    got = is_anti_pencil(A, k, s)
    assert got == brute_anti_pencil(A.elements, k, s)
    if got:
        assert count_divisors(A, k, s).count == math.comb(A.n - 1, k)


# -- chains ----------------------------------------------------------------------------


def brute_longest_chain(A, k, s):
    """Oracle: longest chain length by DFS over all strictly increasing sequences."""
    divs = [tuple(A.elements.index(v) for v in c) for c in brute_divisors(A.elements, k, s)]

    def longest_from(d):
        ups = [e for e in divs if e != d and dominates(d, e)]
        return 1 + max((longest_from(e) for e in ups), default=0)

    return max((longest_from(d) for d in divs), default=0)


def test_chain_examples():
    A = GroundSet([1, 2, 3, 54])
    chain = divisor_chain(A, 2, 1)
    assert [c.values(A) for c in chain] == [(1, 2), (1, 3), (2, 3)]
    B = GroundSet([1, 5, 7, 11])
    assert len(divisor_chain(B, 2, 1)) == 3 == brute_longest_chain(B, 2, 1)
    # neither 5 nor 7 divides 12
    assert divisor_chain(GroundSet([5, 7]), 1, 1) == []


@settings(max_examples=150, deadline=None)
@given(ground_sets, st.data())
def test_chain_is_longest_and_valid(A, data):
    k = data.draw(st.integers(1, A.n))
    s = data.draw(st.integers(1, 3))
    chain = divisor_chain(A, k, s)
    assert len(chain) == brute_longest_chain(A, k, s)
    for lo, hi in zip(chain, chain[1:]):
        assert lo != hi and dominates(lo.indices(), hi.indices())
    assert all(is_s_divisor(A, B, s) for B in chain)
    if chain:
        assert check_chain_bound(A, chain, s)


def test_chain_bound_examples():
    A = GroundSet([1, 2, 3, 54])
    chain = divisor_chain(A, 2, 1)
    res = check_chain_bound(A, chain, 1)
    assert res.holds and res.q == 12 and res.m == 2
    # sum(B_0) = 3/60 against 1/14, elements 1/60, 2/60 against 1/3
    assert F(3, 60) < F(1, 14) and F(2, 60) < F(1, 3)
    assert check_chain_bound(A, chain[:1], 1).holds


def test_chain_bound_rejects_non_chains():
    A = GroundSet([1, 2, 3, 54])
    chain = divisor_chain(A, 2, 1)
    with pytest.raises(DivlabError):
        check_chain_bound(A, chain[::-1], 1)
    with pytest.raises(DivlabError):
        check_chain_bound(A, [mask_of(A, [3, 54])], 1)
    with pytest.raises(DivlabError):
        check_chain_bound(A, [], 1)


def test_chain_bound_equality_case_is_accepted():
    A = GroundSet([1, 5, 7, 11])
    chain = [mask_of(A, [1, 5]), mask_of(A, [1, 7]), mask_of(A, [1, 11])]
    res = check_chain_bound(A, chain, 1)
    # sums 1/4, 1/3, 1/2: q = 2, m = 2 and sum(B_0) = 1/4 = 1/(q+m)
    assert res.q == 2 and res.holds


# -- predicates and MMS --------------------------------------------------------------


def test_count_predicate_examples():
    A = GroundSet([F(1, 24), F(5, 24), F(7, 24), F(11, 24)])
    assert count_predicate(A, 2, SDivisor(1)) == 4
    for n in range(2, 7):
        B = GroundSet(range(1, n + 1))
        assert count_predicate(B, n - 1, OpenInterval(0, 1)) == n
    sums = [sum(c) for c in combinations(A.elements, 2)]
    expected = sum(1 for x in sums if (1 / x).denominator == 1 or F(1, 2) < x < 1)
    assert expected == 6  # four divisors plus 2/3 and 3/4
    assert count_predicate(A, 2, Union([SDivisor(1), OpenInterval(F(1, 2), 1)])) == expected


def test_predicates_validate():
    with pytest.raises(DivlabError):
        OpenInterval(1, 1)
    with pytest.raises(DivlabError):
        SDivisor(0)


def test_predicate_matches_count_divisors_exhaustively():
    # every integer set with n <= 5 and total <= 30
    for n in range(1, 6):
        for combo in combinations(range(1, 31), n):
            if sum(combo) > 30:
                continue
            A = GroundSet(combo)
            for k in range(1, n + 1):
                for s in (1, 2, 3):
                    assert count_predicate(A, k, SDivisor(s)) == count_divisors(A, k, s).count


@settings(max_examples=200, deadline=None)
@given(ground_sets, st.data())
def test_open_interval_matches_mms_after_affine_map(A, data):
    n = A.n
    k = data.draw(st.integers(1, n))
    B = normalize(A)
    shifted = [F(1, n) - a for a in B.elements]
    ties = sum(1 for c in combinations(B.elements, k) if sum(c) == F(k, n))
    assert count_predicate(B, k, OpenInterval(0, F(k, n))) + ties == mms_count(shifted, k).count


def test_mms_examples():
    rep = mms_count([1, 1, 1, 1], 1)
    assert rep.count == 4 and rep.target == 1 and rep.applies and rep.conjecture_holds
    rep = mms_count([3, -1, -1, -1], 1)
    assert rep.count == 1 == rep.target
    # brute force: pair sums 1, 1, 0, 0, -1, -1
    assert sorted(sum(c) for c in combinations([1, 0, 0, -1], 2)) == [-1, -1, 0, 0, 1, 1]
    rep = mms_count([1, 0, 0, -1], 2)
    assert rep.count == 4 and rep.target == 3 and not rep.applies and rep.conjecture_holds is None


def test_mms_rejects_negative_total():
    with pytest.raises(DivlabError):
        mms_count([1, -2], 1)
    assert mms_count(["1/2", "-1/2", "0"], 2).count == 2


# -- invariants --------------------------------------------------------------------------


@settings(max_examples=200, deadline=None)
@given(ground_sets, st.fractions(min_value=F(1, 50), max_value=50), st.data())
def test_scaling_invariance(A, c, data):
    k = data.draw(st.integers(1, A.n))
    s = data.draw(st.integers(1, 3))
    assert count_divisors(A, k, s).count == count_divisors(A.scaled(c), k, s).count


@settings(max_examples=200, deadline=None)
@given(ground_sets, st.data())
def test_monotone_in_s(A, data):
    k = data.draw(st.integers(1, A.n))
    s = data.draw(st.integers(1, 4))
    t = data.draw(st.integers(1, 4))
    rep = count_divisors(A, k, s)
    assert 0 <= rep.count <= math.comb(A.n, k)
    assert rep.count <= count_divisors(A, k, s * t).count


@settings(max_examples=100, deadline=None)
@given(ground_sets)
def test_whole_set_is_its_only_n_subset_divisor(A):
    assert count_divisors(A, A.n, 1).count == 1
