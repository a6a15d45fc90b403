"""Constructions of sets with many k-subset s-divisors."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from divlab.core import GroundSet, count_divisors
from divlab.errors import DivlabError, InfeasibleFamilyError

MAX_MULTIPLIER = 1000


@dataclass(frozen=True)
class AntiPencilBuild:
    ground_set: GroundSet
    total: int
    multiplier: int  # total == multiplier * lcm of the prefix k-subset sums
    strict: bool  # no k-subset containing the new maximum is an s-divisor


def build_anti_pencil(prefix, k: int, s: int = 1, max_multiplier: int = MAX_MULTIPLIER) -> AntiPencilBuild:
    """Append a new maximum so every k-subset of ``prefix`` divides the total.

    The total is taken as a multiple of the lcm of all k-subset sums of the
    (integer-cleared) prefix, large enough that the new element exceeds the
    prefix maximum. Multipliers are tried in order until the result is a
    strict (k, s)-anti-pencil; if none up to ``max_multiplier`` is, the
    smallest admissible one is returned with ``strict=False``.
    """
    prefix = prefix if isinstance(prefix, GroundSet) else GroundSet(prefix)
    ints, _ = prefix.integer_form()
    n = len(ints) + 1
    if not 1 <= k <= n - 1:
        raise DivlabError(f"k must satisfy 1 <= k <= {n - 1}")
    if s < 1:
        raise DivlabError("s must be a positive integer")
    sums = {sum(c) for c in combinations(ints, k)}
    base = math.lcm(*sums)
    base_sum = sum(ints)
    t_min = (base_sum + ints[-1]) // base + 1
    for t in range(t_min, max(t_min, max_multiplier) + 1):
        total = t * base
        top = total - base_sum
        strict = all(s * total % (top + sum(c)) for c in combinations(ints, k - 1))
        if strict:
            return AntiPencilBuild(GroundSet((*ints, top)), total, t, True)
    total = t_min * base
    return AntiPencilBuild(GroundSet((*ints, total - base_sum)), total, t_min, False)


def gen_k1_exception(n: int) -> GroundSet:
    """``{1/2, 1/4, ..., 1/2^(n-2), 1/(3*2^(n-3)), 1/(3*2^(n-2))}``: n unit fractions summing to 1.

    Every singleton is then a divisor, so ``d_1 = n``.
    """
    if n < 3:
        raise InfeasibleFamilyError("the k=1 family needs n >= 3", minimal_n=3)
    halves = [Fraction(1, 2**i) for i in range(1, n - 1)]
    return GroundSet(halves + [Fraction(1, 3 * 2 ** (n - 3)), Fraction(1, 3 * 2 ** (n - 2))])


def s_exception_remainder(s: int) -> Fraction:
    """What is left of 1 after ``1/(s+1)`` and ``2/(s+2)``: ``(s^2 - 2)/((s+1)(s+2))``."""
    return 1 - Fraction(1, s + 1) - Fraction(2, s + 2)


def s_exception_min_n(s: int) -> int:
    """Smallest n for which the remainder splits into n-2 distinct parts below ``1/(s+1)``."""
    r = s_exception_remainder(s)
    # need n - 2 > r * (s + 1)
    return math.floor(r * (s + 1)) + 3


def _geometric_fillers(r: Fraction, count: int) -> list[Fraction]:
    if count == 1:
        return [r]
    # r/2, r/4, ..., then the last remainder split 3:2 so nothing repeats
    parts = [r / 2**i for i in range(1, count - 1)]
    rest = r / 2 ** (count - 2)
    return parts + [rest * Fraction(3, 5), rest * Fraction(2, 5)]


def _arithmetic_fillers(r: Fraction, count: int, ceiling: Fraction) -> list[Fraction]:
    mean = r / count
    step = min(ceiling - mean, mean) / count
    return [mean + step * (i - Fraction(count - 1, 2)) for i in range(count)]


FILLER_STRATEGIES = ("geometric", "arithmetic")


def gen_s_exception(s: int, n: int, filler_strategy: str = "geometric") -> GroundSet:
    """A normalised set containing ``1/(s+1)`` and ``2/(s+2)`` plus n-2 smaller fillers.

    Removing either named element leaves a sum of ``s/(s+1)`` or ``s/(s+2)``,
    so ``d^s_{n-1} >= 2``. Fillers are distinct, positive and below
    ``1/(s+1)``. The geometric split falls back to an arithmetic progression
    when it would break those constraints.
    """
    if filler_strategy not in FILLER_STRATEGIES:
        raise DivlabError(f"unknown filler strategy {filler_strategy!r}; choose from {FILLER_STRATEGIES}")
    if s < 2:
        raise InfeasibleFamilyError(f"the s-exception family needs s >= 2 (remainder {s_exception_remainder(s)})")
    r = s_exception_remainder(s)
    need = s_exception_min_n(s)
    if n < max(3, need):
        raise InfeasibleFamilyError(
            f"s={s}, n={n}: remainder {r} does not split into {n - 2} distinct parts below 1/{s + 1}; "
            f"smallest feasible n is {need}",
            minimal_n=need,
        )
    count = n - 2
    ceiling = Fraction(1, s + 1)
    named = {ceiling, Fraction(2, s + 2)}
    fillers = _geometric_fillers(r, count) if filler_strategy == "geometric" else None
    if fillers is None or max(fillers) >= ceiling or named & set(fillers):
        fillers = _arithmetic_fillers(r, count, ceiling)
    return GroundSet(fillers + sorted(named))


def huynh_counterexample() -> GroundSet:
    """``{1/24, 5/24, 7/24, 11/24}``, which has four 2-subset divisors against ``C(3, 2) = 3``."""
    return GroundSet([Fraction(1, 24), Fraction(5, 24), Fraction(7, 24), Fraction(11, 24)])


def family_summary(A: GroundSet, k: int, s: int = 1) -> dict:
    report = count_divisors(A, k, s)
    return {
        "set": str(A),
        "sum": A.total,
        "k": k,
        "s": s,
        "count": report.count,
        "target": report.binom_target,
        "anti_pencil": report.is_anti_pencil,
    }
