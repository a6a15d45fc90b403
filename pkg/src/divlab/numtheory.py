"""Divisor counts and the two-term equation ``m/n = a/x + b/y``."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from divlab.caps import cap
from divlab.errors import DivlabError, ResourceCapError


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division."""
    if n < 1:
        raise DivlabError(f"factorize needs n >= 1, got {n}")
    if n > cap("factor_limit"):
        raise ResourceCapError(f"{n} exceeds the factorization cap {cap('factor_limit')}")
    out = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    p = 5
    while p * p <= n:
        for q in (p, p + 2):
            while n % q == 0:
                out[q] = out.get(q, 0) + 1
                n //= q
        p += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n: int) -> list[int]:
    """All positive divisors of ``n``, ascending."""
    divs = [1]
    for p, e in factorize(n).items():
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def divisor_count(n: int) -> int:
    return math.prod(e + 1 for e in factorize(n).values())


def divisor_count_table(limit: int) -> np.ndarray:
    """``table[i]`` is the number of divisors of ``i`` for ``0 < i <= limit``."""
    if limit > cap("scan_limit"):
        raise ResourceCapError(f"sieve length {limit} exceeds cap {cap('scan_limit')}")
    table = np.zeros(limit + 1, dtype=np.int64)
    for i in range(1, limit + 1):
        table[i::i] += 1
    return table


@dataclass(frozen=True)
class GrowthScan:
    """Largest ``d(n)**k / n`` over ``2 <= n <= limit``, with its first attaining n."""

    k: int
    limit: int
    ratio: Fraction
    argmax: int


def lemma3_scan(k: int, limit: int) -> GrowthScan:
    """Empirical constant in ``d(n) <= C * n**(1/k)`` on a finite range (reported as ``C**k``)."""
    if k < 1 or limit < 2:
        raise DivlabError("lemma3_scan needs k >= 1 and limit >= 2")
    table = divisor_count_table(limit)
    ns = np.arange(2, limit + 1)
    approx = table[2:].astype(float) ** k / ns
    # floats only shortlist; the winner is decided exactly
    top = approx.max()
    shortlist = ns[approx >= top * (1 - 1e-9)]
    best_n, best = None, None
    for n in shortlist.tolist():
        r = Fraction(int(table[n]) ** k, n)
        if best is None or r > best:
            best_n, best = n, r
    return GrowthScan(k, limit, best, best_n)


# -- m/n = a/x + b/y -----------------------------------------------------------


@dataclass(frozen=True)
class FracPairInstance:
    m: int
    n: int
    a: int
    b: int

    def __post_init__(self):
        if min(self.m, self.n, self.a, self.b) < 1:
            raise DivlabError("m, n, a, b must be positive integers")
        if math.gcd(self.m, self.n) != 1:
            raise DivlabError(f"m/n = {self.m}/{self.n} is not in lowest terms")


@dataclass(frozen=True, order=True)
class FracPairSolution:
    x: int
    y: int


def _lowest_terms(inst: FracPairInstance, x: int, y: int) -> bool:
    return math.gcd(inst.a, x) == 1 and math.gcd(inst.b, y) == 1


@lru_cache(maxsize=4096)
def _divisors_of_product(a: int, b: int, n: int) -> tuple[int, ...]:
    """Divisors of ``a*b*n**2`` assembled from the factorizations of its small factors."""
    exps: dict[int, int] = {}
    for base, mult in ((a, 1), (b, 1), (n, 2)):
        for p, e in factorize(base).items():
            exps[p] = exps.get(p, 0) + mult * e
    divs = [1]
    for p, e in exps.items():
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return tuple(sorted(divs))


def frac_pair_solutions(inst: FracPairInstance) -> list[FracPairSolution]:
    """Every ordered pair (x, y) with ``m/n = a/x + b/y``, all fractions reduced.

    Clearing denominators gives ``(m*x - a*n) * (m*y - b*n) = a*b*n**2`` with
    both factors positive, so each solution comes from a divisor ``e`` of
    ``a*b*n**2`` via ``x = (a*n + e)/m`` and ``y = (b*n + a*b*n**2/e)/m``.
    """
    m, n, a, b = inst.m, inst.n, inst.a, inst.b
    rhs = a * b * n * n
    an, bn = a * n, b * n
    out = []
    for e in _divisors_of_product(a, b, n):
        x, rx = divmod(an + e, m)
        if rx:
            continue
        y, ry = divmod(bn + rhs // e, m)
        if ry == 0 and _lowest_terms(inst, x, y):
            out.append(FracPairSolution(x, y))
    return out


def frac_pair_oracle(inst: FracPairInstance, full_range: bool = False) -> list[FracPairSolution]:
    """Brute force for cross-checking :func:`frac_pair_solutions`.

    One of ``a/x`` and ``b/y`` is at least ``m/(2n)``, so it suffices to try
    every ``x <= 2an/m`` (solving for y) and every ``y <= 2bn/m`` (solving
    for x). ``full_range=True`` instead walks x over its whole feasible range
    ``an/m < x <= (an + abn^2)/m``.
    """
    m, n, a, b = inst.m, inst.n, inst.a, inst.b
    if full_range:
        spans = [((a * n) // m + 1, (a * n + a * b * n * n) // m, False)]
    else:
        spans = [((a * n) // m + 1, (2 * a * n) // m, False), ((b * n) // m + 1, (2 * b * n) // m, True)]
    found = set()
    for lo, hi, swap in spans:
        if hi - lo > cap("oracle_iterations"):
            raise ResourceCapError(f"oracle would scan {hi - lo} values")
        if hi < lo:
            continue
        # t is the unknown being walked, u = c*n*t / (m*t - f*n) the one solved for
        f, c = (b, a) if swap else (a, b)
        t = np.arange(lo, hi + 1, dtype=np.int64)
        num, den = c * n * t, m * t - f * n
        hit = num % den == 0
        for tt, uu in zip(t[hit].tolist(), (num[hit] // den[hit]).tolist()):
            x, y = (uu, tt) if swap else (tt, uu)
            if _lowest_terms(inst, x, y):
                found.add(FracPairSolution(x, y))
    return sorted(found)


def lemma4_counts(m: int, a: int, b: int, n_max: int) -> dict[int, int]:
    """Solution counts of ``m/n = a/x + b/y`` for every n up to ``n_max`` coprime to m."""
    return {
        n: len(frac_pair_solutions(FracPairInstance(m, n, a, b)))
        for n in range(1, n_max + 1)
        if math.gcd(m, n) == 1
    }
